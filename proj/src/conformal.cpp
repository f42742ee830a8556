#include "steklov/conformal.hpp"

#include <numbers>

namespace steklov {

Integer binom(long r, long s) {
  if (r < 0 || s < 0 || s > r) return Integer(0);
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(s));
  return out;
}

namespace {

template <RealParam T>
T from_integer(const Integer& z) {
  if constexpr (std::same_as<T, double>)
    return z.get_d();
  else
    return Rational(z);
}

template <RealParam T>
T ipow(const T& base, long e) {
  if (e < 0) throw std::logic_error("negative exponent in ipow");
  T result(1), b = base;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

long parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

// Rows n >= 2 with k >= -1; summation 3 <= l <= min(n+1, k+1).
template <RealParam T>
T mu_upper(int n, int k, const T& rho) {
  const T one_minus = T(1) - rho * rho;
  T sum(0);
  const int top = std::min(n + 1, k + 1);
  for (int l = 3; l <= top; ++l) {
    T term = from_integer<T>(binom(n - 2, l - 3) * binom(k + 1, l));
    term *= ipow(rho, n + k + 2 - 2 * l);
    term *= ipow(one_minus, l);
    if (l % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return T(parity_sign(k + 1) * sum / one_minus);
}

template <RealParam T>
T mu_row_minus1(int k, const T& rho) {
  return T(ipow(T(-rho), k + 1) / (T(1) - rho * rho));
}

template <RealParam T>
T mu_row0(int k, const T& rho) {
  T s(0);
  if (k + 1 != 0) s += T(k + 1) * ipow(T(-rho), k);
  if (k - 1 != 0) s -= T(k - 1) * T(parity_sign(k)) * ipow(rho, k + 2);
  return T(s / (T(1) - rho * rho));
}

template <RealParam T>
T mu_row1(int k, const T& rho) {
  const long kl = k;
  T s(0);
  if (const long c = kl * (kl + 1) / 2; c != 0) s += T(c) * ipow(rho, kl - 1);
  if (const long c = kl * kl - 1; c != 0) s -= T(c) * ipow(rho, kl + 1);
  if (const long c = kl * (kl - 1) / 2; c != 0) s += T(c) * ipow(rho, kl + 3);
  return T(parity_sign(kl - 1) * s / (T(1) - rho * rho));
}

}  // namespace

template <RealParam T>
T mu(int n, int k, const T& rho) {
  if (n <= -2 && k >= -1) return T(0);
  if (n >= 2 && k <= 1) return T(0);
  if (n <= -2 || k <= -2) return mu(-n, -k, rho);
  switch (n) {
    case -1:
      return mu_row_minus1(k, rho);
    case 0:
      return mu_row0(k, rho);
    case 1:
      return mu_row1(k, rho);
    default:
      return mu_upper(n, k, rho);
  }
}

template <RealParam T>
TruncatedMatrix<T> mu_matrix(const MoebiusParam<T>& rho, int N) {
  if (N < 1) throw std::invalid_argument("mu_matrix needs N >= 1");
  TruncatedMatrix<T> m(N);
  for (int n = -N; n <= N; ++n)
    for (int k = -N; k <= N; ++k) m(n, k) = mu(n, k, rho.rho());
  return m;
}

template <SeriesScalar S>
TrigSeries<S> apply_moebius(const TrigSeries<S>& a, const MoebiusParam<typename scalar_traits<S>::real_type>& rho,
                            int out_degree) {
  using R = typename scalar_traits<S>::real_type;
  const R oriented = R(kMoebiusOrientation * rho.rho());
  std::map<int, S> out;
  for (int n = -out_degree; n <= out_degree; ++n) {
    S acc{};
    for (const auto& [k, c] : a.coeffs()) {
      const R m = mu(n, k, oriented);
      if (m == 0) continue;
      acc += scalar_traits<S>::from_real(m) * c;
    }
    out.emplace(n, acc);
  }
  return TrigSeries<S>(std::move(out));
}

FloatSeries pullback_direct(const FloatSeries& a, const MoebiusParam<double>& rho, int grid_size, int out_degree) {
  if (grid_size < 2 * out_degree + 1)
    throw GridTooSmall("grid of size " + std::to_string(grid_size) + " cannot resolve degree " +
                       std::to_string(out_degree));
  const double r = rho.rho();
  CircleGrid g;
  g.samples.resize(static_cast<std::size_t>(grid_size));
  for (int m = 0; m < grid_size; ++m) {
    const double theta = CircleGrid::node(static_cast<std::size_t>(m), static_cast<std::size_t>(grid_size));
    const Complex z = std::polar(1.0, theta);
    const Complex w = (z - r) / (1.0 - r * z);
    const double dphi = (1.0 - r * r) / std::norm(1.0 - r * z);
    g.samples[static_cast<std::size_t>(m)] = evaluate(a, std::arg(w)) / dphi;
  }
  return from_samples(g, out_degree);
}

FloatSeries rotate(const FloatSeries& a, double alpha) {
  std::map<int, Complex> out;
  for (const auto& [n, c] : a.coeffs()) out.emplace(n, std::polar(1.0, alpha * n) * c);
  return FloatSeries(std::move(out));
}

template <RealParam T>
double group_law_check(const MoebiusParam<T>& rho, const MoebiusParam<T>& rho2, int N, int block) {
  if (block < 0) block = N / 2;
  const auto product = mu_matrix(rho, N) * mu_matrix(rho2, N);
  return product.max_abs_diff(mu_matrix(compose(rho, rho2), N), block);
}

namespace {

// (D X) with rows outside [-N, N] dropped.
TruncatedMatrix<double> apply_d(const TruncatedMatrix<double>& x) {
  const int N = x.half_width();
  TruncatedMatrix<double> y(N);
  for (int n = -N; n <= N; ++n)
    for (int k = -N; k <= N; ++k) {
      double v = 0.0;
      if (n - 1 >= -N) v += (n - 2) * x(n - 1, k);
      if (n + 1 <= N) v -= (n + 2) * x(n + 1, k);
      y(n, k) = v;
    }
  return y;
}

TruncatedMatrix<double> axpy(const TruncatedMatrix<double>& x, double h, const TruncatedMatrix<double>& y) {
  TruncatedMatrix<double> out = x;
  const int N = x.half_width();
  for (int n = -N; n <= N; ++n)
    for (int k = -N; k <= N; ++k) out(n, k) += h * y(n, k);
  return out;
}

}  // namespace

TruncatedMatrix<double> exp_integrate(const MoebiusParam<double>& rho, int N, int steps) {
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  const double h = rho.t() / steps;
  auto m = TruncatedMatrix<double>::identity(N);
  for (int s = 0; s < steps; ++s) {
    const auto k1 = apply_d(m);
    const auto k2 = apply_d(axpy(m, h / 2, k1));
    const auto k3 = apply_d(axpy(m, h / 2, k2));
    const auto k4 = apply_d(axpy(m, h, k3));
    for (int n = -N; n <= N; ++n)
      for (int k = -N; k <= N; ++k)
        m(n, k) += h / 6 * (k1(n, k) + 2 * k2(n, k) + 2 * k3(n, k) + k4(n, k));
  }
  return m;
}

double exp_relation_check(const MoebiusParam<double>& rho, int N, int steps, int block) {
  if (block < 0) block = N / 2;
  return exp_integrate(rho, N, steps).max_abs_diff(mu_matrix(rho, N), block);
}

double exp_convergence_ratio(const MoebiusParam<double>& rho, int N, int steps, int block) {
  if (block < 0) block = N / 2;
  const auto m1 = exp_integrate(rho, N, steps);
  const auto m2 = exp_integrate(rho, N, 2 * steps);
  const auto m4 = exp_integrate(rho, N, 4 * steps);
  return m1.max_abs_diff(m2, block) / m2.max_abs_diff(m4, block);
}

double decay_constant(int k) {
  double c = 0.0;
  double fact = 1.0;  // (l-3)!
  for (int l = 3; l <= k + 1; ++l) {
    if (l > 3) fact *= (l - 3);
    c += binom(k + 1, l).get_d() / fact;
  }
  return c;
}

int truncation_degree(const FloatSeries& a, double rho, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const double r = std::fabs(rho);
  if (!(r < 1.0)) throw std::domain_error("Moebius parameter must satisfy |rho| < 1");
  const int d0 = std::max(2 * a.degree(), 1);
  if (r == 0.0 || a.is_zero()) return a.degree();

  auto term = [&](long n) {
    double t = 0.0;
    for (const auto& [k, c] : a.coeffs()) {
      const int ak = std::abs(k);
      t += std::abs(c) * decay_constant(ak) * std::pow(static_cast<double>(n), ak);
    }
    return 2.0 * t * std::pow(r, 0.5 * static_cast<double>(n));  // both signs of n
  };

  // Tail sums from the far end; terms are eventually geometric.
  std::vector<double> terms;
  for (long n = d0 + 1;; ++n) {
    const double t = term(n);
    terms.push_back(t);
    if (n > 4 * d0 && t < tol * 1e-12) break;
    if (terms.size() > 1000000) throw std::runtime_error("decay bound does not converge");
  }
  double tail = 0.0;
  int best = static_cast<int>(d0 + terms.size());
  for (std::size_t i = terms.size(); i-- > 0;) {
    tail += terms[i];
    if (tail >= tol) break;
    best = d0 + static_cast<int>(i);
  }
  return best;
}

template double mu(int, int, const double&);
template Rational mu(int, int, const Rational&);
template TruncatedMatrix<double> mu_matrix(const MoebiusParam<double>&, int);
template TruncatedMatrix<Rational> mu_matrix(const MoebiusParam<Rational>&, int);
template ExactSeries apply_moebius(const ExactSeries&, const MoebiusParam<Rational>&, int);
template FloatSeries apply_moebius(const FloatSeries&, const MoebiusParam<double>&, int);
template double group_law_check(const MoebiusParam<double>&, const MoebiusParam<double>&, int, int);
template double group_law_check(const MoebiusParam<Rational>&, const MoebiusParam<Rational>&, int, int);

}  // namespace steklov
