#include "steklov/fourier.hpp"

#include <string>

namespace steklov {

FloatSeries from_samples(const CircleGrid& g, int degree, double chop) {
  const std::size_t size = g.size();
  if (degree < 0 || size < static_cast<std::size_t>(2 * degree + 1))
    throw GridTooSmall("grid of size " + std::to_string(size) + " cannot resolve degree " +
                       std::to_string(degree));

  // Twiddles indexed by (m * n) mod size keep the phase exact.
  std::vector<Complex> twiddle(size);
  for (std::size_t j = 0; j < size; ++j) twiddle[j] = std::polar(1.0, -CircleGrid::node(j, size));

  double scale = 0.0;
  for (const Complex& s : g.samples) scale = std::max(scale, std::abs(s));

  std::map<int, Complex> coeffs;
  for (int n = -degree; n <= degree; ++n) {
    const std::size_t step = static_cast<std::size_t>((n % static_cast<long>(size) + static_cast<long>(size)) %
                                                      static_cast<long>(size));
    Complex acc{};
    std::size_t idx = 0;
    for (std::size_t m = 0; m < size; ++m) {
      acc += g.samples[m] * twiddle[idx];
      idx += step;
      if (idx >= size) idx -= size;
    }
    acc /= static_cast<double>(size);
    if (std::abs(acc) > chop * scale) coeffs.emplace(n, acc);
  }
  return FloatSeries(std::move(coeffs));
}

bool is_real_approx(const FloatSeries& a, double rel_tol) {
  double mass = 0.0;
  for (const auto& [n, c] : a.coeffs()) mass += std::abs(c);
  for (const auto& [n, c] : a.coeffs())
    if (std::abs(a[-n] - std::conj(c)) > rel_tol * mass) return false;
  return true;
}

FloatSeries to_float(const ExactSeries& a) {
  std::map<int, Complex> out;
  for (const auto& [n, c] : a.coeffs()) out.emplace(n, scalar_traits<RationalComplex>::to_complex(c));
  return FloatSeries(std::move(out));
}

namespace {

template <SeriesScalar S>
void require_real(const TrigSeries<S>& a) {
  bool ok = false;
  if constexpr (scalar_traits<S>::exact)
    ok = is_real(a);
  else
    ok = is_real_approx(a);
  if (!ok) throw NotReal("series is not conjugate-symmetric");
}

}  // namespace

template <SeriesScalar S>
double min_on_circle(const TrigSeries<S>& a, int grid_size) {
  require_real(a);
  if (grid_size < 1) throw GridTooSmall("grid size must be positive");
  double lo = evaluate(a, 0.0).real();
  for (int m = 1; m < grid_size; ++m)
    lo = std::min(lo, evaluate(a, CircleGrid::node(static_cast<std::size_t>(m), grid_size)).real());
  return lo;
}

template <SeriesScalar S>
double normalization_integral(const TrigSeries<S>& a, int grid_size) {
  require_real(a);
  if (grid_size < 1) throw GridTooSmall("grid size must be positive");
  double sum = 0.0;
  for (int m = 0; m < grid_size; ++m) {
    const double v = evaluate(a, CircleGrid::node(static_cast<std::size_t>(m), grid_size)).real();
    if (!(v > 0.0)) throw NotPositive("weight is not positive on the sampling grid");
    sum += 1.0 / v;
  }
  return sum / grid_size;
}

template double min_on_circle(const ExactSeries&, int);
template double min_on_circle(const FloatSeries&, int);
template double normalization_integral(const ExactSeries&, int);
template double normalization_integral(const FloatSeries&, int);

}  // namespace steklov
