#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <stdexcept>
#include <vector>

#include "steklov/fourier.hpp"
#include "steklov/scalar.hpp"

namespace steklov {

/// Sign applied to rho when the closed-form mu rows are used to act on
/// coefficients. +1: b_n = sum_k mu_nk(rho) a_k reproduces the pullback by
/// Phi_rho(z) = (z - rho) / (1 - rho z) on the sampling grid.
inline constexpr int kMoebiusOrientation = +1;

template <class T>
concept RealParam = std::same_as<T, double> || std::same_as<T, Rational>;

/// Parameter rho in (-1, 1) of the hyperbolic translation Phi_rho.
template <RealParam T>
class MoebiusParam {
 public:
  explicit MoebiusParam(T rho) : rho_(std::move(rho)) {
    if (!(abs_value() < 1.0)) throw std::domain_error("Moebius parameter must satisfy |rho| < 1");
  }

  const T& rho() const { return rho_; }
  /// Translation length t with tanh t = rho.
  double t() const { return std::atanh(as_double()); }
  double as_double() const {
    if constexpr (std::same_as<T, double>)
      return rho_;
    else
      return rho_.get_d();
  }

  /// rho'' = (rho + rho') / (1 + rho rho'), the parameter of the composition.
  friend MoebiusParam compose(const MoebiusParam& a, const MoebiusParam& b) {
    return MoebiusParam(T((a.rho_ + b.rho_) / (T(1) + a.rho_ * b.rho_)));
  }

 private:
  double abs_value() const { return std::fabs(as_double()); }
  T rho_;
};

/// Dense square matrix indexed by (n, k) in [-N, N]^2.
template <class T>
class TruncatedMatrix {
 public:
  explicit TruncatedMatrix(int half_width)
      : half_width_(half_width), data_(static_cast<std::size_t>(dim()) * static_cast<std::size_t>(dim()), T(0)) {
    if (half_width < 0) throw std::invalid_argument("half width must be non-negative");
  }

  static TruncatedMatrix identity(int half_width) {
    TruncatedMatrix m(half_width);
    for (int n = -half_width; n <= half_width; ++n) m(n, n) = T(1);
    return m;
  }

  int half_width() const { return half_width_; }
  int dim() const { return 2 * half_width_ + 1; }

  T& operator()(int n, int k) { return data_[offset(n, k)]; }
  const T& operator()(int n, int k) const { return data_[offset(n, k)]; }

  friend TruncatedMatrix operator*(const TruncatedMatrix& a, const TruncatedMatrix& b) {
    if (a.half_width_ != b.half_width_) throw std::invalid_argument("matrix sizes differ");
    const int N = a.half_width_;
    TruncatedMatrix c(N);
    for (int n = -N; n <= N; ++n)
      for (int p = -N; p <= N; ++p) {
        const T& x = a(n, p);
        if (x == 0) continue;
        for (int k = -N; k <= N; ++k) c(n, k) += x * b(p, k);
      }
    return c;
  }

  /// max |this(n,k) - other(n,k)| over |n|, |k| <= block.
  double max_abs_diff(const TruncatedMatrix& other, int block) const {
    double worst = 0.0;
    for (int n = -block; n <= block; ++n)
      for (int k = -block; k <= block; ++k) {
        T d = (*this)(n, k) - other(n, k);
        double v;
        if constexpr (std::same_as<T, double>)
          v = std::fabs(d);
        else
          v = std::fabs(d.get_d());
        worst = std::max(worst, v);
      }
    return worst;
  }

 private:
  std::size_t offset(int n, int k) const {
    if (n < -half_width_ || n > half_width_ || k < -half_width_ || k > half_width_)
      throw std::out_of_range("matrix index outside [-N, N]");
    return static_cast<std::size_t>(n + half_width_) * static_cast<std::size_t>(dim()) +
           static_cast<std::size_t>(k + half_width_);
  }

  int half_width_;
  std::vector<T> data_;
};

/// Binomial coefficient with the convention C(r, s) = 0 when r < 0, s < 0 or s > r.
Integer binom(long r, long s);

/// Matrix element mu_nk(rho) of the translation action on Fourier coefficients.
template <RealParam T>
T mu(int n, int k, const T& rho);

template <RealParam T>
TruncatedMatrix<T> mu_matrix(const MoebiusParam<T>& rho, int N);

/// Generator of the translation subgroup: d_nk = (n-2) delta_{n-1,k} - (n+2) delta_{n+1,k}.
template <RealParam T = double>
TruncatedMatrix<T> d_matrix(int N) {
  if (N < 1) throw std::invalid_argument("d_matrix needs N >= 1");
  TruncatedMatrix<T> d(N);
  for (int n = -N; n <= N; ++n) {
    if (n - 1 >= -N) d(n, n - 1) = T(n - 2);
    if (n + 1 <= N) d(n, n + 1) = T(-(n + 2));
  }
  return d;
}

/// b_n = sum_k mu_nk(rho) a_k for |n| <= out_degree.
template <SeriesScalar S>
TrigSeries<S> apply_moebius(const TrigSeries<S>& a, const MoebiusParam<typename scalar_traits<S>::real_type>& rho,
                            int out_degree);

/// b = (a o phi) / phi' with phi the boundary map of Phi_rho, sampled on
/// `grid_size` nodes and truncated to |n| <= out_degree.
FloatSeries pullback_direct(const FloatSeries& a, const MoebiusParam<double>& rho, int grid_size, int out_degree);

/// Coefficients of a o R_alpha: e^{i alpha j} a_j.
FloatSeries rotate(const FloatSeries& a, double alpha);

/// Coefficients of a o J (complex conjugation of the argument): j -> a_{-j}.
template <SeriesScalar S>
TrigSeries<S> conjugate(const TrigSeries<S>& a) {
  std::map<int, S> out;
  for (const auto& [n, c] : a.coeffs()) out.emplace(-n, c);
  return TrigSeries<S>(std::move(out));
}

/// max |M(rho) M(rho') - M(rho'')| over the central block (default N/2).
template <RealParam T>
double group_law_check(const MoebiusParam<T>& rho, const MoebiusParam<T>& rho2, int N, int block = -1);

/// Fixed-step RK4 solution of dM/dt = D_N M, M(0) = I, up to t = artanh(rho).
TruncatedMatrix<double> exp_integrate(const MoebiusParam<double>& rho, int N, int steps);

/// max |exp_integrate(rho, N, steps) - mu_matrix(rho, N)| over the central block.
double exp_relation_check(const MoebiusParam<double>& rho, int N, int steps, int block = -1);

/// |M_s - M_2s| / |M_2s - M_4s| on the central block; about 16 for a
/// fourth-order scheme.
double exp_convergence_ratio(const MoebiusParam<double>& rho, int N, int steps, int block = -1);

/// C_k = sum_{l=3}^{k+1} C(k+1, l) / (l-3)!, so that
/// |mu_nk| <= C_|k| |n|^|k| |rho|^{|n|/2} for |n| >= 2|k| >= 2.
double decay_constant(int k);

/// Smallest out_degree D >= 2 deg(a) for which the decay bound on the
/// coefficients |n| > D of a Phi_rho sums below `tol`.
int truncation_degree(const FloatSeries& a, double rho, double tol);

}  // namespace steklov
