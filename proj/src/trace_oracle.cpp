#include "steklov/trace_oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace steklov {

template <SeriesScalar S>
BandedOperator<S>::BandedOperator(int half_width, int bandwidth)
    : half_width_(half_width), bandwidth_(std::clamp(bandwidth, 0, 2 * std::max(half_width, 0))) {
  if (half_width < 0) throw std::invalid_argument("half width must be non-negative");
  data_.assign(static_cast<std::size_t>(dim()) * static_cast<std::size_t>(2 * bandwidth_ + 1), S{});
}

template <SeriesScalar S>
std::size_t BandedOperator<S>::offset(int m, int n) const {
  return static_cast<std::size_t>(m + half_width_) * static_cast<std::size_t>(2 * bandwidth_ + 1) +
         static_cast<std::size_t>(n - m + bandwidth_);
}

template <SeriesScalar S>
S BandedOperator<S>::entry(int m, int n) const {
  if (std::abs(m) > half_width_ || std::abs(n) > half_width_ || std::abs(m - n) > bandwidth_) return S{};
  return data_[offset(m, n)];
}

template <SeriesScalar S>
S& BandedOperator<S>::at(int m, int n) {
  if (std::abs(m) > half_width_ || std::abs(n) > half_width_ || std::abs(m - n) > bandwidth_)
    throw std::out_of_range("banded entry outside storage");
  return data_[offset(m, n)];
}

template <SeriesScalar S>
BandedOperator<S> BandedOperator<S>::multiply(const BandedOperator& b) const {
  if (b.half_width_ != half_width_) throw std::invalid_argument("operator sizes differ");
  const int N = half_width_;
  BandedOperator c(N, bandwidth_ + b.bandwidth_);
  for (int m = -N; m <= N; ++m) {
    const int p_lo = std::max(-N, m - bandwidth_), p_hi = std::min(N, m + bandwidth_);
    for (int p = p_lo; p <= p_hi; ++p) {
      const S& x = data_[offset(m, p)];
      if (scalar_traits<S>::is_zero(x)) continue;
      const int n_lo = std::max(-N, p - b.bandwidth_), n_hi = std::min(N, p + b.bandwidth_);
      for (int n = n_lo; n <= n_hi; ++n) c.data_[c.offset(m, n)] += x * b.data_[b.offset(p, n)];
    }
  }
  return c;
}

template <SeriesScalar S>
S BandedOperator<S>::trace() const {
  S t{};
  for (int m = -half_width_; m <= half_width_; ++m) t += data_[offset(m, m)];
  return t;
}

template <SeriesScalar S>
BandedOperator<S> operator_matrix(const TrigSeries<S>& a, OperatorKind kind, int N) {
  if (N < a.degree())
    throw std::invalid_argument("half width " + std::to_string(N) + " is below the series degree");
  BandedOperator<S> op(N, a.degree());
  for (int n = -N; n <= N; ++n) {
    const S weight = scalar_traits<S>::from_rational(Rational(kind == OperatorKind::Lambda ? std::abs(n) : n));
    for (const auto& [j, c] : a.coeffs()) {
      const int m = n + j;
      if (std::abs(m) <= N) op.at(m, n) = c * weight;
    }
  }
  return op;
}

namespace {

template <SeriesScalar S>
S trace_of_power(const BandedOperator<S>& a, int power) {
  BandedOperator<S> p = a;
  for (int i = 1; i < power; ++i) p = p * a;
  return p.trace();
}

template <SeriesScalar S>
bool same_value(const S& x, const S& y) {
  if constexpr (scalar_traits<S>::exact) {
    return x == y;
  } else {
    return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
  }
}

}  // namespace

template <SeriesScalar S>
S trace_difference_unchecked(const TrigSeries<S>& a, int k, int N) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (N < a.degree()) N = a.degree();
  return trace_of_power(operator_matrix(a, OperatorKind::Lambda, N), 2 * k) -
         trace_of_power(operator_matrix(a, OperatorKind::Dtheta, N), 2 * k);
}

template <SeriesScalar S>
S trace_difference(const TrigSeries<S>& a, int k, int N) {
  const long need = 4L * k * a.degree();
  if (N < need)
    throw TruncationTooSmall("trace truncation N = " + std::to_string(N) + " is below 4k deg(a) = " +
                             std::to_string(need));
  return trace_difference_unchecked(a, k, N);
}

template <SeriesScalar S>
int stabilization_check(const TrigSeries<S>& a, int k) {
  int N = 1;
  S t1 = trace_difference_unchecked(a, k, N);
  S t2 = trace_difference_unchecked(a, k, 2 * N);
  for (;;) {
    S t4 = trace_difference_unchecked(a, k, 4 * N);
    if (same_value(t1, t2) && same_value(t2, t4)) return N;
    if (N > (1 << 20)) throw std::runtime_error("trace difference does not stabilize");
    N *= 2;
    t1 = std::move(t2);
    t2 = std::move(t4);
  }
}

template class BandedOperator<RationalComplex>;
template class BandedOperator<Complex>;
template BandedOperator<RationalComplex> operator_matrix(const ExactSeries&, OperatorKind, int);
template BandedOperator<Complex> operator_matrix(const FloatSeries&, OperatorKind, int);
template RationalComplex trace_difference(const ExactSeries&, int, int);
template Complex trace_difference(const FloatSeries&, int, int);
template RationalComplex trace_difference_unchecked(const ExactSeries&, int, int);
template Complex trace_difference_unchecked(const FloatSeries&, int, int);
template int stabilization_check(const ExactSeries&, int);
template int stabilization_check(const FloatSeries&, int);

}  // namespace steklov
