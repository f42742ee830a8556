#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <initializer_list>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "steklov/errors.hpp"
#include "steklov/scalar.hpp"

namespace steklov {

inline constexpr int kDefaultGridSize = 4096;

/// A function on the unit circle given by finitely many Fourier coefficients,
///   a(theta) = sum_n a_n e^{i n theta}.
/// Zero coefficients are never stored, so `degree()` is max |n| over the keys.
template <SeriesScalar S>
class TrigSeries {
 public:
  using scalar_type = S;
  using traits = scalar_traits<S>;

  TrigSeries() = default;

  explicit TrigSeries(std::map<int, S> coeffs) : coeffs_(std::move(coeffs)) { prune(); }

  TrigSeries(std::initializer_list<std::pair<const int, S>> init) : coeffs_(init) { prune(); }

  const std::map<int, S>& coeffs() const { return coeffs_; }

  /// Coefficient at frequency n (zero when not stored).
  S operator[](int n) const {
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? S{} : it->second;
  }

  int degree() const {
    if (coeffs_.empty()) return 0;
    return std::max(std::abs(coeffs_.begin()->first), std::abs(coeffs_.rbegin()->first));
  }

  bool is_zero() const { return coeffs_.empty(); }

  /// Adds `value` to the coefficient at n, dropping it if the result vanishes.
  void add(int n, const S& value) {
    if (traits::is_zero(value)) return;
    auto [it, inserted] = coeffs_.try_emplace(n, value);
    if (!inserted) {
      it->second += value;
      if (traits::is_zero(it->second)) coeffs_.erase(it);
    }
  }

  TrigSeries& operator+=(const TrigSeries& o) {
    for (const auto& [n, c] : o.coeffs_) add(n, c);
    return *this;
  }
  TrigSeries& operator-=(const TrigSeries& o) {
    for (const auto& [n, c] : o.coeffs_) add(n, -c);
    return *this;
  }
  TrigSeries& operator*=(const S& s) {
    for (auto& [n, c] : coeffs_) c *= s;
    prune();
    return *this;
  }

  friend TrigSeries operator+(TrigSeries a, const TrigSeries& b) { return a += b; }
  friend TrigSeries operator-(TrigSeries a, const TrigSeries& b) { return a -= b; }
  friend TrigSeries operator*(const S& s, TrigSeries a) { return a *= s; }
  friend bool operator==(const TrigSeries& a, const TrigSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void prune() { std::erase_if(coeffs_, [](const auto& kv) { return traits::is_zero(kv.second); }); }

  std::map<int, S> coeffs_;
};

using ExactSeries = TrigSeries<RationalComplex>;
using FloatSeries = TrigSeries<Complex>;

/// Equispaced samples theta_m = 2 pi m / size on the circle.
struct CircleGrid {
  std::vector<Complex> samples;

  std::size_t size() const { return samples.size(); }

  static double node(std::size_t m, std::size_t size) {
    return 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(size);
  }
};

template <SeriesScalar S>
Complex evaluate(const TrigSeries<S>& a, double theta) {
  Complex sum{};
  for (const auto& [n, c] : a.coeffs())
    sum += scalar_traits<S>::to_complex(c) * std::polar(1.0, n * theta);
  return sum;
}

template <SeriesScalar S>
CircleGrid sample(const TrigSeries<S>& a, std::size_t size) {
  CircleGrid g;
  g.samples.reserve(size);
  for (std::size_t m = 0; m < size; ++m) g.samples.push_back(evaluate(a, CircleGrid::node(m, size)));
  return g;
}

/// Discrete Fourier coefficients |n| <= degree of the sampled function.
/// Coefficients below `chop` times the largest sample magnitude are dropped
/// as round-off.
FloatSeries from_samples(const CircleGrid& g, int degree, double chop = 1e-14);

/// True iff a_{-n} = conj(a_n) for every n. Exact for the rational backend.
template <SeriesScalar S>
bool is_real(const TrigSeries<S>& a) {
  using T = scalar_traits<S>;
  for (const auto& [n, c] : a.coeffs())
    if (!(a[-n] == T::conj(c))) return false;
  return true;
}

/// Real-valued closeness test for float series, relative to sum |a_n|.
bool is_real_approx(const FloatSeries& a, double rel_tol = 1e-12);

FloatSeries to_float(const ExactSeries& a);

/// Minimum of a(theta) over `grid_size` equispaced nodes. A screen, not a
/// certificate of positivity. Throws NotReal for non-real input.
template <SeriesScalar S>
double min_on_circle(const TrigSeries<S>& a, int grid_size = kDefaultGridSize);

/// (1/2pi) \int_0^{2pi} dtheta / a(theta) by the trapezoid rule.
/// Throws NotPositive when a sampled value is not positive.
template <SeriesScalar S>
double normalization_integral(const TrigSeries<S>& a, int grid_size = kDefaultGridSize);

}  // namespace steklov
