#pragma once

#include <vector>

#include "steklov/fourier.hpp"

namespace steklov {

enum class OperatorKind { Lambda, Dtheta };

/// Compression to frequencies [-N, N] of a*Lambda (entry a_{m-n} |n|) or
/// a*D_theta (entry a_{m-n} n). Only the band |m - n| <= bandwidth is stored.
template <SeriesScalar S>
class BandedOperator {
 public:
  BandedOperator(int half_width, int bandwidth);

  int half_width() const { return half_width_; }
  int bandwidth() const { return bandwidth_; }
  int dim() const { return 2 * half_width_ + 1; }

  /// Zero outside the band or outside [-N, N].
  S entry(int m, int n) const;
  S& at(int m, int n);

  friend BandedOperator operator*(const BandedOperator& a, const BandedOperator& b) { return a.multiply(b); }

  S trace() const;

 private:
  BandedOperator multiply(const BandedOperator& b) const;
  std::size_t offset(int m, int n) const;

  int half_width_;
  int bandwidth_;
  std::vector<S> data_;
};

template <SeriesScalar S>
BandedOperator<S> operator_matrix(const TrigSeries<S>& a, OperatorKind kind, int N);

/// Tr A^{2k} - Tr B^{2k} for the two compressions. Requires N >= 4k deg(a),
/// else TruncationTooSmall.
template <SeriesScalar S>
S trace_difference(const TrigSeries<S>& a, int k, int N);

/// Same quantity without the truncation requirement.
template <SeriesScalar S>
S trace_difference_unchecked(const TrigSeries<S>& a, int k, int N);

/// Smallest N in 1, 2, 4, ... with T(N) = T(2N) = T(4N). Equality is exact
/// for the rational backend and relative 1e-12 for floats.
template <SeriesScalar S>
int stabilization_check(const TrigSeries<S>& a, int k);

}  // namespace steklov
