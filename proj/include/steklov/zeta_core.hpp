#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "steklov/fourier.hpp"
#include "steklov/scalar.hpp"

namespace steklov {

/// Index tuple (j_1, ..., j_{2k}).
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

  int order() const { return static_cast<int>(entries_.size() / 2); }
  std::size_t size() const { return entries_.size(); }
  std::span<const int> entries() const { return entries_; }
  int operator[](std::size_t i) const { return entries_[i]; }

  long sum() const;
  /// |j| = |j_1| + ... + |j_{2k}|.
  long l1_norm() const;
  bool zero_sum() const { return sum() == 0; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> entries_;
};

/// N_{j_1...j_{2k}} = sum_n (|f(n)| - f(n)), f(n) = n(n+j_1)...(n+j_1+...+j_{2k-1}).
/// Throws NonZeroSum.
Integer brute_N(const MultiIndex& j);

/// Z_{j_1...j_{2k}}: average of N over permutations of the first 2k-1 slots.
/// Throws NonZeroSum.
Rational symmetrize_Z(const MultiIndex& j);

/// Same coefficient via the average over all (2k)! permutations. Slow; for
/// cross-validation only.
Rational symmetrize_Z_full(const MultiIndex& j);

/// Memo of Z coefficients keyed by the sorted tuple (Z is symmetric) and its
/// negation (Z is even). Not thread-safe; use one cache per worker.
class CoefficientCache {
 public:
  /// Z_j, and 0 when the entries do not sum to zero.
  const Rational& z(std::span<const int> j);
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::vector<int>, Rational> table_;
  Rational zero_{0};
};

/// Calls `visit(tuple, multiplicity)` for every non-decreasing tuple of length
/// `slots` drawn from the sorted `support` with zero sum. `multiplicity` is the
/// number of distinct orderings of the tuple.
void for_each_zero_sum_multiset(std::span<const int> support, int slots,
                                const std::function<void(std::span<const int>, std::uint64_t)>& visit);

/// Z_k(a) = sum over zero-sum tuples of Z_{j} a_{j_1} ... a_{j_{2k}}, exact
/// for finite series.
template <SeriesScalar S>
S zeta_invariant(const TrigSeries<S>& a, int k, CoefficientCache& cache);

template <SeriesScalar S>
S zeta_invariant(const TrigSeries<S>& a, int k) {
  CoefficientCache cache;
  return zeta_invariant(a, k, cache);
}

/// Edward's quadratic form (1/3) sum_j |j^3 - j| a_j a_{-j}.
template <SeriesScalar S>
S z1_closed(const TrigSeries<S>& a);

/// Symmetrized closed-form polynomials for the two canonical index regions.
Rational p1(const Integer& i, const Integer& j, const Integer& k);
Rational p2(const Integer& i, const Integer& j, const Integer& k);

/// True when (i, j, k) lies in the region handled by p1 / p2.
bool in_case1(long i, long j, long k);
bool in_case2(long i, long j, long k);

/// Z_{ijkl} from the piecewise polynomial: the quadruple is mapped by
/// permutation and overall sign flip onto one of the two canonical regions.
Rational z2_coeff_closed(long i, long j, long k, long l);

template <SeriesScalar S>
S z2_closed(const TrigSeries<S>& a);

/// 0 <= Z_j <= 2 (2|j|)^{2k+1}.
bool coeff_bound_check(const MultiIndex& j);

struct CoeffRow {
  std::vector<int> indices;
  Rational value;
};

/// Zero-sum tuples with every |j_i| <= radius. With `symmetrized` the rows
/// hold Z over sorted tuples, otherwise N over all ordered tuples.
std::vector<CoeffRow> coefficient_table(int k, int radius, bool symmetrized);

/// CSV rows "j_1,...,j_{2k},numerator,denominator".
void write_csv(std::ostream& out, std::span<const CoeffRow> rows);

}  // namespace steklov
