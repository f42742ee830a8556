#include "steklov/zeta_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace steklov {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty() || entries_.size() % 2 != 0)
    throw std::invalid_argument("multi-index length must be even and positive, got " +
                                std::to_string(entries_.size()));
}

long MultiIndex::sum() const { return std::accumulate(entries_.begin(), entries_.end(), 0L); }

long MultiIndex::l1_norm() const {
  long s = 0;
  for (int v : entries_) s += std::abs(v);
  return s;
}

namespace {

long l1(std::span<const int> j) {
  long s = 0;
  for (int v : j) s += std::abs(v);
  return s;
}

void require_zero_sum(const MultiIndex& j) {
  if (!j.zero_sum()) throw NonZeroSum("indices sum to " + std::to_string(j.sum()) + ", expected 0");
}

// sum over n in [-|j|, |j|] of |f(n)| - f(n); caller guarantees zero sum.
Integer brute_N_raw(std::span<const int> j) {
  const long norm = l1(j);
  const std::size_t last = j.size() - 1;

  // |f(n)| <= (2|j|)^{2k}; the total is below 2 (2|j|+1)^{2k+1}.
  const double log2_bound = static_cast<double>(j.size() + 1) * std::log2(2.0 * norm + 1.0) + 1.0;
  if (log2_bound < 62.0) {
    std::int64_t total = 0;
    for (long n = -norm; n <= norm; ++n) {
      std::int64_t f = n, partial = n;
      for (std::size_t i = 0; i < last && f != 0; ++i) {
        partial += j[i];
        f *= partial;
      }
      if (f < 0) total -= 2 * f;
    }
    return Integer(static_cast<long>(total));
  }

  Integer total = 0, f, partial;
  for (long n = -norm; n <= norm; ++n) {
    f = n;
    partial = n;
    for (std::size_t i = 0; i < last && sgn(f) != 0; ++i) {
      partial += j[i];
      f *= partial;
    }
    if (sgn(f) < 0) total -= 2 * f;
  }
  return total;
}

Integer factorial(int n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

constexpr std::array<std::uint64_t, 21> kFactorials = [] {
  std::array<std::uint64_t, 21> f{};
  f[0] = 1;
  for (std::size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * i;
  return f;
}();

// Number of distinct orderings of a sorted tuple.
std::uint64_t orderings(std::span<const int> sorted) {
  std::uint64_t denom = 1;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      denom *= kFactorials[run];
      run = 1;
    }
  }
  return kFactorials[sorted.size()] / denom;
}

void multiset_rec(std::span<const int> support, int slots_left, std::size_t start, long partial,
                  std::vector<int>& tuple,
                  const std::function<void(std::span<const int>, std::uint64_t)>& visit) {
  if (slots_left == 0) {
    if (partial == 0) visit(tuple, orderings(tuple));
    return;
  }
  const long top = support.back();
  for (std::size_t idx = start; idx < support.size(); ++idx) {
    const long v = support[idx];
    if (partial + v * slots_left > 0) break;
    if (partial + v + (slots_left - 1) * top < 0) continue;
    tuple.push_back(static_cast<int>(v));
    multiset_rec(support, slots_left - 1, idx, partial + v, tuple, visit);
    tuple.pop_back();
  }
}

template <SeriesScalar S>
std::vector<int> support_of(const TrigSeries<S>& a) {
  std::vector<int> keys;
  keys.reserve(a.coeffs().size());
  for (const auto& [n, c] : a.coeffs()) keys.push_back(n);
  return keys;
}

// Sums coeff(tuple) * multiplicity * a_{t_1} ... a_{t_m} over sorted zero-sum tuples.
template <SeriesScalar S, class CoeffFn>
S multiset_form(const TrigSeries<S>& a, int slots, CoeffFn&& coeff) {
  using T = scalar_traits<S>;
  S total{};
  if (a.is_zero()) return total;
  const int d = a.degree();
  std::vector<S> dense(static_cast<std::size_t>(2 * d + 1));
  for (const auto& [n, c] : a.coeffs()) dense[static_cast<std::size_t>(n + d)] = c;
  const std::vector<int> support = support_of(a);

  for_each_zero_sum_multiset(support, slots, [&](std::span<const int> t, std::uint64_t mult) {
    const Rational& z = coeff(t);
    if (sgn(z) == 0) return;
    S prod = dense[static_cast<std::size_t>(t[0] + d)];
    for (std::size_t i = 1; i < t.size(); ++i) prod *= dense[static_cast<std::size_t>(t[i] + d)];
    total += T::from_rational(z * Rational(Integer(static_cast<unsigned long>(mult)))) * prod;
  });
  return total;
}

}  // namespace

Integer brute_N(const MultiIndex& j) {
  require_zero_sum(j);
  return brute_N_raw(j.entries());
}

Rational symmetrize_Z(const MultiIndex& j) {
  require_zero_sum(j);
  const std::size_t m = j.size();
  std::vector<int> perm(j.entries().begin(), j.entries().end());
  std::sort(perm.begin(), perm.end() - 1);

  // Each distinct arrangement of the first 2k-1 slots stands for
  // prod(multiplicity!) permutations.
  Integer stabilizer = 1;
  {
    std::size_t run = 1;
    for (std::size_t i = 1; i <= m - 1; ++i) {
      if (i < m - 1 && perm[i] == perm[i - 1]) {
        ++run;
      } else {
        stabilizer *= factorial(static_cast<int>(run));
        run = 1;
      }
    }
  }
  Integer total = 0;
  do {
    total += brute_N_raw(perm);
  } while (std::next_permutation(perm.begin(), perm.end() - 1));

  Rational z(total * stabilizer, factorial(static_cast<int>(m - 1)));
  z.canonicalize();
  return z;
}

Rational symmetrize_Z_full(const MultiIndex& j) {
  require_zero_sum(j);
  const std::size_t m = j.size();
  std::vector<std::size_t> pos(m);
  std::iota(pos.begin(), pos.end(), 0);
  std::vector<int> permuted(m);
  Integer total = 0;
  do {
    for (std::size_t i = 0; i < m; ++i) permuted[i] = j[pos[i]];
    total += brute_N_raw(permuted);
  } while (std::next_permutation(pos.begin(), pos.end()));
  Rational z(total, factorial(static_cast<int>(m)));
  z.canonicalize();
  return z;
}

const Rational& CoefficientCache::z(std::span<const int> j) {
  if (std::accumulate(j.begin(), j.end(), 0L) != 0) return zero_;
  std::vector<int> key(j.begin(), j.end()), neg(j.size());
  std::sort(key.begin(), key.end());
  for (std::size_t i = 0; i < key.size(); ++i) neg[i] = -key[key.size() - 1 - i];
  if (neg < key) key.swap(neg);
  auto it = table_.find(key);
  if (it != table_.end()) return it->second;
  Rational value = symmetrize_Z(MultiIndex(key));
  return table_.emplace(std::move(key), std::move(value)).first->second;
}

void for_each_zero_sum_multiset(std::span<const int> support, int slots,
                                const std::function<void(std::span<const int>, std::uint64_t)>& visit) {
  if (support.empty() || slots <= 0) return;
  if (slots > 20) throw std::overflow_error("tuple length above 20 is not supported");
  if (!std::is_sorted(support.begin(), support.end()) ||
      std::adjacent_find(support.begin(), support.end()) != support.end())
    throw std::invalid_argument("support must be sorted and free of duplicates");
  std::vector<int> tuple;
  tuple.reserve(static_cast<std::size_t>(slots));
  multiset_rec(support, slots, 0, 0, tuple, visit);
}

template <SeriesScalar S>
S zeta_invariant(const TrigSeries<S>& a, int k, CoefficientCache& cache) {
  if (k < 1) throw std::invalid_argument("order k must be >= 1");
  return multiset_form(a, 2 * k, [&](std::span<const int> t) -> const Rational& { return cache.z(t); });
}

template <SeriesScalar S>
S z1_closed(const TrigSeries<S>& a) {
  using T = scalar_traits<S>;
  S total{};
  for (const auto& [j, c] : a.coeffs()) {
    const long jl = j;
    Rational w(Integer(std::abs(jl * jl * jl - jl)), Integer(3));
    w.canonicalize();
    if (sgn(w) == 0) continue;
    total += T::from_rational(w) * c * a[-j];
  }
  return total;
}

namespace {

Integer p1_raw(const Integer& i, const Integer& j, const Integer& k) {
  const Integer i2 = i * i, i3 = i2 * i, i4 = i3 * i, i5 = i4 * i;
  return Integer(3 * i5 + 15 * i4 * j + 10 * i3 * j * j + 10 * i3 * j * k - 5 * i3 - 25 * i2 * j -
                 10 * i * j * k + 2 * i);
}

Integer p2_raw(const Integer& i, const Integer& j, const Integer& k) {
  const Integer i2 = i * i, i3 = i2 * i, i4 = i3 * i, i5 = i4 * i;
  const Integer j2 = j * j, j3 = j2 * j, j4 = j3 * j, j5 = j4 * j;
  return Integer(5 * i5 + 25 * i4 * j + 10 * i3 * j2 + 20 * i3 * j * k - 10 * i2 * j3 - 15 * i * j4 -
                 20 * i * j3 * k - 4 * j5 - 5 * j4 * k + 10 * j3 * k * k - 5 * i3 - 15 * i2 * j + 5 * i * j2 -
                 5 * j2 * k + 4 * j);
}

}  // namespace

Rational p1(const Integer& i, const Integer& j, const Integer& k) {
  // (1/15) times the average over the six orderings of (i, j, k).
  Integer s = p1_raw(i, j, k) + p1_raw(i, k, j) + p1_raw(j, i, k) + p1_raw(j, k, i) + p1_raw(k, i, j) +
              p1_raw(k, j, i);
  Rational r(s, Integer(90));
  r.canonicalize();
  return r;
}

Rational p2(const Integer& i, const Integer& j, const Integer& k) {
  // (1/45) times the average over swapping (j, k).
  Rational r(Integer(p2_raw(i, j, k) + p2_raw(i, k, j)), Integer(90));
  r.canonicalize();
  return r;
}

bool in_case1(long i, long j, long k) { return i >= 0 && j >= 0 && k >= 0; }

bool in_case2(long i, long j, long k) {
  return i <= 0 && j >= 0 && k >= 0 && i + j <= 0 && i + k <= 0 && i + j + k >= 0;
}

Rational z2_coeff_closed(long i, long j, long k, long l) {
  if (i + j + k + l != 0) return Rational(0);

  std::array<long, 4> q{i, j, k, l};
  std::sort(q.begin(), q.end());
  std::vector<std::array<long, 4>> images;
  images.reserve(48);
  do {
    images.push_back(q);
    images.push_back({-q[0], -q[1], -q[2], -q[3]});
  } while (std::next_permutation(q.begin(), q.end()));
  std::sort(images.begin(), images.end());

  for (const auto& im : images)
    if (in_case1(im[0], im[1], im[2])) return p1(Integer(im[0]), Integer(im[1]), Integer(im[2]));
  for (const auto& im : images)
    if (in_case2(im[0], im[1], im[2])) return p2(Integer(im[0]), Integer(im[1]), Integer(im[2]));
  throw CanonicalizationFailure("no symmetry image of (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                std::to_string(k) + "," + std::to_string(l) + ") lies in a canonical region");
}

template <SeriesScalar S>
S z2_closed(const TrigSeries<S>& a) {
  Rational scratch;
  return multiset_form(a, 4, [&](std::span<const int> t) -> const Rational& {
    scratch = z2_coeff_closed(t[0], t[1], t[2], t[3]);
    return scratch;
  });
}

bool coeff_bound_check(const MultiIndex& j) {
  const Rational z = symmetrize_Z(j);
  Integer bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), static_cast<unsigned long>(2 * j.l1_norm()),
                static_cast<unsigned long>(j.size() + 1));
  bound *= 2;
  return sgn(z) >= 0 && z <= Rational(bound);
}

namespace {

void ordered_rec(int slots_left, int radius, long partial, std::vector<int>& tuple, std::vector<CoeffRow>& rows) {
  if (slots_left == 0) {
    if (partial == 0) rows.push_back({tuple, Rational(brute_N_raw(tuple))});
    return;
  }
  for (int v = -radius; v <= radius; ++v) {
    const long rest = partial + v;
    if (std::abs(rest) > static_cast<long>(slots_left - 1) * radius) continue;
    tuple.push_back(v);
    ordered_rec(slots_left - 1, radius, rest, tuple, rows);
    tuple.pop_back();
  }
}

}  // namespace

std::vector<CoeffRow> coefficient_table(int k, int radius, bool symmetrized) {
  if (k < 1 || radius < 0) throw std::invalid_argument("coefficient_table needs k >= 1 and radius >= 0");
  std::vector<CoeffRow> rows;
  if (symmetrized) {
    std::vector<int> support(static_cast<std::size_t>(2 * radius + 1));
    std::iota(support.begin(), support.end(), -radius);
    CoefficientCache cache;
    for_each_zero_sum_multiset(support, 2 * k, [&](std::span<const int> t, std::uint64_t) {
      rows.push_back({std::vector<int>(t.begin(), t.end()), cache.z(t)});
    });
  } else {
    std::vector<int> tuple;
    ordered_rec(2 * k, radius, 0, tuple, rows);
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const CoeffRow> rows) {
  for (const auto& row : rows) {
    for (int v : row.indices) out << v << ',';
    out << row.value.get_num().get_str() << ',' << row.value.get_den().get_str() << '\n';
  }
}

template RationalComplex zeta_invariant(const ExactSeries&, int, CoefficientCache&);
template Complex zeta_invariant(const FloatSeries&, int, CoefficientCache&);
template RationalComplex z1_closed(const ExactSeries&);
template Complex z1_closed(const FloatSeries&);
template RationalComplex z2_closed(const ExactSeries&);
template Complex z2_closed(const FloatSeries&);

}  // namespace steklov
