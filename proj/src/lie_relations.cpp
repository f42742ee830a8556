#include "steklov/lie_relations.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "steklov/errors.hpp"

namespace steklov {

std::string_view to_string(GeneratorName g) {
  switch (g) {
    case GeneratorName::C: return "C";
    case GeneratorName::D: return "D";
    case GeneratorName::E: return "E";
    case GeneratorName::D0: return "D0";
    case GeneratorName::Dminus: return "D-";
    case GeneratorName::Dplus: return "D+";
  }
  return "?";
}

std::optional<GeneratorName> parse_generator(std::string_view text) {
  if (text == "C") return GeneratorName::C;
  if (text == "D") return GeneratorName::D;
  if (text == "E") return GeneratorName::E;
  if (text == "D0") return GeneratorName::D0;
  if (text == "D-" || text == "Dminus") return GeneratorName::Dminus;
  if (text == "D+" || text == "Dplus") return GeneratorName::Dplus;
  return std::nullopt;
}

template <SeriesScalar S>
TrigSeries<S> apply_generator(GeneratorName g, const TrigSeries<S>& a) {
  using T = scalar_traits<S>;
  const S i = T::imag_unit();
  auto num = [](long v) { return T::from_rational(Rational(v)); };
  TrigSeries<S> out;
  for (const auto& [m, c] : a.coeffs()) {
    // a_m feeds (n-2) a_{n-1} at n = m+1 and (n+2) a_{n+1} at n = m-1.
    const S up = num(m - 1) * c;
    const S down = num(m + 1) * c;
    switch (g) {
      case GeneratorName::C:
        out.add(m, i * num(m) * c);
        break;
      case GeneratorName::D0:
        out.add(m, num(m) * c);
        break;
      case GeneratorName::D:
        out.add(m + 1, up);
        out.add(m - 1, S{} - down);
        break;
      case GeneratorName::E:
        out.add(m + 1, S{} - i * up);
        out.add(m - 1, S{} - i * down);
        break;
      case GeneratorName::Dminus:
        out.add(m + 1, up);
        break;
      case GeneratorName::Dplus:
        out.add(m - 1, down);
        break;
    }
  }
  return out;
}

namespace {

struct BracketEntry {
  GeneratorName g, h, result;
  long factor;
};

constexpr BracketEntry kBrackets[] = {
    {GeneratorName::C, GeneratorName::D, GeneratorName::E, 1},
    {GeneratorName::C, GeneratorName::E, GeneratorName::D, -1},
    {GeneratorName::D, GeneratorName::E, GeneratorName::C, -4},
    {GeneratorName::D0, GeneratorName::Dminus, GeneratorName::Dminus, -1},
    {GeneratorName::D0, GeneratorName::Dplus, GeneratorName::Dplus, 1},
    {GeneratorName::Dminus, GeneratorName::Dplus, GeneratorName::D0, 2},
};

}  // namespace

template <SeriesScalar S>
TrigSeries<S> bracket_residual(GeneratorName g, GeneratorName h, const TrigSeries<S>& a) {
  using T = scalar_traits<S>;
  const TrigSeries<S> commutator = apply_generator(h, apply_generator(g, a)) - apply_generator(g, apply_generator(h, a));
  if (g == h) return commutator;
  for (const auto& e : kBrackets) {
    long sign = 0;
    if (e.g == g && e.h == h) sign = 1;
    if (e.g == h && e.h == g) sign = -1;
    if (sign == 0) continue;
    const S f = T::from_rational(Rational(sign * e.factor));
    return commutator - f * apply_generator(e.result, a);
  }
  throw UnknownBracket("no tabulated bracket for [" + std::string(to_string(g)) + ", " +
                       std::string(to_string(h)) + "]");
}

template <SeriesScalar S>
double bracket_check(GeneratorName g, GeneratorName h, const TrigSeries<S>& a) {
  double worst = 0.0;
  for (const auto& [n, c] : bracket_residual(g, h, a).coeffs())
    worst = std::max(worst, std::abs(scalar_traits<S>::to_complex(c)));
  return worst;
}

namespace {

void require_order(int k, const MultiIndex& j) {
  if (k < 1 || j.order() != k)
    throw std::invalid_argument("index tuple must have length 2k = " + std::to_string(2 * k));
}

Rational closed_coeff(int k, std::span<const int> j) {
  if (k == 1) {
    if (j[0] + j[1] != 0) return Rational(0);
    const long v = j[0];
    Rational z(Integer(std::abs(v * v * v - v)), Integer(3));
    z.canonicalize();
    return z;
  }
  return z2_coeff_closed(j[0], j[1], j[2], j[3]);
}

// sum_alpha (j_alpha - shift) Z_{..., j_alpha + shift, ...} with shift = +-1.
Rational shifted_sum(int k, const MultiIndex& j, int shift, CoeffSource source, CoefficientCache& cache) {
  std::vector<int> t(j.entries().begin(), j.entries().end());
  Rational total(0);
  for (std::size_t a = 0; a < t.size(); ++a) {
    const long w = t[a] - shift;
    if (w == 0) continue;
    t[a] += shift;
    if (source == CoeffSource::Closed)
      total += w * closed_coeff(k, t);
    else
      total += w * cache.z(t);
    t[a] -= shift;
  }
  return total;
}

}  // namespace

Rational relation_6_12_check(int k, const MultiIndex& j, CoeffSource source, CoefficientCache& cache) {
  require_order(k, j);
  if (j.sum() != -1) throw WrongSum("indices must sum to -1, got " + std::to_string(j.sum()));
  if (source == CoeffSource::Closed && k != 1 && k != 2)
    throw std::invalid_argument("closed-form coefficients exist only for k = 1, 2");
  return shifted_sum(k, j, 1, source, cache);
}

Rational relation_6_12_check(int k, const MultiIndex& j, CoeffSource source) {
  CoefficientCache cache;
  return relation_6_12_check(k, j, source, cache);
}

std::optional<RelationVariant> parse_variant(std::string_view text) {
  if (text == "D" || text == "6.40") return RelationVariant::D;
  if (text == "E" || text == "6.41") return RelationVariant::E;
  if (text == "plus" || text == "6.42") return RelationVariant::Plus;
  if (text == "minus" || text == "6.43") return RelationVariant::Minus;
  return std::nullopt;
}

Rational relation_family_check(int k, const MultiIndex& j, RelationVariant variant, CoefficientCache& cache) {
  require_order(k, j);
  switch (variant) {
    case RelationVariant::Plus:
      return shifted_sum(k, j, 1, CoeffSource::Brute, cache);
    case RelationVariant::Minus:
      return shifted_sum(k, j, -1, CoeffSource::Brute, cache);
    case RelationVariant::D:
      return Rational(shifted_sum(k, j, 1, CoeffSource::Brute, cache) -
                      shifted_sum(k, j, -1, CoeffSource::Brute, cache));
    case RelationVariant::E:
      return Rational(shifted_sum(k, j, 1, CoeffSource::Brute, cache) +
                      shifted_sum(k, j, -1, CoeffSource::Brute, cache));
  }
  throw std::logic_error("unhandled relation variant");
}

Rational relation_family_check(int k, const MultiIndex& j, RelationVariant variant) {
  CoefficientCache cache;
  return relation_family_check(k, j, variant, cache);
}

std::vector<RelationRow> relation_sweep(int k, int radius, CoeffSource source, int jobs) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (radius < 0) throw std::invalid_argument("radius must be non-negative");
  const int len = 2 * k;

  // Free entries j_1..j_{2k-1}; the last one is fixed by the sum.
  std::vector<std::vector<int>> tuples;
  std::vector<int> t(static_cast<std::size_t>(len), -radius);
  for (;;) {
    long partial = 0;
    for (int a = 0; a + 1 < len; ++a) partial += t[static_cast<std::size_t>(a)];
    const long last = -1 - partial;
    if (last >= -radius && last <= radius) {
      t.back() = static_cast<int>(last);
      tuples.push_back(t);
    }
    int a = len - 2;
    while (a >= 0 && t[static_cast<std::size_t>(a)] == radius) t[static_cast<std::size_t>(a--)] = -radius;
    if (a < 0) break;
    ++t[static_cast<std::size_t>(a)];
  }

  std::vector<RelationRow> rows(tuples.size());
  auto work = [&](std::size_t start, std::size_t stride) {
    CoefficientCache cache;
    for (std::size_t i = start; i < tuples.size(); i += stride)
      rows[i] = {tuples[i], relation_6_12_check(k, MultiIndex(tuples[i]), source, cache)};
  };
  const std::size_t n_jobs = static_cast<std::size_t>(std::max(1, jobs));
  if (n_jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_jobs; ++w) pool.emplace_back(work, w, n_jobs);
  }
  return rows;
}

void write_relation_csv(std::ostream& out, int k, std::span<const RelationRow> rows) {
  for (int a = 1; a <= 2 * k; ++a) out << 'j' << a << ',';
  out << "numerator,denominator,pass\n";
  for (const auto& r : rows) {
    for (int v : r.indices) out << v << ',';
    out << r.lhs.get_num().get_str() << ',' << r.lhs.get_den().get_str() << ',' << (r.pass() ? "true" : "false")
        << '\n';
  }
}

template TrigSeries<RationalComplex> apply_generator(GeneratorName, const ExactSeries&);
template TrigSeries<Complex> apply_generator(GeneratorName, const FloatSeries&);
template TrigSeries<RationalComplex> bracket_residual(GeneratorName, GeneratorName, const ExactSeries&);
template TrigSeries<Complex> bracket_residual(GeneratorName, GeneratorName, const FloatSeries&);
template double bracket_check(GeneratorName, GeneratorName, const ExactSeries&);
template double bracket_check(GeneratorName, GeneratorName, const FloatSeries&);

}  // namespace steklov
