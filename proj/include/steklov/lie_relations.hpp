#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "steklov/fourier.hpp"
#include "steklov/zeta_core.hpp"

namespace steklov {

/// Real basis (C, D, E) of the conformal Lie algebra and the complex basis
/// (D0, D-, D+).
enum class GeneratorName { C, D, E, D0, Dminus, Dplus };

std::string_view to_string(GeneratorName g);
/// Accepts "C", "D", "E", "D0", "D-"/"Dminus", "D+"/"Dplus".
std::optional<GeneratorName> parse_generator(std::string_view text);

/// Coefficientwise action:
///   (Ca)_n = i n a_n               (D0 a)_n = n a_n
///   (Da)_n = (n-2) a_{n-1} - (n+2) a_{n+1}
///   (Ea)_n = -i [(n-2) a_{n-1} + (n+2) a_{n+1}]
///   (D- a)_n = (n-2) a_{n-1}       (D+ a)_n = (n+2) a_{n+1}
template <SeriesScalar S>
TrigSeries<S> apply_generator(GeneratorName g, const TrigSeries<S>& a);

/// ([g,h] - rhs)(a), where rhs is the tabulated value of the bracket.
/// Operators act on the right, so [g,h]a = h(g(a)) - g(h(a)).
/// Throws UnknownBracket for pairs outside the two tables.
template <SeriesScalar S>
TrigSeries<S> bracket_residual(GeneratorName g, GeneratorName h, const TrigSeries<S>& a);

/// max_n |bracket_residual(g, h, a)_n|; exactly 0 for a rational identity.
template <SeriesScalar S>
double bracket_check(GeneratorName g, GeneratorName h, const TrigSeries<S>& a);

enum class CoeffSource { Brute, Closed };

/// sum_alpha (j_alpha - 1) Z_{..., j_alpha + 1, ...} for sum(j) = -1.
/// Throws WrongSum otherwise. The closed source exists for k = 1, 2 only.
Rational relation_6_12_check(int k, const MultiIndex& j, CoeffSource source, CoefficientCache& cache);
Rational relation_6_12_check(int k, const MultiIndex& j, CoeffSource source = CoeffSource::Brute);

/// The four relation families obtained by differentiating along D, E, D+, D-:
///   Plus   sum (j_a - 1) Z_{.., j_a+1, ..}
///   Minus  sum (j_a + 1) Z_{.., j_a-1, ..}
///   D      Plus - Minus
///   E      Plus + Minus
enum class RelationVariant { D, E, Plus, Minus };

std::optional<RelationVariant> parse_variant(std::string_view text);

/// Left-hand side of the chosen relation with brute-force coefficients.
Rational relation_family_check(int k, const MultiIndex& j, RelationVariant variant, CoefficientCache& cache);
Rational relation_family_check(int k, const MultiIndex& j, RelationVariant variant);

struct RelationRow {
  std::vector<int> indices;
  Rational lhs;
  bool pass() const { return sgn(lhs) == 0; }
};

/// Every ordered tuple with |j_i| <= radius and sum -1, in lexicographic
/// order. Work is split over `jobs` threads, each with its own cache; the
/// result does not depend on `jobs`.
std::vector<RelationRow> relation_sweep(int k, int radius, CoeffSource source, int jobs = 1);

/// CSV "j_1,...,j_{2k},numerator,denominator,pass".
void write_relation_csv(std::ostream& out, int k, std::span<const RelationRow> rows);

}  // namespace steklov
