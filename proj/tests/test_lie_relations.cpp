#include <catch_amalgamated.hpp>

#include <sstream>

#include "steklov/explorer.hpp"
#include "steklov/lie_relations.hpp"

using namespace steklov;

namespace {

RationalComplex q(long p, long d = 1) {
  Rational x(p, d);
  x.canonicalize();
  return RationalComplex(x);
}

constexpr GeneratorName kAll[] = {GeneratorName::C,  GeneratorName::D,      GeneratorName::E,
                                  GeneratorName::D0, GeneratorName::Dminus, GeneratorName::Dplus};

}  // namespace

TEST_CASE("generator examples", "[lie]") {
  CHECK(apply_generator(GeneratorName::Dplus, ExactSeries{{1, q(1)}}) == ExactSeries{{0, q(2)}});
  CHECK(apply_generator(GeneratorName::C, ExactSeries{{0, q(5)}}).is_zero());
  CHECK(apply_generator(GeneratorName::D, ExactSeries{{0, q(1)}}) == ExactSeries{{1, q(-1)}, {-1, q(-1)}});
  CHECK(apply_generator(GeneratorName::D0, ExactSeries{{3, q(2)}}) == ExactSeries{{3, q(6)}});
  CHECK(apply_generator(GeneratorName::Dminus, ExactSeries{{3, q(1)}}) == ExactSeries{{4, q(2)}});
  CHECK(apply_generator(GeneratorName::C, ExactSeries{{2, q(1)}}) == ExactSeries{{2, RationalComplex::i() * q(2)}});
}

TEST_CASE("generators are linear", "[lie]") {
  SampleRng rng(3);
  const ExactSeries a = random_rational_series(3, 5, 4, rng, false);
  const ExactSeries b = random_rational_series(2, 5, 4, rng, false);
  const RationalComplex alpha(Rational(2, 3), Rational(-1)), beta = q(-5, 2);
  for (GeneratorName g : kAll)
    CHECK(apply_generator(g, alpha * a + beta * b) ==
          alpha * apply_generator(g, a) + beta * apply_generator(g, b));
}

TEST_CASE("complex basis in terms of C, D, E", "[lie]") {
  SampleRng rng(5);
  const ExactSeries a = random_rational_series(4, 7, 5, rng, false);
  const RationalComplex i = RationalComplex::i(), half = q(1, 2);
  const auto c = apply_generator(GeneratorName::C, a);
  const auto d = apply_generator(GeneratorName::D, a);
  const auto e = apply_generator(GeneratorName::E, a);
  CHECK(apply_generator(GeneratorName::D0, a) == (q(0) - i) * c);
  CHECK(apply_generator(GeneratorName::Dminus, a) == half * (d + i * e));
  CHECK(apply_generator(GeneratorName::Dplus, a) == half * (i * e - d));
}

TEST_CASE("real generators preserve real series", "[lie]") {
  SampleRng rng(9);
  const ExactSeries a = random_rational_series(4, 7, 5, rng, true);
  for (GeneratorName g : {GeneratorName::C, GeneratorName::D, GeneratorName::E})
    CHECK(is_real(apply_generator(g, a)));
}

TEST_CASE("bracket tables hold exactly", "[lie]") {
  CHECK(bracket_check(GeneratorName::C, GeneratorName::D, ExactSeries{{3, q(1)}}) == 0.0);
  CHECK(bracket_residual(GeneratorName::Dminus, GeneratorName::Dplus, ExactSeries{{2, q(1)}}).is_zero());
  SampleRng rng(13);
  const ExactSeries a = random_rational_series(5, 9, 6, rng, false);
  const std::pair<GeneratorName, GeneratorName> pairs[] = {
      {GeneratorName::C, GeneratorName::D},       {GeneratorName::C, GeneratorName::E},
      {GeneratorName::D, GeneratorName::E},       {GeneratorName::D0, GeneratorName::Dminus},
      {GeneratorName::D0, GeneratorName::Dplus},  {GeneratorName::Dminus, GeneratorName::Dplus}};
  for (auto [g, h] : pairs) {
    CHECK(bracket_residual(g, h, a).is_zero());
    CHECK(bracket_residual(h, g, a).is_zero());
  }
  for (GeneratorName g : kAll) CHECK(bracket_check(g, g, a) == 0.0);
  CHECK(bracket_check(GeneratorName::C, GeneratorName::D, to_float(a)) < 1e-12);
}

TEST_CASE("brackets vanish on the zero series", "[lie]") {
  CHECK(bracket_check(GeneratorName::D, GeneratorName::E, ExactSeries{}) == 0.0);
}

TEST_CASE("pairs outside the tables are rejected", "[lie]") {
  CHECK_THROWS_AS(bracket_check(GeneratorName::C, GeneratorName::Dplus, ExactSeries{{1, q(1)}}), UnknownBracket);
}

TEST_CASE("generator names", "[lie]") {
  CHECK(parse_generator("D-") == GeneratorName::Dminus);
  CHECK(parse_generator("Dplus") == GeneratorName::Dplus);
  CHECK_FALSE(parse_generator("X"));
  CHECK(to_string(GeneratorName::D0) == "D0");
}

TEST_CASE("relation examples", "[lie]") {
  CHECK(relation_6_12_check(1, MultiIndex{3, -4}, CoeffSource::Brute) == 0);
  CHECK(relation_6_12_check(1, MultiIndex{3, -4}, CoeffSource::Closed) == 0);
  CHECK(relation_6_12_check(2, MultiIndex{0, 0, 0, -1}, CoeffSource::Closed) == 0);
  CHECK(relation_6_12_check(3, MultiIndex{1, 1, -1, -1, 0, -1}, CoeffSource::Brute) == 0);
  CHECK_THROWS_AS(relation_6_12_check(1, MultiIndex{3, -3}), WrongSum);
  CHECK_THROWS_AS(relation_6_12_check(3, MultiIndex{1, 1, -1, -1, 0, -1}, CoeffSource::Closed),
                  std::invalid_argument);
}

TEST_CASE("misweighted relation does not vanish", "[lie]") {
  // Same shifted coefficients with weight (j + 1) instead of (j - 1).
  const MultiIndex j{2, 0, -1, -2};
  CoefficientCache cache;
  Rational wrong = 0;
  std::vector<int> t(j.entries().begin(), j.entries().end());
  for (std::size_t a = 0; a < t.size(); ++a) {
    const long w = t[a] + 1;
    ++t[a];
    wrong += w * cache.z(t);
    --t[a];
  }
  CHECK(wrong != 0);
  CHECK(relation_6_12_check(2, j, CoeffSource::Brute, cache) == 0);
}

TEST_CASE("relation families", "[lie]") {
  CoefficientCache cache;
  CHECK(relation_family_check(1, MultiIndex{2, -3}, RelationVariant::Plus, cache) == 0);
  for (const MultiIndex& j : {MultiIndex{2, 0, -1, -2}, MultiIndex{3, -1, 1, -4}, MultiIndex{1, 2, -3, 1}}) {
    std::vector<int> neg;
    for (int v : j.entries()) neg.push_back(-v);
    const Rational plus = relation_family_check(2, j, RelationVariant::Plus, cache);
    const Rational minus = relation_family_check(2, j, RelationVariant::Minus, cache);
    CHECK(relation_family_check(2, MultiIndex(neg), RelationVariant::Minus, cache) == -plus);
    CHECK(relation_family_check(2, j, RelationVariant::D, cache) == plus - minus);
    CHECK(relation_family_check(2, j, RelationVariant::E, cache) == plus + minus);
    CHECK(plus == 0);
    CHECK(minus == 0);
  }
  CHECK(parse_variant("6.42") == RelationVariant::Plus);
}

TEST_CASE("relation sweeps", "[lie]") {
  const auto rows = relation_sweep(1, 25, CoeffSource::Brute);
  CHECK(rows.size() == 50);
  for (const auto& r : rows) CHECK(r.pass());

  const auto brute = relation_sweep(2, 4, CoeffSource::Brute, 1);
  const auto closed = relation_sweep(2, 4, CoeffSource::Closed, 3);
  REQUIRE(brute.size() == closed.size());
  for (std::size_t i = 0; i < brute.size(); ++i) {
    CHECK(brute[i].indices == closed[i].indices);
    CHECK(brute[i].pass());
    CHECK(closed[i].pass());
  }

  std::ostringstream s;
  write_relation_csv(s, 1, std::span(rows).first(1));
  CHECK(s.str() == "j1,j2,numerator,denominator,pass\n-25,24,0,1,true\n");
}
