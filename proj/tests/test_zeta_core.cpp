#include <catch_amalgamated.hpp>

#include <sstream>

#include "steklov/explorer.hpp"
#include "steklov/zeta_core.hpp"

using namespace steklov;

namespace {

RationalComplex q(long p, long d = 1) {
  Rational x(p, d);
  x.canonicalize();
  return RationalComplex(x);
}

}  // namespace

TEST_CASE("MultiIndex needs even length", "[zeta]") {
  CHECK_THROWS_AS(MultiIndex({1, 2, 3}), std::invalid_argument);
  const MultiIndex j{2, -1, 0, -1};
  CHECK(j.order() == 2);
  CHECK(j.sum() == 0);
  CHECK(j.l1_norm() == 4);
}

TEST_CASE("brute N values", "[zeta]") {
  CHECK(brute_N(MultiIndex{2, 2, -1, -3}) == 12);
  CHECK(brute_N(MultiIndex{0, 0}) == 0);
  CHECK_THROWS_AS(brute_N(MultiIndex{1, 1}), NonZeroSum);
}

TEST_CASE("symmetrized Z values", "[zeta]") {
  CHECK(symmetrize_Z(MultiIndex{1, 1, -1, -1}) == 0);
  CHECK(symmetrize_Z_full(MultiIndex{1, 1, -1, -1}) == 0);
  CHECK(symmetrize_Z(MultiIndex{2, -2, 0, 0}) == Rational(4, 3));
  CHECK(symmetrize_Z(MultiIndex{-3, 2, 2, -1}) == 8);
  CHECK(symmetrize_Z(MultiIndex{5, -1, -1, -3}) == 48);
  CHECK(symmetrize_Z(MultiIndex{2, -2}) == 2);
}

TEST_CASE("both symmetrizations agree", "[zeta]") {
  for (const auto& j : {MultiIndex{3, -1, -1, -1}, MultiIndex{2, 1, -4, 1}, MultiIndex{1, 2, -3, 0, 1, -1}})
    CHECK(symmetrize_Z(j) == symmetrize_Z_full(j));
}

TEST_CASE("Z is symmetric, even and cyclic", "[zeta]") {
  const Rational z = symmetrize_Z(MultiIndex{4, -1, -2, -1});
  CHECK(symmetrize_Z(MultiIndex{-1, -2, -1, 4}) == z);
  CHECK(symmetrize_Z(MultiIndex{-4, 1, 2, 1}) == z);
  CHECK(symmetrize_Z(MultiIndex{-1, 4, -1, -2}) == z);
}

TEST_CASE("Edward's formula for k = 1", "[zeta]") {
  for (int j = -12; j <= 12; ++j) {
    const long v = j;
    CHECK(3 * symmetrize_Z(MultiIndex{j, -j}) == std::abs(v * v * v - v));
  }
}

TEST_CASE("zeta invariant values", "[zeta]") {
  const ExactSeries a{{2, q(1)}, {-2, q(1)}};
  CHECK(zeta_invariant(a, 1) == q(4));
  CHECK(zeta_invariant(a, 2) == q(48));
  CHECK(z1_closed(a) == q(4));
  CHECK(z2_closed(a) == q(48));

  const ExactSeries b{{1, q(1, 2)}, {-1, q(1, 2)}, {3, q(1, 3)}, {-3, q(1, 3)}, {0, q(2)}};
  CHECK(zeta_invariant(b, 2) == q(6928, 81));
  CHECK(z2_closed(b) == q(6928, 81));

  const ExactSeries c{{0, q(1)}, {2, q(1, 2)}, {-2, q(1, 2)}};
  CHECK(zeta_invariant(c, 2) == q(7));
}

TEST_CASE("zeta invariant vanishes on the span of -1, 0, 1", "[zeta]") {
  const ExactSeries a{{-1, q(3, 7)}, {0, q(-2)}, {1, q(3, 7)}};
  for (int k = 1; k <= 3; ++k) CHECK(zeta_invariant(a, k) == q(0));
}

TEST_CASE("zeta invariant is a homogeneous 2k-form", "[zeta]") {
  const ExactSeries a{{0, q(1)}, {1, q(1, 2)}, {-1, q(1, 2)}, {2, RationalComplex(Rational(1, 3), Rational(1))},
                      {-2, RationalComplex(Rational(1, 3), Rational(-1))}};
  const RationalComplex c = q(-3, 2);
  for (int k = 1; k <= 2; ++k) {
    RationalComplex c2k = q(1);
    for (int i = 0; i < 2 * k; ++i) c2k *= c;
    CHECK(zeta_invariant(c * a, k) == c2k * zeta_invariant(a, k));
  }
}

TEST_CASE("closed form agrees with brute force on a small ball", "[zeta]") {
  for (int i = -5; i <= 5; ++i)
    for (int j = i; j <= 5; ++j)
      for (int k = j; k <= 5; ++k) {
        const int l = -(i + j + k);
        if (l < k || l > 5) continue;
        const Rational closed = z2_coeff_closed(i, j, k, l);
        CHECK(closed == symmetrize_Z(MultiIndex{i, j, k, l}));
        const Rational three = 3 * closed;
        CHECK(three.get_den() == 1);
        CHECK(three.get_num() % 2 == 0);
        CHECK(sgn(three) >= 0);
      }
  CHECK(z2_coeff_closed(1, 2, 3, 4) == 0);
}

TEST_CASE("canonical regions", "[zeta]") {
  CHECK(in_case1(0, 2, 3));
  CHECK_FALSE(in_case1(-1, 2, 3));
  CHECK(in_case2(-3, 1, 2));
  CHECK_FALSE(in_case2(-3, 4, 2));
}

TEST_CASE("coefficient bound", "[zeta]") {
  CHECK(coeff_bound_check(MultiIndex{5, -1, -1, -3}));
  CHECK(coeff_bound_check(MultiIndex{2, -3, 1, 0, 1, -1}));
}

TEST_CASE("float and rational backends agree", "[zeta]") {
  SampleRng rng(7);
  for (int s = 0; s < 5; ++s) {
    const ExactSeries a = random_rational_series(3, 9, 7, rng);
    const FloatSeries f = to_float(a);
    for (int k = 1; k <= 2; ++k) {
      const double exact = zeta_invariant(a, k).re.get_d();
      CHECK(std::abs(zeta_invariant(f, k).real() - exact) <= 1e-9 * (1.0 + std::abs(exact)));
    }
  }
}

TEST_CASE("zero-sum multiset enumeration", "[zeta]") {
  const std::vector<int> support{-2, -1, 0, 1, 2};
  std::uint64_t orderings = 0;
  std::size_t tuples = 0;
  for_each_zero_sum_multiset(support, 2, [&](std::span<const int> t, std::uint64_t m) {
    CHECK(t[0] + t[1] == 0);
    orderings += m;
    ++tuples;
  });
  CHECK(tuples == 3);
  CHECK(orderings == 5);
}

TEST_CASE("coefficient tables", "[zeta]") {
  const auto rows = coefficient_table(1, 2, true);
  std::ostringstream s;
  write_csv(s, rows);
  CHECK(s.str().find("-2,2,2,1") != std::string::npos);
  const auto ordered = coefficient_table(1, 2, false);
  CHECK(ordered.size() == 5);
}
