#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "steklov/conformal.hpp"
#include "steklov/explorer.hpp"
#include "steklov/zeta_core.hpp"

using namespace steklov;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Rational r(long p, long d = 1) {
  Rational x(p, d);
  x.canonicalize();
  return x;
}

// Trapezoid rule for the defining contour integral of mu_nk:
// (1/2pi) int e^{-in theta} e^{ik phi(theta)} / phi'(theta) d theta.
double mu_quadrature(int n, int k, double rho, int nodes = 4096) {
  Complex sum{};
  for (int m = 0; m < nodes; ++m) {
    const double th = 2.0 * std::numbers::pi * m / nodes;
    const Complex z = std::polar(1.0, th);
    const Complex w = (z - rho) / (1.0 - rho * z);
    const double dphi = (1.0 - rho * rho) / std::norm(1.0 - rho * z);
    sum += std::polar(1.0, -n * th) * std::pow(w, k) / dphi;
  }
  return (sum / double(nodes)).real();
}

}  // namespace

TEST_CASE("binomial convention", "[conformal]") {
  CHECK(binom(5, 2) == 10);
  CHECK(binom(-1, 0) == 0);
  CHECK(binom(3, -1) == 0);
  CHECK(binom(3, 4) == 0);
  CHECK(binom(0, 0) == 1);
}

TEST_CASE("mu closed forms", "[conformal]") {
  for (const Rational& rho : {r(1, 3), r(1, 2), r(3, 5)}) {
    const Rational one_minus = 1 - rho * rho;
    CHECK(mu(0, 0, rho) == (1 + rho * rho) / one_minus);
    CHECK(mu(5, 1, rho) == 0);
    CHECK(mu(-1, 2, rho) == -rho * rho * rho / one_minus);
  }
  CHECK(mu(3, 4, r(1, 2)) == r(-45, 128));
  CHECK_THAT(mu(3, 4, 0.5), WithinAbs(-0.3515625, 1e-15));
}

TEST_CASE("mu matches the contour integral", "[conformal]") {
  for (int n = -6; n <= 6; ++n)
    for (int k = -6; k <= 6; ++k) CHECK_THAT(mu(n, k, 0.4), WithinAbs(mu_quadrature(n, k, 0.4), 1e-12));
}

TEST_CASE("zero patterns and evenness", "[conformal]") {
  for (const Rational& rho : {r(1, 3), r(-1, 2), r(3, 5), r(1, 7), r(-4, 9)})
    for (int n = -20; n <= 20; ++n)
      for (int k = -20; k <= 20; ++k) {
        const Rational m = mu(n, k, rho);
        CHECK(m == mu(-n, -k, rho));
        if ((n <= -2 && k >= -1) || (n >= 2 && k <= 1)) CHECK(m == 0);
        if (std::abs(n) >= 2 && std::abs(k) <= 1) CHECK(m == 0);
      }
}

TEST_CASE("mu matrix structure", "[conformal]") {
  const auto id = mu_matrix(MoebiusParam<Rational>(r(0)), 6);
  CHECK(id.max_abs_diff(TruncatedMatrix<Rational>::identity(6), 6) == 0.0);

  const Rational rho = r(1, 2);
  const auto m = mu_matrix(MoebiusParam<Rational>(rho), 4);
  const Rational lambda = (1 - rho) / (1 + rho);
  const Rational v[3] = {r(1, 2), r(1), r(1, 2)};
  for (int n = -4; n <= 4; ++n) {
    Rational s = 0;
    for (int k = -1; k <= 1; ++k) s += m(n, k) * v[k + 1];
    CHECK(s == (std::abs(n) <= 1 ? lambda * v[n + 1] : r(0)));
  }
  CHECK_THROWS_AS(mu_matrix(MoebiusParam<double>(0.1), 0), std::invalid_argument);
  CHECK_THROWS_AS(MoebiusParam<double>(1.0), std::domain_error);
}

TEST_CASE("d matrix entries", "[conformal]") {
  const auto d = d_matrix(6);
  CHECK(d(3, 2) == 1.0);
  CHECK(d(3, 4) == -5.0);
  CHECK(d(0, 5) == 0.0);
}

TEST_CASE("apply_moebius", "[conformal]") {
  const MoebiusParam<Rational> rho(r(3, 10));
  const ExactSeries one{{0, RationalComplex(r(1))}};
  const auto b = apply_moebius(one, rho, 8);
  for (int n = -8; n <= 8; ++n) CHECK(b[n] == RationalComplex(mu(n, 0, rho.rho())));

  const ExactSeries cosine{{0, RationalComplex(r(1))}, {1, RationalComplex(r(1, 2))}, {-1, RationalComplex(r(1, 2))}};
  const auto c = apply_moebius(cosine, rho, 8);
  CHECK(c == RationalComplex((1 - rho.rho()) / (1 + rho.rho())) * cosine);

  const ExactSeries a{{2, RationalComplex(r(1), r(2))}, {-1, RationalComplex(r(3))}};
  const auto same = apply_moebius(a, MoebiusParam<Rational>(r(0)), 4);
  CHECK(same == a);
}

TEST_CASE("pullback matches the closed form", "[conformal]") {
  const FloatSeries one{{0, 1.0}};
  const auto b = pullback_direct(one, MoebiusParam<double>(0.5), 1024, 10);
  for (int n = -10; n <= 10; ++n) CHECK_THAT(b[n].real(), WithinAbs(mu(n, 0, 0.5), 1e-10));

  const FloatSeries cosine{{0, 1.0}, {1, 0.5}, {-1, 0.5}};
  const auto c = pullback_direct(cosine, MoebiusParam<double>(0.3), 512, 6);
  for (int n = -6; n <= 6; ++n) CHECK(std::abs(c[n] - (0.7 / 1.3) * cosine[n]) < 1e-10);

  const FloatSeries a{{2, Complex(0.5, -0.25)}, {-2, Complex(0.5, 0.25)}, {0, 3.0}};
  const auto same = pullback_direct(a, MoebiusParam<double>(0.0), 64, 5);
  for (int n = -5; n <= 5; ++n) CHECK(std::abs(same[n] - a[n]) < 1e-12);

  CHECK_THROWS_AS(pullback_direct(a, MoebiusParam<double>(0.1), 10, 5), GridTooSmall);
}

TEST_CASE("apply_moebius and pullback agree", "[conformal]") {
  SampleRng rng(11);
  for (int s = 0; s < 4; ++s) {
    const FloatSeries a = random_real_series(3, 1.0, rng);
    for (double rho : {0.2, -0.45}) {
      const auto b = apply_moebius(a, MoebiusParam<double>(rho), 15);
      const auto c = pullback_direct(a, MoebiusParam<double>(rho), 2048, 15);
      for (int n = -15; n <= 15; ++n) CHECK(std::abs(b[n] - c[n]) <= 1e-9);
    }
  }
}

TEST_CASE("rotation and conjugation", "[conformal]") {
  const FloatSeries a{{0, 1.0}, {2, Complex(0.3, 0.1)}, {-2, Complex(0.3, -0.1)}, {3, Complex(0.0, 0.2)},
                      {-3, Complex(0.0, -0.2)}};
  CHECK(rotate(a, 0.0) == a);
  const ExactSeries b{{2, RationalComplex(r(1), r(1))}};
  CHECK(conjugate(b) == ExactSeries{{-2, RationalComplex(r(1), r(1))}});
  CHECK(conjugate(conjugate(b)) == b);

  for (int k = 1; k <= 2; ++k) {
    const Complex z = zeta_invariant(a, k);
    CHECK(std::abs(zeta_invariant(rotate(a, 0.7), k) - z) <= 1e-10 * (1.0 + std::abs(z)));
  }
  const ExactSeries e{{0, RationalComplex(r(2))}, {1, RationalComplex(r(1), r(1, 3))},
                      {-1, RationalComplex(r(1), r(-1, 3))}, {2, RationalComplex(r(1, 2), r(1))},
                      {-2, RationalComplex(r(1, 2), r(-1))}};
  for (int k = 1; k <= 3; ++k) CHECK(zeta_invariant(conjugate(e), k) == zeta_invariant(e, k));
}

TEST_CASE("group law", "[conformal]") {
  CHECK(group_law_check(MoebiusParam<Rational>(r(1, 3)), MoebiusParam<Rational>(r(0)), 8) == 0.0);
  CHECK(group_law_check(MoebiusParam<double>(0.3), MoebiusParam<double>(-0.3), 40, 10) < 1e-12);
  const double coarse = group_law_check(MoebiusParam<double>(0.3), MoebiusParam<double>(0.3), 30, 10);
  const double fine = group_law_check(MoebiusParam<double>(0.3), MoebiusParam<double>(0.3), 50, 10);
  CHECK(fine < coarse);
  CHECK(fine < 1e-12);
}

TEST_CASE("exponential relation", "[conformal]") {
  CHECK(exp_relation_check(MoebiusParam<double>(0.0), 10, 5) == 0.0);
  CHECK(exp_relation_check(MoebiusParam<double>(0.2), 20, 400, 8) < 1e-10);
  CHECK_THAT(exp_convergence_ratio(MoebiusParam<double>(0.2), 20, 10, 8), WithinRel(16.0, 0.15));
}

TEST_CASE("decay bound", "[conformal]") {
  CHECK(decay_constant(1) == 0.0);
  CHECK(decay_constant(2) == 1.0);
  for (double rho : {0.3, 0.6})
    for (int k = -6; k <= 6; ++k) {
      if (k == 0) continue;
      for (int n = 2 * std::abs(k); n <= 40; ++n)
        for (int sign : {1, -1}) {
          const double bound = decay_constant(std::abs(k)) * std::pow(n, std::abs(k)) * std::pow(rho, n / 2.0);
          CHECK(std::fabs(mu(sign * n, k, rho)) <= bound * (1 + 1e-12) + 1e-300);
        }
    }
}

TEST_CASE("truncation degree", "[conformal]") {
  const FloatSeries a{{0, 1.0}, {2, 0.5}, {-2, 0.5}};
  const int d = truncation_degree(a, 0.3, 1e-12);
  CHECK(d >= 4);
  const auto b = apply_moebius(a, MoebiusParam<double>(0.3), d + 40);
  double tail = 0.0;
  for (const auto& [n, c] : b.coeffs())
    if (std::abs(n) > d) tail += std::abs(c);
  CHECK(tail < 1e-12);
  CHECK(truncation_degree(a, 0.0, 1e-12) == a.degree());
}
