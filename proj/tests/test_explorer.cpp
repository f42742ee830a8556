#include <catch_amalgamated.hpp>

#include <sstream>

#include "steklov/explorer.hpp"
#include "steklov/zeta_core.hpp"

using namespace steklov;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("seeded streams are reproducible", "[explorer]") {
  SampleRng a = SampleRng::for_sample(42, 7), b = SampleRng::for_sample(42, 7), c = SampleRng::for_sample(42, 8);
  const FloatSeries x = random_real_series(2, 1.0, a);
  CHECK(x == random_real_series(2, 1.0, b));
  CHECK_FALSE(x == random_real_series(2, 1.0, c));
  std::uint64_t state = 0;
  CHECK(splitmix64(state) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("random real series", "[explorer]") {
  SampleRng rng(1);
  for (int s = 0; s < 20; ++s) {
    const FloatSeries a = random_real_series(4, 0.5, rng);
    CHECK(is_real(a));
    CHECK(a.degree() <= 4);
    for (const auto& [n, c] : a.coeffs()) CHECK(std::abs(c) <= 0.5);
  }
  CHECK(random_real_series(3, 0.0, rng).is_zero());
  CHECK(min_on_circle(random_positive_series(5, 1.0, rng)) > 0.0);
  CHECK(is_real(random_rational_series(3, 5, 5, rng)));
}

TEST_CASE("inequality ratio", "[explorer]") {
  const FloatSeries a{{2, 1.0}, {-2, 1.0}};
  CHECK_THAT(inequality_ratio(a, 1), WithinAbs(0.5, 1e-15));
  CHECK_THAT(inequality_ratio(a, 1, true), WithinAbs(0.25, 1e-15));
  for (int n : {2, 5, 11}) {
    const FloatSeries single{{n, 1.0}, {-n, 1.0}};
    const double nn = n;
    CHECK_THAT(inequality_ratio(single, 1), WithinRel((2.0 / 3.0) * (nn * nn * nn - nn) / (nn * nn * nn), 1e-12));
  }
  CHECK_THROWS_AS(inequality_ratio(FloatSeries{{1, 1.0}, {-1, 1.0}}, 1), DegenerateDenominator);
  CHECK_THROWS_AS(inequality_ratio(FloatSeries{{2, 1.0}}, 1), NotReal);
}

TEST_CASE("A_kappa form", "[explorer]") {
  const auto h = a_kappa_form(0.0, 2);
  REQUIRE(h.rows() == 1);
  CHECK_THAT(h(0, 0).real(), WithinAbs(16.0, 1e-12));
  const auto d = a_kappa_form(0.0, 6);
  for (int n = 2; n <= 6; ++n) {
    const double nn = n;
    CHECK_THAT(d(n - 2, n - 2).real(), WithinRel(0.8 * nn * (nn * nn - 1) * (nn * nn - 2.0 / 3.0), 1e-14));
  }
  CHECK(d(0, 1) == Complex{});
  for (double kappa : {0.0, 0.5, -0.5, 1.0, -1.0}) CHECK(positive_definite_check(a_kappa_form(kappa, 10)));
}

TEST_CASE("trinomial decomposition", "[explorer]") {
  const auto zero = trinomial_extract(FloatSeries{}, 0.7);
  CHECK(zero.A == 0.0);
  CHECK(zero.B == 0.0);
  CHECK(zero.N0 == 0.0);

  const FloatSeries tail{{2, 1.0}, {-2, 1.0}};
  const auto t0 = trinomial_extract(tail, 0.0);
  CHECK_THAT(t0.A, WithinRel(a_kappa_value(tail, 0.0), 1e-9));
  CHECK_THAT(t0.N0, WithinRel(z2_closed(tail).real(), 1e-12));

  const FloatSeries longer{{2, Complex(0.3, 0.2)}, {-2, Complex(0.3, -0.2)}, {3, Complex(-0.4, 0.1)},
                           {-3, Complex(-0.4, -0.1)}, {5, Complex(0.05, 0.0)}, {-5, Complex(0.05, 0.0)}};
  for (double kappa : {0.0, 0.5, -1.0, 2.0}) {
    const auto t = trinomial_extract(longer, kappa);
    CHECK_THAT(t.A, WithinRel(a_kappa_value(longer, kappa), 1e-9));
    FloatSeries a = longer;
    a.add(0, 2.0);
    a.add(1, 2.0 * kappa);
    a.add(-1, 2.0 * kappa);
    const double z = z2_closed(a).real();
    CHECK(std::abs(t(2.0) - z) <= 1e-9 * std::abs(z));
  }
  CHECK_THROWS_AS(trinomial_extract(FloatSeries{{1, 1.0}}, 0.0), std::invalid_argument);
}

TEST_CASE("positive definiteness", "[explorer]") {
  CHECK(positive_definite_check(Eigen::MatrixXcd::Identity(3, 3)));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  CHECK_FALSE(positive_definite_check(m));
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(positive_definite_check(m), NotHermitian);
}

TEST_CASE("campaign", "[explorer]") {
  CampaignConfig cfg;
  cfg.seed = 99;
  cfg.count = 40;
  cfg.n0 = 4;
  cfg.kappas = {0.0, 0.5};
  const auto report = z2_nonneg_campaign(cfg);
  CHECK(report.records.size() == 40);
  CHECK(report.failures.empty());
  CHECK(report.min_z2 >= 0.0);
  for (const auto& r : report.records) {
    CHECK(r.z1 >= 0.0);
    CHECK(r.z2 >= 0.0);
  }
  CHECK(report.kappas.size() == 2);

  CampaignConfig parallel = cfg;
  parallel.jobs = 3;
  CHECK(to_json(z2_nonneg_campaign(parallel)).dump() == to_json(report).dump());

  std::ostringstream csv;
  write_csv(csv, report);
  CHECK(csv.str().rfind("index,seed,z1,z2", 0) == 0);
}

TEST_CASE("campaign on the span of -1, 0, 1", "[explorer]") {
  CampaignConfig cfg;
  cfg.count = 20;
  cfg.restrict_to_L = true;
  for (bool exact : {false, true}) {
    cfg.exact = exact;
    const auto report = z2_nonneg_campaign(cfg);
    for (const auto& r : report.records) {
      CHECK(r.z2 == 0.0);
      CHECK_FALSE(r.ratio2.has_value());
    }
  }
}

TEST_CASE("single sample matches zeta_core", "[explorer]") {
  const FloatSeries a{{2, 1.0}, {-2, 1.0}};
  CHECK_THAT(z2_closed(a).real(), WithinAbs(48.0, 1e-12));
  CampaignConfig cfg;
  cfg.count = 1;
  cfg.exact = true;
  const auto report = z2_nonneg_campaign(cfg);
  const auto& r = report.records.front();
  SampleRng rng(r.seed);
  const ExactSeries again = round_to_rational(random_real_series(cfg.n0, cfg.scale, rng));
  CHECK(*r.z2_exact == to_string(z2_closed(again).re));
  CHECK(to_string(zeta_invariant(again, 2).re) == *r.z2_exact);
}

TEST_CASE("estimate from Z_1", "[explorer]") {
  SampleRng rng(17);
  for (int s = 0; s < 20; ++s) {
    const FloatSeries a = random_real_series(5, 1.0, rng);
    const double z1 = z1_closed(a).real();
    for (int n = 2; n <= 5; ++n) {
      const double nn = n;
      CHECK(std::abs(a[n]) <= std::sqrt(3.0 * z1 / (2.0 * (nn * nn * nn - nn))) * (1 + 1e-12));
    }
  }
}

TEST_CASE("config validation", "[explorer]") {
  CampaignConfig cfg;
  cfg.n0 = 1;
  CHECK_THROWS_AS(z2_nonneg_campaign(cfg), std::invalid_argument);
}
