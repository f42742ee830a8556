#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "steklov/fourier.hpp"

namespace steklov {

/// One step of SplitMix64 on `state`.
std::uint64_t splitmix64(std::uint64_t& state);

/// Portable random stream. Sample i of a campaign with seed s uses the
/// mt19937_64 engine seeded by the (i+1)-th SplitMix64 output from state s,
/// so every sample is reproducible on its own.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}
  static SampleRng for_sample(std::uint64_t campaign_seed, std::uint64_t index);
  static std::uint64_t derive_seed(std::uint64_t campaign_seed, std::uint64_t index);

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi] by rejection.
  long integer(long lo, long hi);

 private:
  std::mt19937_64 engine_;
};

/// Real series a_{-n} = conj(a_n), |a_n| <= scale, supported on |n| <= n0.
FloatSeries random_real_series(int n0, double scale, SampleRng& rng);

/// Real series with a_0 shifted so that a > 0 on the circle.
FloatSeries random_positive_series(int n0, double scale, SampleRng& rng);

/// Rational series of degree <= n0 with parts p/q, |p| <= max_num, 1 <= q <= max_den.
/// With `real` the result satisfies a_{-n} = conj(a_n).
ExactSeries random_rational_series(int n0, long max_num, long max_den, SampleRng& rng, bool real = true);

/// Nearest rational with denominator `den` in each part.
ExactSeries round_to_rational(const FloatSeries& a, long den = 1000000);

struct CampaignConfig {
  std::uint64_t seed = 20240601;
  int count = 1000;
  int n0 = 5;
  double scale = 1.0;
  std::vector<double> kappas;
  /// Size of the A_kappa form checked for each kappa.
  int kappa_m = 10;
  std::string output;
  int jobs = 1;
  /// Sample rational coefficients (denominator 10^6) and evaluate exactly.
  bool exact = false;
  /// Draw samples from the span of frequencies -1, 0, 1.
  bool restrict_to_L = false;
  bool two_sided = false;

  void validate() const;
};

struct SampleRecord {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  double z1 = 0.0;
  double z2 = 0.0;
  std::optional<double> ratio1;
  std::optional<double> ratio2;
  /// Z_2 < -tol in floating point.
  bool candidate = false;
  /// Exact Z_2 of the rounded coefficients, for candidates and exact runs.
  std::optional<std::string> z2_exact;
  /// Negativity confirmed in exact arithmetic.
  bool failure = false;
};

struct KappaSummary {
  double kappa = 0.0;
  int m = 0;
  bool positive_definite = false;
  double min_pivot = 0.0;
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<SampleRecord> records;
  double min_z2 = 0.0;
  std::optional<double> min_ratio1;
  std::optional<double> min_ratio2;
  std::vector<std::uint64_t> candidates;
  std::vector<std::uint64_t> failures;
  std::vector<KappaSummary> kappas;
};

CampaignReport z2_nonneg_campaign(const CampaignConfig& cfg);

nlohmann::json to_json(const CampaignReport& report);
void write_csv(std::ostream& out, const CampaignReport& report);

/// Z_k(a) / sum_{n>=2} n^{2k+1} |a_n|^{2k}; with `two_sided` the sum also
/// runs over n <= -2 with |n| in place of n. Throws NotReal and
/// DegenerateDenominator.
template <SeriesScalar S>
double inequality_ratio(const TrigSeries<S>& a, int k, bool two_sided = false);

/// Leading coefficient form of Z_2 in a_0 (with a_1 = kappa a_0) on the
/// coordinates (a_2, ..., a_m), scaled by 4/5:
///   diagonal          (1 + 2 kappa^2) n (n^2-1) (n^2 - 2/3)
///   first off-diag    2 kappa n (n^2-1) (n+2) (n+1/2)
///   second off-diag   kappa^2 n (n^2-1) (n+2) (n+3)
Eigen::MatrixXcd a_kappa_form(double kappa, int m);
/// Same with m = max(2, deg tail).
Eigen::MatrixXcd a_kappa_form(const FloatSeries& tail, double kappa);

/// conj(v)^T A_kappa v with v = (a_2, ..., a_m) read from the tail.
double a_kappa_value(const FloatSeries& tail, double kappa);

/// Z_2(a) = A a_0^2 + 2 B a_0 + N0 with a_1 = a_{-1} = kappa a_0.
struct Trinomial {
  double A = 0.0;
  double B = 0.0;
  double N0 = 0.0;
  double operator()(double a0) const { return A * a0 * a0 + 2.0 * B * a0 + N0; }
};

/// Interpolates Z_2 at a_0 in {0, 1, -1}. The tail must vanish on |n| <= 1.
Trinomial trinomial_extract(const FloatSeries& tail, double kappa);

/// Positive definiteness by pivoted LDLT: every pivot must exceed
/// 1e-10 ||H||_F. Throws NotHermitian when ||H - H^*||_max > 1e-12 max(1, ||H||_max).
bool positive_definite_check(const Eigen::MatrixXcd& H);

/// Smallest LDLT pivot, as reported in campaign summaries.
double min_ldlt_pivot(const Eigen::MatrixXcd& H);

}  // namespace steklov
