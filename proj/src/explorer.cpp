#include "steklov/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "steklov/errors.hpp"
#include "steklov/zeta_core.hpp"

namespace steklov {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SampleRng::derive_seed(std::uint64_t campaign_seed, std::uint64_t index) {
  // Jumping the SplitMix64 counter directly to step index+1.
  std::uint64_t state = campaign_seed + index * 0x9e3779b97f4a7c15ULL;
  return splitmix64(state);
}

SampleRng SampleRng::for_sample(std::uint64_t campaign_seed, std::uint64_t index) {
  return SampleRng(derive_seed(campaign_seed, index));
}

double SampleRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

long SampleRng::integer(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("empty integer range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return lo + static_cast<long>(x % span);
}

FloatSeries random_real_series(int n0, double scale, SampleRng& rng) {
  if (n0 < 1) throw std::invalid_argument("n0 must be at least 1");
  std::map<int, Complex> c;
  c[0] = Complex(rng.uniform(-scale, scale), 0.0);
  for (int n = 1; n <= n0; ++n) {
    const double r = scale * rng.uniform();
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const Complex v = std::polar(r, phi);
    c[n] = v;
    c[-n] = std::conj(v);
  }
  return FloatSeries(std::move(c));
}

FloatSeries random_positive_series(int n0, double scale, SampleRng& rng) {
  FloatSeries a = random_real_series(n0, scale, rng);
  double mass = 0.0;
  for (const auto& [n, c] : a.coeffs())
    if (n != 0) mass += std::abs(c);
  std::map<int, Complex> c = a.coeffs();
  c[0] = Complex(mass + scale * (0.5 + rng.uniform()), 0.0);
  return FloatSeries(std::move(c));
}

ExactSeries random_rational_series(int n0, long max_num, long max_den, SampleRng& rng, bool real) {
  if (n0 < 0 || max_num < 0 || max_den < 1) throw std::invalid_argument("bad random rational parameters");
  auto draw = [&] {
    Rational q(rng.integer(-max_num, max_num), rng.integer(1, max_den));
    q.canonicalize();
    return q;
  };
  std::map<int, RationalComplex> c;
  if (real) {
    c[0] = RationalComplex(draw());
    for (int n = 1; n <= n0; ++n) {
      RationalComplex v(draw(), draw());
      c[-n] = conj(v);
      c[n] = std::move(v);
    }
  } else {
    for (int n = -n0; n <= n0; ++n) c[n] = RationalComplex(draw(), draw());
  }
  return ExactSeries(std::move(c));
}

namespace {

Rational round_part(double x, long den) {
  Rational q(Integer(static_cast<long>(std::llround(x * static_cast<double>(den)))), Integer(den));
  q.canonicalize();
  return q;
}

}  // namespace

ExactSeries round_to_rational(const FloatSeries& a, long den) {
  std::map<int, RationalComplex> c;
  for (const auto& [n, v] : a.coeffs()) c[n] = RationalComplex(round_part(v.real(), den), round_part(v.imag(), den));
  return ExactSeries(std::move(c));
}

void CampaignConfig::validate() const {
  if (count < 1) throw std::invalid_argument("count must be at least 1");
  if (n0 < 2) throw std::invalid_argument("n0 must be at least 2");
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw std::invalid_argument("scale must be finite and non-negative");
  if (kappa_m < 2) throw std::invalid_argument("kappa_m must be at least 2");
  if (jobs < 1) throw std::invalid_argument("jobs must be positive");
}

template <SeriesScalar S>
double inequality_ratio(const TrigSeries<S>& a, int k, bool two_sided) {
  if constexpr (scalar_traits<S>::exact) {
    if (!is_real(a)) throw NotReal("inequality ratio needs a real series");
  } else {
    if (!is_real_approx(a)) throw NotReal("inequality ratio needs a real series");
  }
  if (k < 1) throw std::invalid_argument("k must be positive");
  double denom = 0.0;
  for (const auto& [n, c] : a.coeffs()) {
    if (n >= 2 || (two_sided && n <= -2)) {
      const double m = std::abs(n);
      denom += std::pow(m, 2 * k + 1) * std::pow(std::abs(scalar_traits<S>::to_complex(c)), 2 * k);
    }
  }
  if (denom == 0.0) throw DegenerateDenominator("all coefficients with n >= 2 vanish");
  S z;
  if (k == 1)
    z = z1_closed(a);
  else if (k == 2)
    z = z2_closed(a);
  else
    z = zeta_invariant(a, k);
  return scalar_traits<S>::to_complex(z).real() / denom;
}

template double inequality_ratio(const ExactSeries&, int, bool);
template double inequality_ratio(const FloatSeries&, int, bool);

Eigen::MatrixXcd a_kappa_form(double kappa, int m) {
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  const int dim = m - 1;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 2; n <= m; ++n) {
    const int i = n - 2;
    const double base = n * (double(n) * n - 1.0);
    h(i, i) = 0.8 * (1.0 + 2.0 * kappa * kappa) * base * (double(n) * n - 2.0 / 3.0);
    if (n + 1 <= m) {
      const double v = 0.8 * 2.0 * kappa * base * (n + 2.0) * (n + 0.5);
      h(i, i + 1) = v;
      h(i + 1, i) = v;
    }
    if (n + 2 <= m) {
      const double v = 0.8 * kappa * kappa * base * (n + 2.0) * (n + 3.0);
      h(i, i + 2) = v;
      h(i + 2, i) = v;
    }
  }
  return h;
}

Eigen::MatrixXcd a_kappa_form(const FloatSeries& tail, double kappa) {
  return a_kappa_form(kappa, std::max(2, tail.degree()));
}

namespace {

void require_tail(const FloatSeries& tail) {
  for (int n = -1; n <= 1; ++n)
    if (tail[n] != Complex{}) throw std::invalid_argument("tail must vanish on |n| <= 1");
}

}  // namespace

double a_kappa_value(const FloatSeries& tail, double kappa) {
  require_tail(tail);
  const int m = std::max(2, tail.degree());
  Eigen::VectorXcd v(m - 1);
  for (int n = 2; n <= m; ++n) v(n - 2) = tail[n];
  return (v.adjoint() * a_kappa_form(kappa, m) * v)(0, 0).real();
}

Trinomial trinomial_extract(const FloatSeries& tail, double kappa) {
  require_tail(tail);
  auto z2_at = [&](double a0) {
    FloatSeries a = tail;
    a.add(0, Complex(a0, 0.0));
    a.add(1, Complex(kappa * a0, 0.0));
    a.add(-1, Complex(kappa * a0, 0.0));
    return z2_closed(a).real();
  };
  const double z0 = z2_at(0.0), zp = z2_at(1.0), zm = z2_at(-1.0);
  return {(zp + zm) / 2.0 - z0, (zp - zm) / 4.0, z0};
}

namespace {

void require_hermitian(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw NotHermitian("matrix is not square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw NotHermitian("matrix is not Hermitian");
}

}  // namespace

double min_ldlt_pivot(const Eigen::MatrixXcd& h) {
  require_hermitian(h);
  if (h.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(h);
  return ldlt.vectorD().real().minCoeff();
}

bool positive_definite_check(const Eigen::MatrixXcd& h) {
  require_hermitian(h);
  if (h.size() == 0) return true;
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(h);
  if (ldlt.info() != Eigen::Success) return false;
  return ldlt.vectorD().real().minCoeff() > 1e-10 * h.norm();
}

namespace {

double coefficient_mass(const FloatSeries& a) {
  double s = 0.0;
  for (const auto& [n, c] : a.coeffs()) s += std::abs(c);
  return s;
}

SampleRecord run_sample(const CampaignConfig& cfg, std::uint64_t index) {
  SampleRecord r;
  r.index = index;
  r.seed = SampleRng::derive_seed(cfg.seed, index);
  SampleRng rng(r.seed);
  const FloatSeries drawn = random_real_series(cfg.restrict_to_L ? 1 : cfg.n0, cfg.scale, rng);

  auto ratio = [&](const auto& a, int k) -> std::optional<double> {
    try {
      return inequality_ratio(a, k, cfg.two_sided);
    } catch (const DegenerateDenominator&) {
      return std::nullopt;
    }
  };

  if (cfg.exact) {
    const ExactSeries a = round_to_rational(drawn);
    const RationalComplex z2 = z2_closed(a);
    r.z1 = z1_closed(a).re.get_d();
    r.z2 = z2.re.get_d();
    r.z2_exact = to_string(z2.re);
    r.candidate = sgn(z2.re) < 0;
    r.failure = r.candidate;
    r.ratio1 = ratio(a, 1);
    r.ratio2 = ratio(a, 2);
    return r;
  }

  r.z1 = z1_closed(drawn).real();
  r.z2 = z2_closed(drawn).real();
  r.ratio1 = ratio(drawn, 1);
  r.ratio2 = ratio(drawn, 2);
  const double tol = 1e-9 * std::pow(1.0 + coefficient_mass(drawn), 4);
  if (r.z2 < -tol) {
    r.candidate = true;
    const RationalComplex z2 = z2_closed(round_to_rational(drawn));
    r.z2_exact = to_string(z2.re);
    r.failure = sgn(z2.re) < 0;
  }
  return r;
}

}  // namespace

CampaignReport z2_nonneg_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  CampaignReport report;
  report.config = cfg;
  report.records.resize(static_cast<std::size_t>(cfg.count));

  auto work = [&](std::size_t start, std::size_t stride) {
    for (std::size_t i = start; i < report.records.size(); i += stride) report.records[i] = run_sample(cfg, i);
  };
  const auto jobs = static_cast<std::size_t>(cfg.jobs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(work, w, jobs);
  }

  report.min_z2 = std::numeric_limits<double>::infinity();
  auto fold_min = [](std::optional<double>& acc, const std::optional<double>& v) {
    if (v && (!acc || *v < *acc)) acc = v;
  };
  for (const auto& r : report.records) {
    report.min_z2 = std::min(report.min_z2, r.z2);
    fold_min(report.min_ratio1, r.ratio1);
    fold_min(report.min_ratio2, r.ratio2);
    if (r.candidate) report.candidates.push_back(r.index);
    if (r.failure) report.failures.push_back(r.index);
  }

  for (double kappa : cfg.kappas) {
    const auto h = a_kappa_form(kappa, cfg.kappa_m);
    report.kappas.push_back({kappa, cfg.kappa_m, positive_definite_check(h), min_ldlt_pivot(h)});
  }
  return report;
}

namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(format_double(*v)) : nlohmann::json(nullptr);
}

}  // namespace

// Doubles are written as shortest round-trip strings so reports compare
// byte for byte.
nlohmann::json to_json(const CampaignReport& report) {
  using nlohmann::json;
  const auto& c = report.config;
  json cfg = {{"seed", std::to_string(c.seed)},
              {"count", c.count},
              {"n0", c.n0},
              {"scale", format_double(c.scale)},
              {"exact", c.exact},
              {"restrict_to_L", c.restrict_to_L},
              {"two_sided", c.two_sided},
              {"kappa_m", c.kappa_m}};
  json kappas = json::array();
  for (double k : c.kappas) kappas.push_back(format_double(k));
  cfg["kappas"] = kappas;

  json records = json::array();
  for (const auto& r : report.records) {
    json rec = {{"index", r.index},
                {"seed", std::to_string(r.seed)},
                {"z1", format_double(r.z1)},
                {"z2", format_double(r.z2)},
                {"ratio1", optional_number(r.ratio1)},
                {"ratio2", optional_number(r.ratio2)},
                {"candidate", r.candidate},
                {"failure", r.failure}};
    if (r.z2_exact) rec["z2_exact"] = *r.z2_exact;
    records.push_back(std::move(rec));
  }

  json forms = json::array();
  for (const auto& k : report.kappas)
    forms.push_back({{"kappa", format_double(k.kappa)},
                     {"m", k.m},
                     {"positive_definite", k.positive_definite},
                     {"min_pivot", format_double(k.min_pivot)}});

  return {{"config", cfg},
          {"summary",
           {{"samples", report.records.size()},
            {"min_z2", format_double(report.min_z2)},
            {"min_ratio1", optional_number(report.min_ratio1)},
            {"min_ratio2", optional_number(report.min_ratio2)},
            {"candidates", report.candidates},
            {"failures", report.failures},
            {"verified_negative", !report.failures.empty()}}},
          {"a_kappa", forms},
          {"records", records}};
}

void write_csv(std::ostream& out, const CampaignReport& report) {
  out << "index,seed,z1,z2,ratio1,ratio2,candidate,failure,z2_exact\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const auto& r : report.records)
    out << r.index << ',' << r.seed << ',' << format_double(r.z1) << ',' << format_double(r.z2) << ','
        << opt(r.ratio1) << ',' << opt(r.ratio2) << ',' << (r.candidate ? 1 : 0) << ',' << (r.failure ? 1 : 0)
        << ',' << r.z2_exact.value_or("") << '\n';
}

}  // namespace steklov
