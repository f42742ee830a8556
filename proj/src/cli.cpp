#include "steklov/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "steklov/conformal.hpp"
#include "steklov/errors.hpp"
#include "steklov/explorer.hpp"
#include "steklov/lie_relations.hpp"
#include "steklov/series_io.hpp"
#include "steklov/trace_oracle.hpp"
#include "steklov/zeta_core.hpp"

#ifndef STEKLOV_VERSION
#define STEKLOV_VERSION "0.0.0"
#endif

namespace steklov::cli {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  std::string backend = "rational";
  std::string config;
  std::string output;
  int jobs = 1;

  std::string series;
  std::string indices;
  std::string rho;
  std::string method = "auto";
  std::string source = "brute";
  std::string truncation = "auto";
  std::string g, h;
  int k = 0;
  int radius = -1;
  int N = 0;
  int grid = 8192;
  int out_degree = 60;
  double tol = 1e-6;
  bool symmetrized = false;

  std::uint64_t seed = CampaignConfig{}.seed;
  int count = CampaignConfig{}.count;
  int n0 = CampaignConfig{}.n0;
  double scale = CampaignConfig{}.scale;
  std::vector<double> kappas;
  int kappa_m = CampaignConfig{}.kappa_m;
  bool exact = false;
  bool restrict_to_L = false;
  bool two_sided = false;
};

std::vector<int> parse_indices(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError("empty entry in index list '" + text + "'");
    const std::string_view v(item.data() + b, e - b + 1);
    int x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size()) throw UsageError("bad index '" + std::string(v) + "'");
    out.push_back(x);
  }
  if (out.empty()) throw UsageError("index list is empty");
  return out;
}

std::string exact_string(const RationalComplex& z) {
  if (sgn(z.im) == 0) return to_string(z.re);
  return to_string(z.re) + (sgn(z.im) < 0 ? " - " : " + ") + to_string(Rational(abs(z.im))) + "i";
}

std::string float_string(const Complex& z) {
  if (z.imag() == 0.0) return format_double(z.real());
  return format_double(z.real()) + (z.imag() < 0 ? " - " : " + ") + format_double(std::fabs(z.imag())) + "i";
}

json scalar_json(const RationalComplex& z) { return {{"re", to_string(z.re)}, {"im", to_string(z.im)}}; }
json scalar_json(const Complex& z) { return {{"re", format_double(z.real())}, {"im", format_double(z.imag())}}; }

// Writes to --output when given, otherwise to stdout.
class Sink {
 public:
  Sink(const Options& o, std::ostream& out) : out_(out) {
    if (!o.output.empty()) {
      file_.open(o.output);
      if (!file_) throw UsageError("cannot open output file '" + o.output + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : out_; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ostream& out_;
  std::ofstream file_;
};

struct Context {
  const Options& o;
  std::string command;
  json meta;
  std::ostream& out;

  bool json_format() const { return o.format == "json"; }
  bool csv_format() const { return o.format == "csv"; }
  bool exact() const { return o.backend == "rational"; }

  void header(std::ostream& s) const {
    s << "# steklov-zeta " << meta["version"].get<std::string>() << " command=" << command
      << " backend=" << meta["backend"].get<std::string>() << " seed=" << meta["seed"].get<std::string>()
      << " config=" << meta["config_digest"].get<std::string>() << '\n';
  }

  // Key/value report in the selected format.
  void emit(const json& fields) {
    if (json_format()) {
      json j = fields;
      j["meta"] = meta;
      out << j.dump(2) << '\n';
      return;
    }
    header(out);
    if (csv_format()) out << "key,value\n";
    for (const auto& [key, value] : fields.items()) {
      const std::string v = value.is_string() ? value.get<std::string>() : value.dump();
      out << key << (csv_format() ? "," : " = ") << v << '\n';
    }
  }
};

int require_k(const Options& o) {
  if (o.k < 1) throw UsageError("--k must be a positive integer");
  return o.k;
}

void require_series(const Options& o) {
  if (o.series.empty()) throw UsageError("--series FILE is required");
}

template <SeriesScalar S>
TrigSeries<S> load_series(const Options& o) {
  require_series(o);
  if constexpr (scalar_traits<S>::exact)
    return load_exact_series(o.series);
  else
    return load_float_series(o.series);
}

// compute-z

template <SeriesScalar S>
int compute_z(Context& c) {
  const int k = require_k(c.o);
  const auto a = load_series<S>(c.o);
  std::string method = c.o.method;
  S value;
  if (method == "auto" || method == "brute") {
    method = "brute";
    value = zeta_invariant(a, k);
  } else if (method == "closed") {
    if (k == 1)
      value = z1_closed(a);
    else if (k == 2)
      value = z2_closed(a);
    else
      throw UsageError("--method closed is available for k = 1, 2 only");
  } else if (method == "trace") {
    value = trace_difference(a, k, 4 * k * std::max(1, a.degree()));
  } else {
    throw UsageError("unknown --method '" + method + "' (auto, brute, closed, trace)");
  }
  std::string text;
  if constexpr (scalar_traits<S>::exact)
    text = exact_string(value);
  else
    text = float_string(value);
  if (c.json_format()) {
    c.emit({{"k", k}, {"method", method}, {"value", scalar_json(value)}});
  } else if (c.csv_format()) {
    c.emit({{"k", std::to_string(k)}, {"method", method}, {"value", text}});
  } else {
    c.header(c.out);
    c.out << "Z_" << k << " = " << text << '\n';
  }
  return kExitOk;
}

// brute-n

int brute_n(Context& c) {
  const Options& o = c.o;
  if (o.indices.empty()) {
    if (o.radius < 0) throw UsageError("brute-n needs --indices or --k with --radius");
    const int k = require_k(o);
    const auto rows = coefficient_table(k, o.radius, o.symmetrized);
    Sink sink(o, c.out);
    c.header(sink.stream());
    write_csv(sink.stream(), rows);
    if (sink.to_file()) {
      c.header(c.out);
      c.out << rows.size() << " rows written to " << o.output << '\n';
    }
    return kExitOk;
  }
  const MultiIndex j(parse_indices(o.indices));
  const Integer n = brute_N(j);
  const Rational z = symmetrize_Z(j);
  c.emit({{"indices", o.indices}, {"N", n.get_str()}, {"Z", to_string(z)}});
  return kExitOk;
}

// z2-coeff

int z2_coeff(Context& c) {
  const Options& o = c.o;
  if (!o.indices.empty()) {
    const auto v = parse_indices(o.indices);
    if (v.size() != 4) throw UsageError("z2-coeff needs exactly four indices");
    const Rational closed = z2_coeff_closed(v[0], v[1], v[2], v[3]);
    const Rational brute = v[0] + v[1] + v[2] + v[3] == 0 ? symmetrize_Z(MultiIndex(v)) : Rational(0);
    const bool match = closed == brute;
    c.emit({{"indices", o.indices}, {"closed", to_string(closed)}, {"brute", to_string(brute)}, {"match", match}});
    return match ? kExitOk : kExitCheckFailed;
  }
  if (o.radius < 0) throw UsageError("z2-coeff needs --indices or --radius");
  const auto rows = coefficient_table(2, o.radius, true);
  Sink sink(o, c.out);
  std::ostream& s = sink.stream();
  c.header(s);
  s << "i,j,k,l,closed_num,closed_den,brute_num,brute_den,match\n";
  std::size_t bad = 0;
  for (const auto& r : rows) {
    const auto& t = r.indices;
    const Rational closed = z2_coeff_closed(t[0], t[1], t[2], t[3]);
    const bool match = closed == r.value;
    if (!match) ++bad;
    s << t[0] << ',' << t[1] << ',' << t[2] << ',' << t[3] << ',' << closed.get_num().get_str() << ','
      << closed.get_den().get_str() << ',' << r.value.get_num().get_str() << ',' << r.value.get_den().get_str()
      << ',' << (match ? "true" : "false") << '\n';
  }
  if (sink.to_file()) {
    c.header(c.out);
    c.out << rows.size() << " quadruples, " << bad << " mismatches\n";
  }
  return bad == 0 ? kExitOk : kExitCheckFailed;
}

// check-invariance

Complex float_zeta(const FloatSeries& a, int k) {
  if (k == 1) return z1_closed(a);
  if (k == 2) return z2_closed(a);
  return zeta_invariant(a, k);
}

int check_invariance(Context& c) {
  const Options& o = c.o;
  const int k = require_k(o);
  if (o.rho.empty()) throw UsageError("--rho is required");
  require_series(o);
  const auto a = load_float_series(o.series);
  const MoebiusParam<double> rho(parse_real(o.rho));
  FloatSeries b;
  if (o.method == "auto" || o.method == "pullback")
    b = pullback_direct(a, rho, o.grid, o.out_degree);
  else if (o.method == "moebius")
    b = apply_moebius(a, rho, o.out_degree);
  else
    throw UsageError("unknown --method '" + o.method + "' (pullback, moebius)");
  const Complex za = float_zeta(a, k);
  const Complex zb = float_zeta(b, k);
  const double dev = std::abs(zb - za);
  const double bound = o.tol * (1.0 + std::abs(za));
  const bool pass = dev <= bound;
  c.emit({{"k", k},
          {"rho", o.rho},
          {"out_degree", o.out_degree},
          {"Z_a", float_string(za)},
          {"Z_b", float_string(zb)},
          {"deviation", format_double(dev)},
          {"bound", format_double(bound)},
          {"pass", pass}});
  return pass ? kExitOk : kExitCheckFailed;
}

// mu-matrix

template <RealParam T>
int mu_matrix_cmd(Context& c, const T& rho_value) {
  const Options& o = c.o;
  if (o.N < 1) throw UsageError("--N must be a positive integer");
  const MoebiusParam<T> rho(rho_value);
  const auto m = mu_matrix(rho, o.N);
  auto str = [](const T& v) {
    if constexpr (std::same_as<T, double>)
      return format_double(v);
    else
      return to_string(v);
  };
  Sink sink(o, c.out);
  std::ostream& s = sink.stream();
  if (c.json_format()) {
    json rows = json::array();
    for (int n = -o.N; n <= o.N; ++n) {
      json row = json::array();
      for (int k = -o.N; k <= o.N; ++k) row.push_back(str(m(n, k)));
      rows.push_back(std::move(row));
    }
    s << json{{"meta", c.meta}, {"rho", o.rho}, {"N", o.N}, {"rows", rows}}.dump(2) << '\n';
  } else {
    c.header(s);
    s << "n,k,value\n";
    for (int n = -o.N; n <= o.N; ++n)
      for (int k = -o.N; k <= o.N; ++k) s << n << ',' << k << ',' << str(m(n, k)) << '\n';
  }
  return kExitOk;
}

// check-relations

int check_relations(Context& c) {
  const Options& o = c.o;
  const int k = require_k(o);
  int radius = o.radius;
  if (radius < 0) {
    static const std::map<int, int> defaults{{1, 25}, {2, 8}, {3, 4}};
    auto it = defaults.find(k);
    if (it == defaults.end()) throw UsageError("no default --radius for k >= 4; pass one explicitly");
    radius = it->second;
  }
  CoeffSource source;
  if (o.source == "brute")
    source = CoeffSource::Brute;
  else if (o.source == "closed")
    source = CoeffSource::Closed;
  else
    throw UsageError("unknown --source '" + o.source + "' (brute, closed)");
  if (source == CoeffSource::Closed && k > 2) throw UsageError("--source closed is available for k = 1, 2 only");

  const auto rows = relation_sweep(k, radius, source, o.jobs);
  const auto failures = std::count_if(rows.begin(), rows.end(), [](const RelationRow& r) { return !r.pass(); });
  if (c.json_format()) {
    json list = json::array();
    for (const auto& r : rows)
      list.push_back({{"indices", r.indices}, {"lhs", to_string(r.lhs)}, {"pass", r.pass()}});
    Sink sink(o, c.out);
    sink.stream() << json{{"meta", c.meta},
                          {"k", k},
                          {"radius", radius},
                          {"source", o.source},
                          {"checked", rows.size()},
                          {"failures", failures},
                          {"rows", list}}
                         .dump(2)
                  << '\n';
  } else {
    Sink sink(o, c.out);
    if (sink.to_file() || c.csv_format()) {
      c.header(sink.stream());
      write_relation_csv(sink.stream(), k, rows);
    }
    if (sink.to_file() || !c.csv_format()) {
      if (!sink.to_file() || !c.csv_format()) c.header(c.out);
      c.out << "k=" << k << " radius=" << radius << " source=" << o.source << ": " << rows.size()
            << " tuples, " << failures << " failures\n";
    }
  }
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

// trace-check

template <SeriesScalar S>
int trace_check(Context& c) {
  const Options& o = c.o;
  const int k = require_k(o);
  const auto a = load_series<S>(o);
  int N;
  if (o.truncation == "auto") {
    N = std::max(1, 4 * k * a.degree());
  } else {
    N = static_cast<int>(parse_indices(o.truncation).at(0));
  }
  const S trace = trace_difference(a, k, N);
  const S zeta = zeta_invariant(a, k);
  const int stable = stabilization_check(a, k);
  bool match;
  std::string ts, zs;
  if constexpr (scalar_traits<S>::exact) {
    match = trace == zeta;
    ts = exact_string(trace);
    zs = exact_string(zeta);
  } else {
    match = std::abs(trace - zeta) <= 1e-9 * (1.0 + std::abs(zeta));
    ts = float_string(trace);
    zs = float_string(zeta);
  }
  c.emit({{"k", k},
          {"N", N},
          {"trace_difference", ts},
          {"zeta_invariant", zs},
          {"stabilization_N", stable},
          {"bound_4kd", 4 * k * a.degree()},
          {"match", match}});
  return match ? kExitOk : kExitCheckFailed;
}

// explore

int explore(Context& c) {
  const Options& o = c.o;
  CampaignConfig cfg;
  cfg.seed = o.seed;
  cfg.count = o.count;
  cfg.n0 = o.n0;
  cfg.scale = o.scale;
  cfg.kappas = o.kappas;
  cfg.kappa_m = o.kappa_m;
  cfg.output = o.output;
  cfg.jobs = o.jobs;
  cfg.exact = o.exact;
  cfg.restrict_to_L = o.restrict_to_L;
  cfg.two_sided = o.two_sided;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto report = z2_nonneg_campaign(cfg);

  Sink sink(o, c.out);
  if (c.csv_format()) {
    c.header(sink.stream());
    write_csv(sink.stream(), report);
  } else {
    json j = to_json(report);
    j["meta"] = c.meta;
    sink.stream() << j.dump(2) << '\n';
  }
  if (sink.to_file()) {
    c.header(c.out);
    c.out << report.records.size() << " samples, min Z_2 = " << format_double(report.min_z2) << ", "
          << report.candidates.size() << " candidates, " << report.failures.size() << " verified negative\n";
  }
  return report.failures.empty() ? kExitOk : kExitCheckFailed;
}

// bracket-check

template <SeriesScalar S>
int bracket_cmd(Context& c) {
  const Options& o = c.o;
  const auto g = parse_generator(o.g), h = parse_generator(o.h);
  if (!g || !h) throw UsageError("--g and --h take one of C, D, E, D0, D-, D+");
  const auto a = load_series<S>(o);
  const double dev = bracket_check(*g, *h, a);
  double tol = 0.0;
  if constexpr (!scalar_traits<S>::exact) {
    double mass = 0.0;
    for (const auto& [n, v] : a.coeffs()) mass += std::abs(v);
    const double d = a.degree() + 3.0;
    tol = 1e-12 * (1.0 + mass) * d * d;
  }
  const bool pass = dev <= tol;
  c.emit({{"g", o.g}, {"h", o.h}, {"deviation", format_double(dev)}, {"pass", pass}});
  return pass ? kExitOk : kExitCheckFailed;
}

// Config file: "key = value" lines, '#' comments. Keys are long flag names.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return entries;
}

bool given_on_command_line(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

std::string config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return {};
}

std::string digest(const CLI::App& app, const CLI::App* sub) {
  std::vector<std::string> lines;
  auto collect = [&](const CLI::App* a) {
    for (const CLI::Option* opt : a->get_options()) {
      const std::string name = opt->get_name();
      if (name == "--help" || name == "--config" || name == "--output" || name == "--jobs") continue;
      std::string value;
      if (opt->count() > 0) {
        for (const auto& r : opt->results()) value += r + ";";
      } else {
        value = opt->get_default_str();
      }
      lines.push_back(name + "=" + value);
    }
  };
  collect(&app);
  collect(sub);
  std::sort(lines.begin(), lines.end());
  std::string text = sub->get_name() + "\n";
  for (const auto& l : lines) text += l + "\n";
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
  return buf;
}

}  // namespace

int run(const std::vector<std::string>& input_args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Zeta-invariants of the Steklov spectrum of the disc: computation and cross-checks.",
               "steklov-zeta"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(STEKLOV_VERSION));

  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--backend", o.backend, "Scalar backend")
      ->check(CLI::IsMember({"rational", "float"}))
      ->capture_default_str();
  app.add_option("--jobs", o.jobs, "Worker threads for sweeps and campaigns")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--config", o.config, "Key = value file mirroring the long flags; flags win");
  app.add_option("--output", o.output, "Write the report to this file");

  auto* compute = app.add_subcommand("compute-z", "Z_k(a) of a series");
  compute->add_option("--series", o.series, "Series JSON file")->required();
  compute->add_option("--k", o.k, "Order k")->required();
  compute->add_option("--method", o.method, "auto | brute | closed | trace")->capture_default_str();

  auto* brute = app.add_subcommand("brute-n", "N and Z of one index tuple, or a CSV table");
  brute->add_option("--indices", o.indices, "Comma separated j_1,...,j_2k (use --indices=-1,...)");
  brute->add_option("--k", o.k, "Order k for a table");
  brute->add_option("--radius", o.radius, "Max |j_i| for a table");
  brute->add_flag("--symmetrized", o.symmetrized, "Table of Z over sorted tuples instead of N");

  auto* z2 = app.add_subcommand("z2-coeff", "Closed-form Z_ijkl against brute force");
  z2->add_option("--indices", o.indices, "Comma separated i,j,k,l");
  z2->add_option("--radius", o.radius, "Compare every zero-sum quadruple with max |index| <= radius");

  auto* inv = app.add_subcommand("check-invariance", "Z_k(a) against Z_k of a translated weight (float)");
  inv->add_option("--series", o.series, "Series JSON file")->required();
  inv->add_option("--rho", o.rho, "Translation parameter, decimal or p/q")->required();
  inv->add_option("--k", o.k, "Order k")->required();
  inv->add_option("--grid", o.grid, "Sampling grid size")->capture_default_str();
  inv->add_option("--out-degree", o.out_degree, "Truncation degree of the translated series")
      ->capture_default_str();
  inv->add_option("--tol", o.tol, "Relative tolerance")->capture_default_str();
  inv->add_option("--method", o.method, "pullback | moebius")->capture_default_str();

  auto* mu = app.add_subcommand("mu-matrix", "Truncated matrix M(rho)");
  mu->add_option("--rho", o.rho, "Translation parameter, decimal or p/q")->required();
  mu->add_option("--N", o.N, "Half width")->required();

  auto* rel = app.add_subcommand("check-relations", "Linear relations among Z coefficients");
  rel->add_option("--k", o.k, "Order k")->required();
  rel->add_option("--radius", o.radius, "Max |j_i| (defaults: 25, 8, 4 for k = 1, 2, 3)");
  rel->add_option("--source", o.source, "brute | closed")->capture_default_str();

  auto* tr = app.add_subcommand("trace-check", "Trace difference against Z_k(a)");
  tr->add_option("--series", o.series, "Series JSON file")->required();
  tr->add_option("--k", o.k, "Order k")->required();
  tr->add_option("--N", o.truncation, "Half width, or auto for 4k deg(a)")->capture_default_str();

  auto* ex = app.add_subcommand("explore", "Random Z_2 >= 0 campaign");
  ex->add_option("--seed", o.seed, "Campaign seed")->capture_default_str();
  ex->add_option("--count", o.count, "Number of samples")->capture_default_str();
  ex->add_option("--n0", o.n0, "Maximal frequency")->capture_default_str();
  ex->add_option("--scale", o.scale, "Coefficient magnitude bound")->capture_default_str();
  ex->add_option("--kappa", o.kappas, "kappa values for the A_kappa check")->delimiter(',');
  ex->add_option("--kappa-m", o.kappa_m, "Size parameter m of A_kappa")->capture_default_str();
  ex->add_flag("--exact", o.exact, "Rational coefficients, exact evaluation");
  ex->add_flag("--L", o.restrict_to_L, "Sample the span of frequencies -1, 0, 1");
  ex->add_flag("--two-sided", o.two_sided, "Ratio denominator over n >= 2 and n <= -2");

  auto* br = app.add_subcommand("bracket-check", "Commutator of two generators against the table");
  br->add_option("--g", o.g, "First generator")->required();
  br->add_option("--h", o.h, "Second generator")->required();
  br->add_option("--series", o.series, "Series JSON file")->required();

  std::vector<std::string> args = input_args;
  try {
    if (const std::string path = config_path(args); !path.empty()) {
      const CLI::App* chosen = nullptr;
      for (const auto& a : args)
        if (!chosen && a.rfind("-", 0) != 0)
          for (const CLI::App* s : app.get_subcommands({}))
            if (s->get_name() == a) chosen = s;
      for (const auto& [key, value] : read_config(path)) {
        const std::string flag = "--" + key;
        if (key == "config") throw UsageError("config files cannot include other config files");
        if (given_on_command_line(args, flag)) continue;
        const CLI::Option* opt = app.get_option_no_throw(flag);
        if (!opt && chosen) opt = chosen->get_option_no_throw(flag);
        if (!opt) throw UsageError("unknown config key '" + key + "'");
        if (opt->get_expected_min() == 0) {
          if (value == "true" || value == "1" || value == "yes") args.push_back(flag);
        } else {
          args.push_back(flag + "=" + value);
        }
      }
    }
  } catch (const std::exception& e) {
    err << "steklov-zeta: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << STEKLOV_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  Context c{o, sub->get_name(), json::object(), out};
  c.meta = {{"version", STEKLOV_VERSION},
            {"backend", sub == inv || (sub == ex && !o.exact) ? std::string("float") : o.backend},
            {"seed", sub == ex ? std::to_string(o.seed) : std::string("none")},
            {"config_digest", digest(app, sub)}};

  try {
    const bool exact = o.backend == "rational";
    if (sub == compute) return exact ? compute_z<RationalComplex>(c) : compute_z<Complex>(c);
    if (sub == brute) return brute_n(c);
    if (sub == z2) return z2_coeff(c);
    if (sub == inv) return check_invariance(c);
    if (sub == mu) return exact ? mu_matrix_cmd(c, parse_rational(o.rho)) : mu_matrix_cmd(c, parse_real(o.rho));
    if (sub == rel) return check_relations(c);
    if (sub == tr) return exact ? trace_check<RationalComplex>(c) : trace_check<Complex>(c);
    if (sub == ex) return explore(c);
    if (sub == br) return exact ? bracket_cmd<RationalComplex>(c) : bracket_cmd<Complex>(c);
  } catch (const std::exception& e) {
    err << "steklov-zeta " << sub->get_name() << ": " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace steklov::cli
