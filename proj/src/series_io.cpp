#include "steklov/series_io.hpp"

#include <fstream>

namespace steklov {

namespace {

const nlohmann::json& coeff_array(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array())
    throw ParseError("series JSON must be an object with a \"coeffs\" array");
  return j.at("coeffs");
}

std::string scalar_text(const nlohmann::json& entry, const char* key) {
  if (!entry.contains(key)) return "0";
  const auto& v = entry.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError(std::string("coefficient field \"") + key + "\" must be a string");
}

int frequency(const nlohmann::json& entry) {
  if (!entry.is_object() || !entry.contains("n") || !entry.at("n").is_number_integer())
    throw ParseError("each coefficient needs an integer \"n\"");
  return entry.at("n").get<int>();
}

nlohmann::json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace

ExactSeries exact_series_from_json(const nlohmann::json& j) {
  ExactSeries a;
  for (const auto& entry : coeff_array(j))
    a.add(frequency(entry),
          RationalComplex(parse_rational(scalar_text(entry, "re")), parse_rational(scalar_text(entry, "im"))));
  return a;
}

FloatSeries float_series_from_json(const nlohmann::json& j) {
  FloatSeries a;
  for (const auto& entry : coeff_array(j))
    a.add(frequency(entry), Complex(parse_real(scalar_text(entry, "re")), parse_real(scalar_text(entry, "im"))));
  return a;
}

nlohmann::json to_json(const ExactSeries& a) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [n, c] : a.coeffs())
    arr.push_back({{"n", n}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
  return {{"coeffs", arr}};
}

nlohmann::json to_json(const FloatSeries& a) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [n, c] : a.coeffs())
    arr.push_back({{"n", n}, {"re", format_double(c.real())}, {"im", format_double(c.imag())}});
  return {{"coeffs", arr}};
}

ExactSeries load_exact_series(const std::filesystem::path& path) { return exact_series_from_json(read_file(path)); }

FloatSeries load_float_series(const std::filesystem::path& path) { return float_series_from_json(read_file(path)); }

void save_series(const std::filesystem::path& path, const nlohmann::json& series_json) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << series_json.dump(2) << '\n';
}

}  // namespace steklov
