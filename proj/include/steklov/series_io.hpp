#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "steklov/fourier.hpp"

namespace steklov {

// TrigSeries JSON: {"coeffs": [{"n": int, "re": string, "im": string}, ...]}
// Scalars are decimal strings; exact values may be written "p/q".
// "im" may be omitted (zero). Repeated frequencies are summed.

ExactSeries exact_series_from_json(const nlohmann::json& j);
FloatSeries float_series_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExactSeries& a);
nlohmann::json to_json(const FloatSeries& a);

ExactSeries load_exact_series(const std::filesystem::path& path);
FloatSeries load_float_series(const std::filesystem::path& path);

void save_series(const std::filesystem::path& path, const nlohmann::json& series_json);

}  // namespace steklov
