#pragma once

// Canonical JSON and CSV rendering: sorted keys, floats rounded to 12 significant digits.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "json.hpp"

namespace ncps {

inline std::string format_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

inline double round_significant(double v) {
  if (!std::isfinite(v)) return v;
  const double r = std::strtod(format_number(v).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;  // folds -0 into 0
}

inline nlohmann::json canonical(const nlohmann::json& j) {
  if (j.is_number_float()) return round_significant(j.get<double>());
  if (j.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : j) out.push_back(canonical(e));
    return out;
  }
  if (j.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [k, v] : j.items()) out[k] = canonical(v);
    return out;
  }
  return j;
}

inline std::string render_json(const nlohmann::json& j) { return canonical(j).dump(2) + "\n"; }

inline std::string csv_field(const nlohmann::json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return v.dump();
}

}  // namespace ncps
