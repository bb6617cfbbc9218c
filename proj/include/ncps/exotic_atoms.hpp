#pragma once

// Spectroscopic records of exotic atoms and the upper bounds they imply on the
// coordinate and momentum noncommutativity parameters.

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncps/errors.hpp"
#include "ncps/hydrogen_corrections.hpp"
#include "ncps/physical_constants.hpp"

namespace ncps {

enum class LengthRecipe {
  exact,  ///< a = hbar^2 / (mu kappa) with the true reduced mass
  paper,  ///< a = m_e a_B / m_2, the orbiting particle's mass
};

inline std::string to_string(LengthRecipe r) { return r == LengthRecipe::exact ? "exact" : "paper"; }

inline LengthRecipe parse_recipe(const std::string& s) {
  if (s == "exact") return LengthRecipe::exact;
  if (s == "paper") return LengthRecipe::paper;
  throw InvalidParameter("unknown length recipe '" + s + "' (expected exact|paper)");
}

/// Two-body Coulomb atom: nucleus of mass m1, orbiting particle of mass m2.
struct AtomSpec {
  std::string name;
  double m1 = 0.0;  // kg
  double m2 = 0.0;  // kg
  double z_eff = 1.0;

  void validate() const {
    if (!(m1 > 0.0) || !(m2 > 0.0)) throw InvalidParameter("atom masses must be positive");
    if (!(z_eff > 0.0)) throw InvalidParameter("effective charge must be positive");
  }

  double reduced_mass() const { return m1 * m2 / (m1 + m2); }
  double total_mass() const { return m1 + m2; }

  CoulombSystem coulomb(const PhysicalConstants& pc, LengthRecipe recipe) const {
    validate();
    const double kappa = pc.coulomb_coupling(z_eff);
    if (recipe == LengthRecipe::exact) return CoulombSystem(reduced_mass(), kappa, pc.hbar, total_mass());
    return CoulombSystem::from_length(pc.electron_mass * pc.bohr_radius / m2, kappa, pc.hbar, total_mass());
  }

  static AtomSpec preset(const std::string& name, const PhysicalConstants& pc) {
    if (name == "hydrogen") return {name, pc.proton_mass, pc.electron_mass, 1.0};
    if (name == "muonic_hydrogen") return {name, pc.proton_mass, pc.muon_mass, 1.0};
    if (name == "antiprotonic_helium") return {name, pc.helium_nucleus_mass, pc.antiproton_mass, 2.0};
    throw InvalidParameter("unknown atom '" + name + "'");
  }

  static std::vector<std::string> preset_names() { return {"antiprotonic_helium", "hydrogen", "muonic_hydrogen"}; }
};

struct MeasurementRecord {
  std::string atom;
  BoundState from;
  BoundState to;
  double frequency_MHz = 0.0;
  double uncertainty_MHz = 0.0;
  std::string source;
  int line = 0;  ///< line of the record in its file, 0 if not from a file

  void validate() const {
    from.validate();
    to.validate();
    if (!(frequency_MHz > 0.0) || !std::isfinite(frequency_MHz)) throw ValidationError("frequency must be positive");
    if (!(uncertainty_MHz > 0.0) || !std::isfinite(uncertainty_MHz)) {
      throw ValidationError("uncertainty must be positive");
    }
  }

  nlohmann::json to_json() const {
    return {{"atom", atom},
            {"transition", {{"from", {from.n, from.l}}, {"to", {to.n, to.l}}}},
            {"frequency_MHz", frequency_MHz},
            {"uncertainty_MHz", uncertainty_MHz},
            {"source", source}};
  }
};

namespace detail {

/// 1-based line of every '{' that opens an element of the top-level array.
inline std::vector<int> array_element_lines(const std::string& text) {
  std::vector<int> lines;
  int line = 1, depth = 0;
  bool in_string = false, escaped = false;
  for (char ch : text) {
    if (ch == '\n') ++line;
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (ch == '\\') {
        escaped = true;
      } else if (ch == '"') {
        in_string = false;
      }
      continue;
    }
    if (ch == '"') {
      in_string = true;
    } else if (ch == '[' || ch == '{') {
      if (depth == 1 && ch == '{') lines.push_back(line);
      ++depth;
    } else if (ch == ']' || ch == '}') {
      --depth;
    }
  }
  return lines;
}

inline int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) line += text[k] == '\n' ? 1 : 0;
  return line;
}

inline BoundState parse_state(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw ValidationError(where + ": a state must be [n, l] with integer entries");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace detail

/// Parses a JSON array of measurement records; blank input yields an empty list.
inline std::vector<MeasurementRecord> parse_measurements(const std::string& text, const std::string& origin = "<input>") {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + ":" + std::to_string(detail::line_of_offset(text, e.byte)) + ": " + e.what());
  }
  if (!doc.is_array()) throw ParseError(origin + ":1: expected a JSON array of records");
  const auto lines = detail::array_element_lines(text);
  std::vector<MeasurementRecord> out;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const int line = k < lines.size() ? lines[k] : 0;
    const std::string where = origin + ":" + std::to_string(line);
    const auto& r = doc[k];
    if (!r.is_object()) throw ValidationError(where + ": record must be an object");
    for (const auto& [key, value] : r.items()) {
      if (key != "atom" && key != "transition" && key != "frequency_MHz" && key != "uncertainty_MHz" &&
          key != "source") {
        throw ValidationError(where + ": unknown field '" + key + "'");
      }
    }
    for (const char* key : {"atom", "transition", "frequency_MHz", "uncertainty_MHz", "source"}) {
      if (!r.contains(key)) throw ValidationError(where + ": missing field '" + key + "'");
    }
    if (!r["atom"].is_string() || !r["source"].is_string()) {
      throw ValidationError(where + ": 'atom' and 'source' must be strings");
    }
    if (!r["frequency_MHz"].is_number() || !r["uncertainty_MHz"].is_number()) {
      throw ValidationError(where + ": frequency and uncertainty must be numbers");
    }
    const auto& t = r["transition"];
    if (!t.is_object() || !t.contains("from") || !t.contains("to") || t.size() != 2) {
      throw ValidationError(where + ": transition must be {\"from\": [n,l], \"to\": [n,l]}");
    }
    MeasurementRecord rec;
    rec.atom = r["atom"].get<std::string>();
    rec.from = detail::parse_state(t["from"], where);
    rec.to = detail::parse_state(t["to"], where);
    rec.frequency_MHz = r["frequency_MHz"].get<double>();
    rec.uncertainty_MHz = r["uncertainty_MHz"].get<double>();
    rec.source = r["source"].get<std::string>();
    rec.line = line;
    try {
      rec.validate();
    } catch (const Error& e) {
      throw ValidationError(where + ": " + e.what());
    }
    out.push_back(std::move(rec));
  }
  return out;
}

inline std::vector<MeasurementRecord> load_measurements(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open measurement file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_measurements(buf.str(), path);
}

struct TransitionCorrections {
  double theta = 0.0;  // J
  double eta = 0.0;    // J
};

inline TransitionCorrections transition_corrections(const MeasurementRecord& rec, const CoulombSystem& sys,
                                                    const NCMoments& m) {
  if (rec.from.l == 1 || rec.to.l == 1) {
    throw NotComputable("coordinate correction has no finite first-order value for l = 1");
  }
  const Correction a = total_correction(rec.from, sys, m);
  const Correction b = total_correction(rec.to, sys, m);
  return {*a.theta - *b.theta, a.eta - b.eta};
}

inline TransitionCorrections transition_corrections(const MeasurementRecord& rec, const AtomSpec& atom,
                                                    const PhysicalConstants& pc, const NCMoments& m,
                                                    LengthRecipe recipe = LengthRecipe::paper) {
  return transition_corrections(rec, atom.coulomb(pc, recipe), m);
}

struct ParameterBounds {
  MeasurementRecord record;
  std::optional<double> hbar_theta_m2;        ///< bound on hbar <theta^r>; empty when unconstrained
  std::optional<double> hbar_eta_kg2m2_s2;    ///< bound on hbar sqrt(<(eta^r)^2>); empty when unconstrained
  LengthRecipe recipe = LengthRecipe::paper;
  double split_fraction = 0.5;

  nlohmann::json to_json() const {
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    return {{"record", record.to_json()},
            {"hbar_theta_bound_m2", opt(hbar_theta_m2)},
            {"hbar_eta_bound_kg2m2_s2", opt(hbar_eta_kg2m2_s2)},
            {"recipe", to_string(recipe)},
            {"split_fraction", split_fraction}};
  }
};

namespace detail {

/// Smallest y > 0 with |A y + B y^2| = E.
inline std::optional<double> first_crossing(double A, double B, double E) {
  if (A == 0.0 && B == 0.0) return std::nullopt;
  if (B == 0.0) return E / std::abs(A);
  std::optional<double> best;
  for (double target : {E, -E}) {
    const double disc = A * A + 4.0 * B * target;
    if (disc < 0.0) continue;
    const double sq = std::sqrt(disc);
    // Cancellation-free pair of roots of B y^2 + A y - target = 0.
    const double q = -0.5 * (A + std::copysign(sq, A == 0.0 ? 1.0 : A));
    for (double y : {q / B, q != 0.0 ? -target / q : 0.0}) {
      if (y > 0.0 && (!best || y < *best)) best = y;
    }
  }
  return best;
}

}  // namespace detail

/// Inverts |Delta^theta| <= split * h df and |Delta^eta| <= (1 - split) * h df.
inline ParameterBounds bounds_from_record(const MeasurementRecord& rec, const AtomSpec& atom,
                                          const PhysicalConstants& pc, LengthRecipe recipe = LengthRecipe::paper,
                                          double split_fraction = 0.5) {
  rec.validate();
  if (!(split_fraction > 0.0 && split_fraction < 1.0)) throw InvalidParameter("split fraction must lie in (0, 1)");
  const CoulombSystem sys = atom.coulomb(pc, recipe);
  const double hbar = pc.hbar;
  const double df = rec.uncertainty_MHz * 1e6 * pc.units.time_s;  // in inverse time units
  const double budget_theta = split_fraction * pc.h * df;
  const double budget_eta = (1.0 - split_fraction) * pc.h * df;

  // Linear coefficient from ns levels (per unit hbar<theta>), quadratic from l >= 2 levels.
  NCMoments unit_theta;
  unit_theta.mean_theta = 1.0 / hbar;
  unit_theta.mean_theta_sq = NCMoments::theta_sq_from_mean(1.0 / hbar);
  auto theta_parts = [&](const BoundState& st, double& lin, double& quad) {
    if (st.l == 1) throw NotComputable("coordinate correction has no finite first-order value for l = 1");
    if (st.l == 0) {
      lin = delta_E_theta_ns(st.n, sys, unit_theta);
      quad = 0.0;
    } else {
      lin = 0.0;
      quad = delta_E_theta_high_l(st, sys, unit_theta);
    }
  };
  double lin_a, quad_a, lin_b, quad_b;
  theta_parts(rec.from, lin_a, quad_a);
  theta_parts(rec.to, lin_b, quad_b);

  NCMoments unit_eta;
  unit_eta.mean_eta_sq_r = 1.0 / (hbar * hbar);  // hbar sqrt(<eta^2>) = 1
  const double eta_coeff = delta_E_eta(rec.from, sys, unit_eta) - delta_E_eta(rec.to, sys, unit_eta);

  ParameterBounds out;
  out.record = rec;
  out.recipe = recipe;
  out.split_fraction = split_fraction;
  const UnitSystem& u = pc.units;
  if (auto y = detail::first_crossing(lin_a - lin_b, quad_a - quad_b, budget_theta)) {
    out.hbar_theta_m2 = *y * u.length_m * u.length_m;
  }
  if (eta_coeff != 0.0) {
    out.hbar_eta_kg2m2_s2 = std::sqrt(budget_eta / std::abs(eta_coeff)) * u.energy_J() * u.mass_kg;
  }
  return out;
}

struct ReducedMassComparison {
  double mu_ratio = 1.0;           ///< mu_a / mu_b
  double mu_ratio_cubed = 1.0;
  double theta_sensitivity = 1.0;  ///< <(theta^r)^2>/a^5 scales as mu^3
  double eta_sensitivity = 1.0;    ///< <(eta^r)^2> a^3 scales as 1/mu

  nlohmann::json to_json() const {
    return {{"mu_ratio", mu_ratio},
            {"mu_ratio_cubed", mu_ratio_cubed},
            {"theta_sensitivity_ratio", theta_sensitivity},
            {"eta_sensitivity_ratio", eta_sensitivity}};
  }
};

/// With infinite_nucleus the orbiting-particle masses stand in for the reduced masses.
inline ReducedMassComparison reduced_mass_comparison(const AtomSpec& a, const AtomSpec& b,
                                                     bool infinite_nucleus = false) {
  a.validate();
  b.validate();
  const double mu_a = infinite_nucleus ? a.m2 : a.reduced_mass();
  const double mu_b = infinite_nucleus ? b.m2 : b.reduced_mass();
  ReducedMassComparison r;
  r.mu_ratio = mu_a / mu_b;
  r.mu_ratio_cubed = r.mu_ratio * r.mu_ratio * r.mu_ratio;
  r.theta_sensitivity = r.mu_ratio_cubed;
  r.eta_sensitivity = 1.0 / r.mu_ratio;
  return r;
}

}  // namespace ncps
