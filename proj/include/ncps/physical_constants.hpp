#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"
#include "ncps/errors.hpp"

namespace ncps {

/// Scale of a unit system relative to SI: one unit of length is `length_m` metres, etc.
/// Charge stays in coulombs.
struct UnitSystem {
  double length_m = 1.0;
  double mass_kg = 1.0;
  double time_s = 1.0;

  double energy_J() const { return mass_kg * length_m * length_m / (time_s * time_s); }
  double action_Js() const { return energy_J() * time_s; }
  double momentum_SI() const { return mass_kg * length_m / time_s; }
};

/// CODATA 2018 values in SI unless `units` says otherwise.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;         // J s
  double h = 6.62607015e-34;             // J s
  double planck_length = 1.616255e-35;   // m
  double elementary_charge = 1.602176634e-19;  // C
  double epsilon0 = 8.8541878128e-12;    // F/m
  double bohr_radius = 5.29177210903e-11;  // m
  double electron_mass = 9.1093837015e-31;   // kg
  double muon_mass = 1.883531627e-28;        // kg
  double proton_mass = 1.67262192369e-27;    // kg
  double antiproton_mass = 1.67262192369e-27;  // kg
  double helium_nucleus_mass = 6.6446573357e-27;  // kg (alpha particle)
  double speed_of_light = 299792458.0;     // m/s
  UnitSystem units;

  static PhysicalConstants codata2018() { return {}; }

  /// Coulomb coupling Z e^2 / (4 pi eps0).
  double coulomb_coupling(double z_eff) const {
    return z_eff * elementary_charge * elementary_charge / (4.0 * M_PI * epsilon0);
  }

  void validate() const {
    for (const auto& [name, value] : as_map()) {
      if (!(value > 0.0) || !std::isfinite(value)) throw ValidationError("constant '" + name + "' must be positive");
    }
  }

  /// Expresses every constant in another unit system.
  PhysicalConstants in_units(const UnitSystem& target) const {
    if (!(target.length_m > 0 && target.mass_kg > 0 && target.time_s > 0)) {
      throw InvalidParameter("unit scales must be positive");
    }
    // Convert to SI first, then to the target.
    const UnitSystem& from = units;
    auto conv = [](double v, double from_scale, double to_scale) { return v * from_scale / to_scale; };
    PhysicalConstants out = *this;
    out.hbar = conv(hbar, from.action_Js(), target.action_Js());
    out.h = conv(h, from.action_Js(), target.action_Js());
    out.planck_length = conv(planck_length, from.length_m, target.length_m);
    out.bohr_radius = conv(bohr_radius, from.length_m, target.length_m);
    // eps0: C^2 s^2 kg^-1 m^-3
    const double eps_from = from.time_s * from.time_s / (from.mass_kg * std::pow(from.length_m, 3));
    const double eps_to = target.time_s * target.time_s / (target.mass_kg * std::pow(target.length_m, 3));
    out.epsilon0 = conv(epsilon0, eps_from, eps_to);
    for (double* m : {&out.electron_mass, &out.muon_mass, &out.proton_mass, &out.antiproton_mass,
                      &out.helium_nucleus_mass}) {
      *m = conv(*m, from.mass_kg, target.mass_kg);
    }
    out.speed_of_light = conv(speed_of_light, from.length_m / from.time_s, target.length_m / target.time_s);
    out.units = target;
    return out;
  }

  std::map<std::string, double> as_map() const {
    return {{"hbar", hbar},
            {"h", h},
            {"planck_length", planck_length},
            {"elementary_charge", elementary_charge},
            {"epsilon0", epsilon0},
            {"bohr_radius", bohr_radius},
            {"electron_mass", electron_mass},
            {"muon_mass", muon_mass},
            {"proton_mass", proton_mass},
            {"antiproton_mass", antiproton_mass},
            {"helium_nucleus_mass", helium_nucleus_mass},
            {"speed_of_light", speed_of_light}};
  }

  nlohmann::json to_json() const { return nlohmann::json(as_map()); }

  /// Keys present in `j` override the CODATA defaults; unknown keys are rejected.
  static PhysicalConstants from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("constants file must hold a JSON object");
    PhysicalConstants c;
    std::map<std::string, double*> slots = {{"hbar", &c.hbar},
                                            {"h", &c.h},
                                            {"planck_length", &c.planck_length},
                                            {"elementary_charge", &c.elementary_charge},
                                            {"epsilon0", &c.epsilon0},
                                            {"bohr_radius", &c.bohr_radius},
                                            {"electron_mass", &c.electron_mass},
                                            {"muon_mass", &c.muon_mass},
                                            {"proton_mass", &c.proton_mass},
                                            {"antiproton_mass", &c.antiproton_mass},
                                            {"helium_nucleus_mass", &c.helium_nucleus_mass},
                                            {"speed_of_light", &c.speed_of_light}};
    for (const auto& [key, value] : j.items()) {
      if (key == "source" || key == "units") continue;
      auto it = slots.find(key);
      if (it == slots.end()) throw ValidationError("unknown constant '" + key + "'");
      if (!value.is_number()) throw ValidationError("constant '" + key + "' must be a number");
      *it->second = value.get<double>();
    }
    c.validate();
    return c;
  }

  static PhysicalConstants load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open constants file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path + ": " + e.what());
    }
    return from_json(j);
  }
};

}  // namespace ncps
