#pragma once

// Command-line front end: verify, effective, correct, bounds and oracle pipelines.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncps/composite_params.hpp"
#include "ncps/exotic_atoms.hpp"
#include "ncps/hydrogen_corrections.hpp"
#include "ncps/json_output.hpp"
#include "ncps/scorecard.hpp"

#ifndef NCPS_DATA_DIR
#define NCPS_DATA_DIR "data"
#endif

namespace ncps {

/// Raised for malformed command-line input that the parser itself cannot catch.
struct UsageError : Error {
  using Error::Error;
};

enum class OutputFormat { json, csv };

struct RunConfig {
  std::string subcommand;
  OutputFormat format = OutputFormat::json;
  std::optional<std::string> constants_path;
  int particles = 2;
  std::vector<std::string> atoms;
  std::vector<double> masses;
  std::optional<double> gamma_tilde;
  std::optional<double> alpha_tilde;
  std::vector<double> c_theta;
  std::vector<double> c_eta;
  std::string states = "1,0;2,0;2,1;3,2";
  std::string data_path = std::string(NCPS_DATA_DIR) + "/pbarhe.json";
  LengthRecipe recipe = LengthRecipe::paper;
  double split_fraction = 0.5;

  /// Mutually exclusive parameter sources and per-subcommand requirements.
  void validate() const {
    const bool tilde = gamma_tilde.has_value() || alpha_tilde.has_value();
    const bool explicit_c = !c_theta.empty() || !c_eta.empty();
    if (tilde && explicit_c) throw UsageError("--gamma-tilde/--alpha-tilde and --c-theta/--c-eta are exclusive");
    if (!atoms.empty() && !masses.empty() && subcommand != "bounds") {
      throw UsageError("--atoms and --masses are exclusive");
    }
    if (explicit_c && c_theta.size() != c_eta.size()) throw UsageError("--c-theta and --c-eta need equal lengths");
  }
};

inline std::vector<BoundState> parse_states(const std::string& text) {
  std::vector<BoundState> out;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::stringstream one(item);
    BoundState st;
    char comma = 0;
    if (!(one >> st.n >> comma >> st.l) || comma != ',' || !(one >> std::ws).eof()) {
      throw UsageError("cannot read state '" + item + "' (expected n,l)");
    }
    out.push_back(st);
  }
  if (out.empty()) throw UsageError("no states given");
  return out;
}

namespace detail {

inline PhysicalConstants load_constants(const RunConfig& cfg) {
  return cfg.constants_path ? PhysicalConstants::load(*cfg.constants_path) : PhysicalConstants::codata2018();
}

inline std::vector<double> system_masses(const RunConfig& cfg, const PhysicalConstants& pc) {
  if (!cfg.masses.empty()) return cfg.masses;
  const AtomSpec atom = AtomSpec::preset(cfg.atoms.empty() ? "hydrogen" : cfg.atoms.front(), pc);
  return {atom.m1, atom.m2};
}

inline SystemParams system_params(const RunConfig& cfg, const std::vector<double>& masses) {
  if (!cfg.c_theta.empty()) {
    if (cfg.c_theta.size() != masses.size()) throw UsageError("one --c-theta/--c-eta value per particle is required");
    SystemParams sys;
    for (std::size_t k = 0; k < masses.size(); ++k) sys.particles.push_back({masses[k], cfg.c_theta[k], cfg.c_eta[k]});
    sys.validate();
    return sys;
  }
  return from_mass_conditions(cfg.gamma_tilde.value_or(0.0), cfg.alpha_tilde.value_or(0.0), masses);
}

inline nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline void write_csv(std::ostream& out, const std::vector<std::string>& header,
                      const std::vector<std::vector<nlohmann::json>>& rows) {
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_field(row[k]);
    out << "\n";
  }
}

inline int run_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.particles < 1 || cfg.particles > 4) throw UsageError("--particles must be between 1 and 4");
  const nlohmann::json doc = reports_json(symbolic_reports(cfg.particles));
  if (cfg.format == OutputFormat::csv) {
    std::vector<std::vector<nlohmann::json>> rows;
    for (const auto& r : doc["reports"])
      for (const auto& e : r["entries"]) rows.push_back({r["report"], e["identity_id"], e["status"]});
    write_csv(out, {"report", "identity_id", "status"}, rows);
  } else {
    out << render_json(doc);
  }
  return doc["passed"].get<bool>() ? 0 : 1;
}

inline int run_effective(const RunConfig& cfg, std::ostream& out) {
  const PhysicalConstants pc = load_constants(cfg);
  const EffectiveConstants e = effective_com_constants(system_params(cfg, system_masses(cfg, pc)));
  const nlohmann::json doc = {{"c_theta_c", e.c_theta_c}, {"c_eta_c", e.c_eta_c},
                              {"c_theta_r", optional_json(e.c_theta_r)}, {"c_eta_r", optional_json(e.c_eta_r)},
                              {"M_kg", e.M}, {"mu_kg", optional_json(e.mu)}};
  if (cfg.format == OutputFormat::csv) {
    std::vector<std::vector<nlohmann::json>> rows;
    for (const auto& [k, v] : doc.items()) rows.push_back({k, v});
    write_csv(out, {"quantity", "value"}, rows);
  } else {
    out << render_json(doc);
  }
  return 0;
}

inline int run_correct(const RunConfig& cfg, std::ostream& out) {
  const auto states = parse_states(cfg.states);
  const PhysicalConstants pc = load_constants(cfg);
  const auto masses = system_masses(cfg, pc);
  if (masses.size() != 2) throw UsageError("corrections need exactly two masses");
  const EffectiveConstants eff = relative_constants(system_params(cfg, masses));
  const NCMoments moments = nc_moments(eff, pc);
  const CoulombSystem sys = !cfg.masses.empty()
                                ? CoulombSystem(*eff.mu, pc.coulomb_coupling(1.0), pc.hbar, eff.M)
                                : AtomSpec::preset(cfg.atoms.empty() ? "hydrogen" : cfg.atoms.front(), pc)
                                      .coulomb(pc, cfg.recipe);
  std::vector<std::vector<nlohmann::json>> rows;
  nlohmann::json table = nlohmann::json::array();
  for (const auto& st : states) {
    const Correction c = total_correction(st, sys, moments);
    const nlohmann::json theta = c.theta ? nlohmann::json(*c.theta) : nlohmann::json("not-computable");
    rows.push_back({st.n, st.l, c.eta, theta, c.total()});
    table.push_back({{"n", st.n}, {"l", st.l}, {"dE_eta_J", c.eta}, {"dE_theta_J", theta}, {"total_J", c.total()}});
  }
  if (cfg.format == OutputFormat::csv) {
    write_csv(out, {"n", "l", "dE_eta_J", "dE_theta_J", "total_J"}, rows);
  } else {
    out << render_json(table);
  }
  return 0;
}

inline int run_bounds(const RunConfig& cfg, std::ostream& out) {
  const PhysicalConstants pc = load_constants(cfg);
  nlohmann::json arr = nlohmann::json::array();
  std::vector<std::vector<nlohmann::json>> rows;
  for (const auto& rec : load_measurements(cfg.data_path)) {
    if (!cfg.atoms.empty() && std::find(cfg.atoms.begin(), cfg.atoms.end(), rec.atom) == cfg.atoms.end()) continue;
    const auto b = bounds_from_record(rec, AtomSpec::preset(rec.atom, pc), pc, cfg.recipe, cfg.split_fraction);
    arr.push_back(b.to_json());
    rows.push_back({rec.atom, rec.from.n, rec.from.l, rec.to.n, rec.to.l, optional_json(b.hbar_theta_m2),
                    optional_json(b.hbar_eta_kg2m2_s2), to_string(cfg.recipe), cfg.split_fraction});
  }
  if (cfg.format == OutputFormat::csv) {
    write_csv(out,
              {"atom", "from_n", "from_l", "to_n", "to_l", "hbar_theta_bound_m2", "hbar_eta_bound_kg2m2_s2", "recipe",
               "split_fraction"},
              rows);
  } else {
    out << render_json(arr);
  }
  return 0;
}

inline int run_oracle(const RunConfig& cfg, std::ostream& out) {
  const PhysicalConstants pc = load_constants(cfg);
  const auto entries = oracle_scorecard(pc, load_measurements(cfg.data_path));
  const nlohmann::json doc = scorecard_json(entries);
  if (cfg.format == OutputFormat::csv) {
    std::vector<std::vector<nlohmann::json>> rows;
    for (const auto& e : entries) rows.push_back({e.check_id, e.expected, e.got, e.tol, e.pass});
    write_csv(out, {"check_id", "expected", "got", "tol", "pass"}, rows);
  } else {
    out << render_json(doc);
  }
  return doc["passed"].get<bool>() ? 0 : 1;
}

}  // namespace detail

/// Exit code 0 when every check of the pipeline passes, 1 on failed checks or computation errors,
/// 2 on usage errors.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    if (cfg.subcommand == "verify") return detail::run_verify(cfg, out);
    if (cfg.subcommand == "effective") return detail::run_effective(cfg, out);
    if (cfg.subcommand == "correct") return detail::run_correct(cfg, out);
    if (cfg.subcommand == "bounds") return detail::run_bounds(cfg, out);
    if (cfg.subcommand == "oracle") return detail::run_oracle(cfg, out);
    throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

inline int main_entry(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Noncommutative phase space: symbolic checks, hydrogenic corrections and bounds", "ncps"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  RunConfig cfg;
  std::string format = "json", recipe = "paper", constants;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--constants", constants, "JSON table overriding the CODATA constants")->check(CLI::ExistingFile);

  auto add_params = [&](CLI::App* sub) {
    auto* g = sub->add_option("--gamma-tilde", cfg.gamma_tilde, "gamma~ with c_theta[n] = gamma~/m_n (kg)");
    auto* a = sub->add_option("--alpha-tilde", cfg.alpha_tilde, "alpha~ with c_eta[n] = alpha~ m_n (1/kg)");
    auto* ct = sub->add_option("--c-theta", cfg.c_theta, "Explicit c_theta per particle")->delimiter(',');
    auto* ce = sub->add_option("--c-eta", cfg.c_eta, "Explicit c_eta per particle")->delimiter(',');
    g->excludes(ct)->excludes(ce);
    a->excludes(ct)->excludes(ce);
  };
  auto add_system = [&](CLI::App* sub) {
    auto* at = sub->add_option("--atoms", cfg.atoms, "Atom preset: hydrogen, muonic_hydrogen, antiprotonic_helium")
                   ->check(CLI::IsMember(AtomSpec::preset_names()));
    auto* ms = sub->add_option("--masses", cfg.masses, "Particle masses in kg")->delimiter(',');
    at->excludes(ms);
  };

  auto* verify = app.add_subcommand("verify", "Run the symbolic identity suites");
  verify->add_option("--particles", cfg.particles, "Number of particles")->check(CLI::Range(1, 4));

  auto* effective = app.add_subcommand("effective", "Effective center-of-mass and relative constants");
  add_system(effective);
  add_params(effective);

  auto* correct = app.add_subcommand("correct", "First-order level corrections of a two-body Coulomb system");
  add_system(correct);
  add_params(correct);
  correct->add_option("--states", cfg.states, "States as \"n,l;n,l;...\"");
  correct->add_option("--recipe", recipe, "Length-scale recipe for atom presets")
      ->check(CLI::IsMember({"exact", "paper"}));

  auto* bounds = app.add_subcommand("bounds", "Bounds on the noncommutativity parameters from measurements");
  bounds->add_option("--data", cfg.data_path, "Measurement file")->check(CLI::ExistingFile);
  bounds->add_option("--atoms", cfg.atoms, "Only records for these atoms");
  bounds->add_option("--recipe", recipe, "Length-scale recipe")->check(CLI::IsMember({"exact", "paper"}));
  bounds->add_option("--split-fraction", cfg.split_fraction, "Share of the error budget given to theta")
      ->check(CLI::Range(0.0, 1.0));

  auto* oracle = app.add_subcommand("oracle", "Numerical validation scorecard");
  oracle->add_option("--data", cfg.data_path, "Measurement file")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
  cfg.recipe = parse_recipe(recipe);
  if (!constants.empty()) cfg.constants_path = constants;
  return run(cfg, out, err);
}

}  // namespace ncps
