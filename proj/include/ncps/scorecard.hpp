#pragma once

// Numerical validation scorecard: closed forms checked against the grid oracle, the
// Gaussian moments, the decoupling toy model, the bounds and the reduced-mass ratios.

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncps/exotic_atoms.hpp"
#include "ncps/hydrogen_corrections.hpp"
#include "ncps/numerical_oracle.hpp"
#include "ncps/verify.hpp"

namespace ncps {

enum class ToleranceKind {
  relative,  ///< |got/expected - 1| <= tol
  absolute,  ///< |got - expected| <= tol
  decades,   ///< |log10(got/expected)| <= tol
};

struct ScoreEntry {
  std::string check_id;
  int criterion = 0;
  double expected = 0.0;
  double got = 0.0;
  double tol = 0.0;
  ToleranceKind kind = ToleranceKind::relative;
  bool pass = false;

  nlohmann::json to_json() const {
    return {{"check_id", check_id}, {"expected", expected}, {"got", got}, {"tol", tol}, {"pass", pass}};
  }
};

inline ScoreEntry score(std::string id, int criterion, double expected, double got, double tol, ToleranceKind kind) {
  ScoreEntry e{std::move(id), criterion, expected, got, tol, kind, false};
  switch (kind) {
    case ToleranceKind::relative:
      e.pass = expected != 0.0 && std::abs(got / expected - 1.0) <= tol;
      break;
    case ToleranceKind::absolute:
      e.pass = std::abs(got - expected) <= tol;
      break;
    case ToleranceKind::decades:
      e.pass = expected > 0.0 && got > 0.0 && std::abs(std::log10(got / expected)) <= tol;
      break;
  }
  return e;
}

namespace detail {
inline std::string state_tag(int n, int l) { return "[n=" + std::to_string(n) + ",l=" + std::to_string(l) + "]"; }
/// kappa = a = hbar = 1, where energies are in kappa/a and lengths in a.
inline CoulombSystem unit_coulomb() { return CoulombSystem(1.0, 1.0, 1.0); }
}  // namespace detail

/// Bohr energies and <r^s> for n <= max_n, every l and every finite s in -6..2.
inline std::vector<ScoreEntry> moment_checks(int max_n = 8) {
  std::vector<ScoreEntry> out;
  const CoulombSystem sys = detail::unit_coulomb();
  for (int n = 1; n <= max_n; ++n) {
    for (int l = 0; l < n; ++l) {
      const RadialGrid g = RadialGrid::for_state(n, l, -6);
      const RadialState s1 = solve_radial(n, l, sys, g);
      const RadialState s2 = solve_radial(n, l, sys, g.refined(2));
      const RadialState s4 = solve_radial(n, l, sys, g.refined(4));
      auto extrapolate = [&](auto q) { return (64.0 * q(s4) - 20.0 * q(s2) + q(s1)) / 45.0; };
      const std::string tag = detail::state_tag(n, l);
      out.push_back(score("energy" + tag, 3, -0.5 / (n * n), extrapolate([](const RadialState& s) { return s.energy; }),
                          1e-8, ToleranceKind::relative));
      for (int s = -6; s <= 2; ++s) {
        if (s < -(2 * l + 2)) continue;
        const RadialWeight w = RadialWeight::r_power(s);
        const double got = extrapolate([&](const RadialState& st) { return expectation_radial(st, w); });
        out.push_back(score("r_power_mean" + tag.substr(0, tag.size() - 1) + ",s=" + std::to_string(s) + "]", 3,
                            r_power_mean_reduced({n, l}, s), got, 1e-8, ToleranceKind::relative));
      }
    }
  }
  return out;
}

/// The first `count` states in (n, l) order, skipping none.
inline std::vector<BoundState> leading_states(int count) {
  std::vector<BoundState> out;
  for (int n = 1; static_cast<int>(out.size()) < count; ++n)
    for (int l = 0; l < n && static_cast<int>(out.size()) < count; ++l) out.push_back({n, l});
  return out;
}

inline std::vector<ScoreEntry> eta_shift_checks(int count = 20) {
  std::vector<ScoreEntry> out;
  const CoulombSystem sys = detail::unit_coulomb();
  NCMoments m;
  m.mean_eta_sq_r = 1.0;
  for (const BoundState& st : leading_states(count)) {
    const std::string tag = detail::state_tag(st.n, st.l);
    const double closed = delta_E_eta(st, sys, m);
    out.push_back(score("dE_eta.grid" + tag, 4, closed, extrapolated_shift(st, sys, m, ShiftKind::eta), 1e-6,
                        ToleranceKind::relative));
    out.push_back(score("dE_eta.r2-route" + tag, 4, closed, delta_E_eta_via_moment(st, sys, m), 1e-12,
                        ToleranceKind::relative));
  }
  return out;
}

inline std::vector<ScoreEntry> theta_shift_checks() {
  std::vector<ScoreEntry> out;
  const CoulombSystem sys = detail::unit_coulomb();
  NCMoments m;
  m.mean_theta_sq = 1.0;
  const std::vector<std::pair<BoundState, double>> cases = {
      {{3, 2}, 1e-4}, {{4, 2}, 1e-4}, {{4, 3}, 1e-4}, {{5, 3}, 1e-4}, {{36, 34}, 1e-3}, {{34, 32}, 1e-3}};
  for (const auto& [st, tol] : cases) {
    out.push_back(score("dE_theta.grid" + detail::state_tag(st.n, st.l), 5, delta_E_theta_high_l(st, sys, m),
                        extrapolated_shift(st, sys, m, ShiftKind::theta), tol, ToleranceKind::relative));
  }
  return out;
}

inline std::vector<ScoreEntry> gaussian_checks() {
  return {
      score("gaussian.abs_first", 6, 2.0 / std::sqrt(M_PI), gaussian_moment(GaussianMoment::abs_first), 1e-10,
            ToleranceKind::relative),
      score("gaussian.second[i=1,j=1]", 6, 0.5, gaussian_moment(GaussianMoment::component_second, 1, 1), 1e-10,
            ToleranceKind::relative),
      score("gaussian.second[i=3,j=3]", 6, 0.5, gaussian_moment(GaussianMoment::component_second, 3, 3), 1e-10,
            ToleranceKind::relative),
      score("gaussian.second[i=1,j=2]", 6, 0.0, gaussian_moment(GaussianMoment::component_second, 1, 2), 1e-12,
            ToleranceKind::absolute),
  };
}

inline std::vector<ScoreEntry> decoupling_checks() {
  const DecouplingResult r = decoupling_scaling_check(default_decoupling_omegas());
  DecouplingModel free_model;
  free_model.coupling = 0.0;
  const DecouplingResult z = decoupling_scaling_check(default_decoupling_omegas(), free_model);
  double largest_free = 0.0;
  for (double d : z.second_order_exact) largest_free = std::max(largest_free, std::abs(d));
  return {
      score("decoupling.first_order", 7, 0.0, r.first_order_shift / r.energy_scale, 1e-12, ToleranceKind::absolute),
      score("decoupling.exponent", 7, -1.0, r.exponent.value_or(0.0), 0.1, ToleranceKind::relative),
      score("decoupling.zero_coupling", 7, 0.0, largest_free, 1e-12, ToleranceKind::absolute),
  };
}

inline std::vector<ScoreEntry> bounds_checks(const PhysicalConstants& pc, const std::vector<MeasurementRecord>& records) {
  std::vector<ScoreEntry> out;
  for (const auto& rec : records) {
    if (rec.atom != "antiprotonic_helium") continue;
    const auto b = bounds_from_record(rec, AtomSpec::preset(rec.atom, pc), pc, LengthRecipe::paper);
    const std::string tag = detail::state_tag(rec.from.n, rec.from.l) + "->" + detail::state_tag(rec.to.n, rec.to.l);
    out.push_back(score("bounds.hbar_theta" + tag, 8, 1e-27, b.hbar_theta_m2.value_or(0.0), 1.0, ToleranceKind::decades));
    out.push_back(
        score("bounds.hbar_eta" + tag, 8, 1e-50, b.hbar_eta_kg2m2_s2.value_or(0.0), 1.0, ToleranceKind::decades));
  }
  return out;
}

/// The quoted figures are 206.8 and 8.8e6; the checks demand agreement to the printed digits.
inline std::vector<ScoreEntry> ratio_checks(const PhysicalConstants& pc) {
  const auto r = reduced_mass_comparison(AtomSpec::preset("muonic_hydrogen", pc), AtomSpec::preset("hydrogen", pc),
                                         true);
  const auto self = reduced_mass_comparison(AtomSpec::preset("hydrogen", pc), AtomSpec::preset("hydrogen", pc));
  return {
      score("ratio.mu", 9, 206.8, r.mu_ratio, 0.05, ToleranceKind::absolute),
      score("ratio.mu_cubed", 9, 8.8e6, r.mu_ratio_cubed, 0.05e6, ToleranceKind::absolute),
      score("ratio.self", 9, 1.0, self.mu_ratio, 0.0, ToleranceKind::absolute),
  };
}

inline std::vector<ScoreEntry> oracle_scorecard(const PhysicalConstants& pc,
                                                const std::vector<MeasurementRecord>& records) {
  std::vector<ScoreEntry> all;
  for (auto part : {moment_checks(), eta_shift_checks(), theta_shift_checks(), gaussian_checks(), decoupling_checks(),
                    bounds_checks(pc, records), ratio_checks(pc)}) {
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

inline nlohmann::json scorecard_json(const std::vector<ScoreEntry>& entries) {
  nlohmann::json checks = nlohmann::json::array();
  bool passed = true;
  for (const auto& e : entries) {
    checks.push_back(e.to_json());
    passed = passed && e.pass;
  }
  return {{"checks", checks}, {"passed", passed}};
}

/// Symbolic reports for one system size.
inline std::vector<IdentityReport> symbolic_reports(int particles) {
  const NCSystem sys = NCSystem::generic(particles);
  return {verify_particle_algebra(sys), verify_com_algebra(sys), verify_rotational_covariance(sys)};
}

inline nlohmann::json reports_json(const std::vector<IdentityReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  bool passed = true;
  for (const auto& r : reports) {
    arr.push_back(r.to_json());
    passed = passed && r.passed();
  }
  return {{"reports", arr}, {"passed", passed}};
}

/// Everything the validation suite produces, as one document.
inline nlohmann::json full_suite_json(const PhysicalConstants& pc, const std::vector<MeasurementRecord>& records) {
  nlohmann::json symbolic = nlohmann::json::object();
  for (int n = 1; n <= 3; ++n) symbolic[std::to_string(n)] = reports_json(symbolic_reports(n));
  return {{"symbolic", symbolic}, {"oracle", scorecard_json(oracle_scorecard(pc, records))}};
}

}  // namespace ncps
