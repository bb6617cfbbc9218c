#pragma once

// First-order energy corrections of a two-body Coulomb system in rotationally
// invariant noncommutative phase space, and the center-of-mass oscillator levels.

#include <cmath>
#include <optional>
#include <string>

#include "ncps/composite_params.hpp"
#include "ncps/errors.hpp"
#include "ncps/physical_constants.hpp"

namespace ncps {

/// Reduced mass mu, coupling kappa (J m) and the length a = hbar^2 / (mu kappa).
class CoulombSystem {
 public:
  CoulombSystem(double mu, double kappa, double hbar, double total_mass = 0.0)
      : mu_(mu), kappa_(kappa), hbar_(hbar), total_mass_(total_mass) {
    if (!(mu > 0.0) || !(kappa > 0.0) || !(hbar > 0.0)) {
      throw InvalidParameter("reduced mass, coupling and hbar must be positive");
    }
  }

  /// System whose length scale is prescribed; the reduced mass is inferred so that a = hbar^2/(mu kappa).
  static CoulombSystem from_length(double a, double kappa, double hbar, double total_mass = 0.0) {
    if (!(a > 0.0)) throw InvalidParameter("length scale must be positive");
    return CoulombSystem(hbar * hbar / (a * kappa), kappa, hbar, total_mass);
  }

  double mu() const { return mu_; }
  double kappa() const { return kappa_; }
  double hbar() const { return hbar_; }
  double total_mass() const { return total_mass_; }
  double a() const { return hbar_ * hbar_ / (mu_ * kappa_); }
  double energy_unit() const { return kappa_ / a(); }

 private:
  double mu_;
  double kappa_;
  double hbar_;
  double total_mass_;
};

struct BoundState {
  int n = 1;
  int l = 0;

  void validate() const {
    if (n < 1 || l < 0 || l > n - 1) {
      throw InvalidQuantumNumbers("invalid state (n=" + std::to_string(n) + ", l=" + std::to_string(l) + ")");
    }
  }
};

/// Averages of the noncommutativity tensors over the auxiliary oscillator ground states.
struct NCMoments {
  double mean_theta = 0.0;     ///< <theta^r>
  double mean_theta_sq = 0.0;  ///< <(theta^r)^2>
  double mean_eta_sq_r = 0.0;  ///< <(eta^r)^2>
  double mean_eta_sq_c = 0.0;  ///< <(eta^c)^2>

  /// <theta^2> = (3 pi / 8) <theta>^2 for the Gaussian ground state.
  static double theta_sq_from_mean(double mean_theta) { return 3.0 * M_PI / 8.0 * mean_theta * mean_theta; }
};

inline NCMoments nc_moments(const EffectiveConstants& consts, const PhysicalConstants& pc) {
  if (!consts.c_theta_r || !consts.c_eta_r) {
    throw WrongParticleCount("relative constants are defined for two-particle systems only");
  }
  const double lp2 = pc.planck_length * pc.planck_length;
  const double hbar = pc.hbar;
  NCMoments m;
  m.mean_theta = 2.0 * lp2 * *consts.c_theta_r / (std::sqrt(M_PI) * hbar);
  m.mean_theta_sq = 1.5 * std::pow(*consts.c_theta_r * lp2 / hbar, 2);
  m.mean_eta_sq_r = 1.5 * std::pow(hbar * *consts.c_eta_r / lp2, 2);
  m.mean_eta_sq_c = 1.5 * std::pow(hbar * consts.c_eta_c / lp2, 2);
  return m;
}

/// <r^s> in units of a^s, from the Kramers-Pasternack recursion.
inline double r_power_mean_reduced(const BoundState& st, int s) {
  st.validate();
  if (s < -6 || s > 2) throw InvalidParameter("supported powers are -6..2");
  if (s < -(2 * st.l + 2)) {
    throw DivergentMoment("<r^" + std::to_string(s) + "> diverges for l=" + std::to_string(st.l));
  }
  const double n = st.n;
  const double n2 = n * n;
  const double l = st.l;
  const double two_l1_sq = (2 * l + 1) * (2 * l + 1);
  // moments indexed by s + 6
  double r[9] = {};
  r[6] = 1.0;
  r[5] = 1.0 / n2;
  // (s+1)/n^2 <r^s> - (2s+1) <r^(s-1)> + (s/4)((2l+1)^2 - s^2) <r^(s-2)> = 0
  for (int k = 1; k <= 2; ++k) {
    r[k + 6] = n2 / (k + 1) * ((2 * k + 1) * r[k + 5] - k / 4.0 * (two_l1_sq - k * k) * r[k + 4]);
  }
  if (s >= -1) return r[s + 6];
  r[4] = 1.0 / (n2 * n * (l + 0.5));
  for (int k = -1; k >= -4 && k - 2 >= s; --k) {
    const double denom = k / 4.0 * (two_l1_sq - k * k);
    r[k + 4] = ((2 * k + 1) * r[k + 5] - (k + 1) / n2 * r[k + 6]) / denom;
  }
  return r[s + 6];
}

inline double r_power_mean(const BoundState& st, const CoulombSystem& sys, int s) {
  return r_power_mean_reduced(st, s) * std::pow(sys.a(), s);
}

/// Left-hand side of the Kramers-Pasternack relation divided by its largest term.
inline double kramers_pasternack_residual(const BoundState& st, int s) {
  const double n2 = static_cast<double>(st.n) * st.n;
  const double l = st.l;
  const double t1 = (s + 1) / n2 * r_power_mean_reduced(st, s);
  const double t2 = -(2.0 * s + 1) * r_power_mean_reduced(st, s - 1);
  const double t3 = s / 4.0 * ((2 * l + 1) * (2 * l + 1) - s * s) * (s == 0 ? 0.0 : r_power_mean_reduced(st, s - 2));
  const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
  return std::abs(t1 + t2 + t3) / scale;
}

/// Momentum-noncommutativity shift kappa a^3 n^2 <eta^2> (5n^2 + 1 - 3l(l+1)) / (24 hbar^2).
inline double delta_E_eta(const BoundState& st, const CoulombSystem& sys, const NCMoments& m) {
  st.validate();
  const double n2 = static_cast<double>(st.n) * st.n;
  const double poly = 5.0 * n2 + 1.0 - 3.0 * st.l * (st.l + 1.0);
  const double a = sys.a();
  return sys.kappa() * a * (a / sys.hbar()) * (a / sys.hbar()) * n2 * m.mean_eta_sq_r * poly / 24.0;
}

/// Same shift through <eta^2> <r^2> / (12 mu).
inline double delta_E_eta_via_moment(const BoundState& st, const CoulombSystem& sys, const NCMoments& m) {
  return m.mean_eta_sq_r * r_power_mean(st, sys, 2) / (12.0 * sys.mu());
}

/// Dimensionless bracket of the l >= 2 coordinate correction (multiplies -hbar^2 kappa <theta^2>/(a^5 n^5)).
inline double theta_high_l_bracket(int n, int l) {
  const double N2 = static_cast<double>(n) * n;
  const double L = l;
  const double ll1 = L * (L + 1);
  const double poly = 5.0 * N2 - 3.0 * ll1 + 1.0;
  const double t1 = 1.0 / (6.0 * ll1 * (2 * L + 1));
  const double t2 = (6.0 * N2 - 2.0 * ll1) / (3.0 * ll1 * (2 * L + 1) * (2 * L + 3) * (2 * L - 1));
  const double t3 = poly / (2.0 * (L + 2) * (2 * L + 1) * (2 * L + 3) * (L - 1) * (2 * L - 1));
  const double t4 = 5.0 / 6.0 * poly / (ll1 * (L + 2) * (2 * L + 1) * (2 * L + 3) * (L - 1) * (2 * L - 1));
  return t1 - t2 + t3 - t4;
}

inline double delta_E_theta_high_l(const BoundState& st, const CoulombSystem& sys, const NCMoments& m) {
  st.validate();
  if (st.l < 2) {
    throw DivergentLevel("coordinate correction diverges for l=" + std::to_string(st.l) +
                         (st.l == 0 ? "; use delta_E_theta_ns" : ""));
  }
  const double a = sys.a();
  const double hbar_over_a2 = sys.hbar() / (a * a);
  const double n5 = std::pow(static_cast<double>(st.n), 5);
  return -hbar_over_a2 * hbar_over_a2 * m.mean_theta_sq * sys.energy_unit() / n5 * theta_high_l_bracket(st.n, st.l);
}

/// Cited numerical coefficient of the ns coordinate correction, kept at its two printed decimals.
inline constexpr double kNsThetaCoefficient = 1.72;

/// 1.72 hbar <theta> pi kappa / (8 a^3 n^3)
inline double delta_E_theta_ns(int n, const CoulombSystem& sys, const NCMoments& m) {
  if (n < 1) throw InvalidQuantumNumbers("n must be >= 1");
  const double a = sys.a();
  const double n3 = std::pow(static_cast<double>(n), 3);
  return kNsThetaCoefficient * sys.hbar() * m.mean_theta / (a * a) * M_PI * sys.energy_unit() / (8.0 * n3);
}

struct Correction {
  double eta = 0.0;
  std::optional<double> theta;  ///< empty when no finite first-order value exists (l = 1)

  bool theta_computable() const { return theta.has_value(); }
  /// eta + theta, or eta alone when theta is not computable.
  double total() const { return eta + theta.value_or(0.0); }
};

inline Correction total_correction(const BoundState& st, const CoulombSystem& sys, const NCMoments& m) {
  st.validate();
  Correction c;
  c.eta = delta_E_eta(st, sys, m);
  if (st.l == 0) {
    c.theta = delta_E_theta_ns(st.n, sys, m);
  } else if (st.l >= 2) {
    c.theta = delta_E_theta_high_l(st, sys, m);
  }
  return c;
}

/// Level hbar sqrt(2 <(eta^c)^2>) (n1+n2+n3+3/2) / (sqrt(3) M).
inline double com_oscillator_level(int n1, int n2, int n3, double total_mass, const NCMoments& m, double hbar) {
  if (n1 < 0 || n2 < 0 || n3 < 0) throw InvalidQuantumNumbers("oscillator quantum numbers must be >= 0");
  if (m.mean_eta_sq_c < 0.0) throw InvalidParameter("<(eta^c)^2> must be non-negative");
  if (!(total_mass > 0.0)) throw InvalidParameter("total mass must be positive");
  return hbar * std::sqrt(2.0 * m.mean_eta_sq_c) * (n1 + n2 + n3 + 1.5) / (std::sqrt(3.0) * total_mass);
}

/// Angular frequency of p^2/(2M) + <(eta^c)^2> x^2/(12M), i.e. sqrt(<(eta^c)^2>/6)/M.
inline double com_oscillator_frequency_from_hamiltonian(double total_mass, const NCMoments& m) {
  if (!(total_mass > 0.0)) throw InvalidParameter("total mass must be positive");
  return std::sqrt(m.mean_eta_sq_c / 6.0) / total_mass;
}

}  // namespace ncps
