#pragma once

// Numeric per-particle and effective noncommutativity constants of a composite system.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ncps/errors.hpp"

namespace ncps {

struct ParticleParams {
  double mass = 0.0;  // kg
  double c_theta = 0.0;
  double c_eta = 0.0;
};

struct SystemParams {
  std::vector<ParticleParams> particles;

  void validate() const {
    if (particles.empty()) throw InvalidParameter("system needs at least one particle");
    for (const auto& p : particles) {
      if (!(p.mass > 0.0) || !std::isfinite(p.mass)) throw InvalidParameter("particle masses must be positive");
      if (!std::isfinite(p.c_theta) || !std::isfinite(p.c_eta)) throw InvalidParameter("constants must be finite");
    }
  }

  double total_mass() const {
    double M = 0.0;
    for (const auto& p : particles) M += p.mass;
    return M;
  }
};

struct EffectiveConstants {
  double c_theta_c = 0.0;
  double c_eta_c = 0.0;
  std::optional<double> c_theta_r;
  std::optional<double> c_eta_r;
  double M = 0.0;            // kg
  std::optional<double> mu;  // kg, reduced mass of a pair
};

/// c_theta[n] = gamma~ / m_n, c_eta[n] = alpha~ m_n.
inline SystemParams from_mass_conditions(double gamma_tilde, double alpha_tilde, const std::vector<double>& masses) {
  if (!std::isfinite(gamma_tilde) || !std::isfinite(alpha_tilde)) throw InvalidParameter("gamma~, alpha~ must be finite");
  SystemParams sys;
  for (double m : masses) {
    if (!(m > 0.0)) throw InvalidParameter("particle masses must be positive");
    sys.particles.push_back({m, gamma_tilde / m, alpha_tilde * m});
  }
  sys.validate();
  return sys;
}

namespace detail {
inline void fill_relative(const SystemParams& sys, EffectiveConstants& out) {
  const auto& p1 = sys.particles[0];
  const auto& p2 = sys.particles[1];
  const double M = p1.mass + p2.mass;
  const double mu1 = p1.mass / M;
  const double mu2 = p2.mass / M;
  out.c_theta_r = p1.c_theta + p2.c_theta;
  out.c_eta_r = mu2 * mu2 * p1.c_eta + mu1 * mu1 * p2.c_eta;
  out.mu = p1.mass * p2.mass / M;
}
}  // namespace detail

/// c_theta^c = sum mu_n^2 c_theta[n], c_eta^c = sum c_eta[n]; relative constants too when N = 2.
inline EffectiveConstants effective_com_constants(const SystemParams& sys) {
  sys.validate();
  EffectiveConstants out;
  out.M = sys.total_mass();
  for (const auto& p : sys.particles) {
    const double mu = p.mass / out.M;
    out.c_theta_c += mu * mu * p.c_theta;
    out.c_eta_c += p.c_eta;
  }
  if (sys.particles.size() == 2) detail::fill_relative(sys, out);
  return out;
}

inline EffectiveConstants relative_constants(const SystemParams& sys) {
  if (sys.particles.size() != 2) {
    throw WrongParticleCount("relative constants need exactly two particles, got " +
                             std::to_string(sys.particles.size()));
  }
  return effective_com_constants(sys);
}

struct MassConditionCheck {
  bool satisfied = false;
  double gamma_tilde = 0.0;  ///< mean of c_theta[n] m_n
  double alpha_tilde = 0.0;  ///< mean of c_eta[n] / m_n
  double max_residual = 0.0;  ///< largest relative spread among the products / ratios
};

inline MassConditionCheck check_mass_conditions(const SystemParams& sys, double tol = 1e-12) {
  sys.validate();
  std::vector<double> products, ratios;
  for (const auto& p : sys.particles) {
    products.push_back(p.c_theta * p.mass);
    ratios.push_back(p.c_eta / p.mass);
  }
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  auto spread = [](const std::vector<double>& v, double centre) {
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (double x : v) worst = std::max(worst, std::abs(x - centre) / scale);
    return worst;
  };
  MassConditionCheck out;
  out.gamma_tilde = mean(products);
  out.alpha_tilde = mean(ratios);
  out.max_residual = std::max(spread(products, out.gamma_tilde), spread(ratios, out.alpha_tilde));
  out.satisfied = out.max_residual <= tol;
  return out;
}

}  // namespace ncps
