#pragma once

// Noncommutative coordinates and momenta represented over canonical variables,
// with one pair of auxiliary oscillators shared by every particle.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ncps/errors.hpp"
#include "ncps/scalar.hpp"
#include "ncps/weyl_algebra.hpp"

namespace ncps {

inline int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // even permutations of (1,2,3)
  if ((i == 1 && j == 2) || (i == 2 && j == 3) || (i == 3 && j == 1)) return 1;
  return -1;
}

struct ParticleSpec {
  int index = 1;
  Scalar c_theta;
  Scalar c_eta;
};

class NCSystem {
 public:
  /// Particles must be indexed 1..N in order; the mass of particle n is the symbol m[n].
  explicit NCSystem(std::vector<ParticleSpec> particles, bool mass_conditions_applied = false)
      : particles_(std::move(particles)), mass_conditions_applied_(mass_conditions_applied) {
    if (particles_.empty()) throw InvalidParameter("a system needs at least one particle");
    for (std::size_t k = 0; k < particles_.size(); ++k) {
      if (particles_[k].index != static_cast<int>(k) + 1) {
        throw InvalidParameter("particle indices must run 1..N in order");
      }
    }
  }

  /// Every particle carries its own symbolic constants c_theta[n], c_eta[n].
  static NCSystem generic(int n_particles) {
    std::vector<ParticleSpec> ps;
    for (int n = 1; n <= n_particles; ++n) ps.push_back({n, Scalar(sym::c_theta(n)), Scalar(sym::c_eta(n))});
    return NCSystem(std::move(ps));
  }

  /// c_theta = c_eta = 0: ordinary quantum mechanics.
  static NCSystem commutative(int n_particles) {
    std::vector<ParticleSpec> ps;
    for (int n = 1; n <= n_particles; ++n) ps.push_back({n, Scalar{}, Scalar{}});
    return NCSystem(std::move(ps));
  }

  /// c_theta[n] = gamma~ / m[n], c_eta[n] = alpha~ * m[n].
  NCSystem with_mass_conditions() const {
    std::vector<ParticleSpec> ps;
    for (const auto& p : particles_) {
      ps.push_back({p.index, Scalar(sym::gamma_tilde()) * Scalar(sym::mass(p.index), -1),
                    Scalar(sym::alpha_tilde()) * Scalar(sym::mass(p.index))});
    }
    NCSystem out(std::move(ps), true);
    out.momentum_sign_ = momentum_sign_;
    return out;
  }

  /// Sign in front of the [x x pb~] term of the momentum representation. +1 reproduces
  /// [P_i, P_j] = i hbar eta_ij; -1 exists only to check that the verifier notices.
  NCSystem with_momentum_sign(int sign) const {
    NCSystem out = *this;
    out.momentum_sign_ = sign < 0 ? -1 : 1;
    return out;
  }

  int size() const { return static_cast<int>(particles_.size()); }
  const std::vector<ParticleSpec>& particles() const { return particles_; }
  bool mass_conditions_applied() const { return mass_conditions_applied_; }
  int momentum_sign() const { return momentum_sign_; }

  /// True when every particle still carries the free symbols c_theta[n], c_eta[n].
  bool is_generic() const {
    for (const auto& p : particles_) {
      if (!(p.c_theta == Scalar(sym::c_theta(p.index))) || !(p.c_eta == Scalar(sym::c_eta(p.index)))) return false;
    }
    return true;
  }

  /// Applies bindings to every particle constant.
  NCSystem substituted(const ScalarBindings& bindings, bool mass_conditions_applied) const {
    std::vector<ParticleSpec> ps;
    for (const auto& p : particles_) ps.push_back({p.index, p.c_theta.substitute(bindings), p.c_eta.substitute(bindings)});
    NCSystem out(std::move(ps), mass_conditions_applied);
    out.momentum_sign_ = momentum_sign_;
    return out;
  }

  const ParticleSpec& particle(int n) const {
    if (n < 1 || n > size()) throw UnknownParticle("no particle with index " + std::to_string(n));
    return particles_[static_cast<std::size_t>(n - 1)];
  }

  /// mu_n = m_n / M
  Scalar mass_fraction(int n) const {
    particle(n);
    return Scalar::mass_fraction(n, size());
  }

 private:
  std::vector<ParticleSpec> particles_;
  bool mass_conditions_applied_ = false;
  int momentum_sign_ = 1;
};

/// gamma~ -> c_theta[n] = gamma~/m[n], alpha~ -> c_eta[n] = alpha~ m[n] for n = 1..N.
inline ScalarBindings mass_condition_bindings(int n_particles) {
  ScalarBindings b;
  for (int n = 1; n <= n_particles; ++n) {
    b.emplace(sym::c_theta(n), Scalar(sym::gamma_tilde()) * Scalar(sym::mass(n), -1));
    b.emplace(sym::c_eta(n), Scalar(sym::alpha_tilde()) * Scalar(sym::mass(n)));
  }
  return b;
}

enum class TensorKind { theta, eta };

/// theta_ij for a given dimensionless constant: (c l_P^2 / hbar) sum_k eps_ijk a~_k;
/// eta_ij: (c hbar / l_P^2) sum_k eps_ijk pb~_k.
inline OperatorExpr tensor_from_constant(TensorKind kind, const Scalar& c, int i, int j) {
  const Scalar scale = kind == TensorKind::theta
                           ? c * Scalar(sym::planck_length(), 2) * Scalar(sym::hbar(), -1)
                           : c * Scalar(sym::hbar()) * Scalar(sym::planck_length(), -2);
  OperatorExpr out;
  for (int k = 1; k <= 3; ++k) {
    const int eps = levi_civita(i, j, k);
    if (eps == 0) continue;
    out += Scalar(eps) * scale * OperatorExpr(kind == TensorKind::theta ? gen::a(k) : gen::pb(k));
  }
  return out;
}

inline OperatorExpr tensor_component(const NCSystem& sys, TensorKind kind, int n, int i, int j) {
  const auto& p = sys.particle(n);
  return tensor_from_constant(kind, kind == TensorKind::theta ? p.c_theta : p.c_eta, i, j);
}

/// X_i^(n) = x_i^(n) + (c_theta l_P^2 / 2 hbar) [a~ x p^(n)]_i
inline OperatorExpr nc_coordinate(const NCSystem& sys, int n, int i) {
  const auto& part = sys.particle(n);
  const Scalar scale =
      part.c_theta * Scalar::rational(1, 2) * Scalar(sym::planck_length(), 2) * Scalar(sym::hbar(), -1);
  OperatorExpr out(gen::x(n, i));
  for (int j = 1; j <= 3; ++j) {
    for (int k = 1; k <= 3; ++k) {
      const int eps = levi_civita(i, j, k);
      if (eps == 0) continue;
      out += OperatorExpr::product({gen::a(j), gen::p(n, k)}, Scalar(eps) * scale);
    }
  }
  return out;
}

/// P_i^(n) = p_i^(n) + (c_eta hbar / 2 l_P^2) [x^(n) x pb~]_i
inline OperatorExpr nc_momentum(const NCSystem& sys, int n, int i) {
  const auto& part = sys.particle(n);
  const Scalar scale = Scalar(sys.momentum_sign()) * part.c_eta * Scalar::rational(1, 2) * Scalar(sym::hbar()) *
                       Scalar(sym::planck_length(), -2);
  OperatorExpr out(gen::p(n, i));
  for (int j = 1; j <= 3; ++j) {
    for (int k = 1; k <= 3; ++k) {
      const int eps = levi_civita(i, j, k);
      if (eps == 0) continue;
      out += OperatorExpr::product({gen::x(n, j), gen::pb(k)}, Scalar(eps) * scale);
    }
  }
  return out;
}

enum class CompositeKind {
  center_coordinate,   ///< X^c = sum_n mu_n X^(n)
  center_momentum,     ///< P^c = sum_n P^(n)
  particle_coordinate_offset,  ///< Delta X^(n) = X^(n) - X^c
  particle_momentum_offset,    ///< Delta P^(n) = P^(n) - mu_n P^c
  relative_coordinate,  ///< X^r = X^(1) - X^(2)
  relative_momentum,    ///< P^r = mu_2 P^(1) - mu_1 P^(2)
};

namespace detail {

using SingleBuilder = std::function<OperatorExpr(int, int)>;

inline OperatorExpr composite_from(const NCSystem& sys, CompositeKind kind, int axis, int particle,
                                   const SingleBuilder& single_coord, const SingleBuilder& single_mom) {
  const int N = sys.size();
  auto center_coord = [&] {
    OperatorExpr out;
    for (int n = 1; n <= N; ++n) out += sys.mass_fraction(n) * single_coord(n, axis);
    return out;
  };
  auto center_mom = [&] {
    OperatorExpr out;
    for (int n = 1; n <= N; ++n) out += single_mom(n, axis);
    return out;
  };
  auto require_pair = [&] {
    if (N != 2) throw WrongParticleCount("relative variables need exactly two particles, got " + std::to_string(N));
  };
  switch (kind) {
    case CompositeKind::center_coordinate: return center_coord();
    case CompositeKind::center_momentum: return center_mom();
    case CompositeKind::particle_coordinate_offset: return single_coord(particle, axis) - center_coord();
    case CompositeKind::particle_momentum_offset:
      return single_mom(particle, axis) - sys.mass_fraction(particle) * center_mom();
    case CompositeKind::relative_coordinate:
      require_pair();
      return single_coord(1, axis) - single_coord(2, axis);
    case CompositeKind::relative_momentum:
      require_pair();
      return sys.mass_fraction(2) * single_mom(1, axis) - sys.mass_fraction(1) * single_mom(2, axis);
  }
  return {};
}

}  // namespace detail

/// Composite noncommutative operator. `particle` is used only by the per-particle offsets.
inline OperatorExpr composite_operator(const NCSystem& sys, CompositeKind kind, int axis, int particle = 1) {
  auto coord = [&](int n, int i) { return nc_coordinate(sys, n, i); };
  auto mom = [&](int n, int i) { return nc_momentum(sys, n, i); };
  return detail::composite_from(sys, kind, axis, particle, coord, mom);
}

/// Same combinations built from the canonical x^(n), p^(n).
inline OperatorExpr canonical_composite_operator(const NCSystem& sys, CompositeKind kind, int axis,
                                                 int particle = 1) {
  auto coord = [&](int n, int i) {
    sys.particle(n);
    return OperatorExpr(gen::x(n, i));
  };
  auto mom = [&](int n, int i) {
    sys.particle(n);
    return OperatorExpr(gen::p(n, i));
  };
  return detail::composite_from(sys, kind, axis, particle, coord, mom);
}

/// L^t = sum_n [x^(n) x p^(n)] + hbar [a~ x pa~] + hbar [b~ x pb~]
inline OperatorExpr total_angular_momentum(const NCSystem& sys, int axis) {
  OperatorExpr out;
  const Scalar hbar(sym::hbar());
  for (int j = 1; j <= 3; ++j) {
    for (int k = 1; k <= 3; ++k) {
      const int eps = levi_civita(axis, j, k);
      if (eps == 0) continue;
      for (int n = 1; n <= sys.size(); ++n) out += OperatorExpr::product({gen::x(n, j), gen::p(n, k)}, Scalar(eps));
      out += OperatorExpr::product({gen::a(j), gen::pa(k)}, Scalar(eps) * hbar);
      out += OperatorExpr::product({gen::b(j), gen::pb(k)}, Scalar(eps) * hbar);
    }
  }
  return out;
}

}  // namespace ncps
