#pragma once

// Executable identity suites for the noncommutative algebra: single-particle
// brackets, composite (center-of-mass / relative) brackets, and rotational
// covariance under the total angular momentum.

#include <array>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "ncps/identity_report.hpp"
#include "ncps/nc_representation.hpp"

namespace ncps {

namespace detail {

inline std::string label(std::string base, std::initializer_list<std::pair<char, int>> idx) {
  base += '[';
  bool first = true;
  for (const auto& [k, v] : idx) {
    if (!first) base += ',';
    first = false;
    base += k;
    base += '=';
    base += std::to_string(v);
  }
  return base + ']';
}

inline Scalar ihbar() { return Scalar::i() * Scalar(sym::hbar()); }
inline Scalar kronecker(int a, int b) { return Scalar(a == b ? 1 : 0); }

using Triple = std::array<OperatorExpr, 3>;

inline std::vector<Triple> per_particle(const NCSystem& sys, OperatorExpr (*build)(const NCSystem&, int, int)) {
  std::vector<Triple> out(static_cast<std::size_t>(sys.size()));
  for (int n = 1; n <= sys.size(); ++n) {
    for (int i = 1; i <= 3; ++i) out[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i - 1)] = build(sys, n, i);
  }
  return out;
}

inline Triple composite_triple(const NCSystem& sys, CompositeKind kind, int particle = 1) {
  Triple t;
  for (int i = 1; i <= 3; ++i) t[static_cast<std::size_t>(i - 1)] = composite_operator(sys, kind, i, particle);
  return t;
}

inline Triple canonical_triple(const NCSystem& sys, CompositeKind kind, int particle = 1) {
  Triple t;
  for (int i = 1; i <= 3; ++i) t[static_cast<std::size_t>(i - 1)] = canonical_composite_operator(sys, kind, i, particle);
  return t;
}

inline const OperatorExpr& at(const Triple& t, int axis) { return t[static_cast<std::size_t>(axis - 1)]; }
inline const OperatorExpr& at(const std::vector<Triple>& v, int n, int axis) {
  return v[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(axis - 1)];
}

/// sum_k theta_ik eta_jk / 4 for two tensor providers.
template <class Theta, class Eta>
OperatorExpr quarter_contraction(const Theta& theta, const Eta& eta, int i, int j) {
  OperatorExpr out;
  for (int k = 1; k <= 3; ++k) out += Scalar::rational(1, 4) * (theta(i, k) * eta(j, k));
  return out;
}

/// i hbar (delta_ij + sum_k theta_ik eta_jk / 4)
template <class Theta, class Eta>
OperatorExpr mixed_bracket_form(const Theta& theta, const Eta& eta, int i, int j) {
  return ihbar() * (OperatorExpr(kronecker(i, j)) + quarter_contraction(theta, eta, i, j));
}

inline Scalar reduced_mass_symbol() {
  return Scalar(sym::mass(1)) * Scalar(sym::mass(2)) * Scalar::inverse_total_mass(2);
}

}  // namespace detail

inline IdentityReport verify_particle_algebra(const NCSystem& sys, const AlgebraOptions& opts = {}) {
  using detail::at;
  using detail::label;
  IdentityReport report;
  report.name = "particle_algebra";
  const int N = sys.size();
  const auto X = detail::per_particle(sys, nc_coordinate);
  const auto P = detail::per_particle(sys, nc_momentum);
  const Scalar ih = detail::ihbar();

  for (int n = 1; n <= N; ++n) {
    auto theta = [&](int i, int j) { return tensor_component(sys, TensorKind::theta, n, i, j); };
    for (int m = 1; m <= N; ++m) {
      auto eta_m = [&](int i, int j) { return tensor_component(sys, TensorKind::eta, m, i, j); };
      auto eta_n = [&](int i, int j) { return tensor_component(sys, TensorKind::eta, n, i, j); };
      const Scalar d = detail::kronecker(n, m);
      for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
          const auto idx = {std::pair{'n', n}, std::pair{'m', m}, std::pair{'i', i}, std::pair{'j', j}};
          report.expect_equal(label("XX", idx), commutator(at(X, n, i), at(X, m, j), opts), d * ih * theta(i, j));
          report.expect_equal(label("XP", idx), commutator(at(X, n, i), at(P, m, j), opts),
                              d * detail::mixed_bracket_form(theta, eta_m, i, j));
          report.expect_equal(label("PP", idx), commutator(at(P, n, i), at(P, m, j), opts), d * ih * eta_n(i, j));
        }
      }
    }
  }

  // Tensors commute with every coordinate and momentum.
  for (int n = 1; n <= N; ++n) {
    for (int i = 1; i <= 3; ++i) {
      for (int j = i + 1; j <= 3; ++j) {
        const OperatorExpr th = tensor_component(sys, TensorKind::theta, n, i, j);
        const OperatorExpr et = tensor_component(sys, TensorKind::eta, n, i, j);
        for (int m = 1; m <= N; ++m) {
          for (int k = 1; k <= 3; ++k) {
            const auto idx = {std::pair{'n', n}, std::pair{'i', i}, std::pair{'j', j}, std::pair{'m', m},
                              std::pair{'k', k}};
            report.expect_equal(label("theta-X", idx), commutator(th, at(X, m, k), opts), OperatorExpr{});
            report.expect_equal(label("theta-P", idx), commutator(th, at(P, m, k), opts), OperatorExpr{});
            report.expect_equal(label("eta-X", idx), commutator(et, at(X, m, k), opts), OperatorExpr{});
            report.expect_equal(label("eta-P", idx), commutator(et, at(P, m, k), opts), OperatorExpr{});
          }
        }
      }
    }
  }

  // Jacobi identity over every multiset triple of {X, P}.
  std::vector<std::pair<std::string, OperatorExpr>> ops;
  for (int n = 1; n <= N; ++n) {
    for (int i = 1; i <= 3; ++i) {
      ops.emplace_back(label("X", {{'n', n}, {'i', i}}), at(X, n, i));
      ops.emplace_back(label("P", {{'n', n}, {'i', i}}), at(P, n, i));
    }
  }
  for (std::size_t a = 0; a < ops.size(); ++a) {
    for (std::size_t b = a; b < ops.size(); ++b) {
      const OperatorExpr ab = commutator(ops[a].second, ops[b].second, opts);
      for (std::size_t c = b; c < ops.size(); ++c) {
        const OperatorExpr& A = ops[a].second;
        const OperatorExpr& B = ops[b].second;
        const OperatorExpr& C = ops[c].second;
        const OperatorExpr jac = commutator(ab, C, opts) + commutator(commutator(B, C, opts), A, opts) +
                                 commutator(commutator(C, A, opts), B, opts);
        report.expect_equal("jacobi(" + ops[a].first + "," + ops[b].first + "," + ops[c].first + ")", jac,
                            OperatorExpr{});
      }
    }
  }
  return report;
}

namespace detail {

/// Brackets that hold for arbitrary per-particle constants.
inline void com_generic_branch(const NCSystem& sys, IdentityReport& report, const AlgebraOptions& opts) {
  const int N = sys.size();
  const Scalar ih = ihbar();
  const Triple Xc = composite_triple(sys, CompositeKind::center_coordinate);
  const Triple Pc = composite_triple(sys, CompositeKind::center_momentum);
  std::vector<Triple> dX, dP;
  for (int n = 1; n <= N; ++n) {
    dX.push_back(composite_triple(sys, CompositeKind::particle_coordinate_offset, n));
    dP.push_back(composite_triple(sys, CompositeKind::particle_momentum_offset, n));
  }
  auto mu = [&](int n) { return sys.mass_fraction(n); };
  auto theta = [&](int n, int i, int j) { return tensor_component(sys, TensorKind::theta, n, i, j); };
  auto eta = [&](int n, int i, int j) { return tensor_component(sys, TensorKind::eta, n, i, j); };
  auto theta_c = [&](int i, int j) {
    OperatorExpr out;
    for (int n = 1; n <= N; ++n) out += mu(n) * mu(n) * theta(n, i, j);
    return out;
  };
  auto eta_c = [&](int i, int j) {
    OperatorExpr out;
    for (int n = 1; n <= N; ++n) out += eta(n, i, j);
    return out;
  };
  // gamma^(n)_ij = sum_k theta^(n)_ik eta^(n)_jk / 4
  auto gamma = [&](int n, int i, int j) {
    return quarter_contraction([&](int a, int b) { return theta(n, a, b); }, [&](int a, int b) { return eta(n, a, b); },
                               i, j);
  };
  auto weighted_gamma = [&](int i, int j) {
    OperatorExpr out;
    for (int l = 1; l <= N; ++l) out += mu(l) * gamma(l, i, j);
    return out;
  };

  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const auto ij = {std::pair{'i', i}, std::pair{'j', j}};
      const OperatorExpr xc_pc = commutator(at(Xc, i), at(Pc, j), opts);
      report.expect_equal(label("XcXc", ij), commutator(at(Xc, i), at(Xc, j), opts), ih * theta_c(i, j));
      report.expect_equal(label("PcPc", ij), commutator(at(Pc, i), at(Pc, j), opts), ih * eta_c(i, j));
      report.expect_equal(label("XcPc", ij), xc_pc, ih * (OperatorExpr(kronecker(i, j)) + weighted_gamma(i, j)));

      const OperatorExpr effective = mixed_bracket_form(theta_c, eta_c, i, j);
      if (N == 1) {
        report.expect_equal(label("single.XcPc-vs-effective", ij), xc_pc, effective);
      } else if (sys.is_generic()) {
        report.expect_nonzero(label("witness.XcPc-vs-effective", ij), xc_pc - effective);
      }

      for (int n = 1; n <= N; ++n) {
        const auto ijn = {std::pair{'i', i}, std::pair{'j', j}, std::pair{'n', n}};
        OperatorExpr theta_sum;
        for (int m = 1; m <= N; ++m) theta_sum += mu(m) * mu(m) * theta(m, i, j);
        const OperatorExpr xc_dx = commutator(at(Xc, i), at(dX, n, j), opts);
        const OperatorExpr pc_dp = commutator(at(Pc, i), at(dP, n, j), opts);
        report.expect_equal(label("XcdX", ijn), xc_dx, ih * (mu(n) * theta(n, i, j) - theta_sum));
        report.expect_equal(label("PcdP", ijn), pc_dp, ih * (eta(n, i, j) - mu(n) * eta_c(i, j)));
        if (N == 1) {
          report.expect_equal(label("single.dX", ijn), at(dX, n, j), OperatorExpr{});
          report.expect_equal(label("single.dP", ijn), at(dP, n, j), OperatorExpr{});
        } else if (sys.is_generic() && i != j) {
          report.expect_nonzero(label("witness.XcdX", ijn), xc_dx);
          report.expect_nonzero(label("witness.PcdP", ijn), pc_dp);
        }

        for (int m = 1; m <= N; ++m) {
          const auto nmij = {std::pair{'n', n}, std::pair{'m', m}, std::pair{'i', i}, std::pair{'j', j}};
          const Scalar d = kronecker(n, m);
          report.expect_equal(
              label("dXdX", nmij), commutator(at(dX, n, i), at(dX, m, j), opts),
              ih * (d * theta(n, i, j) - mu(n) * theta(n, i, j) - mu(m) * theta(m, i, j) + theta_c(i, j)));
          report.expect_equal(
              label("dPdP", nmij), commutator(at(dP, n, i), at(dP, m, j), opts),
              ih * (d * eta(n, i, j) - mu(m) * eta(n, i, j) - mu(n) * eta(m, i, j) + mu(n) * mu(m) * eta_c(i, j)));

          const OperatorExpr dx_dp = commutator(at(dX, n, i), at(dP, m, j), opts);
          auto theta_n = [&](int a, int b) { return theta(n, a, b); };
          auto eta_m = [&](int a, int b) { return eta(m, a, b); };
          const OperatorExpr base =
              d * mixed_bracket_form(theta_n, eta_m, i, j) - mu(m) * ih * OperatorExpr(kronecker(i, j));
          const OperatorExpr derived =
              base - mu(m) * ih * (gamma(n, i, j) + gamma(m, i, j) - weighted_gamma(i, j));
          const OperatorExpr printed = base - ih * (gamma(n, i, j) + gamma(m, i, j) - weighted_gamma(i, j));
          report.expect_equal(label("dXdP", nmij), dx_dp, derived);
          report.note(label("dXdP.printed-form-residual", nmij), dx_dp - printed);
        }
      }
    }
  }

  // Canonical composite variables.
  const Triple xc = canonical_triple(sys, CompositeKind::center_coordinate);
  const Triple pc = canonical_triple(sys, CompositeKind::center_momentum);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const auto ij = {std::pair{'i', i}, std::pair{'j', j}};
      report.expect_equal(label("canonical.xcxc", ij), commutator(at(xc, i), at(xc, j), opts), OperatorExpr{});
      report.expect_equal(label("canonical.pcpc", ij), commutator(at(pc, i), at(pc, j), opts), OperatorExpr{});
      report.expect_equal(label("canonical.xcpc", ij), commutator(at(xc, i), at(pc, j), opts),
                          OperatorExpr(ih * kronecker(i, j)));
    }
  }
  if (N == 2) {
    const Triple xr = canonical_triple(sys, CompositeKind::relative_coordinate);
    const Triple pr = canonical_triple(sys, CompositeKind::relative_momentum);
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) {
        const auto ij = {std::pair{'i', i}, std::pair{'j', j}};
        report.expect_equal(label("canonical.xrxr", ij), commutator(at(xr, i), at(xr, j), opts), OperatorExpr{});
        report.expect_equal(label("canonical.prpr", ij), commutator(at(pr, i), at(pr, j), opts), OperatorExpr{});
        report.expect_equal(label("canonical.xcxr", ij), commutator(at(xc, i), at(xr, j), opts), OperatorExpr{});
        report.expect_equal(label("canonical.pcpr", ij), commutator(at(pc, i), at(pr, j), opts), OperatorExpr{});
        report.expect_equal(label("canonical.xrpc", ij), commutator(at(xr, i), at(pc, j), opts), OperatorExpr{});
        report.expect_equal(label("canonical.prxc", ij), commutator(at(pr, i), at(xc, j), opts), OperatorExpr{});
        report.expect_equal(label("canonical.xrpr", ij), commutator(at(xr, i), at(pr, j), opts),
                            OperatorExpr(ih * kronecker(i, j)));
      }
    }
  }
}

/// X = x - (1/2) sum_j theta_ij p_j,  P = p + (1/2) sum_j eta_ij x_j
template <class Tensor>
OperatorExpr shifted_form(const OperatorExpr& base, const Tensor& tensor, const Triple& partner, int i,
                          const Scalar& sign) {
  OperatorExpr out = base;
  for (int j = 1; j <= 3; ++j) out += sign * Scalar::rational(1, 2) * (tensor(i, j) * at(partner, j));
  return out;
}

/// Brackets that require c_theta[n] m[n] = gamma~ and c_eta[n] / m[n] = alpha~.
inline void com_conditioned_branch(const NCSystem& generic, const NCSystem& sys, IdentityReport& report,
                                   const AlgebraOptions& opts) {
  const int N = sys.size();
  const Scalar ih = ihbar();
  const Scalar gamma_t(sym::gamma_tilde());
  const Scalar alpha_t(sym::alpha_tilde());
  const Scalar M = Scalar::total_mass(N);
  const Scalar inv_M = Scalar::inverse_total_mass(N);
  auto mu = [&](int n) { return sys.mass_fraction(n); };
  auto theta = [&](int n, int i, int j) { return tensor_component(sys, TensorKind::theta, n, i, j); };
  auto eta = [&](int n, int i, int j) { return tensor_component(sys, TensorKind::eta, n, i, j); };

  for (int n = 1; n <= N; ++n) {
    const auto& p = sys.particle(n);
    report.expect_equal(label("cond.c_theta*m", {{'n', n}}), p.c_theta * Scalar(sym::mass(n)), gamma_t);
    report.expect_equal(label("cond.c_eta/m", {{'n', n}}), p.c_eta * Scalar(sym::mass(n), -1), alpha_t);
  }
  Scalar c_theta_c, c_eta_c;
  for (int n = 1; n <= N; ++n) {
    c_theta_c += mu(n) * mu(n) * sys.particle(n).c_theta;
    c_eta_c += sys.particle(n).c_eta;
  }
  report.expect_equal("cond.c_theta_c*M", c_theta_c * M, gamma_t);
  report.expect_equal("cond.c_eta_c/M", c_eta_c * inv_M, alpha_t);

  const Triple Xc = composite_triple(sys, CompositeKind::center_coordinate);
  const Triple Pc = composite_triple(sys, CompositeKind::center_momentum);
  const Triple xc = canonical_triple(sys, CompositeKind::center_coordinate);
  const Triple pc = canonical_triple(sys, CompositeKind::center_momentum);
  auto theta_c = [&](int i, int j) { return tensor_from_constant(TensorKind::theta, gamma_t * inv_M, i, j); };
  auto eta_c = [&](int i, int j) { return tensor_from_constant(TensorKind::eta, alpha_t * M, i, j); };
  const bool from_generic = generic.is_generic();
  const ScalarBindings bindings = mass_condition_bindings(N);
  const Triple Xc_generic = composite_triple(generic, CompositeKind::center_coordinate);
  const Triple Pc_generic = composite_triple(generic, CompositeKind::center_momentum);

  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const auto ij = {std::pair{'i', i}, std::pair{'j', j}};
      OperatorExpr theta_sum, eta_sum;
      for (int n = 1; n <= N; ++n) {
        theta_sum += mu(n) * mu(n) * theta(n, i, j);
        eta_sum += eta(n, i, j);
      }
      report.expect_equal(label("cond.theta_c-composition-free", ij), theta_sum, theta_c(i, j));
      report.expect_equal(label("cond.eta_c-composition-free", ij), eta_sum, eta_c(i, j));

      const OperatorExpr xc_pc = commutator(at(Xc, i), at(Pc, j), opts);
      report.expect_equal(label("cond.XcXc", ij), commutator(at(Xc, i), at(Xc, j), opts), ih * theta_c(i, j));
      report.expect_equal(label("cond.PcPc", ij), commutator(at(Pc, i), at(Pc, j), opts), ih * eta_c(i, j));

      OperatorExpr mass_form(kronecker(i, j));
      for (int k = 1; k <= 3; ++k) {
        for (int l = 1; l <= 3; ++l) {
          for (int m = 1; m <= 3; ++m) {
            const int e = levi_civita(i, k, l) * levi_civita(j, k, m);
            if (e == 0) continue;
            mass_form += OperatorExpr::product({gen::a(l), gen::pb(m)},
                                               Scalar(e) * gamma_t * alpha_t * Scalar::rational(1, 4));
          }
        }
      }
      report.expect_equal(label("cond.XcPc-mass-form", ij), xc_pc, ih * mass_form);
      report.expect_equal(label("cond.XcPc", ij), xc_pc, mixed_bracket_form(theta_c, eta_c, i, j));

      if (from_generic) {
        // The generic witness itself collapses once the conditions are imposed.
        const OperatorExpr generic_residual =
            commutator(at(Xc_generic, i), at(Pc_generic, j), opts) -
            mixed_bracket_form(
                [&](int a, int b) {
                  OperatorExpr out;
                  for (int n = 1; n <= N; ++n)
                    out += generic.mass_fraction(n) * generic.mass_fraction(n) *
                           tensor_component(generic, TensorKind::theta, n, a, b);
                  return out;
                },
                [&](int a, int b) {
                  OperatorExpr out;
                  for (int n = 1; n <= N; ++n) out += tensor_component(generic, TensorKind::eta, n, a, b);
                  return out;
                },
                i, j);
        report.expect_equal(label("cond.XcPc-vs-effective-substituted", ij),
                            substitute_scalars(generic_residual, bindings), OperatorExpr{});
      }

      for (int n = 1; n <= N; ++n) {
        const auto ijn = {std::pair{'i', i}, std::pair{'j', j}, std::pair{'n', n}};
        const OperatorExpr dx = composite_operator(sys, CompositeKind::particle_coordinate_offset, j, n);
        const OperatorExpr dp = composite_operator(sys, CompositeKind::particle_momentum_offset, j, n);
        report.expect_equal(label("cond.XcdX", ijn), commutator(at(Xc, i), dx, opts), OperatorExpr{});
        report.expect_equal(label("cond.PcdP", ijn), commutator(at(Pc, i), dp, opts), OperatorExpr{});
      }
    }
    report.expect_equal(label("cond.Xc-representation", {{'i', i}}), at(Xc, i),
                        shifted_form(at(xc, i), theta_c, pc, i, Scalar(-1)));
    report.expect_equal(label("cond.Pc-representation", {{'i', i}}), at(Pc, i),
                        shifted_form(at(pc, i), eta_c, xc, i, Scalar(1)));
  }

  if (N != 2) return;

  const Scalar mu_red = reduced_mass_symbol();
  const Scalar inv_mu = Scalar(sym::mass(1), -1) * Scalar(sym::mass(2), -1) * M;
  const Scalar c_theta_r = sys.particle(1).c_theta + sys.particle(2).c_theta;
  const Scalar c_eta_r = mu(2) * mu(2) * sys.particle(1).c_eta + mu(1) * mu(1) * sys.particle(2).c_eta;
  report.expect_equal("cond.c_theta_r*mu", c_theta_r * mu_red, gamma_t);
  report.expect_equal("cond.c_eta_r/mu", c_eta_r * inv_mu, alpha_t);

  auto theta_r = [&](int i, int j) { return tensor_from_constant(TensorKind::theta, gamma_t * inv_mu, i, j); };
  auto eta_r = [&](int i, int j) { return tensor_from_constant(TensorKind::eta, alpha_t * mu_red, i, j); };
  const Triple Xr = composite_triple(sys, CompositeKind::relative_coordinate);
  const Triple Pr = composite_triple(sys, CompositeKind::relative_momentum);
  const Triple xr = canonical_triple(sys, CompositeKind::relative_coordinate);
  const Triple pr = canonical_triple(sys, CompositeKind::relative_momentum);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const auto ij = {std::pair{'i', i}, std::pair{'j', j}};
      report.expect_equal(label("cond.theta_r-sum", ij), theta(1, i, j) + theta(2, i, j), theta_r(i, j));
      report.expect_equal(label("cond.eta_r-sum", ij), mu(2) * mu(2) * eta(1, i, j) + mu(1) * mu(1) * eta(2, i, j),
                          eta_r(i, j));
      report.expect_equal(label("cond.XrXr", ij), commutator(at(Xr, i), at(Xr, j), opts), ih * theta_r(i, j));
      report.expect_equal(label("cond.PrPr", ij), commutator(at(Pr, i), at(Pr, j), opts), ih * eta_r(i, j));
      report.expect_equal(label("cond.XrPr", ij), commutator(at(Xr, i), at(Pr, j), opts),
                          mixed_bracket_form(theta_r, eta_r, i, j));
      report.expect_equal(label("cond.XcXr", ij), commutator(at(Xc, i), at(Xr, j), opts), OperatorExpr{});
      report.expect_equal(label("cond.PcPr", ij), commutator(at(Pc, i), at(Pr, j), opts), OperatorExpr{});
      report.expect_equal(label("cond.XcPr", ij), commutator(at(Xc, i), at(Pr, j), opts), OperatorExpr{});
      report.expect_equal(label("cond.XrPc", ij), commutator(at(Xr, i), at(Pc, j), opts), OperatorExpr{});
    }
    report.expect_equal(label("cond.Xr-representation", {{'i', i}}), at(Xr, i),
                        shifted_form(at(xr, i), theta_r, pr, i, Scalar(-1)));
    report.expect_equal(label("cond.Pr-representation", {{'i', i}}), at(Pr, i),
                        shifted_form(at(pr, i), eta_r, xr, i, Scalar(1)));
  }
}

}  // namespace detail

/// Composite-system brackets. The conditioned branch runs when the system is generic (the
/// mass conditions are then substituted) or already flagged as mass-conditioned.
inline IdentityReport verify_com_algebra(const NCSystem& sys, const AlgebraOptions& opts = {}) {
  IdentityReport report;
  report.name = "com_algebra";
  detail::com_generic_branch(sys, report, opts);
  if (sys.is_generic()) {
    const NCSystem conditioned = sys.substituted(mass_condition_bindings(sys.size()), true);
    detail::com_conditioned_branch(sys, conditioned, report, opts);
  } else if (sys.mass_conditions_applied()) {
    detail::com_conditioned_branch(sys, sys, report, opts);
  }
  return report;
}

/// [L_i, V_j] = i hbar eps_ijk V_k for every vector operator, and the angular momentum algebra itself.
inline IdentityReport verify_rotational_covariance(const NCSystem& sys, const AlgebraOptions& opts = {}) {
  using detail::label;
  IdentityReport report;
  report.name = "rotational_covariance";
  const Scalar ih = detail::ihbar();
  detail::Triple L;
  for (int i = 1; i <= 3; ++i) L[static_cast<std::size_t>(i - 1)] = total_angular_momentum(sys, i);

  std::vector<std::pair<std::string, detail::Triple>> vectors;
  auto add_generator_vector = [&](const std::string& name, auto make) {
    detail::Triple t;
    for (int i = 1; i <= 3; ++i) t[static_cast<std::size_t>(i - 1)] = OperatorExpr(make(i));
    vectors.emplace_back(name, std::move(t));
  };
  for (int n = 1; n <= sys.size(); ++n) {
    const std::string tag = "[" + std::to_string(n) + "]";
    detail::Triple X, P;
    for (int i = 1; i <= 3; ++i) {
      X[static_cast<std::size_t>(i - 1)] = nc_coordinate(sys, n, i);
      P[static_cast<std::size_t>(i - 1)] = nc_momentum(sys, n, i);
    }
    vectors.emplace_back("X" + tag, std::move(X));
    vectors.emplace_back("P" + tag, std::move(P));
    add_generator_vector("x" + tag, [n](int i) { return gen::x(n, i); });
    add_generator_vector("p" + tag, [n](int i) { return gen::p(n, i); });
  }
  add_generator_vector("a~", [](int i) { return gen::a(i); });
  add_generator_vector("pa~", [](int i) { return gen::pa(i); });
  add_generator_vector("b~", [](int i) { return gen::b(i); });
  add_generator_vector("pb~", [](int i) { return gen::pb(i); });
  vectors.emplace_back("L", L);

  for (const auto& [name, V] : vectors) {
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) {
        OperatorExpr expected;
        for (int k = 1; k <= 3; ++k) {
          const int e = levi_civita(i, j, k);
          if (e != 0) expected += Scalar(e) * ih * detail::at(V, k);
        }
        report.expect_equal(label("L-" + name, {{'i', i}, {'j', j}}), commutator(detail::at(L, i), detail::at(V, j), opts),
                            expected);
      }
    }
  }
  return report;
}

}  // namespace ncps
