#pragma once

// Independent numerical checks: a radial Coulomb eigen-solver on a logarithmic
// grid, grid expectation values and first-order shifts, Gaussian moments of the
// auxiliary oscillators, and a toy model of oscillator decoupling.

#include <lapacke.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ncps/errors.hpp"
#include "ncps/hydrogen_corrections.hpp"

namespace ncps {

/// Uniform grid in x = ln(r/a) between rho_min and rho_max (both in units of a).
struct RadialGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  int intervals = 0;

  double step() const { return (x_max - x_min) / intervals; }
  double rho_min() const { return std::exp(x_min); }
  double rho_max() const { return std::exp(x_max); }
  int nodes() const { return intervals + 1; }

  static RadialGrid make(double rho_min, double rho_max, double step) {
    if (!(rho_min > 0.0) || !(rho_max > rho_min) || !(step > 0.0)) throw InvalidParameter("invalid radial grid");
    RadialGrid g;
    g.x_min = std::log(rho_min);
    g.x_max = std::log(rho_max);
    g.intervals = static_cast<int>(std::ceil((g.x_max - g.x_min) / step));
    return g;
  }

  /// Default grid for (n, l): inner edge small enough that r^s moments down to s_min lose
  /// less than 1e-16 and u(r) ~ r^(l+1) stays below the boundary guard, outer edge at outer_factor * n^2, at least min_nodes nodes.
  static RadialGrid for_state(int n, int l, int s_min = -6, double step = 0.01, double outer_factor = 40.0,
                              int min_nodes = 2000) {
    const int s_eff = std::max(s_min, -2 * l - 2);
    const double decay_power = std::max(1, 2 * l + 3 + s_eff);
    const double rho_min = std::min(std::pow(10.0, -16.0 / decay_power), std::pow(10.0, -10.0 / (l + 1)));
    const double rho_max = outer_factor * n * n;
    const double range = std::log(rho_max / rho_min);
    return make(rho_min, rho_max, std::min(step, range / (min_nodes - 1)));
  }

  RadialGrid refined(int factor) const {
    RadialGrid g = *this;
    g.intervals *= factor;
    return g;
  }
};

/// Radial eigenstate on a grid: u(r) = sqrt(rho) v(x) in reduced units, normalised so that
/// sum v^2 rho^2 h = 1 (i.e. the integral of u^2 d rho is one).
struct RadialState {
  int n = 1;
  int l = 0;
  double lambda = 0.0;  ///< 2 E / (kappa/a) on this grid
  double energy = 0.0;  ///< J
  double a = 1.0;       ///< m
  double energy_unit = 1.0;
  double h = 0.0;
  std::vector<double> rho;  ///< interior nodes
  std::vector<double> v;

  std::vector<double> u_reduced() const {
    std::vector<double> u(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) u[j] = std::sqrt(rho[j]) * v[j];
    return u;
  }

  int interior_nodes() const { return count_sign_changes(v); }

  static int count_sign_changes(const std::vector<double>& f) {
    double peak = 0.0;
    for (double x : f) peak = std::max(peak, std::abs(x));
    int changes = 0;
    int last = 0;
    for (double x : f) {
      if (std::abs(x) < 1e-7 * peak) continue;
      const int sgn = x > 0 ? 1 : -1;
      if (last != 0 && sgn != last) ++changes;
      last = sgn;
    }
    return changes;
  }
};

namespace detail {

struct RadialPencil {
  std::vector<double> rho, diag, weight;  // A diagonal and B = diag(rho^2)
  double off = 0.0;                       // A off-diagonal
};

inline RadialPencil radial_pencil(int l, const RadialGrid& grid) {
  const double h = grid.step();
  const int N = grid.intervals - 1;
  if (N < 3) throw InvalidParameter("radial grid too coarse");
  RadialPencil p;
  p.rho.resize(N);
  p.diag.resize(N);
  p.weight.resize(N);
  const double centrifugal = (l + 0.5) * (l + 0.5);
  for (int j = 0; j < N; ++j) {
    const double r = std::exp(grid.x_min + (j + 1) * h);
    p.rho[j] = r;
    p.diag[j] = 2.0 / (h * h) + centrifugal - 2.0 * r;
    p.weight[j] = r * r;
  }
  p.off = -1.0 / (h * h);
  return p;
}

/// Number of pencil eigenvalues below sigma (inertia of the LDL^T factors of A - sigma B).
inline int eigenvalues_below(const RadialPencil& p, double sigma) {
  int negative = 0;
  double d = 0.0;
  const double e2 = p.off * p.off;
  for (std::size_t j = 0; j < p.diag.size(); ++j) {
    d = p.diag[j] - sigma * p.weight[j] - (j == 0 ? 0.0 : e2 / d);
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++negative;
  }
  return negative;
}

inline std::vector<double> inverse_iteration(const RadialPencil& p, double sigma, int sweeps = 4) {
  const lapack_int N = static_cast<lapack_int>(p.diag.size());
  std::vector<double> v(p.diag.size(), 1.0);
  for (int it = 0; it < sweeps; ++it) {
    std::vector<double> dl(N - 1, p.off), du(N - 1, p.off), d(N), rhs(N);
    for (lapack_int j = 0; j < N; ++j) {
      d[j] = p.diag[j] - sigma * p.weight[j];
      rhs[j] = p.weight[j] * v[j];
    }
    const lapack_int info = LAPACKE_dgtsv(LAPACK_COL_MAJOR, N, 1, dl.data(), d.data(), du.data(), rhs.data(), N);
    if (info != 0) {
      sigma *= 1.0 + 1e-13;
      continue;
    }
    double norm = 0.0;
    for (lapack_int j = 0; j < N; ++j) norm += rhs[j] * rhs[j] * p.weight[j];
    norm = std::sqrt(norm);
    for (lapack_int j = 0; j < N; ++j) v[j] = rhs[j] / norm;
  }
  return v;
}

}  // namespace detail

inline RadialState solve_radial(int n, int l, const CoulombSystem& sys, const RadialGrid& grid) {
  BoundState{n, l}.validate();
  const detail::RadialPencil pencil = detail::radial_pencil(l, grid);
  const int k = n - l - 1;

  // The Rayleigh quotient of the pencil is bounded below by -1/(l+1/2)^2.
  double lo = -1.0 / ((l + 0.5) * (l + 0.5)) - 1e-3;
  double hi = 0.0;
  if (detail::eigenvalues_below(pencil, lo) != 0) throw NonConvergence("lower spectral bound violated");
  if (detail::eigenvalues_below(pencil, hi) <= k) {
    throw GridTooSmall("grid holds too few bound states for n=" + std::to_string(n));
  }
  for (int it = 0; it < 200 && hi - lo > 2e-16 * std::abs(hi + lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (detail::eigenvalues_below(pencil, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double lambda = 0.5 * (lo + hi);

  RadialState st;
  st.n = n;
  st.l = l;
  st.lambda = lambda;
  st.a = sys.a();
  st.energy_unit = sys.energy_unit();
  st.energy = 0.5 * lambda * st.energy_unit;
  st.h = grid.step();
  st.rho = pencil.rho;
  st.v = detail::inverse_iteration(pencil, lambda);

  // Normalise on the trapezoid rule and fix the sign of the innermost lobe.
  double norm = 0.0;
  for (std::size_t j = 0; j < st.v.size(); ++j) norm += st.v[j] * st.v[j] * st.rho[j] * st.rho[j];
  norm = std::sqrt(norm * st.h);
  double peak = 0.0;
  for (double& x : st.v) {
    x /= norm;
    peak = std::max(peak, std::abs(x));
  }
  for (double x : st.v) {
    if (std::abs(x) > 1e-3 * peak) {
      if (x < 0) {
        for (double& y : st.v) y = -y;
      }
      break;
    }
  }

  if (st.interior_nodes() != k) {
    throw NonConvergence("eigenvector has " + std::to_string(st.interior_nodes()) + " nodes, expected " +
                         std::to_string(k));
  }
  const auto u = st.u_reduced();
  double umax = 0.0;
  for (double x : u) umax = std::max(umax, std::abs(x));
  if (std::abs(u.back()) > 1e-8 * umax || std::abs(u.front()) > 1e-8 * umax) {
    throw GridTooSmall("boundary amplitude exceeds 1e-8 of the maximum");
  }
  return st;
}

/// Weight w(r) integrated against u^2. Powers of r are evaluated in reduced units and rescaled.
struct RadialWeight {
  std::function<double(double)> reduced;  ///< w as a function of rho = r/a, in units of a^power
  int power = 0;

  static RadialWeight r_power(int s) {
    return {[s](double rho) { return std::pow(rho, s); }, s};
  }
  /// Arbitrary weight given as a function of r in metres (result taken as is).
  static RadialWeight custom(std::function<double(double)> w_of_r, double a) {
    return {[w_of_r, a](double rho) { return w_of_r(rho * a); }, 0};
  }
};

inline double expectation_radial(const RadialState& st, const RadialWeight& w) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < st.v.size(); ++j) {
    const double dens = st.v[j] * st.v[j] * st.rho[j] * st.rho[j];
    num += dens * w.reduced(st.rho[j]);
    den += dens;
  }
  return num / den * std::pow(st.a, w.power);
}

/// <T> through the discrete kinetic operator, in J.
inline double kinetic_expectation(const RadialState& st) {
  const double c = (st.l + 0.5) * (st.l + 0.5);
  const double h2 = st.h * st.h;
  double num = 0.0, den = 0.0;
  const std::size_t N = st.v.size();
  for (std::size_t j = 0; j < N; ++j) {
    const double left = j > 0 ? st.v[j - 1] : 0.0;
    const double right = j + 1 < N ? st.v[j + 1] : 0.0;
    const double tv = (-left + 2.0 * st.v[j] - right) / h2 + c * st.v[j];
    num += st.v[j] * tv;
    den += st.v[j] * st.v[j] * st.rho[j] * st.rho[j];
  }
  return 0.5 * num / den * st.energy_unit;
}

enum class ShiftKind { eta, theta };

/// First-order shift of the averaged relative Hamiltonian on one grid.
inline double perturbation_shift(const RadialState& st, const CoulombSystem& sys, const NCMoments& m, ShiftKind kind) {
  if (kind == ShiftKind::eta) {
    return m.mean_eta_sq_r * expectation_radial(st, RadialWeight::r_power(2)) / (12.0 * sys.mu());
  }
  if (st.l < 2) throw DivergentLevel("grid coordinate shift needs l >= 2");
  const std::size_t N = st.v.size();
  const double c = (st.l + 0.5) * (st.l + 0.5);
  const double h2 = st.h * st.h;
  std::vector<double> phi(N);
  for (std::size_t j = 0; j < N; ++j) phi[j] = st.v[j] / st.rho[j];
  double kin = 0.0, r5 = 0.0, den = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    const double left = j > 0 ? phi[j - 1] : 0.0;
    const double right = j + 1 < N ? phi[j + 1] : 0.0;
    const double t_phi = (-left + 2.0 * phi[j] - right) / h2 + c * phi[j];
    const double r2 = st.rho[j] * st.rho[j];
    kin += st.v[j] * t_phi / r2;
    r5 += st.v[j] * st.v[j] / (r2 * st.rho[j]);
    den += st.v[j] * st.v[j] * r2;
  }
  kin /= den;
  r5 /= den;
  const double ll1 = st.l * (st.l + 1.0);
  // <-L^2/(8 r^5)> + <(r^-2 p^2 r^-1 + r^-1 p^2 r^-2 + hbar^2 r^-5)/24> in units of hbar^2/a^5
  const double bracket = -ll1 / 8.0 * r5 + (2.0 * kin + r5) / 24.0;
  const double hbar_over_a2 = sys.hbar() / (st.a * st.a);
  return hbar_over_a2 * hbar_over_a2 * m.mean_theta_sq * sys.energy_unit() * bracket;
}

/// Combines a grid quantity at spacings h, h/2, h/4, cancelling the h^2 and h^4 errors.
template <class Quantity>
double richardson(int n, int l, const CoulombSystem& sys, const RadialGrid& grid, Quantity&& q) {
  const double q1 = q(solve_radial(n, l, sys, grid));
  const double q2 = q(solve_radial(n, l, sys, grid.refined(2)));
  const double q4 = q(solve_radial(n, l, sys, grid.refined(4)));
  return (64.0 * q4 - 20.0 * q2 + q1) / 45.0;
}

inline double extrapolated_energy(const BoundState& st, const CoulombSystem& sys,
                                  std::optional<RadialGrid> grid = std::nullopt) {
  const RadialGrid g = grid.value_or(RadialGrid::for_state(st.n, st.l));
  return richardson(st.n, st.l, sys, g, [](const RadialState& s) { return s.energy; });
}

inline double extrapolated_expectation(const BoundState& st, const CoulombSystem& sys, const RadialWeight& w,
                                       std::optional<RadialGrid> grid = std::nullopt) {
  const RadialGrid g = grid.value_or(RadialGrid::for_state(st.n, st.l, std::min(w.power, 0)));
  return richardson(st.n, st.l, sys, g, [&](const RadialState& s) { return expectation_radial(s, w); });
}

inline double extrapolated_shift(const BoundState& st, const CoulombSystem& sys, const NCMoments& m, ShiftKind kind,
                                 std::optional<RadialGrid> grid = std::nullopt) {
  const RadialGrid g = grid.value_or(RadialGrid::for_state(st.n, st.l, kind == ShiftKind::theta ? -6 : 0));
  return richardson(st.n, st.l, sys, g, [&](const RadialState& s) { return perturbation_shift(s, sys, m, kind); });
}

enum class GaussianMoment {
  abs_first,         ///< <|a~|> over the 3D ground state
  component_second,  ///< <a~_i a~_j>
};

/// Ground-state averages of the dimensionless oscillator |psi|^2 = pi^(-3/2) exp(-|a|^2), by quadrature.
inline double gaussian_moment(GaussianMoment kind, int i = 1, int j = 1) {
  if (kind == GaussianMoment::abs_first) {
    // r = e^y; integrand r^3 e^{-r^2} r dy vs r^2 e^{-r^2} r dy, trapezoid on a wide y range
    const double y0 = -40.0, y1 = 3.0, dy = 1e-3;
    const int steps = static_cast<int>((y1 - y0) / dy);
    double num = 0.0, den = 0.0;
    for (int k = 0; k <= steps; ++k) {
      const double r = std::exp(y0 + k * dy);
      const double g = std::exp(-r * r) * r * r * r;
      num += g * r;
      den += g;
    }
    return num / den;
  }
  if (i < 1 || i > 3 || j < 1 || j > 3) throw InvalidParameter("axis must be 1, 2 or 3");
  // Cartesian trapezoid; the product weight separates per axis.
  const double L = 12.0, dx = 0.05;
  const int half = static_cast<int>(L / dx);
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  for (int k = -half; k <= half; ++k) {
    const double x = k * dx;
    const double w = std::exp(-x * x);
    m0 += w;
    m1 += x * w;
    m2 += x * x * w;
  }
  if (i == j) return m2 / m0;
  return (m1 / m0) * (m1 / m0);
}

struct DecouplingResult {
  std::vector<double> omegas;
  std::vector<double> second_order_exact;  ///< exact ground energy minus the averaged-Hamiltonian ground energy
  std::vector<double> second_order_sum;    ///< explicit second-order perturbation sum
  double first_order_shift = 0.0;          ///< largest |<0|dH|0>| over the sweep
  double energy_scale = 0.0;               ///< unperturbed ground energy
  std::optional<double> exponent;          ///< least-squares slope of log|dE2| vs log(omega)
};

/// Sweep spanning well above the particle level spacing.
inline std::vector<double> default_decoupling_omegas() { return {50.0, 100.0, 200.0, 500.0, 1000.0, 2000.0}; }

struct DecouplingModel {
  int particle_states = 20;
  int oscillator_states = 20;
  double coupling = 0.1;  ///< g in X = x + g a~ p
};

/// Particle oscillator coupled to one auxiliary mode through X = x + g a~ p.
inline DecouplingResult decoupling_scaling_check(const std::vector<double>& omegas, const DecouplingModel& model = {}) {
  if (omegas.size() < 3) throw InsufficientSpan("need at least three frequencies");
  const auto [mn, mx] = std::minmax_element(omegas.begin(), omegas.end());
  if (!(*mn > 0.0) || *mx / *mn < 10.0) throw InsufficientSpan("frequencies must span at least one decade");

  using Mat = Eigen::MatrixXcd;
  const int Np = model.particle_states;
  const int Na = model.oscillator_states;
  const std::complex<double> I(0.0, 1.0);
  auto ladder = [](int N) {
    Mat a = Mat::Zero(N, N);
    for (int k = 1; k < N; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
  };
  const Mat ap = ladder(Np), aa = ladder(Na);
  const Mat x = (ap + ap.adjoint()) / std::sqrt(2.0);
  const Mat p = I * (ap.adjoint() - ap) / std::sqrt(2.0);
  const Mat at = (aa + aa.adjoint()) / std::sqrt(2.0);
  const Mat Ip = Mat::Identity(Np, Np), Ia = Mat::Identity(Na, Na);
  auto kron = [](const Mat& A, const Mat& B) {
    Mat K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      for (Eigen::Index j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
  };
  const Mat X = kron(x, Ia) + model.coupling * kron(p, at);
  const Mat Hs = 0.5 * kron(p * p, Ia) + 0.5 * X * X;
  // Average over the auxiliary ground state: the (0,0) block in the auxiliary index.
  Mat Hs_avg(Np, Np);
  for (int i = 0; i < Np; ++i)
    for (int j = 0; j < Np; ++j) Hs_avg(i, j) = Hs(i * Na, j * Na);
  const Mat dH = Hs - kron(Hs_avg, Ia);

  Eigen::SelfAdjointEigenSolver<Mat> avg_solver(Hs_avg);
  const Eigen::VectorXd e_particle = avg_solver.eigenvalues();
  const Mat psi = avg_solver.eigenvectors();
  const double e0 = e_particle(0);

  DecouplingResult out;
  out.omegas = omegas;
  out.energy_scale = std::abs(e0);
  Eigen::VectorXcd ground = Eigen::VectorXcd::Zero(Np * Na);
  for (int i = 0; i < Np; ++i) ground(i * Na) = psi(i, 0);
  out.first_order_shift = std::abs((ground.adjoint() * dH * ground)(0, 0));
  // dH acting on the unperturbed ground state, expressed in the unperturbed eigenbasis.
  const Eigen::VectorXcd dH0 = dH * ground;

  for (double w : omegas) {
    Mat Hosc = Mat::Zero(Na, Na);
    for (int k = 0; k < Na; ++k) Hosc(k, k) = w * (k + 0.5);
    const Mat H = Hs + kron(Ip, Hosc);
    Eigen::SelfAdjointEigenSolver<Mat> full(H, Eigen::EigenvaluesOnly);
    const double E0 = e0 + 0.5 * w;
    out.second_order_exact.push_back(full.eigenvalues()(0) - E0);

    double sum = 0.0;
    for (int i = 0; i < Np; ++i) {
      for (int k = 0; k < Na; ++k) {
        if (i == 0 && k == 0) continue;
        std::complex<double> elem = 0.0;
        for (int q = 0; q < Np; ++q) elem += std::conj(psi(q, i)) * dH0(q * Na + k);
        sum += std::norm(elem) / (E0 - (e_particle(i) + w * (k + 0.5)));
      }
    }
    out.second_order_sum.push_back(sum);
  }

  bool all_zero = true;
  for (double d : out.second_order_exact) all_zero = all_zero && std::abs(d) < 1e-13 * std::max(1.0, out.energy_scale);
  if (!all_zero) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double nn = static_cast<double>(omegas.size());
    for (std::size_t k = 0; k < omegas.size(); ++k) {
      const double lx = std::log(omegas[k]);
      const double ly = std::log(std::abs(out.second_order_exact[k]));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    out.exponent = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  }
  return out;
}

}  // namespace ncps
