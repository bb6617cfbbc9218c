#include <gtest/gtest.h>

#include "ncps/hydrogen_corrections.hpp"

using namespace ncps;

namespace {

const CoulombSystem unit_sys(1.0, 1.0, 1.0);

NCMoments unit_moments() {
  NCMoments m;
  m.mean_theta = 1.0;
  m.mean_theta_sq = 1.0;
  m.mean_eta_sq_r = 1.0;
  m.mean_eta_sq_c = 1.0;
  return m;
}

NCMoments moments_for(double c_theta_r, double c_eta_r, const PhysicalConstants& pc) {
  EffectiveConstants e;
  e.c_theta_r = c_theta_r;
  e.c_eta_r = c_eta_r;
  e.c_eta_c = c_eta_r;
  return nc_moments(e, pc);
}

}  // namespace

TEST(CoulombSystem, LengthAlwaysDerived) {
  const PhysicalConstants pc;
  const double me = pc.electron_mass;
  const CoulombSystem h(me, pc.coulomb_coupling(1.0), pc.hbar);
  // The tabulated a_B and hbar^2/(m_e kappa) agree to the table's own rounding.
  EXPECT_NEAR(h.a() / pc.bohr_radius, 1.0, 1e-8);
  const auto from_len = CoulombSystem::from_length(2.5, 3.0, 1.0);
  EXPECT_NEAR(from_len.a(), 2.5, 1e-15);
  EXPECT_THROW(CoulombSystem(0.0, 1.0, 1.0), InvalidParameter);
  EXPECT_THROW(CoulombSystem(1.0, -1.0, 1.0), InvalidParameter);
}

TEST(NCMomentsTest, Examples) {
  const PhysicalConstants pc;
  const auto zero = moments_for(0.0, 0.0, pc);
  EXPECT_EQ(zero.mean_theta, 0.0);
  EXPECT_EQ(zero.mean_theta_sq, 0.0);
  EXPECT_EQ(zero.mean_eta_sq_r, 0.0);

  const auto one = moments_for(1.0, 1.0, pc);
  const double lp2 = pc.planck_length * pc.planck_length;
  EXPECT_NEAR(one.mean_theta / (2 * lp2 / (std::sqrt(M_PI) * pc.hbar)), 1.0, 1e-14);
  for (double c : {1.0, 3.7, -2.0}) {
    const auto m = moments_for(c, 0.0, pc);
    EXPECT_NEAR(m.mean_theta * m.mean_theta / m.mean_theta_sq, 8.0 / (3.0 * M_PI), 1e-13);
    EXPECT_LE(m.mean_theta * m.mean_theta, m.mean_theta_sq);
  }
  EXPECT_NEAR(NCMoments::theta_sq_from_mean(2.0), 3 * M_PI / 8 * 4.0, 1e-15);

  EffectiveConstants no_relative;
  EXPECT_THROW(nc_moments(no_relative, pc), WrongParticleCount);
}

TEST(RPowerMean, Examples) {
  EXPECT_DOUBLE_EQ(r_power_mean_reduced({1, 0}, 0), 1.0);
  EXPECT_NEAR(r_power_mean_reduced({1, 0}, 2), 3.0, 1e-14);
  EXPECT_NEAR(r_power_mean_reduced({2, 1}, -3), 1.0 / 24.0, 1e-15);
  const CoulombSystem sys = CoulombSystem::from_length(2.0, 1.0, 1.0);
  EXPECT_NEAR(r_power_mean({1, 0}, sys, 2), 12.0, 1e-13);
  EXPECT_NEAR(r_power_mean({2, 1}, sys, -3), 1.0 / (24.0 * 8.0), 1e-15);
}

TEST(RPowerMean, KnownClosedForms) {
  for (int n = 1; n <= 10; ++n) {
    for (int l = 0; l < n; ++l) {
      const double N = n, L = l;
      EXPECT_NEAR(r_power_mean_reduced({n, l}, 1), 0.5 * (3 * N * N - L * (L + 1)), 1e-12 * N * N);
      EXPECT_NEAR(r_power_mean_reduced({n, l}, 2), 0.5 * N * N * (5 * N * N + 1 - 3 * L * (L + 1)), 1e-11 * N * N * N * N);
      EXPECT_NEAR(r_power_mean_reduced({n, l}, -1), 1 / (N * N), 1e-15);
      if (l >= 1) {
        EXPECT_NEAR(r_power_mean_reduced({n, l}, -3), 1 / (N * N * N * L * (L + 0.5) * (L + 1)), 1e-15);
      }
    }
  }
}

TEST(RPowerMean, DivergenceAndRange) {
  EXPECT_THROW(r_power_mean_reduced({1, 0}, -3), DivergentMoment);
  EXPECT_THROW(r_power_mean_reduced({2, 1}, -5), DivergentMoment);
  EXPECT_NO_THROW(r_power_mean_reduced({3, 2}, -6));
  EXPECT_THROW(r_power_mean_reduced({3, 2}, 3), InvalidParameter);
  EXPECT_THROW(r_power_mean_reduced({2, 2}, 0), InvalidQuantumNumbers);
}

TEST(RPowerMean, KramersPasternackResidual) {
  for (int n = 1; n <= 12; ++n)
    for (int l = 0; l < n; ++l)
      for (int s = -6 + 2; s <= 2; ++s) {
        if (s - 2 < -(2 * l + 2)) continue;
        EXPECT_LT(kramers_pasternack_residual({n, l}, s), 1e-12) << n << "," << l << "," << s;
      }
}

TEST(DeltaEEta, Examples) {
  EXPECT_EQ(delta_E_eta({3, 1}, unit_sys, NCMoments{}), 0.0);
  // kappa a^3 n^2 <eta^2> (5n^2+1-3l(l+1)) / (24 hbar^2) with every scale 1
  EXPECT_NEAR(delta_E_eta({1, 0}, unit_sys, unit_moments()), 6.0 / 24.0, 1e-15);
  const PhysicalConstants pc;
  const CoulombSystem h(pc.electron_mass * pc.proton_mass / (pc.electron_mass + pc.proton_mass), pc.coulomb_coupling(1),
                        pc.hbar);
  const auto m = moments_for(0.0, 2.0e-3, pc);
  for (int n = 1; n <= 8; ++n)
    for (int l = 0; l < n; ++l) {
      const double a = delta_E_eta({n, l}, h, m), b = delta_E_eta_via_moment({n, l}, h, m);
      EXPECT_NEAR(a / b, 1.0, 1e-12);
    }
}

TEST(DeltaEThetaHighL, Examples) {
  EXPECT_EQ(delta_E_theta_high_l({3, 2}, unit_sys, NCMoments{}), 0.0);
  EXPECT_THROW(delta_E_theta_high_l({2, 1}, unit_sys, unit_moments()), DivergentLevel);
  EXPECT_THROW(delta_E_theta_high_l({2, 0}, unit_sys, unit_moments()), DivergentLevel);
  EXPECT_NEAR(delta_E_theta_high_l({3, 2}, unit_sys, unit_moments()), -3.0483158055e-05, 1e-14);
  EXPECT_NEAR(delta_E_theta_high_l({36, 34}, unit_sys, unit_moments()) / -1.9056504288e-14, 1.0, 1e-9);
}

TEST(DeltaEThetaNs, Examples) {
  EXPECT_EQ(delta_E_theta_ns(1, unit_sys, NCMoments{}), 0.0);
  EXPECT_NEAR(delta_E_theta_ns(2, unit_sys, unit_moments()) / delta_E_theta_ns(1, unit_sys, unit_moments()), 0.125,
              1e-15);
  EXPECT_NEAR(delta_E_theta_ns(1, unit_sys, unit_moments()), 1.72 * M_PI / 8.0, 1e-15);
  EXPECT_NEAR(1.72 * M_PI / 8.0, 0.6754, 1e-4);
  EXPECT_THROW(delta_E_theta_ns(0, unit_sys, unit_moments()), InvalidQuantumNumbers);
}

TEST(TotalCorrection, Dispatch) {
  const auto m = unit_moments();
  const auto s = total_correction({2, 0}, unit_sys, m);
  EXPECT_DOUBLE_EQ(s.total(), delta_E_eta({2, 0}, unit_sys, m) + delta_E_theta_ns(2, unit_sys, m));
  const auto d = total_correction({4, 2}, unit_sys, m);
  EXPECT_DOUBLE_EQ(d.total(), delta_E_eta({4, 2}, unit_sys, m) + delta_E_theta_high_l({4, 2}, unit_sys, m));
  const auto p = total_correction({2, 1}, unit_sys, m);
  EXPECT_FALSE(p.theta_computable());
  EXPECT_DOUBLE_EQ(p.total(), delta_E_eta({2, 1}, unit_sys, m));
  EXPECT_EQ(total_correction({3, 2}, unit_sys, NCMoments{}).total(), 0.0);
}

TEST(ComOscillator, Levels) {
  NCMoments zero;
  EXPECT_EQ(com_oscillator_level(0, 0, 0, 2.0, zero, 1.0), 0.0);
  NCMoments m;
  m.mean_eta_sq_c = 3.0;
  const double ground = com_oscillator_level(0, 0, 0, 2.0, m, 1.0);
  EXPECT_NEAR(ground, 1.5 * std::sqrt(6.0) / (std::sqrt(3.0) * 2.0), 1e-15);
  const double step = com_oscillator_level(1, 0, 0, 2.0, m, 1.0) - ground;
  for (int k = 1; k < 6; ++k) {
    EXPECT_NEAR(com_oscillator_level(k + 1, 0, 0, 2.0, m, 1.0) - com_oscillator_level(k, 0, 0, 2.0, m, 1.0), step,
                1e-14);
  }
  EXPECT_DOUBLE_EQ(com_oscillator_level(1, 2, 0, 2.0, m, 1.0), com_oscillator_level(0, 0, 3, 2.0, m, 1.0));
  EXPECT_THROW(com_oscillator_level(-1, 0, 0, 2.0, m, 1.0), InvalidQuantumNumbers);
  EXPECT_NEAR(com_oscillator_frequency_from_hamiltonian(2.0, m), std::sqrt(0.5) / 2.0, 1e-15);
}

TEST(Scaling, QuadraticAndLinearInConstants) {
  const PhysicalConstants pc;
  const CoulombSystem h(pc.electron_mass, pc.coulomb_coupling(1), pc.hbar);
  const auto m1 = moments_for(1.0e3, 1.0e-3, pc), m2 = moments_for(2.0e3, 2.0e-3, pc);
  EXPECT_NEAR(delta_E_eta({3, 1}, h, m2) / delta_E_eta({3, 1}, h, m1), 4.0, 1e-12);
  EXPECT_NEAR(delta_E_theta_high_l({4, 2}, h, m2) / delta_E_theta_high_l({4, 2}, h, m1), 4.0, 1e-12);
  EXPECT_NEAR(delta_E_theta_ns(2, h, m2) / delta_E_theta_ns(2, h, m1), 2.0, 1e-12);
}

TEST(Trends, QuantumNumberPowers) {
  const auto m = unit_moments();
  auto slope = [](double f1, double f2, double n1, double n2) { return std::log(f2 / f1) / std::log(n2 / n1); };
  const int l = 2;
  EXPECT_NEAR(slope(delta_E_eta({200, l}, unit_sys, m), delta_E_eta({400, l}, unit_sys, m), 200, 400), 4.0, 0.2);
  EXPECT_NEAR(slope(delta_E_theta_ns(200, unit_sys, m), delta_E_theta_ns(400, unit_sys, m), 200, 400), -3.0, 0.15);
  // The explicit prefactor falls as 1/n^5, but the bracket grows as n^2 at fixed l.
  for (int n : {10, 40, 160}) {
    EXPECT_NEAR(delta_E_theta_high_l({n, l}, unit_sys, m) * std::pow(n, 5) / -theta_high_l_bracket(n, l), 1.0, 1e-12);
  }
  EXPECT_NEAR(
      slope(delta_E_theta_high_l({200, l}, unit_sys, m), delta_E_theta_high_l({400, l}, unit_sys, m), 200, 400), -3.0,
      0.15);
}

TEST(Trends, ReducedMass) {
  // Under mass conditions c_theta_r = gamma~/mu and c_eta_r = alpha~ mu.
  const PhysicalConstants pc;
  const double g = 1e-30, al = 1e25, mu = pc.electron_mass;
  const CoulombSystem s1(mu, pc.coulomb_coupling(1), pc.hbar), s2(2 * mu, pc.coulomb_coupling(1), pc.hbar);
  const auto m1 = moments_for(g / mu, al * mu, pc), m2 = moments_for(g / (2 * mu), al * 2 * mu, pc);
  auto cube = [](double x) { return x * x * x; };
  EXPECT_NEAR((m2.mean_eta_sq_r * cube(s2.a())) / (m1.mean_eta_sq_r * cube(s1.a())), 0.5, 1e-12);
  EXPECT_NEAR((m2.mean_theta / cube(s2.a())) / (m1.mean_theta / cube(s1.a())), 4.0, 1e-12);
  EXPECT_NEAR((m2.mean_theta_sq / std::pow(s2.a(), 5)) / (m1.mean_theta_sq / std::pow(s1.a(), 5)), 8.0, 1e-12);
}
