#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ncps/composite_params.hpp"

using namespace ncps;

TEST(FromMassConditions, Examples) {
  const auto zero = from_mass_conditions(0.0, 0.0, {1.0, 2.0});
  for (const auto& p : zero.particles) {
    EXPECT_EQ(p.c_theta, 0.0);
    EXPECT_EQ(p.c_eta, 0.0);
  }
  const auto equal = from_mass_conditions(2.0, 0.0, {1.0, 1.0});
  EXPECT_DOUBLE_EQ(equal.particles[0].c_theta, 2.0);
  EXPECT_DOUBLE_EQ(equal.particles[1].c_theta, 2.0);

  const auto s = from_mass_conditions(6.0, 0.0, {2.0, 3.0});
  EXPECT_DOUBLE_EQ(s.particles[0].c_theta, 3.0);
  EXPECT_DOUBLE_EQ(s.particles[1].c_theta, 2.0);
  EXPECT_DOUBLE_EQ(s.particles[0].c_theta * 2.0, 6.0);
  EXPECT_DOUBLE_EQ(s.particles[1].c_theta * 3.0, 6.0);
}

TEST(FromMassConditions, RejectsBadInput) {
  EXPECT_THROW(from_mass_conditions(1.0, 1.0, {1.0, 0.0}), InvalidParameter);
  EXPECT_THROW(from_mass_conditions(1.0, 1.0, {-1.0}), InvalidParameter);
  EXPECT_THROW(from_mass_conditions(1.0, 1.0, {}), InvalidParameter);
  EXPECT_THROW(from_mass_conditions(std::nan(""), 1.0, {1.0}), InvalidParameter);
}

TEST(EffectiveConstants, Examples) {
  SystemParams single{{{5.0, 0.7, 1.3}}};
  const auto e1 = effective_com_constants(single);
  EXPECT_DOUBLE_EQ(e1.c_theta_c, 0.7);
  EXPECT_DOUBLE_EQ(e1.c_eta_c, 1.3);
  EXPECT_FALSE(e1.c_theta_r.has_value());

  const double m = 1.7, g = 2.5;
  const auto e2 = effective_com_constants(from_mass_conditions(g, 0.0, {m, m}));
  EXPECT_NEAR(e2.c_theta_c, g / (2 * m), 1e-15);

  SystemParams three{{{1.0, 6.0, 0.0}, {2.0, 3.0, 0.0}, {3.0, 2.0, 0.0}}};
  EXPECT_NEAR(effective_com_constants(three).c_theta_c, 1.0, 1e-15);
}

TEST(RelativeConstants, Examples) {
  const double m = 3.0, g = 1.5;
  const auto r = relative_constants(from_mass_conditions(g, 0.0, {m, m}));
  EXPECT_NEAR(*r.c_theta_r, 2 * g / m, 1e-15);
  EXPECT_NEAR(*r.c_theta_r, g / *r.mu, 1e-15);

  SystemParams no_eta{{{1.0, 1.0, 0.0}, {2.0, 1.0, 0.0}}};
  EXPECT_EQ(*relative_constants(no_eta).c_eta_r, 0.0);

  const auto r2 = relative_constants(from_mass_conditions(0.0, 4.0, {1.0, 3.0}));
  EXPECT_NEAR(*r2.c_eta_r, 3.0, 1e-14);
  EXPECT_NEAR(*r2.mu, 0.75, 1e-15);

  EXPECT_THROW(relative_constants(SystemParams{{{1.0, 0, 0}}}), WrongParticleCount);
  EXPECT_THROW(relative_constants(SystemParams{{{1.0, 0, 0}, {1.0, 0, 0}, {1.0, 0, 0}}}), WrongParticleCount);
}

TEST(CheckMassConditions, Examples) {
  const auto ok = check_mass_conditions(from_mass_conditions(3.0, 0.25, {1.0, 2.0, 5.0}));
  EXPECT_TRUE(ok.satisfied);
  EXPECT_LE(ok.max_residual, 1e-15);
  EXPECT_NEAR(ok.gamma_tilde, 3.0, 1e-14);
  EXPECT_NEAR(ok.alpha_tilde, 0.25, 1e-15);

  EXPECT_FALSE(check_mass_conditions(SystemParams{{{1.0, 1.0, 0.0}, {2.0, 1.0, 0.0}}}).satisfied);

  auto perturbed = from_mass_conditions(3.0, 0.25, {1.0, 2.0});
  perturbed.particles[1].c_theta *= 1.0 + 1e-13;
  EXPECT_TRUE(check_mass_conditions(perturbed, 1e-12).satisfied);
  perturbed.particles[1].c_theta *= 1.0 + 1e-9;
  EXPECT_FALSE(check_mass_conditions(perturbed, 1e-12).satisfied);
}

TEST(CompositeProperties, PermutationInvariance) {
  std::mt19937 rng(20240601);
  std::uniform_real_distribution<double> mass(0.1, 10.0), c(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    SystemParams sys;
    const int n = 2 + trial % 4;
    for (int k = 0; k < n; ++k) sys.particles.push_back({mass(rng), c(rng), c(rng)});
    const auto ref = effective_com_constants(sys);
    std::shuffle(sys.particles.begin(), sys.particles.end(), rng);
    const auto got = effective_com_constants(sys);
    EXPECT_NEAR(got.c_theta_c, ref.c_theta_c, 1e-12 * std::max(1.0, std::abs(ref.c_theta_c)));
    EXPECT_NEAR(got.c_eta_c, ref.c_eta_c, 1e-12 * std::max(1.0, std::abs(ref.c_eta_c)));
    EXPECT_NEAR(got.M, ref.M, 1e-12 * ref.M);
    if (n == 2) {
      EXPECT_NEAR(*got.c_theta_r, *ref.c_theta_r, 1e-12 * std::abs(*ref.c_theta_r));
      EXPECT_NEAR(*got.c_eta_r, *ref.c_eta_r, 1e-12 * std::max(1.0, std::abs(*ref.c_eta_r)));
    }
  }
}

TEST(CompositeProperties, CompositionIndependenceOverRandomPartitions) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> frac(0.05, 1.0);
  const double M = 6.6e-27, g = 3.0e-30, a = 2.0e20;
  for (int trial = 0; trial < 100; ++trial) {
    const int parts = 1 + trial % 6;
    std::vector<double> w(parts);
    double total = 0;
    for (double& x : w) total += (x = frac(rng));
    std::vector<double> masses;
    for (double x : w) masses.push_back(M * x / total);
    const auto e = effective_com_constants(from_mass_conditions(g, a, masses));
    EXPECT_NEAR(e.c_theta_c / (g / M), 1.0, 1e-12);
    EXPECT_NEAR(e.c_eta_c / (a * M), 1.0, 1e-12);
    if (parts == 2) {
      EXPECT_NEAR(*e.c_theta_r * *e.mu / g, 1.0, 1e-12);
      EXPECT_NEAR(*e.c_eta_r / (a * *e.mu), 1.0, 1e-12);
    }
  }
}

TEST(CompositeProperties, Additivity) {
  SystemParams sys{{{1.0, 2.0, 0.5}, {3.0, -1.0, 1.5}, {4.0, 0.25, -0.75}}};
  const auto e = effective_com_constants(sys);
  EXPECT_DOUBLE_EQ(e.c_eta_c, 0.5 + 1.5 - 0.75);
  EXPECT_NEAR(e.c_theta_c, (1.0 * 2.0 + 9.0 * -1.0 + 16.0 * 0.25) / 64.0, 1e-15);
}
