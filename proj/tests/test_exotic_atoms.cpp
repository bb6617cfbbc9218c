#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "ncps/exotic_atoms.hpp"

using namespace ncps;

namespace {

const std::string bundled = std::string(NCPS_DATA_DIR) + "/pbarhe.json";

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

MeasurementRecord pbar_record() { return load_measurements(bundled).front(); }

}  // namespace

TEST(LoadMeasurements, BundledRecord) {
  const auto recs = load_measurements(bundled);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].atom, "antiprotonic_helium");
  EXPECT_EQ(recs[0].from.n, 36);
  EXPECT_EQ(recs[0].from.l, 34);
  EXPECT_EQ(recs[0].to.n, 34);
  EXPECT_EQ(recs[0].to.l, 32);
  EXPECT_EQ(recs[0].frequency_MHz, 1522107062.0);
  EXPECT_EQ(recs[0].uncertainty_MHz, 3.5);
  EXPECT_EQ(recs[0].line, 2);
}

TEST(LoadMeasurements, EmptyFile) {
  EXPECT_TRUE(load_measurements(write_temp("empty.json", "")).empty());
  EXPECT_TRUE(load_measurements(write_temp("blank.json", " \n\t\n")).empty());
  EXPECT_TRUE(parse_measurements("[]").empty());
}

TEST(LoadMeasurements, ValidationErrorsCarryLine) {
  const std::string text =
      "[\n"
      "  {\"atom\": \"hydrogen\", \"transition\": {\"from\": [2, 0], \"to\": [1, 0]},\n"
      "   \"frequency_MHz\": 2466061413.187, \"uncertainty_MHz\": 0.00001, \"source\": \"s\"},\n"
      "  {\"atom\": \"hydrogen\", \"transition\": {\"from\": [2, 0], \"to\": [1, 0]},\n"
      "   \"frequency_MHz\": 1.0, \"uncertainty_MHz\": -3.5, \"source\": \"s\"}\n"
      "]\n";
  try {
    parse_measurements(text, "m.json");
    FAIL() << "negative uncertainty accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("m.json:4"), std::string::npos) << e.what();
  }
  EXPECT_THROW(load_measurements(write_temp("neg.json", text)), ValidationError);
}

TEST(LoadMeasurements, RejectsMalformedRecords) {
  const std::string ok_tail = R"("frequency_MHz": 1, "uncertainty_MHz": 1, "source": "s"})";
  EXPECT_THROW(parse_measurements(R"([{"atom": "h", "transition": {"from": [2, 2], "to": [1, 0]}, )" + ok_tail + "]"),
               ValidationError);
  EXPECT_THROW(parse_measurements(R"([{"atom": "h", "transition": {"from": [2], "to": [1, 0]}, )" + ok_tail + "]"),
               ValidationError);
  EXPECT_THROW(
      parse_measurements(R"([{"atom": "h", "extra": 1, "transition": {"from": [2, 0], "to": [1, 0]}, )" + ok_tail + "]"),
      ValidationError);
  EXPECT_THROW(parse_measurements(R"([{"atom": "h", "transition": {"from": [2, 0], "to": [1, 0]}}])"), ValidationError);
  EXPECT_THROW(parse_measurements(R"({"atom": "h"})"), ParseError);
  try {
    parse_measurements("[\n\n  {\"atom\": ]", "bad.json");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.json:3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(load_measurements("/nonexistent/file.json"), ParseError);
}

TEST(AtomSpecTest, Presets) {
  const PhysicalConstants pc;
  const auto h = AtomSpec::preset("hydrogen", pc);
  EXPECT_EQ(h.z_eff, 1.0);
  EXPECT_NEAR(h.coulomb(pc, LengthRecipe::paper).a() / pc.bohr_radius, 1.0, 1e-9);
  const auto p = AtomSpec::preset("antiprotonic_helium", pc);
  EXPECT_EQ(p.z_eff, 2.0);
  EXPECT_NEAR(p.coulomb(pc, LengthRecipe::paper).a(), pc.electron_mass * pc.bohr_radius / pc.antiproton_mass, 1e-25);
  EXPECT_NEAR(p.coulomb(pc, LengthRecipe::exact).mu() / p.reduced_mass(), 1.0, 1e-14);
  EXPECT_THROW(AtomSpec::preset("positronium", pc), InvalidParameter);
  AtomSpec bad = h;
  bad.z_eff = 0.0;
  EXPECT_THROW(bad.coulomb(pc, LengthRecipe::exact), InvalidParameter);
  EXPECT_EQ(parse_recipe("exact"), LengthRecipe::exact);
  EXPECT_THROW(parse_recipe("fuzzy"), InvalidParameter);
}

TEST(TransitionCorrections, Examples) {
  const PhysicalConstants pc;
  const auto atom = AtomSpec::preset("antiprotonic_helium", pc);
  const auto rec = pbar_record();
  const auto zero = transition_corrections(rec, atom, pc, NCMoments{});
  EXPECT_EQ(zero.theta, 0.0);
  EXPECT_EQ(zero.eta, 0.0);

  NCMoments unit;
  unit.mean_theta = unit.mean_theta_sq = unit.mean_eta_sq_r = 1.0;
  auto same = rec;
  same.to = same.from;
  const auto d0 = transition_corrections(same, atom, pc, unit);
  EXPECT_EQ(d0.theta, 0.0);
  EXPECT_EQ(d0.eta, 0.0);

  const CoulombSystem sys(1.0, 1.0, 1.0);
  const auto d = transition_corrections(rec, sys, unit);
  EXPECT_DOUBLE_EQ(d.theta, delta_E_theta_high_l({36, 34}, sys, unit) - delta_E_theta_high_l({34, 32}, sys, unit));
  EXPECT_NEAR(d.theta, -1.9056504288e-14 - delta_E_theta_high_l({34, 32}, sys, unit), 1e-23);

  auto p_state = rec;
  p_state.to = {2, 1};
  EXPECT_THROW(transition_corrections(p_state, sys, unit), NotComputable);
}

TEST(Bounds, PaperOrders) {
  const PhysicalConstants pc;
  const auto b = bounds_from_record(pbar_record(), AtomSpec::preset("antiprotonic_helium", pc), pc);
  ASSERT_TRUE(b.hbar_theta_m2 && b.hbar_eta_kg2m2_s2);
  EXPECT_LE(std::abs(std::log10(*b.hbar_theta_m2 / 1e-27)), 1.0);
  EXPECT_LE(std::abs(std::log10(*b.hbar_eta_kg2m2_s2 / 1e-50)), 1.0);
  const auto j = b.to_json();
  EXPECT_EQ(j["recipe"], "paper");
  EXPECT_EQ(j["split_fraction"], 0.5);
  EXPECT_TRUE(j.contains("record"));
}

TEST(Bounds, SaturateTheBudget) {
  const PhysicalConstants pc;
  const auto atom = AtomSpec::preset("antiprotonic_helium", pc);
  const auto rec = pbar_record();
  const auto b = bounds_from_record(rec, atom, pc);
  const double budget = 0.5 * pc.h * rec.uncertainty_MHz * 1e6;
  NCMoments m;
  m.mean_theta = *b.hbar_theta_m2 / pc.hbar;
  m.mean_theta_sq = NCMoments::theta_sq_from_mean(m.mean_theta);
  m.mean_eta_sq_r = std::pow(*b.hbar_eta_kg2m2_s2 / pc.hbar, 2);
  const auto d = transition_corrections(rec, atom, pc, m);
  EXPECT_NEAR(std::abs(d.theta) / budget, 1.0, 1e-9);
  EXPECT_NEAR(std::abs(d.eta) / budget, 1.0, 1e-9);
}

TEST(Bounds, UncertaintyScaling) {
  const PhysicalConstants pc;
  const auto atom = AtomSpec::preset("antiprotonic_helium", pc);
  auto rec = pbar_record();
  const auto full = bounds_from_record(rec, atom, pc);
  rec.uncertainty_MHz /= 2;
  const auto half = bounds_from_record(rec, atom, pc);
  // Both channels are quadratic in the bounded quantity for this high-l transition.
  EXPECT_NEAR(*half.hbar_eta_kg2m2_s2 / *full.hbar_eta_kg2m2_s2, 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(*half.hbar_theta_m2 / *full.hbar_theta_m2, 1.0 / std::sqrt(2.0), 1e-12);

  // An ns transition makes the theta channel linear, so halving halves it.
  MeasurementRecord ns{"hydrogen", {2, 0}, {1, 0}, 2466061413.187, 1e-5, "s", 0};
  const auto h = AtomSpec::preset("hydrogen", pc);
  const auto b1 = bounds_from_record(ns, h, pc);
  ns.uncertainty_MHz /= 2;
  const auto b2 = bounds_from_record(ns, h, pc);
  EXPECT_NEAR(*b2.hbar_theta_m2 / *b1.hbar_theta_m2, 0.5, 1e-12);
}

TEST(Bounds, MonotoneInUncertainty) {
  const PhysicalConstants pc;
  const auto atom = AtomSpec::preset("antiprotonic_helium", pc);
  auto rec = pbar_record();
  double prev_theta = 0.0, prev_eta = 0.0;
  for (double u : {0.1, 0.5, 1.0, 3.5, 10.0, 100.0}) {
    rec.uncertainty_MHz = u;
    const auto b = bounds_from_record(rec, atom, pc);
    EXPECT_GE(*b.hbar_theta_m2, prev_theta);
    EXPECT_GE(*b.hbar_eta_kg2m2_s2, prev_eta);
    prev_theta = *b.hbar_theta_m2;
    prev_eta = *b.hbar_eta_kg2m2_s2;
  }
}

TEST(Bounds, RecipeSensitivityBounded) {
  const PhysicalConstants pc;
  const auto atom = AtomSpec::preset("antiprotonic_helium", pc);
  const auto rec = pbar_record();
  const auto p = bounds_from_record(rec, atom, pc, LengthRecipe::paper);
  const auto e = bounds_from_record(rec, atom, pc, LengthRecipe::exact);
  EXPECT_LT(std::max(*p.hbar_theta_m2 / *e.hbar_theta_m2, *e.hbar_theta_m2 / *p.hbar_theta_m2), 1e3);
  EXPECT_LT(std::max(*p.hbar_eta_kg2m2_s2 / *e.hbar_eta_kg2m2_s2, *e.hbar_eta_kg2m2_s2 / *p.hbar_eta_kg2m2_s2), 1e3);
}

TEST(Bounds, UnitCoherence) {
  const PhysicalConstants si;
  const PhysicalConstants scaled = si.in_units({si.bohr_radius, si.electron_mass, 2.4188843265857e-17});
  const auto rec = pbar_record();
  for (auto recipe : {LengthRecipe::paper, LengthRecipe::exact}) {
    const auto a = bounds_from_record(rec, AtomSpec::preset(rec.atom, si), si, recipe);
    const auto b = bounds_from_record(rec, AtomSpec::preset(rec.atom, scaled), scaled, recipe);
    EXPECT_NEAR(*b.hbar_theta_m2 / *a.hbar_theta_m2, 1.0, 1e-10);
    EXPECT_NEAR(*b.hbar_eta_kg2m2_s2 / *a.hbar_eta_kg2m2_s2, 1.0, 1e-10);
  }
}

TEST(Bounds, NoConstraintAndErrors) {
  const PhysicalConstants pc;
  const auto atom = AtomSpec::preset("hydrogen", pc);
  // Same n and l on both sides: every coefficient cancels.
  MeasurementRecord flat{"hydrogen", {3, 2}, {3, 2}, 1.0, 1.0, "s", 0};
  const auto b = bounds_from_record(flat, atom, pc);
  EXPECT_FALSE(b.hbar_theta_m2.has_value());
  EXPECT_FALSE(b.hbar_eta_kg2m2_s2.has_value());
  EXPECT_TRUE(b.to_json()["hbar_theta_bound_m2"].is_null());

  MeasurementRecord p_wave{"hydrogen", {2, 1}, {1, 0}, 1.0, 1.0, "s", 0};
  EXPECT_THROW(bounds_from_record(p_wave, atom, pc), NotComputable);
  EXPECT_THROW(bounds_from_record(pbar_record(), atom, pc, LengthRecipe::paper, 1.5), InvalidParameter);
}

TEST(ReducedMassComparisonTest, Ratios) {
  const PhysicalConstants pc;
  const auto mu_h = AtomSpec::preset("muonic_hydrogen", pc);
  const auto h = AtomSpec::preset("hydrogen", pc);
  const auto inf = reduced_mass_comparison(mu_h, h, true);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", inf.mu_ratio);
  EXPECT_STREQ(buf, "206.8");
  std::snprintf(buf, sizeof buf, "%.2g", inf.mu_ratio_cubed);
  EXPECT_STREQ(buf, "8.8e+06");
  EXPECT_DOUBLE_EQ(inf.theta_sensitivity, inf.mu_ratio_cubed);
  EXPECT_DOUBLE_EQ(inf.eta_sensitivity, 1.0 / inf.mu_ratio);

  const auto exact = reduced_mass_comparison(mu_h, h);
  EXPECT_NEAR(exact.mu_ratio, 186.0, 0.5);

  const auto self = reduced_mass_comparison(h, h);
  EXPECT_EQ(self.mu_ratio, 1.0);
  EXPECT_EQ(self.mu_ratio_cubed, 1.0);
  EXPECT_EQ(self.theta_sensitivity, 1.0);
  EXPECT_EQ(self.eta_sensitivity, 1.0);
}
