// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "statengine/cycles.hpp"

using namespace statengine;

namespace {
CycleReport run(Variant v, Order o, double tc, double th, long n = 500, double r2 = 0.5, bool gain = true) {
  return run_cycle(reduced_cycle_spec(v, o, n, r2, tc, th), gain);
}
double wout(const CycleReport& r) { return r.W_out / r.energy_unit; }
}  // namespace

TEST(ClassifyMode, Examples) {
  EXPECT_EQ(classify_mode(1.0, -0.5, 0.5), Mode::Engine);
  EXPECT_EQ(classify_mode(-1.0, 0.5, -0.5), Mode::Refrigerator);
  EXPECT_EQ(classify_mode(-0.3, -0.2, -0.5), Mode::Heater);
  EXPECT_EQ(classify_mode(1.0, -1.5, -0.5), Mode::Accelerator);
  EXPECT_EQ(classify_mode(1.0, 0.5, 1.5), Mode::None);
}

TEST(ClassifyMode, Deadband) {
  EXPECT_EQ(classify_mode(1.0, 1e-13, 1.0, 1e-12), Mode::Engine);
  EXPECT_EQ(classify_mode(1.0, 1e-11, 1.0, 1e-12), Mode::None);
}

TEST(ACycle, BoseFirstBeatsOtto) {
  for (double th : {0.05, 0.1, 0.5, 1.0, 3.0, 10.0}) {
    const CycleReport r = run(Variant::A, Order::BgTg, 0.0, th, 500, 0.5, false);
    ASSERT_TRUE(r.eta.has_value()) << th;
    EXPECT_GT(*r.eta, 0.5) << th;
    EXPECT_EQ(r.mode, Mode::Engine);
  }
}

TEST(ACycle, FermiFirstIsNoEngineAtModerateTemperature) {
  const CycleReport r = run(Variant::A, Order::TgBg, 0.0, 2.0, 500, 0.5, false);
  EXPECT_LE(r.W_out, 0.0);
  EXPECT_FALSE(r.eta.has_value());
}

TEST(ACycle, NullCycleAtZeroTemperatures) {
  const CycleReport r = run(Variant::A, Order::BgTg, 0.0, 0.0, 200, 0.5, false);
  EXPECT_NEAR(r.W_out, 0.0, 1e-12 * 200 * r.energy_unit);
}

TEST(TCycle, Signs) {
  EXPECT_LT(run(Variant::T, Order::BgTg, 0.0, 0.5, 500, 0.5, false).W_out, 0.0);
  for (double th : {0.1, 0.5, 1.0}) {
    const CycleReport r = run(Variant::T, Order::TgBg, 0.0, th, 500, 0.5, false);
    ASSERT_TRUE(r.eta.has_value());
    EXPECT_GT(*r.eta, 0.5);
  }
}

TEST(TCycle, HeatFractionsSumToOne) {
  for (double th : {0.1, 1.0, 4.0}) {
    const CycleReport r = run(Variant::T, Order::TgBg, 0.05, th, 300, 0.5, false);
    ASSERT_TRUE(r.sigma && r.sigma_s);
    EXPECT_NEAR(*r.sigma + *r.sigma_s, 1.0, 1e-12);
  }
  EXPECT_FALSE(run(Variant::A, Order::BgTg, 0.0, 1.0, 100, 0.5, false).sigma.has_value());
}

TEST(TCycle, GainNearThreeFold) {
  const CycleReport r = run(Variant::T, Order::TgBg, 0.0, 0.5);
  ASSERT_TRUE(r.gain.has_value());
  EXPECT_GT(*r.gain, 2.5);
  EXPECT_LT(*r.gain, 3.3);
}

TEST(GvCycle, EfficiencyEqualsOtto) {
  for (double r2 : {0.2, 0.5, 0.8}) {
    for (double th : {0.1, 1.0, 6.0}) {
      const CycleReport r = run(Variant::GV, Order::BgTg, 0.0, th, 200, r2, false);
      ASSERT_TRUE(r.eta.has_value());
      EXPECT_NEAR(*r.eta, 1.0 - r2, 1e-10);
    }
  }
}

TEST(GvCycle, BoseFirstOutworksFermiFirst) {
  EXPECT_GT(run(Variant::GV, Order::BgTg, 0.0, 0.5, 500, 0.5, false).W_out,
            run(Variant::GV, Order::TgBg, 0.0, 0.5, 500, 0.5, false).W_out);
}

TEST(GvCycle, SaturatesAtZeroTemperature) {
  const CycleReport a = run(Variant::GV, Order::BgTg, 0.0, 0.0, 200, 0.5, false);
  const CycleReport b = run(Variant::GV, Order::BgTg, 0.0, 1e-9, 200, 0.5, false);
  EXPECT_GT(a.W_out, 0.0);
  EXPECT_NEAR(a.W_out, b.W_out, 1e-9 * a.W_out);
}

TEST(Baselines, OttoEfficiency) {
  for (Variant v : {Variant::BaselineSingle, Variant::BaselineFermi, Variant::BaselineBose}) {
    const CycleReport r = run(v, Order::NotApplicable, 0.0, 1.0, 300, 0.5, false);
    ASSERT_TRUE(r.eta.has_value()) << to_string(v);
    EXPECT_NEAR(*r.eta, 0.5, 1e-10) << to_string(v);
  }
}

TEST(Baselines, FermiHeatInputEqualsBoseFirstAEngine) {
  const CycleReport f = run(Variant::BaselineFermi, Order::NotApplicable, 0.0, 0.8, 500, 0.5, false);
  const CycleReport a = run(Variant::A, Order::BgTg, 0.0, 0.8, 500, 0.5, false);
  EXPECT_NEAR(f.Q_in, a.Q_in, 1e-10 * std::abs(a.Q_in));
}

TEST(Baselines, OrderIgnored) {
  const CycleReport a = run(Variant::BaselineBose, Order::BgTg, 0.1, 1.0, 100, 0.5, false);
  const CycleReport b = run(Variant::BaselineBose, Order::TgBg, 0.1, 1.0, 100, 0.5, false);
  EXPECT_EQ(a.W_out, b.W_out);
}

TEST(Gain, SingleParticleSelfRatio) {
  const CycleReport r = run(Variant::BaselineSingle, Order::NotApplicable, 0.0, 1.0, 1);
  ASSERT_TRUE(r.gain.has_value());
  EXPECT_NEAR(*r.gain, 1.0, 1e-12);
}

TEST(Gain, ApproachesOneAtHighTemperature) {
  const CycleReport r = run(Variant::A, Order::BgTg, 0.0, 2000.0, 100);
  ASSERT_TRUE(r.gain.has_value());
  EXPECT_NEAR(*r.gain, 1.0, 0.05);
}

TEST(Cycle, ClosureFirstLawAndCarnot) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const Variant variants[] = {Variant::A, Variant::T, Variant::GV, Variant::BaselineSingle, Variant::BaselineFermi,
                              Variant::BaselineBose};
  for (int i = 0; i < 120; ++i) {
    const Variant v = variants[i % 6];
    const Order o = (i / 6) % 2 ? Order::TgBg : Order::BgTg;
    const long n = 2 + static_cast<long>(ud(rng) * 200);
    const double tc = 3.0 * ud(rng), th = 6.0 * ud(rng), r2 = 0.1 + 0.8 * ud(rng);
    const CycleReport r = run(v, o, tc, th, n, r2, false);
    const double scale = static_cast<double>(n) * r.energy_unit;
    EXPECT_LE(std::abs(r.sum_dU()), 1e-9 * scale);
    EXPECT_LE(std::abs(r.W_out - (r.Q_in + r.Q_out)), 1e-9 * scale);
    for (const auto& l : r.ledgers) EXPECT_NEAR(l.dU, l.W + l.Q, 1e-12 * scale);
    if (r.mode == Mode::Engine && v != Variant::GV && tc > 0.0 && th > tc && r.eta) {
      EXPECT_GT(*r.eta, 0.0);
      EXPECT_LE(*r.eta, 1.0 - tc / th + 1e-9) << to_string(v) << " " << to_string(o) << " tc=" << tc << " th=" << th;
    }
  }
}

TEST(Cycle, HarmonicTrapRuns) {
  const CycleReport r = run_cycle(reduced_cycle_spec(Variant::GV, Order::BgTg, 100, 0.5, 0.0, 1.0, TrapKind::Harmonic));
  ASSERT_TRUE(r.eta.has_value());
  EXPECT_NEAR(*r.eta, 0.5, 1e-10);
}

TEST(Cycle, Errors) {
  CycleSpec spec = reduced_cycle_spec(Variant::A, Order::BgTg, 10, 0.5, 0.0, 1.0);
  spec.T_h = -1.0;
  EXPECT_THROW(run_cycle(spec), DomainError);
  spec = reduced_cycle_spec(Variant::A, Order::BgTg, 10, 0.5, 0.0, 1.0);
  spec.order = Order::NotApplicable;
  EXPECT_THROW(run_cycle(spec), DomainError);
  spec = reduced_cycle_spec(Variant::A, Order::BgTg, 10, 0.5, 0.0, 1.0);
  EXPECT_THROW(run_a_cycle(reduced_cycle_spec(Variant::T, Order::BgTg, 10, 0.5, 0.0, 1.0)), DomainError);
}
