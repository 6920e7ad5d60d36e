// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "statengine/analytics.hpp"
#include "statengine/validation.hpp"

using namespace statengine;
using namespace statengine::analytics;
using std::numbers::pi;

namespace {
constexpr long kN = 500;
const double kDensity = density(kN, 1.0);

double numeric_energy(StatKind k, double t) { return validation::comparable_energy(validation::reduced_state(k, kN, t)); }
double numeric_entropy(StatKind k, double t) { return validation::reduced_state(k, kN, t).entropy(); }
}  // namespace

TEST(Analytics, ZetaConstants) {
  // partial sums with an integral tail estimate
  long double s = 0;
  const long m = 200000;
  for (long k = 1; k <= m; ++k) s += 1.0L / std::pow((long double)k, 1.5L);
  s += 2.0L / std::sqrt((long double)m) - 0.5L / std::pow((long double)m, 1.5L);
  EXPECT_NEAR(kZeta3Half, static_cast<double>(s), 1e-9);
}

TEST(Analytics, FermiDegenerateEnergyAtZero) {
  EXPECT_NEAR(energy_tg_degenerate(kN, kDensity, 0.0), kN * fermi_energy(kN, Spectrum::box(1.0)) / 3.0, 1e-6);
  EXPECT_EQ(entropy_tg_degenerate(kN, 0.0), 0.0);
}

TEST(Analytics, DegenerateEnergiesMatchNumerics) {
  EXPECT_NEAR(energy_bg_degenerate(kN, kDensity, 0.1) / numeric_energy(StatKind::BoseGas, 0.1), 1.0, 0.01);
  EXPECT_NEAR(energy_tg_degenerate(kN, kDensity, 0.1) / numeric_energy(StatKind::TonksGirardeau, 0.1), 1.0, 0.01);
}

TEST(Analytics, BoseDegenerateEnergyPower) {
  // leading behaviour T^{3/2}
  const double a = energy_bg_degenerate(kN, kDensity, 1e-6), b = energy_bg_degenerate(kN, kDensity, 4e-6);
  EXPECT_NEAR(b / a, 8.0, 0.05);
}

TEST(Analytics, BoseEntropyExceedsFermi) {
  EXPECT_GT(entropy_bg_degenerate(kN, 0.05) / entropy_tg_degenerate(kN, 0.05), 1.0);
}

TEST(Analytics, NonDegenerateDifferences) {
  for (double t : {20.0, 50.0, 300.0}) {
    const double de = energy_tg_nondegenerate(kN, kDensity, t) - energy_bg_nondegenerate(kN, kDensity, t);
    EXPECT_NEAR(de, std::sqrt(pi * pi * pi * t / 2.0) * kN * kDensity * kDensity, 1e-9 * std::abs(de));
    const double ds = entropy_tg_nondegenerate(kN, t) - entropy_bg_nondegenerate(kN, t);
    EXPECT_NEAR(ds, -2.0 / (2.0 * std::sqrt(2.0 * pi * t)) * kN, 1e-9 * std::abs(ds));
    EXPECT_LT(ds, 0.0);
  }
}

TEST(Analytics, NonDegenerateEnergiesMatchNumerics) {
  EXPECT_NEAR(energy_bg_nondegenerate(kN, kDensity, 50.0) / numeric_energy(StatKind::BoseGas, 50.0), 1.0, 0.01);
  EXPECT_NEAR(energy_tg_nondegenerate(kN, kDensity, 50.0) / numeric_energy(StatKind::TonksGirardeau, 50.0), 1.0, 0.01);
}

TEST(Analytics, NonDegenerateEntropiesWithinTenPercent) {
  for (double t : {20.0, 50.0, 200.0}) {
    EXPECT_NEAR(entropy_bg_nondegenerate(kN, t) / numeric_entropy(StatKind::BoseGas, t), 1.0, 0.1);
    EXPECT_NEAR(entropy_tg_nondegenerate(kN, t) / numeric_entropy(StatKind::TonksGirardeau, t), 1.0, 0.1);
  }
}

TEST(Analytics, EtaADegenerate) {
  EXPECT_NEAR(eta_a_degenerate(Order::BgTg, 0.1, 0.5), 0.99252, 5e-5);
  EXPECT_NEAR(eta_a_bgtg_otto_threshold(), 6.686, 1e-3);
  for (double r2 : {0.2, 0.5, 0.9}) {
    const double th = eta_a_bgtg_otto_threshold();
    EXPECT_GT(eta_a_degenerate(Order::BgTg, 0.99 * th, r2), 1.0 - r2);
    EXPECT_LT(eta_a_degenerate(Order::BgTg, 1.01 * th, r2), 1.0 - r2);
  }
  for (double th : {0.05, 0.3, 0.99}) EXPECT_LT(eta_a_degenerate(Order::TgBg, th, 0.5), 0.5);
  EXPECT_THROW(eta_a_degenerate(Order::NotApplicable, 1.0, 0.5), DomainError);
}

TEST(Analytics, EtaADegenerateAgainstCycle) {
  const CycleReport r = run_cycle(reduced_cycle_spec(Variant::A, Order::BgTg, kN, 0.5, 0.0, 0.1), false);
  ASSERT_TRUE(r.eta.has_value());
  EXPECT_NEAR(*r.eta, eta_a_degenerate(Order::BgTg, 0.1, 0.5), 0.05);
}

TEST(Analytics, TEngineDegenerate) {
  for (double th : {0.05, 0.2, 0.6, 0.99}) EXPECT_LT(*t_engine_degenerate(Order::BgTg, kN, th, 0.5).work, 0.0);
  EXPECT_NEAR(*t_engine_degenerate(Order::TgBg, kN, 1e-8, 0.5).eta, 1.0, 1e-6);
  const CycleReport r = run_cycle(reduced_cycle_spec(Variant::T, Order::TgBg, kN, 0.5, 0.0, 0.1), false);
  ASSERT_TRUE(r.eta.has_value());
  const double eta = *t_engine_degenerate(Order::TgBg, kN, 0.1, 0.5).eta;
  EXPECT_NEAR(eta / *r.eta, 1.0, 0.05);
}

TEST(Analytics, HighTemperatureIdentities) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> th(0.5, 1e4), r2(0.05, 0.95);
  for (int i = 0; i < 200; ++i) {
    const double t = th(rng), r = r2(rng);
    EXPECT_NEAR(eta_high_temperature(Engine::A, Order::BgTg, t, r), eta_high_temperature(Engine::T, Order::TgBg, t, r), 1e-14);
    EXPECT_NEAR(eta_high_temperature(Engine::A, Order::TgBg, t, r), eta_high_temperature(Engine::T, Order::BgTg, t, r), 1e-14);
  }
}

TEST(Analytics, HighTemperatureConvergesToOtto) {
  for (Engine e : {Engine::A, Engine::T}) {
    for (Order o : {Order::BgTg, Order::TgBg}) {
      EXPECT_NEAR(eta_high_temperature(e, o, 1e10, 0.5), 0.5, 1e-5);
      EXPECT_LT(std::abs(eta_high_temperature(e, o, 1e4, 0.5) - 0.5), std::abs(eta_high_temperature(e, o, 1e2, 0.5) - 0.5));
    }
  }
}

TEST(Analytics, HighTemperatureAgainstCycle) {
  const CycleReport r = run_cycle(reduced_cycle_spec(Variant::A, Order::BgTg, kN, 0.5, 0.0, 100.0), false);
  ASSERT_TRUE(r.eta.has_value());
  EXPECT_NEAR(*r.eta / eta_high_temperature(Engine::A, Order::BgTg, 100.0, 0.5), 1.0, 0.02);
}

TEST(Analytics, HighTemperatureWithEntropicShift) {
  // Same energies as the closed form, but with T' = r^2 T_h (1 - 2/sqrt(2 pi T_h)) from entropy matching
  // instead of T' = r^2 T_h.
  const double th = 100.0, r2 = 0.5;
  const double c = 1.0 / (2.0 * std::sqrt(2.0 * pi));
  const double q_in = th / 2.0 + c * std::sqrt(th) - 1.0 / 3.0;
  const double q_out = r2 * (th / 2.0 - 3.0 * c * std::sqrt(th));
  const CycleReport r = run_cycle(reduced_cycle_spec(Variant::A, Order::BgTg, kN, r2, 0.0, th), false);
  ASSERT_TRUE(r.eta.has_value());
  EXPECT_NEAR(*r.eta, 1.0 - q_out / q_in, 2e-3);
}

TEST(Analytics, Bounds) {
  const Bounds b = bounds(1.0, 4.0, 0.5);
  EXPECT_DOUBLE_EQ(b.carnot, 0.75);
  EXPECT_DOUBLE_EQ(b.curzon_ahlborn, 0.5);
  EXPECT_DOUBLE_EQ(b.otto, 0.5);
  const Bounds eq = bounds(2.0, 2.0, 0.5);
  EXPECT_EQ(eq.carnot, 0.0);
  EXPECT_EQ(eq.curzon_ahlborn, 0.0);
  EXPECT_THROW(bounds(0.0, 0.0, 0.5), DomainError);
}

TEST(Validation, OracleSuitePasses) {
  for (const auto& c : validation::run_oracle_suite()) EXPECT_TRUE(c.passed) << c.name << " err " << c.error;
}
