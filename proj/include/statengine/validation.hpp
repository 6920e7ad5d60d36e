// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "statengine/analytics.hpp"
#include "statengine/cycles.hpp"
#include "statengine/ensembles.hpp"

// Analytic-vs-numeric oracle suite behind `statengine validate`. Each check
// carries the window and tolerance it is held to.
namespace statengine::validation {

struct Check {
  std::string name;
  std::string window;
  double tolerance = 0.0;
  double error = 0.0;  // worst error seen over the window
  bool passed = false;
};

/// Reduced-temperature state of N particles in a unit box.
inline ThermalState reduced_state(StatKind stats, long n, double t) {
  const Spectrum box = Spectrum::box(1.0);
  return make_state(stats, box, n, t * fermi_energy(n, box));
}

/// Energy as the closed forms count it: BG energies are measured from the
/// condensate, TG energies are totals.
inline double comparable_energy(const ThermalState& s) {
  if (s.stats() == StatKind::BoseGas) {
    return s.energy() - static_cast<double>(s.particles()) * s.spectrum().ground();
  }
  return s.energy();
}

inline double relative_error(double got, double want) { return std::abs(got - want) / std::abs(want); }

inline std::vector<double> log_points(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

inline std::string format_window(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

inline Check closed_form_check(const std::string& name, StatKind stats, bool energy, long n, double lo, double hi,
                               double tolerance, const std::function<double(double)>& form) {
  Check c{name, "t in [" + format_window(lo) + ", " + format_window(hi) + "]", tolerance};
  for (double t : log_points(lo, hi, 7)) {
    const ThermalState s = reduced_state(stats, n, t);
    const double got = energy ? comparable_energy(s) : s.entropy();
    c.error = std::max(c.error, relative_error(got, form(t)));
  }
  c.passed = c.error < tolerance;
  return c;
}

/// The suite. Windows are those over which each closed form holds at N = 500
/// to the stated tolerance.
inline std::vector<Check> run_oracle_suite(long n = 500) {
  using namespace analytics;
  const double dens = density(n, 1.0);
  std::vector<Check> out;

  out.push_back(closed_form_check("E_BG degenerate", StatKind::BoseGas, true, n, 0.02, 0.2, 0.01,
                                  [&](double t) { return energy_bg_degenerate(n, dens, t); }));
  out.push_back(closed_form_check("S_BG degenerate", StatKind::BoseGas, false, n, 0.02, 0.2, 0.01,
                                  [&](double t) { return entropy_bg_degenerate(n, t); }));
  out.push_back(closed_form_check("E_TG degenerate", StatKind::TonksGirardeau, true, n, 0.02, 0.2, 0.01,
                                  [&](double t) { return energy_tg_degenerate(n, dens, t); }));
  out.push_back(closed_form_check("S_TG degenerate", StatKind::TonksGirardeau, false, n, 0.02, 0.05, 0.01,
                                  [&](double t) { return entropy_tg_degenerate(n, t); }));
  out.push_back(closed_form_check("E_BG non-degenerate", StatKind::BoseGas, true, n, 20.0, 200.0, 0.01,
                                  [&](double t) { return energy_bg_nondegenerate(n, dens, t); }));
  out.push_back(closed_form_check("E_TG non-degenerate", StatKind::TonksGirardeau, true, n, 20.0, 200.0, 0.01,
                                  [&](double t) { return energy_tg_nondegenerate(n, dens, t); }));
  out.push_back(closed_form_check("S_BG non-degenerate", StatKind::BoseGas, false, n, 20.0, 200.0, 0.1,
                                  [&](double t) { return entropy_bg_nondegenerate(n, t); }));
  out.push_back(closed_form_check("S_TG non-degenerate", StatKind::TonksGirardeau, false, n, 20.0, 200.0, 0.1,
                                  [&](double t) { return entropy_tg_nondegenerate(n, t); }));

  {
    Check c{"high-T efficiency identities", "T_h in [1, 1e4], r2 in {0.25, 0.5, 0.75}", 1e-14};
    for (double r2 : {0.25, 0.5, 0.75}) {
      for (double th : log_points(1.0, 1e4, 9)) {
        c.error = std::max(c.error, std::abs(eta_high_temperature(Engine::A, Order::BgTg, th, r2) -
                                             eta_high_temperature(Engine::T, Order::TgBg, th, r2)));
        c.error = std::max(c.error, std::abs(eta_high_temperature(Engine::A, Order::TgBg, th, r2) -
                                             eta_high_temperature(Engine::T, Order::BgTg, th, r2)));
      }
    }
    c.passed = c.error <= c.tolerance;
    out.push_back(c);
  }

  {
    Check c{"GV W_out/Q_in equals Otto", "r2 in {0.3, 0.5, 0.7}, T_h in {0.1, 1, 5}, N = 100", 1e-10};
    for (double r2 : {0.3, 0.5, 0.7}) {
      for (double th : {0.1, 1.0, 5.0}) {
        for (Order o : {Order::BgTg, Order::TgBg}) {
          const CycleReport r = run_cycle(reduced_cycle_spec(Variant::GV, o, 100, r2, 0.0, th), false);
          c.error = std::max(c.error, std::abs(r.W_out / r.Q_in - (1.0 - r2)));
        }
      }
    }
    c.passed = c.error <= c.tolerance;
    out.push_back(c);
  }

  {
    Check c{"cycle energy closure", "A and T engines, T_h in {0.1, 1, 5}, N = 100", 1e-9};
    for (Variant v : {Variant::A, Variant::T}) {
      for (Order o : {Order::BgTg, Order::TgBg}) {
        for (double th : {0.1, 1.0, 5.0}) {
          const CycleSpec spec = reduced_cycle_spec(v, o, 100, 0.5, 0.05, th);
          const CycleReport r = run_cycle(spec, false);
          const double scale = static_cast<double>(spec.N) * r.energy_unit;
          c.error = std::max(c.error, std::abs(r.sum_dU()) / scale);
          c.error = std::max(c.error, std::abs(r.W_out - (r.Q_in + r.Q_out)) / scale);
        }
      }
    }
    c.passed = c.error <= c.tolerance;
    out.push_back(c);
  }
  return out;
}

}  // namespace statengine::validation
