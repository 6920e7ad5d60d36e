// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "statengine/ensembles.hpp"
#include "statengine/spectra.hpp"
#include "statengine/strokes.hpp"

namespace statengine {

enum class Variant { A, T, GV, BaselineSingle, BaselineFermi, BaselineBose };

/// Which statistics the medium has at point a (first named) and after the
/// first statistics change.
enum class Order { BgTg, TgBg, NotApplicable };

enum class Mode { Engine, Refrigerator, Accelerator, Heater, None };

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::A: return "A";
    case Variant::T: return "T";
    case Variant::GV: return "GV";
    case Variant::BaselineSingle: return "single";
    case Variant::BaselineFermi: return "fermi";
    case Variant::BaselineBose: return "bose";
  }
  return "?";
}

inline const char* to_string(Order o) {
  switch (o) {
    case Order::BgTg: return "bg-tg";
    case Order::TgBg: return "tg-bg";
    case Order::NotApplicable: return "n/a";
  }
  return "?";
}

/// One-letter labels used in mode atlases.
inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::Engine: return "E";
    case Mode::Refrigerator: return "R";
    case Mode::Accelerator: return "A";
    case Mode::Heater: return "H";
    case Mode::None: return "None";
  }
  return "?";
}

inline bool is_baseline(Variant v) {
  return v == Variant::BaselineSingle || v == Variant::BaselineFermi || v == Variant::BaselineBose;
}

/// Cycle request in natural units. Temperatures are absolute (k_B = 1);
/// use reduced_cycle_spec() to build one from Fermi units.
struct CycleSpec {
  Variant variant = Variant::A;
  Order order = Order::BgTg;
  CompressionSpec compression;
  double T_c = 0.0;
  double T_h = 0.0;
  long N = 500;
  TrapKind trap = TrapKind::Box;

  Spectrum spectrum_a() const { return Spectrum(trap, compression.scale_a); }
  Spectrum spectrum_b() const { return Spectrum(trap, compression.scale_b); }
  long medium_particles() const { return variant == Variant::BaselineSingle ? 1 : N; }
  /// E_F = T_F of the N-particle medium at point b; the report unit.
  double fermi_unit() const { return fermi_energy(N, spectrum_b()); }
};

/// Cycle with point b at unit trap scale and temperatures given in units
/// of the Fermi temperature at b.
inline CycleSpec reduced_cycle_spec(Variant variant, Order order, long n, double ratio_squared, double tc_reduced,
                                    double th_reduced, TrapKind trap = TrapKind::Box) {
  CycleSpec spec;
  spec.variant = variant;
  spec.order = is_baseline(variant) ? Order::NotApplicable : order;
  spec.compression = CompressionSpec::from_ratio_squared(trap, ratio_squared);
  spec.N = n;
  spec.trap = trap;
  const double ef = spec.fermi_unit();
  spec.T_c = tc_reduced * ef;
  spec.T_h = th_reduced * ef;
  return spec;
}

struct CycleReport {
  std::vector<StrokeLedger> ledgers;
  double W_out = 0.0;  // net work extracted
  double Q_in = 0.0;   // heat absorbed from the hot bath
  double Q_out = 0.0;  // heat absorbed from the cold bath (negative when dumped)
  std::optional<double> eta;
  std::optional<double> gain;
  std::optional<double> sigma;
  std::optional<double> sigma_s;
  Mode mode = Mode::None;
  double energy_unit = 1.0;  // E_F at point b

  double sum_dU() const {
    double s = 0.0;
    for (const auto& l : ledgers) s += l.dU;
    return s;
  }
};

/// Sign-based operating mode. Magnitudes at or below `deadband` count as
/// zero and satisfy either sign.
inline Mode classify_mode(double q_in, double q_out, double w_out, double deadband = 0.0) {
  auto nonneg = [&](double x) { return x >= -deadband; };
  auto nonpos = [&](double x) { return x <= deadband; };
  if (nonneg(q_in) && nonpos(q_out) && nonneg(w_out)) return Mode::Engine;
  if (nonpos(q_in) && nonneg(q_out) && nonpos(w_out)) return Mode::Refrigerator;
  if (nonneg(q_in) && nonpos(q_out) && nonpos(w_out)) return Mode::Accelerator;
  if (nonpos(q_in) && nonpos(q_out) && nonpos(w_out)) return Mode::Heater;
  return Mode::None;
}

namespace cycle_params {
/// Mode deadband as a fraction of N * E_F.
inline constexpr double kModeDeadband = 1e-12;
}  // namespace cycle_params

/// Wraps a stroke so that solver failures name the stroke that failed.
template <class Fn>
StrokeLedger run_stroke(int index, Fn&& fn) {
  try {
    return fn();
  } catch (const NumericalError& e) {
    throw NumericalError("stroke " + std::to_string(index) + ": " + e.what());
  }
}

namespace detail {

inline StatKind first_stats(Order order) { return order == Order::TgBg ? StatKind::TonksGirardeau : StatKind::BoseGas; }
inline StatKind second_stats(Order order) { return order == Order::TgBg ? StatKind::BoseGas : StatKind::TonksGirardeau; }

inline void validate(const CycleSpec& spec) {
  if (!(spec.T_c >= 0.0) || !(spec.T_h >= 0.0) || !std::isfinite(spec.T_c) || !std::isfinite(spec.T_h)) {
    throw DomainError("bath temperatures must be finite and >= 0");
  }
  if (spec.N < 1) throw DomainError("particle number must be >= 1");
  if (!is_baseline(spec.variant) && spec.order == Order::NotApplicable) {
    throw DomainError(std::string("variant ") + to_string(spec.variant) + " needs a statistics order");
  }
}

inline void finish(CycleReport& r, const CycleSpec& spec, double heat_input) {
  r.energy_unit = spec.fermi_unit();
  const double deadband = cycle_params::kModeDeadband * static_cast<double>(spec.medium_particles()) *
                          fermi_energy(spec.medium_particles(), spec.spectrum_b());
  r.mode = classify_mode(r.Q_in, r.Q_out, r.W_out, deadband);
  if (r.W_out > 0.0 && heat_input > 0.0) r.eta = r.W_out / heat_input;
}

/// Four-stroke Otto skeleton: adiabat a->b, isochore at T_h, adiabat back,
/// isochore at T_c, with the statistics at a and b given separately.
inline CycleReport four_stroke(const CycleSpec& spec, StatKind stats_a, StatKind stats_b) {
  const Spectrum sa = spec.spectrum_a();
  const Spectrum sb = spec.spectrum_b();
  const long n = spec.medium_particles();
  CycleReport r;
  const ThermalState start = make_state(stats_a, sa, n, spec.T_c);
  r.ledgers.push_back(run_stroke(1, [&] { return adiabat(start, sb, stats_b); }));
  r.ledgers.push_back(run_stroke(2, [&] { return isochore(r.ledgers[0].state_out, spec.T_h); }));
  r.ledgers.push_back(run_stroke(3, [&] { return adiabat(r.ledgers[1].state_out, sa, stats_a); }));
  r.ledgers.push_back(run_stroke(4, [&] { return isochore(r.ledgers[2].state_out, spec.T_c); }));
  r.W_out = -(r.ledgers[0].W + r.ledgers[2].W);
  r.Q_in = r.ledgers[1].Q;
  r.Q_out = r.ledgers[3].Q;
  finish(r, spec, r.Q_in);
  return r;
}

}  // namespace detail

/// A-engine: the statistics change together with the trap on both adiabats.
inline CycleReport run_a_cycle(const CycleSpec& spec) {
  if (spec.variant != Variant::A) throw DomainError("run_a_cycle needs variant A");
  detail::validate(spec);
  return detail::four_stroke(spec, detail::first_stats(spec.order), detail::second_stats(spec.order));
}

/// T-engine: adiabats at fixed statistics, statistics changed isothermally
/// while coupled to each bath.
inline CycleReport run_t_cycle(const CycleSpec& spec) {
  if (spec.variant != Variant::T) throw DomainError("run_t_cycle needs variant T");
  detail::validate(spec);
  const StatKind compress = detail::first_stats(spec.order);
  const StatKind expand = detail::second_stats(spec.order);
  const Spectrum sa = spec.spectrum_a();
  const Spectrum sb = spec.spectrum_b();

  CycleReport r;
  const ThermalState start = make_state(compress, sa, spec.N, spec.T_c);
  auto& L = r.ledgers;
  L.push_back(run_stroke(1, [&] { return adiabat(start, sb, compress); }));
  L.push_back(run_stroke(2, [&] { return isochore(L[0].state_out, spec.T_h); }));
  L.push_back(run_stroke(3, [&] { return statistical_isotherm(L[1].state_out, expand, spec.T_h); }));
  L.push_back(run_stroke(4, [&] { return adiabat(L[2].state_out, sa, expand); }));
  L.push_back(run_stroke(5, [&] { return isochore(L[3].state_out, spec.T_c); }));
  L.push_back(run_stroke(6, [&] { return statistical_isotherm(L[4].state_out, compress, spec.T_c); }));

  r.W_out = -(L[0].W + L[2].W_s + L[3].W + L[5].W_s);
  r.Q_in = L[1].Q + L[2].Q_s;
  r.Q_out = L[4].Q + L[5].Q_s;
  if (r.Q_in != 0.0) {
    r.sigma = L[1].Q / r.Q_in;
    r.sigma_s = L[2].Q_s / r.Q_in;
  }
  detail::finish(r, spec, r.Q_in);
  return r;
}

/// GV-engine: the T-engine stroke sequence with each thermal leg (bath
/// contact plus statistics change) booked entirely as heat.
inline CycleReport run_gv_cycle(const CycleSpec& spec) {
  if (spec.variant != Variant::GV) throw DomainError("run_gv_cycle needs variant GV");
  detail::validate(spec);
  const StatKind compress = detail::first_stats(spec.order);
  const StatKind expand = detail::second_stats(spec.order);
  const Spectrum sa = spec.spectrum_a();
  const Spectrum sb = spec.spectrum_b();

  CycleReport r;
  const ThermalState start = make_state(compress, sa, spec.N, spec.T_c);
  auto& L = r.ledgers;
  L.push_back(run_stroke(1, [&] { return adiabat(start, sb, compress); }));
  L.push_back(run_stroke(2, [&] { return gv_isochore(L[0].state_out, spec.T_h, expand); }));
  L.push_back(run_stroke(3, [&] { return adiabat(L[1].state_out, sa, expand); }));
  L.push_back(run_stroke(4, [&] { return gv_isochore(L[2].state_out, spec.T_c, compress); }));
  r.W_out = -(L[0].W + L[2].W);
  r.Q_in = L[1].Q;
  r.Q_out = L[3].Q;
  detail::finish(r, spec, r.Q_in);
  return r;
}

/// Statistics-free Otto baselines.
inline CycleReport run_baseline(const CycleSpec& spec) {
  if (!is_baseline(spec.variant)) throw DomainError("run_baseline needs a baseline variant");
  detail::validate(spec);
  StatKind stats = StatKind::SingleParticleBoltzmann;
  if (spec.variant == Variant::BaselineFermi) stats = StatKind::TonksGirardeau;
  if (spec.variant == Variant::BaselineBose) stats = StatKind::BoseGas;
  return detail::four_stroke(spec, stats, stats);
}

/// W_out / (N W_single) with W_single from the one-particle engine at the
/// same baths and compression. Absent when the reference is not an engine.
inline std::optional<double> work_gain(const CycleReport& report, const CycleSpec& spec) {
  CycleSpec single = spec;
  single.variant = Variant::BaselineSingle;
  single.order = Order::NotApplicable;
  const CycleReport ref = run_baseline(single);
  const double deadband = cycle_params::kModeDeadband * fermi_energy(1, spec.spectrum_b());
  if (!(ref.W_out > deadband)) return std::nullopt;
  return report.W_out / (static_cast<double>(spec.N) * ref.W_out);
}

/// Runs any variant and attaches the work gain.
inline CycleReport run_cycle(const CycleSpec& spec, bool with_gain = true) {
  CycleReport r;
  switch (spec.variant) {
    case Variant::A: r = run_a_cycle(spec); break;
    case Variant::T: r = run_t_cycle(spec); break;
    case Variant::GV: r = run_gv_cycle(spec); break;
    default: r = run_baseline(spec); break;
  }
  if (with_gain) r.gain = work_gain(r, spec);
  return r;
}

}  // namespace statengine
