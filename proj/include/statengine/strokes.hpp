// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "statengine/detail/roots.hpp"
#include "statengine/ensembles.hpp"

namespace statengine {

enum class StrokeKind { Adiabat, Isochore, StatIsotherm, GvIsochore };

inline const char* to_string(StrokeKind k) {
  switch (k) {
    case StrokeKind::Adiabat: return "adiabat";
    case StrokeKind::Isochore: return "isochore";
    case StrokeKind::StatIsotherm: return "stat-isotherm";
    case StrokeKind::GvIsochore: return "gv-isochore";
  }
  return "?";
}

/// Energy bookkeeping of one stroke. W is work done on the medium, Q heat
/// absorbed by it; dU = W + Q. For statistical isotherms Q_s and W_s carry
/// the T dS heat and the remaining work (and equal Q and W).
struct StrokeLedger {
  StrokeKind kind;
  double dU = 0.0;
  double W = 0.0;
  double Q = 0.0;
  double Q_s = 0.0;
  double W_s = 0.0;
  ThermalState state_out;
};

namespace stroke_params {
/// Entropy must be matched to this fraction of max(S, 1).
inline constexpr double kEntropyTolerance = 1e-10;
/// Residual at which the effective-temperature iteration stops.
inline constexpr double kEntropyTarget = 1e-13;
inline constexpr int kMaxIterations = 200;
}  // namespace stroke_params

/// Equilibrium state of the given statistics on `spectrum` whose entropy
/// equals `target_entropy`. S is strictly increasing in T, so the match is
/// found by a bracketed Newton iteration in ln T (derivative T dS/dT = C).
inline ThermalState isentropic_state(StatKind stats, const Spectrum& spectrum, long n_particles,
                                     double target_entropy, double temperature_guess,
                                     std::optional<double> shift_hint = std::nullopt) {
  using namespace stroke_params;
  if (target_entropy == 0.0) return make_state(stats, spectrum, n_particles, 0.0);
  if (!(target_entropy > 0.0)) throw DomainError("target entropy must be >= 0");
  // No Bose state with T > 0 has less entropy than the floor; the T = 0
  // condensate is the energy-continuous end point.
  if (stats == StatKind::BoseGas && target_entropy <= bose_entropy_floor(n_particles)) {
    return make_state(stats, spectrum, n_particles, 0.0);
  }

  std::optional<ThermalState> last;
  double last_u = std::numeric_limits<double>::quiet_NaN();
  auto eval = [&](double u) {
    std::optional<double> hint = last ? std::optional<double>(last->ground_shift()) : shift_hint;
    last = make_state(stats, spectrum, n_particles, std::exp(u), hint);
    last_u = u;
    return detail::Sample{last->entropy() - target_entropy, last->heat_capacity()};
  };

  const double tol = kEntropyTarget * std::max(target_entropy, 1.0);
  const double u0 = std::log(temperature_guess);
  const detail::Sample s0 = eval(u0);
  if (std::abs(s0.f) <= tol) return *last;
  auto br = detail::expand_bracket(eval, u0, s0, std::log(4.0), /*increasing=*/true);
  if (!br) {
    throw NumericalError("entropy-match bracket failed: " + detail::describe(stats, spectrum, n_particles, temperature_guess) +
                         " S=" + std::to_string(target_entropy));
  }
  const detail::RootResult r = detail::safeguarded_newton(eval, *br, u0, s0, tol, kMaxIterations);
  if (r.x != last_u) eval(r.x);
  if (std::abs(last->entropy() - target_entropy) > kEntropyTolerance * std::max(target_entropy, 1.0)) {
    throw NumericalError("entropy match did not converge: " +
                         detail::describe(stats, spectrum, n_particles, std::exp(r.x)));
  }
  return *last;
}

/// Isentropic change of trap and, optionally, statistics. The outgoing
/// effective temperature T' is fixed by S_out(T') = S_in.
inline StrokeLedger adiabat(const ThermalState& in, const Spectrum& spectrum_out, StatKind stats_out) {
  const bool single_in = in.stats() == StatKind::SingleParticleBoltzmann;
  const bool single_out = stats_out == StatKind::SingleParticleBoltzmann;
  if (single_in != single_out) throw DomainError("adiabat cannot convert between one- and many-particle media");
  if (spectrum_out.kind() != in.spectrum().kind()) throw DomainError("adiabat cannot change the trap kind");

  const double guess = in.temperature() * spectrum_out.unit() / in.spectrum().unit();
  const std::optional<double> hint =
      stats_out == in.stats() ? std::optional<double>(in.ground_shift() * spectrum_out.unit() / in.spectrum().unit())
                              : std::nullopt;
  ThermalState out = in.entropy() == 0.0 ? make_state(stats_out, spectrum_out, in.particles(), 0.0)
                                         : isentropic_state(stats_out, spectrum_out, in.particles(), in.entropy(),
                                                            guess, hint);
  const double w = out.energy() - in.energy();
  return StrokeLedger{StrokeKind::Adiabat, w, w, 0.0, 0.0, 0.0, std::move(out)};
}

/// Thermalisation with a bath at fixed trap and statistics.
inline StrokeLedger isochore(const ThermalState& in, double bath_temperature) {
  ThermalState out = make_state(in.stats(), in.spectrum(), in.particles(), bath_temperature);
  const double q = out.energy() - in.energy();
  return StrokeLedger{StrokeKind::Isochore, q, 0.0, q, 0.0, 0.0, std::move(out)};
}

/// Change of statistics while coupled to a bath at T. The heat is
/// T (S_out - S_in); the rest of the energy change is work.
inline StrokeLedger statistical_isotherm(const ThermalState& in, StatKind stats_out, double bath_temperature) {
  const double t_in = in.temperature();
  if (std::abs(t_in - bath_temperature) > 1e-12 * std::max(t_in, bath_temperature)) {
    throw DomainError("statistical isotherm requires the medium to be at the bath temperature");
  }
  if ((in.stats() == StatKind::SingleParticleBoltzmann) != (stats_out == StatKind::SingleParticleBoltzmann)) {
    throw DomainError("statistical isotherm cannot convert between one- and many-particle media");
  }
  ThermalState out = make_state(stats_out, in.spectrum(), in.particles(), bath_temperature);
  const double du = out.energy() - in.energy();
  const double qs = bath_temperature * (out.entropy() - in.entropy());
  const double ws = du - qs;
  return StrokeLedger{StrokeKind::StatIsotherm, du, ws, qs, qs, ws, std::move(out)};
}

/// Thermal leg in the global-variable convention: the whole energy change,
/// statistics change included, is booked as heat.
inline StrokeLedger gv_isochore(const ThermalState& in, double bath_temperature, StatKind stats_out) {
  if ((in.stats() == StatKind::SingleParticleBoltzmann) != (stats_out == StatKind::SingleParticleBoltzmann)) {
    throw DomainError("gv isochore cannot convert between one- and many-particle media");
  }
  ThermalState out = make_state(stats_out, in.spectrum(), in.particles(), bath_temperature);
  const double q = out.energy() - in.energy();
  return StrokeLedger{StrokeKind::GvIsochore, q, 0.0, q, 0.0, 0.0, std::move(out)};
}

}  // namespace statengine
