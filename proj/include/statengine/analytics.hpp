// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>
#include <optional>

#include "statengine/cycles.hpp"
#include "statengine/errors.hpp"

// Closed-form thermodynamics of the 1D box gases and the efficiency
// estimates built from them. These serve as oracles for the numerical
// ensembles and cycles.
//
// Conventions: `t` is the reduced temperature T/T_F with T_F = pi^2 n^2
// (hbar = 2m = k_B = 1) and n = N/L the density at the trap where the state
// is evaluated. Energies are returned in natural units; the formulas are
// written with their natural prefactor hbar^2 n^2 / 2m, which is n^2 here.
// Entropies are in units of k_B.
namespace statengine::analytics {

inline constexpr double kZeta3Half = 2.6123753486854883;   // zeta(3/2)
inline constexpr double kZetaHalf = -1.4603545088095868;   // zeta(1/2)

namespace detail {
inline constexpr double pi = std::numbers::pi;
/// hbar^2 n^2 / 2m in natural units.
inline double kinetic_prefactor(double density) { return density * density; }
}  // namespace detail

inline double density(long n_particles, double box_length) { return static_cast<double>(n_particles) / box_length; }

// ---- degenerate regime, t <~ 1 ----

/// Ideal Bose gas energy above the condensate. Vanishes as t -> 0.
inline double energy_bg_degenerate(long n_particles, double density, double t) {
  using detail::pi;
  if (t <= 0.0) return 0.0;
  const double a = std::sqrt(pi * t);
  const double bracket =
      0.5 * kZeta3Half - (pi / 2.0) * (4.0 / a - kZetaHalf) / std::pow(2.0 / a - kZetaHalf, 2);
  return static_cast<double>(n_particles) * detail::kinetic_prefactor(density) * std::pow(pi * pi * t, 1.5) /
         (2.0 * std::sqrt(pi)) * bracket;
}

inline double entropy_bg_degenerate(long n_particles, double t) {
  using detail::pi;
  if (t <= 0.0) return 0.0;
  const double a = std::sqrt(pi * t);
  const double bracket =
      1.5 * kZeta3Half - (pi / 2.0) * (8.0 / a - 3.0 * kZetaHalf) / std::pow(2.0 / a - kZetaHalf, 2);
  return static_cast<double>(n_particles) * a / 2.0 * bracket;
}

/// Sommerfeld series for the Tonks-Girardeau (free-fermion) energy.
inline double energy_tg_degenerate(long n_particles, double density, double t) {
  using detail::pi;
  const double p = pi * t;
  const double series = 1.0 / 3.0 + p * p / 12.0 + std::pow(p, 4) / 60.0 + 35.0 * std::pow(p, 6) / 1296.0;
  return static_cast<double>(n_particles) * pi * pi * detail::kinetic_prefactor(density) * series;
}

inline double entropy_tg_degenerate(long n_particles, double t) {
  using detail::pi;
  const double series = pi * pi * t / 6.0 + pi * pi * std::pow(t, 3) / 45.0 + 7.0 * std::pow(pi, 6) * std::pow(t, 5) / 216.0;
  return static_cast<double>(n_particles) * series;
}

// ---- non-degenerate regime, t >> 1 ----

namespace detail {
inline double wall_term(double t) { return std::sqrt(pi) * (2.0 * std::sqrt(3.0) - 5.0) / (2.0 * std::sqrt(2.0 * t)); }
inline double offset_term() { return pi * (1.0 - 4.0 / (3.0 * std::sqrt(3.0))); }
}  // namespace detail

inline double energy_bg_nondegenerate(long n_particles, double density, double t) {
  using detail::pi;
  const double bracket = pi * pi * t / 2.0 - 0.5 * std::sqrt(pi * pi * pi * t / 2.0) + detail::offset_term() +
                         detail::wall_term(t);
  return static_cast<double>(n_particles) * detail::kinetic_prefactor(density) * bracket;
}

inline double entropy_bg_nondegenerate(long n_particles, double t) {
  using detail::pi;
  const double bracket =
      std::log(std::sqrt(pi * t) / 2.0) + 1.5 + 1.0 / (2.0 * std::sqrt(2.0 * pi * t)) + detail::wall_term(t);
  return static_cast<double>(n_particles) * bracket;
}

inline double energy_tg_nondegenerate(long n_particles, double density, double t) {
  using detail::pi;
  const double bracket = pi * pi * t / 2.0 + 0.5 * std::sqrt(pi * pi * pi * t / 2.0) + detail::offset_term() +
                         detail::wall_term(t);
  return static_cast<double>(n_particles) * detail::kinetic_prefactor(density) * bracket;
}

inline double entropy_tg_nondegenerate(long n_particles, double t) {
  using detail::pi;
  const double bracket =
      std::log(std::sqrt(pi * t) / 2.0) + 1.5 - 1.0 / (2.0 * std::sqrt(2.0 * pi * t)) + detail::wall_term(t);
  return static_cast<double>(n_particles) * bracket;
}

// ---- efficiency estimates ----

/// A-engine efficiency at T_c = 0 in the degenerate regime. BgTg is linear
/// in t_h, TgBg goes as t_h^{-1/2}.
inline double eta_a_degenerate(Order order, double th, double ratio_squared) {
  using detail::pi;
  if (order == Order::BgTg) {
    const double denom = 9.0 * std::sqrt(3.0) * kZeta3Half;
    return 1.0 - 8.0 * pi * pi * pi / (denom * denom) * th * ratio_squared;
  }
  if (order == Order::TgBg) {
    const double coeff = std::pow(3.0 * std::sqrt(3.0), 2) * kZeta3Half / (4.0 * pi * std::sqrt(pi));
    return 1.0 - coeff / std::sqrt(th) * ratio_squared;
  }
  throw DomainError("eta_a_degenerate needs a statistics order");
}

/// Hot-bath temperature below which the BgTg A-engine estimate beats Otto.
inline double eta_a_bgtg_otto_threshold() {
  using detail::pi;
  const double denom = 9.0 * std::sqrt(3.0) * kZeta3Half;
  return denom * denom / (8.0 * pi * pi * pi);
}

struct TEngineEstimate {
  std::optional<double> work;  // in units of E_F (BgTg)
  std::optional<double> eta;   // (TgBg)
};

/// Low-temperature T-engine estimates at T_c = 0: the BgTg work output and
/// the TgBg efficiency.
inline TEngineEstimate t_engine_degenerate(Order order, long n_particles, double th, double ratio_squared) {
  using detail::pi;
  TEngineEstimate out;
  if (order == Order::BgTg) {
    const double bracket =
        th * th / 6.0 - kZeta3Half * std::sqrt(pi) / 2.0 * std::pow(th, 1.5) - pi * pi * th * th / 12.0;
    out.work = static_cast<double>(n_particles) * bracket * ratio_squared;
  } else if (order == Order::TgBg) {
    const double frac = 3.0 * pi * pi * pi * kZeta3Half * std::pow(th, 1.5) /
                        (9.0 * kZeta3Half - std::pow(pi, 4.5) * th * th);
    out.eta = 1.0 - frac * ratio_squared;
  } else {
    throw DomainError("t_engine_degenerate needs a statistics order");
  }
  return out;
}

enum class Engine { A, T };

/// High-temperature efficiencies. Each case is transcribed separately;
/// A/BgTg coincides with T/TgBg and A/TgBg with T/BgTg.
inline double eta_high_temperature(Engine engine, Order order, double th, double ratio_squared) {
  using detail::pi;
  const double s = std::sqrt(th);
  if (engine == Engine::A && order == Order::BgTg) {
    return 1.0 - ((th / 2.0 - s / (2.0 * std::sqrt(2.0 * pi))) /
                  (th / 2.0 + s / (2.0 * std::sqrt(2.0 * pi)) - 1.0 / 3.0)) * ratio_squared;
  }
  if (engine == Engine::A && order == Order::TgBg) {
    return 1.0 - ((th / 2.0 + s / (2.0 * std::sqrt(2.0 * pi)) - 1.0 / 3.0) /
                  (th / 2.0 - s / (2.0 * std::sqrt(2.0 * pi)))) * ratio_squared;
  }
  if (engine == Engine::T && order == Order::BgTg) {
    return 1.0 - ((th / 2.0 + s / (2.0 * std::sqrt(2.0 * pi)) - 1.0 / 3.0) /
                  (th / 2.0 - s / (2.0 * std::sqrt(2.0 * pi)))) * ratio_squared;
  }
  if (engine == Engine::T && order == Order::TgBg) {
    return 1.0 - ((th / 2.0 - s / (2.0 * std::sqrt(2.0 * pi))) /
                  (th / 2.0 + s / (2.0 * std::sqrt(2.0 * pi)) - 1.0 / 3.0)) * ratio_squared;
  }
  throw DomainError("eta_high_temperature needs a statistics order");
}

struct Bounds {
  double otto;
  double carnot;
  double curzon_ahlborn;
};

inline Bounds bounds(double tc, double th, double ratio_squared) {
  if (!(th > 0.0)) throw DomainError("bounds need T_h > 0");
  const double x = tc / th;
  return {1.0 - ratio_squared, 1.0 - x, 1.0 - std::sqrt(x)};
}

}  // namespace statengine::analytics
