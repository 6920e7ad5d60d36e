// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "statengine/detail/roots.hpp"
#include "statengine/errors.hpp"
#include "statengine/spectra.hpp"

namespace statengine {

/// Working-medium statistics. The Tonks-Girardeau gas (infinitely repulsive
/// bosons) has exactly the thermodynamics of spin-polarized fermions, so it
/// is evaluated with Fermi-Dirac occupations. BoseGas is the non-interacting
/// limit. SingleParticleBoltzmann is the one-particle baseline medium.
enum class StatKind { BoseGas, TonksGirardeau, SingleParticleBoltzmann };

inline const char* to_string(StatKind s) {
  switch (s) {
    case StatKind::BoseGas: return "BG";
    case StatKind::TonksGirardeau: return "TG";
    case StatKind::SingleParticleBoltzmann: return "single";
  }
  return "?";
}

namespace ensemble_params {
/// Levels are summed until (E_n - mu) / T exceeds this (occupation < 1e-20).
inline constexpr double kTruncation = 46.0;
/// At least N + kLevelMargin levels are always summed.
inline constexpr long kLevelMargin = 64;
/// Relative particle-number closure required of every finite-T state.
inline constexpr double kNumberTolerance = 1e-10;
/// Residual at which the chemical-potential iteration stops.
inline constexpr double kNumberTarget = 1e-13;
inline constexpr int kMaxIterations = 200;
/// Summing more levels than this is reported as a numerical failure.
inline constexpr long kMaxLevels = 20'000'000;
}  // namespace ensemble_params

/// Mean occupation of a level at energy E. Boltzmann returns the
/// unnormalised weight exp(-E/T).
inline double occupation(StatKind stats, double energy, double mu, double temperature) {
  if (!(temperature > 0.0)) throw DomainError("occupation requires T > 0");
  switch (stats) {
    case StatKind::BoseGas: {
      if (!(energy > mu)) throw DomainError("Bose-Einstein occupation requires E > mu");
      return 1.0 / std::expm1((energy - mu) / temperature);
    }
    case StatKind::TonksGirardeau: {
      const double x = (energy - mu) / temperature;
      if (x >= 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
      }
      return 1.0 / (1.0 + std::exp(x));
    }
    case StatKind::SingleParticleBoltzmann:
      return std::exp(-energy / temperature);
  }
  return 0.0;
}

namespace detail {

/// Entropy carried by one level with reduced energy x = (E - mu)/T.
/// Vanishes for occupations 0 and 1.
inline double level_entropy(StatKind stats, double x) {
  if (stats == StatKind::TonksGirardeau) {
    const double ax = std::abs(x);
    const double e = std::exp(-ax);
    return std::log1p(e) + ax * e / (1.0 + e);
  }
  // Bose-Einstein, x > 0: (1+b)ln(1+b) - b ln b = x b - ln(1 - e^{-x})
  const double b = 1.0 / std::expm1(x);
  return x * b - std::log(-std::expm1(-x));
}

/// Sums over levels for given shift = E_ground - mu, so that
/// x_i = (excitation_i + shift) / T.
struct LevelSums {
  double number = 0.0;
  double excitation_energy = 0.0;  // sum occ * (E - E_ground)
  double entropy = 0.0;
  double v = 0.0;    // sum occ(1 +- occ)
  double vx = 0.0;   // sum occ(1 +- occ) x
  double ev = 0.0;   // sum occ(1 +- occ) (E - E_ground)
  double evx = 0.0;  // sum occ(1 +- occ) (E - E_ground) x
  long levels = 0;
};

template <bool WithEntropy>
LevelSums quantum_sums(StatKind stats, const Spectrum& spec, long min_levels, double shift, double temperature) {
  using namespace ensemble_params;
  LevelSums out;
  const bool fermi = stats == StatKind::TonksGirardeau;
  for (long i = 0;; ++i) {
    const double de = spec.excitation(i);
    const double x = (de + shift) / temperature;
    if (i >= min_levels && x > kTruncation) {
      out.levels = i;
      break;
    }
    if (i >= kMaxLevels) throw NumericalError("level sum exceeds " + std::to_string(kMaxLevels) + " levels");
    double occ, v;
    if (fermi) {
      const double e = std::exp(-std::abs(x));
      const double p = 1.0 / (1.0 + e);
      occ = x >= 0.0 ? e * p : p;
      v = e * p * p;
    } else {
      occ = 1.0 / std::expm1(x);
      v = occ * (1.0 + occ);
    }
    out.number += occ;
    out.excitation_energy += occ * de;
    if constexpr (WithEntropy) {
      out.entropy += level_entropy(stats, x);
      out.v += v;
      out.vx += v * x;
      out.ev += v * de;
      out.evx += v * de * x;
    } else {
      out.v += v;
    }
  }
  return out;
}

/// C = dE/dT at fixed N from the derivative sums.
inline double fixed_number_heat_capacity(const LevelSums& s, double temperature) {
  if (!(s.v > 0.0)) return 0.0;
  const double c = (s.evx - s.ev * s.vx / s.v) / temperature;
  return c > 0.0 ? c : 0.0;
}

struct BoltzmannSums {
  double partition = 0.0;  // sum exp(-(E - E_ground)/T)
  double mean_excitation = 0.0;
  double variance = 0.0;
  long levels = 0;
};

inline BoltzmannSums boltzmann_sums(const Spectrum& spec, long min_levels, double temperature) {
  using namespace ensemble_params;
  double z = 0.0, m1 = 0.0, m2 = 0.0;
  long i = 0;
  for (;; ++i) {
    const double de = spec.excitation(i);
    const double x = de / temperature;
    if (i >= min_levels && x > kTruncation) break;
    if (i >= kMaxLevels) throw NumericalError("level sum exceeds " + std::to_string(kMaxLevels) + " levels");
    const double w = std::exp(-x);
    z += w;
    m1 += w * de;
    m2 += w * de * de;
  }
  const double mean = m1 / z;
  return {z, mean, std::max(m2 / z - mean * mean, 0.0), i};
}

inline std::string describe(StatKind stats, const Spectrum& spec, long n, double temperature) {
  std::ostringstream os;
  os.precision(17);
  os << "stats=" << to_string(stats) << " trap=" << to_string(spec.kind()) << " scale=" << spec.scale()
     << " N=" << n << " T=" << temperature;
  return os.str();
}

struct ShiftSolution {
  double shift;
  LevelSums sums;
};

/// Finds shift = E_ground - mu such that the occupations sum to N.
/// Fermi-Dirac is solved directly in the shift; Bose-Einstein in
/// y = ln(shift), which keeps full precision when E_ground - mu spans many
/// decades close to condensation.
inline ShiftSolution solve_shift(StatKind stats, const Spectrum& spec, long n_particles, double temperature,
                                 std::optional<double> hint) {
  using namespace ensemble_params;
  const double target = static_cast<double>(n_particles);
  const long min_levels = n_particles + kLevelMargin;
  const double f_tol = kNumberTarget * target;

  LevelSums last;
  if (stats == StatKind::TonksGirardeau) {
    // residual N(shift) - N is decreasing in shift; negate to work with an increasing function
    auto eval = [&](double shift) {
      last = quantum_sums<false>(stats, spec, min_levels, shift, temperature);
      return Sample{target - last.number, last.v / temperature};
    };
    const double x0 = hint ? *hint : -spec.excitation(n_particles - 1);
    const Sample s0 = eval(x0);
    const double step = std::max(temperature, spec.unit());
    auto br = expand_bracket(eval, x0, s0, step, /*increasing=*/true);
    if (!br) throw NumericalError("chemical potential bracket failed: " + describe(stats, spec, n_particles, temperature));
    const RootResult r = safeguarded_newton(eval, *br, x0, s0, f_tol, kMaxIterations);
    const LevelSums fin = quantum_sums<true>(stats, spec, min_levels, r.x, temperature);
    if (std::abs(fin.number - target) > kNumberTolerance * target) {
      throw NumericalError("chemical potential did not converge: " + describe(stats, spec, n_particles, temperature));
    }
    return {r.x, fin};
  }

  // Bose-Einstein: y = ln(E_ground - mu); N(y) decreasing.
  auto eval = [&](double y) {
    const double shift = std::exp(y);
    last = quantum_sums<false>(stats, spec, min_levels, shift, temperature);
    return Sample{target - last.number, last.v / temperature * shift};
  };
  const double y0 = hint && *hint > 0.0 ? std::log(*hint) : std::log(temperature / target);
  const Sample s0 = eval(y0);
  auto br = expand_bracket(eval, y0, s0, 1.0, /*increasing=*/true);
  if (!br) throw NumericalError("chemical potential bracket failed: " + describe(stats, spec, n_particles, temperature));
  const RootResult r = safeguarded_newton(eval, *br, y0, s0, f_tol, kMaxIterations);
  const double shift = std::exp(r.x);
  const LevelSums fin = quantum_sums<true>(stats, spec, min_levels, shift, temperature);
  if (std::abs(fin.number - target) > kNumberTolerance * target) {
    throw NumericalError("chemical potential did not converge: " + describe(stats, spec, n_particles, temperature));
  }
  return {shift, fin};
}

}  // namespace detail

/// Equilibrium ensemble of N particles on a spectrum. Immutable; energy,
/// entropy and heat capacity are evaluated once at construction.
class ThermalState {
 public:
  StatKind stats() const { return stats_; }
  const Spectrum& spectrum() const { return spectrum_; }
  long particles() const { return n_; }
  double temperature() const { return temperature_; }
  /// Absent for the single-particle Boltzmann medium.
  std::optional<double> chemical_potential() const {
    if (stats_ == StatKind::SingleParticleBoltzmann) return std::nullopt;
    return spectrum_.ground() - shift_;
  }
  /// Highest quantum number included in the sums.
  long n_max() const { return spectrum_.level_offset() + levels_ - 1; }
  long level_count() const { return levels_; }
  double energy() const { return energy_; }
  double entropy() const { return entropy_; }
  /// dE/dT at fixed N and spectrum (= T dS/dT).
  double heat_capacity() const { return heat_capacity_; }

  /// Mean occupation of the i-th level counted from the ground state. For
  /// the Boltzmann medium this is the normalised probability p_i.
  double occupation_at(long i) const {
    if (i < 0) throw DomainError("level index must be nonnegative");
    if (temperature_ == 0.0) {
      switch (stats_) {
        case StatKind::TonksGirardeau: return i < n_ ? 1.0 : 0.0;
        case StatKind::BoseGas: return i == 0 ? static_cast<double>(n_) : 0.0;
        case StatKind::SingleParticleBoltzmann: return i == 0 ? 1.0 : 0.0;
      }
    }
    const double x = (spectrum_.excitation(i) + shift_) / temperature_;
    switch (stats_) {
      case StatKind::TonksGirardeau: return x >= 0.0 ? std::exp(-x) / (1.0 + std::exp(-x)) : 1.0 / (1.0 + std::exp(x));
      case StatKind::BoseGas: return 1.0 / std::expm1(x);
      case StatKind::SingleParticleBoltzmann: return std::exp(-x) / partition_;
    }
    return 0.0;
  }

  /// Occupations of levels offset .. n_max.
  std::vector<double> occupations() const {
    std::vector<double> out(static_cast<std::size_t>(levels_));
    for (long i = 0; i < levels_; ++i) out[static_cast<std::size_t>(i)] = occupation_at(i);
    return out;
  }

  /// E_ground - mu (the quantity the solver works with).
  double ground_shift() const { return shift_; }

 private:
  friend ThermalState make_state(StatKind, const Spectrum&, long, double, std::optional<double>);
  ThermalState(StatKind stats, Spectrum spectrum, long n, double temperature)
      : stats_(stats), spectrum_(spectrum), n_(n), temperature_(temperature) {}

  StatKind stats_;
  Spectrum spectrum_;
  long n_;
  double temperature_;
  double shift_ = 0.0;
  double partition_ = 1.0;  // Boltzmann only, relative to the ground level
  long levels_ = 1;
  double energy_ = 0.0;
  double entropy_ = 0.0;
  double heat_capacity_ = 0.0;
};

/// Builds an equilibrium state. T = 0 is constructed exactly (Fermi sea,
/// full condensate, or the single-particle ground state); T > 0 solves for
/// the chemical potential. `shift_hint` seeds the solver with a previous
/// E_ground - mu.
inline ThermalState make_state(StatKind stats, const Spectrum& spectrum, long n_particles, double temperature,
                               std::optional<double> shift_hint = std::nullopt) {
  if (n_particles < 1) throw DomainError("particle number must be >= 1");
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw DomainError("temperature must be finite and >= 0, got " + std::to_string(temperature));
  }
  if (stats == StatKind::SingleParticleBoltzmann && n_particles != 1) {
    throw DomainError("the Boltzmann medium holds exactly one particle");
  }
  ThermalState st(stats, spectrum, n_particles, temperature);
  const double e0 = spectrum.ground();

  if (temperature == 0.0) {
    switch (stats) {
      case StatKind::TonksGirardeau: {
        double e = 0.0;
        for (long i = 0; i < n_particles; ++i) e += spectrum.nth(i);
        st.energy_ = e;
        st.levels_ = n_particles;
        st.shift_ = -spectrum.excitation(n_particles - 1);
        break;
      }
      case StatKind::BoseGas:
        st.energy_ = static_cast<double>(n_particles) * e0;
        break;
      case StatKind::SingleParticleBoltzmann:
        st.energy_ = e0;
        break;
    }
    return st;
  }

  if (stats == StatKind::SingleParticleBoltzmann) {
    const auto s = detail::boltzmann_sums(spectrum, ensemble_params::kLevelMargin + 1, temperature);
    st.partition_ = s.partition;
    st.levels_ = s.levels;
    st.energy_ = e0 + s.mean_excitation;
    st.entropy_ = std::log(s.partition) + s.mean_excitation / temperature;
    st.heat_capacity_ = s.variance / (temperature * temperature);
    return st;
  }

  const auto sol = detail::solve_shift(stats, spectrum, n_particles, temperature, shift_hint);
  st.shift_ = sol.shift;
  st.levels_ = sol.sums.levels;
  st.energy_ = static_cast<double>(n_particles) * e0 + sol.sums.excitation_energy;
  st.entropy_ = sol.sums.entropy;
  st.heat_capacity_ = detail::fixed_number_heat_capacity(sol.sums, temperature);
  return st;
}

/// Chemical potential fixing the mean particle number to N.
inline double solve_mu(StatKind stats, const Spectrum& spectrum, long n_particles, double temperature) {
  if (stats == StatKind::SingleParticleBoltzmann) throw DomainError("solve_mu needs Bose or Fermi statistics");
  if (!(temperature > 0.0)) throw DomainError("solve_mu requires T > 0");
  if (n_particles < 1) throw DomainError("particle number must be >= 1");
  return spectrum.ground() - detail::solve_shift(stats, spectrum, n_particles, temperature, std::nullopt).shift;
}

inline double total_energy(const ThermalState& state) { return state.energy(); }

inline double entropy(const ThermalState& state) { return state.entropy(); }

/// Limit of the Bose entropy as T -> 0+ at fixed mean N: the ground level
/// keeps its occupation fluctuations, so S tends to (1+N)ln(1+N) - N ln N
/// rather than to zero. S(T = 0) itself is 0.
inline double bose_entropy_floor(long n_particles) {
  const double n = static_cast<double>(n_particles);
  return std::log1p(n) + n * std::log1p(1.0 / n);
}

}  // namespace statengine
