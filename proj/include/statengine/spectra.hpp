// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "statengine/errors.hpp"

namespace statengine {

// Natural units throughout: hbar = 2m = k_B = 1.

enum class TrapKind { Box, Harmonic };

inline const char* to_string(TrapKind kind) {
  return kind == TrapKind::Box ? "box" : "harmonic";
}

/// Single-particle spectrum of a 1D trap.
///
/// Box:      E_n = n^2 pi^2 / L^2,  n = 1, 2, ...   (scale = L)
/// Harmonic: E_n = (n + 1/2) omega, n = 0, 1, ...   (scale = omega)
class Spectrum {
 public:
  static Spectrum box(double length) { return Spectrum(TrapKind::Box, length); }
  static Spectrum harmonic(double omega) { return Spectrum(TrapKind::Harmonic, omega); }

  Spectrum(TrapKind kind, double scale) : kind_(kind), scale_(scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw DomainError("spectrum scale must be positive and finite, got " + std::to_string(scale));
    }
  }

  TrapKind kind() const { return kind_; }
  double scale() const { return scale_; }
  long level_offset() const { return kind_ == TrapKind::Box ? 1 : 0; }

  /// Energy of the level with quantum number n.
  double level(long n) const {
    if (n < level_offset()) {
      throw DomainError("quantum number " + std::to_string(n) + " is below the ground level " +
                        std::to_string(level_offset()));
    }
    return level_unchecked(n);
  }

  /// Energy of the i-th level counted from the ground state (i = 0).
  double nth(long i) const { return level_unchecked(i + level_offset()); }

  double ground() const { return nth(0); }

  /// nth(i) - ground(), evaluated without cancellation.
  double excitation(long i) const {
    if (kind_ == TrapKind::Box) {
      const double n = static_cast<double>(i + 1);
      return (n - 1.0) * (n + 1.0) * unit();
    }
    return static_cast<double>(i) * scale_;
  }

  /// Energy quantum: pi^2/L^2 for the box, omega for the oscillator.
  double unit() const {
    return kind_ == TrapKind::Box ? std::numbers::pi * std::numbers::pi / (scale_ * scale_) : scale_;
  }

  Spectrum rescaled(double new_scale) const { return Spectrum(kind_, new_scale); }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  double level_unchecked(long n) const {
    const double x = static_cast<double>(n);
    if (kind_ == TrapKind::Box) return x * x * unit();
    return (x + 0.5) * scale_;
  }

  TrapKind kind_;
  double scale_;
};

inline double level_energy(const Spectrum& spec, long n) { return spec.level(n); }

inline Spectrum rescale(const Spectrum& spec, double new_scale) { return spec.rescaled(new_scale); }

/// Fermi energy of N particles. Box: N^2 pi^2 / L^2, the energy of the N-th
/// filled level. Harmonic: N omega, i.e. the N-th filled level (N - 1/2) omega
/// without the zero-point half quantum.
inline double fermi_energy(long n_particles, const Spectrum& spec) {
  if (n_particles < 1) throw DomainError("fermi_energy needs N >= 1");
  const double n = static_cast<double>(n_particles);
  if (spec.kind() == TrapKind::Box) return n * n * spec.unit();
  return n * spec.scale();
}

/// Trap scales at the two ends of the compression stroke a -> b.
struct CompressionSpec {
  double scale_a = 1.0;
  double scale_b = 1.0;

  /// (L_b/L_a)^2 for the box; omega_a/omega_b for the oscillator. In both
  /// cases E_n(a) = ratio_squared * E_n(b), and 1 - ratio_squared is the
  /// Otto efficiency.
  double ratio_squared(TrapKind kind) const {
    if (kind == TrapKind::Box) {
      const double r = scale_b / scale_a;
      return r * r;
    }
    return scale_a / scale_b;
  }

  double otto_efficiency(TrapKind kind) const { return 1.0 - ratio_squared(kind); }

  /// Builds the compression with point b fixed at unit scale.
  static CompressionSpec from_ratio_squared(TrapKind kind, double ratio_squared) {
    if (!(ratio_squared > 0.0) || !std::isfinite(ratio_squared)) {
      throw DomainError("compression ratio must be positive");
    }
    if (kind == TrapKind::Box) return {1.0 / std::sqrt(ratio_squared), 1.0};
    return {ratio_squared, 1.0};
  }
};

}  // namespace statengine
