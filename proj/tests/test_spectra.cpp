// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "statengine/spectra.hpp"

using namespace statengine;
using std::numbers::pi;

TEST(Spectra, BoxLevels) {
  EXPECT_DOUBLE_EQ(level_energy(Spectrum::box(1.0), 1), pi * pi);
  EXPECT_DOUBLE_EQ(level_energy(Spectrum::box(2.0), 2), pi * pi);
  EXPECT_DOUBLE_EQ(Spectrum::box(1.0).ground(), pi * pi);
}

TEST(Spectra, HarmonicLevels) {
  EXPECT_DOUBLE_EQ(level_energy(Spectrum::harmonic(1.0), 0), 0.5);
  EXPECT_DOUBLE_EQ(level_energy(Spectrum::harmonic(2.0), 3), 7.0);
}

TEST(Spectra, LevelsStrictlyIncreasing) {
  for (const Spectrum& s : {Spectrum::box(0.7), Spectrum::harmonic(1.3)}) {
    for (long i = 0; i < 1000; ++i) EXPECT_LT(s.nth(i), s.nth(i + 1));
  }
}

TEST(Spectra, ExcitationMatchesDifference) {
  const Spectrum box = Spectrum::box(1.3);
  for (long i : {0L, 1L, 7L, 499L}) {
    EXPECT_NEAR(box.excitation(i), box.nth(i) - box.ground(), 1e-12 * box.nth(i));
  }
  EXPECT_EQ(box.excitation(0), 0.0);
}

TEST(Spectra, QuantumNumberBelowGroundThrows) {
  EXPECT_THROW(level_energy(Spectrum::box(1.0), 0), DomainError);
  EXPECT_THROW(level_energy(Spectrum::harmonic(1.0), -1), DomainError);
}

TEST(Spectra, NonPositiveScaleThrows) {
  EXPECT_THROW(Spectrum::box(0.0), DomainError);
  EXPECT_THROW(Spectrum::box(-1.0), DomainError);
  EXPECT_THROW(Spectrum::harmonic(0.0), DomainError);
  EXPECT_THROW(Spectrum::box(std::nan("")), DomainError);
}

TEST(Spectra, FermiEnergy) {
  EXPECT_NEAR(fermi_energy(500, Spectrum::box(1.0)), 500.0 * 500.0 * pi * pi, 1e-6);
  EXPECT_NEAR(fermi_energy(1, Spectrum::box(pi)), 1.0, 1e-15);
  EXPECT_NEAR(fermi_energy(3, Spectrum::box(1.0)), 9.0 * pi * pi, 1e-12);
  EXPECT_THROW(fermi_energy(0, Spectrum::box(1.0)), DomainError);
}

TEST(Spectra, Rescale) {
  EXPECT_DOUBLE_EQ(rescale(Spectrum::box(1.0), 0.5).ground(), 4.0 * pi * pi);
  EXPECT_EQ(rescale(Spectrum::box(1.0), 1.0), Spectrum::box(1.0));
  EXPECT_DOUBLE_EQ(rescale(Spectrum::harmonic(1.0), 2.0).ground(), 1.0);
  EXPECT_THROW(rescale(Spectrum::box(1.0), 0.0), DomainError);
}

TEST(Spectra, DeterministicLevels) {
  const Spectrum a = Spectrum::box(0.37), b = Spectrum::box(0.37);
  for (long i = 0; i < 50; ++i) EXPECT_EQ(a.nth(i), b.nth(i));
}

TEST(Spectra, CompressionRatio) {
  const CompressionSpec c{std::sqrt(2.0), 1.0};
  EXPECT_NEAR(c.ratio_squared(TrapKind::Box), 0.5, 1e-15);
  EXPECT_NEAR(c.otto_efficiency(TrapKind::Box), 0.5, 1e-15);
  const CompressionSpec h = CompressionSpec::from_ratio_squared(TrapKind::Harmonic, 0.25);
  EXPECT_NEAR(h.ratio_squared(TrapKind::Harmonic), 0.25, 1e-15);
  const CompressionSpec b = CompressionSpec::from_ratio_squared(TrapKind::Box, 0.5);
  EXPECT_NEAR(b.ratio_squared(TrapKind::Box), 0.5, 1e-15);
  EXPECT_EQ(b.scale_b, 1.0);
}
