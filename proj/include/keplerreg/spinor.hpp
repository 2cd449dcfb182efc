#pragma once

#include <cstdint>
#include <random>

#include "keplerreg/errors.hpp"
#include "keplerreg/linalg.hpp"
#include "keplerreg/phase_poly.hpp"

namespace keplerreg {

/// A point (eta, zeta) of the linearizing phase space C^2 x C^2. Storage
/// admits zero; operations needing the punctured space reject it themselves.
struct SpinorPoint {
  C2 eta{};
  C2 zeta{};
};

/// A point (z, w) of the cotangent chart, z != 0 for the maps that need it.
struct CotangentPoint {
  C2 z{};
  C2 w{};
};

/// Slot values of the spinor chart at a point, for polynomial evaluation.
inline std::array<cxd, 8> spinor_slots(const SpinorPoint& p) {
  return slot_values({p.eta[0], p.eta[1], p.zeta[0], p.zeta[1]});
}

/// Deterministic pseudo-random point on the constraint surface
/// <eta,eta> = <zeta,zeta>. zeta is built from conjugated eta components
/// multiplied by exact unit phases, so the two norms agree bit-exactly.
inline SpinorPoint sample_constraint_point(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    SpinorPoint p;
    for (int k = 0; k < 2; ++k) p.eta[k] = cxd(u(rng), u(rng));
    const double n = std::sqrt(norm2(p.eta));
    if (n < 0.3) continue;
    for (int k = 0; k < 2; ++k) p.eta[k] /= n;  // J ~ 1 keeps evaluations well scaled
    const cxd units[4] = {cxd(1, 0), cxd(0, 1), cxd(-1, 0), cxd(0, -1)};
    for (int k = 0; k < 2; ++k)
      p.zeta[k] = units[rng() % 4] * std::conj(p.eta[k]);
    // Keep z = (eta+zeta)/sqrt2 away from zero: near the chart boundary the
    // physical dictionary amplifies rounding beyond the 1e-12 test budgets.
    const C2 z = {(p.eta[0] + p.zeta[0]), (p.eta[1] + p.zeta[1])};
    if (norm2(z) < 0.3) continue;
    return p;
  }
}

/// As above but additionally enforcing -P0 > 0, bounded away from the
/// singular locus P0 = 0 (flipping zeta's sign flips P0 = Re<eta,zeta>).
inline SpinorPoint sample_constraint_point_negative_p0(std::uint64_t seed) {
  for (std::uint64_t attempt = seed;; attempt += 0x9e3779b97f4a7c15ULL) {
    SpinorPoint p = sample_constraint_point(attempt);
    if (inner(p.eta, p.zeta).real() > 0.0) {
      p.zeta[0] = -p.zeta[0];
      p.zeta[1] = -p.zeta[1];
    }
    if (-inner(p.eta, p.zeta).real() >= 0.3) return p;
  }
}

}  // namespace keplerreg
