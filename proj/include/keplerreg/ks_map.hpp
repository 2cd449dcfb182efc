#pragma once

#include <cmath>
#include <utility>

#include "keplerreg/errors.hpp"
#include "keplerreg/linalg.hpp"
#include "keplerreg/spinor.hpp"

namespace keplerreg {

/// Physical Kepler state with constants: H = Y.Y/2m - gamma/|X| on the
/// punctured configuration space |X| > 0.
struct KeplerState {
  Vec3 X{};
  Vec3 Y{};
  double m = 1.0;
  double gamma = 1.0;
  double k = 1.0;
};

/// The sixteen classical generator values at a point.
struct MomentumMapValue {
  double I = 0.0;
  double J = 0.0;
  Vec3 M{};
  Vec3 N{};
  Vec4 Q{};
  Vec4 P{};
};

enum class EnergySign { neg, pos };

/// ||P|| + P0 and ||P|| - P0 without cancellation (conjugate form when the
/// signs would cancel).
inline double pnorm_plus_p0(const Vec4& P) {
  const double pn = norm4(P);
  if (P[0] >= 0.0) return pn + P[0];
  const double d = pn - P[0];
  if (d == 0.0) return 0.0;
  return (P[1] * P[1] + P[2] * P[2] + P[3] * P[3]) / d;
}
inline double pnorm_minus_p0(const Vec4& P) {
  const double pn = norm4(P);
  if (P[0] <= 0.0) return pn - P[0];
  const double d = pn + P[0];
  if (d == 0.0) return 0.0;
  return (P[1] * P[1] + P[2] * P[2] + P[3] * P[3]) / d;
}

/// Hopf map z -> <z, sigma z>; |hopf(z)| = <z,z>.
inline Vec3 hopf(const C2& z) {
  if (norm2(z) == 0.0) throw DomainError("hopf: z = 0 is outside the punctured space");
  Vec3 x;
  for (int k = 1; k <= 3; ++k) x[k - 1] = pauli_form(k, z, z).real();
  return x;
}

/// Symplectic lift of the Hopf fibration:
/// (z, w) -> (x = hopf(z), y = Im<w, sigma z>/<z,z>).
inline std::pair<Vec3, Vec3> ks_pi(const CotangentPoint& p) {
  const double zz = norm2(p.z);
  if (zz == 0.0) throw DomainError("ks_pi: z = 0 is outside the punctured space");
  Vec3 x = hopf(p.z);
  Vec3 y;
  for (int k = 1; k <= 3; ++k) y[k - 1] = pauli_form(k, p.w, p.z).imag() / zz;
  return {x, y};
}

/// Injection of collision states: (eta, zeta) = ((z+w), (z-w))/sqrt2.
/// The same matrix is its own inverse, see cotangent_of.
inline SpinorPoint collision_injection(const CotangentPoint& p) {
  const double s = 1.0 / std::sqrt(2.0);
  SpinorPoint out;
  for (int k = 0; k < 2; ++k) {
    out.eta[k] = s * (p.z[k] + p.w[k]);
    out.zeta[k] = s * (p.z[k] - p.w[k]);
  }
  return out;
}

inline CotangentPoint cotangent_of(const SpinorPoint& p) {
  const double s = 1.0 / std::sqrt(2.0);
  CotangentPoint out;
  for (int k = 0; k < 2; ++k) {
    out.z[k] = s * (p.eta[k] + p.zeta[k]);
    out.w[k] = s * (p.eta[k] - p.zeta[k]);
  }
  return out;
}

/// All sixteen generator values:
///   I = (<e,e>-<z,z>)/2, J = (<e,e>+<z,z>)/2, M = -<e,sigma e>/2,
///   N = <z,sigma z>/2, Q = (-Im<e,z>, Re<e,sigma z>), P = (Re<e,z>, Im<e,sigma z>).
inline MomentumMapValue momentum_map(const SpinorPoint& p) {
  MomentumMapValue mm;
  const double ee = norm2(p.eta), zz = norm2(p.zeta);
  mm.I = 0.5 * (ee - zz);
  mm.J = 0.5 * (ee + zz);
  const cxd ez = inner(p.eta, p.zeta);
  mm.Q[0] = -ez.imag();
  mm.P[0] = ez.real();
  for (int k = 1; k <= 3; ++k) {
    mm.M[k - 1] = -0.5 * pauli_form(k, p.eta, p.eta).real();
    mm.N[k - 1] = 0.5 * pauli_form(k, p.zeta, p.zeta).real();
    const cxd esz = pauli_form(k, p.eta, p.zeta);
    mm.Q[k] = esz.real();
    mm.P[k] = esz.imag();
  }
  return mm;
}

/// Physical dictionary:
///   X = (Qvec - R')/(sqrt(m) k),  Y = k sqrt(m) Pvec/(||P|| + P0),
/// with R' = M - N and ||P|| the 4-vector norm.
inline KeplerState to_physical(const MomentumMapValue& mm, double m, double gamma,
                               double k) {
  const double denom = pnorm_plus_p0(mm.P);
  if (denom <= 0.0)
    throw SingularChartError("to_physical: ||P|| + P0 vanishes (chart boundary)");
  const Vec3 Rp = mm.M - mm.N;
  const Vec3 Qv = spatial(mm.Q);
  const Vec3 d = Qv - Rp;
  const double scale = norm(Qv) + norm(Rp) + 1.0;
  if (norm(d) < 1e-14 * scale)
    throw CollisionError("to_physical: Qvec = R' (collision state)");
  KeplerState s;
  s.m = m;
  s.gamma = gamma;
  s.k = k;
  s.X = (1.0 / (std::sqrt(m) * k)) * d;
  s.Y = (k * std::sqrt(m) / denom) * spatial(mm.P);
  return s;
}

inline double hamiltonian(const KeplerState& s) {
  return dot(s.Y, s.Y) / (2.0 * s.m) - s.gamma / norm(s.X);
}

inline Vec3 angular_momentum(const KeplerState& s) { return cross(s.X, s.Y); }

/// The dictionary's closed form for the Hamiltonian,
/// k (k(||P||-P0) - 2 gamma sqrt(m)) / (2(||P||+P0)).
inline double table_hamiltonian(const MomentumMapValue& mm, double m, double gamma,
                                double k) {
  const double denom = pnorm_plus_p0(mm.P);
  if (denom <= 0.0) throw SingularChartError("table_hamiltonian: ||P|| + P0 vanishes");
  return k * (k * pnorm_minus_p0(mm.P) - 2.0 * gamma * std::sqrt(m)) / (2.0 * denom);
}

/// Physical Runge-Lenz vector Y x L / m - gamma X/|X|.
inline Vec3 runge_lenz(const KeplerState& s) {
  const double r = norm(s.X);
  if (r == 0.0) throw DomainError("runge_lenz: collision state");
  const Vec3 L = angular_momentum(s);
  return (1.0 / s.m) * cross(s.Y, L) - (s.gamma / r) * s.X;
}

/// The dictionary's linearized form
/// (R'(k P0 + gamma sqrt(m)) + Qvec(k||P|| - gamma sqrt(m))) / (sqrt(m)(||P||+P0)).
inline Vec3 runge_lenz_linearized(const MomentumMapValue& mm, double m, double gamma,
                                  double k) {
  const double pn = norm4(mm.P);
  const double denom = std::sqrt(m) * pnorm_plus_p0(mm.P);
  if (denom <= 0.0) throw SingularChartError("runge_lenz_linearized: chart boundary");
  const Vec3 Rp = mm.M - mm.N;
  const Vec3 Qv = spatial(mm.Q);
  return (1.0 / denom) * ((k * mm.P[0] + gamma * std::sqrt(m)) * Rp +
                          (k * pn - gamma * std::sqrt(m)) * Qv);
}

/// k such that the dictionary Hamiltonian equals -k^2/2 (neg: k = gamma
/// sqrt(m)/J) or +k^2/2 (pos: k = gamma sqrt(m)/(-P0), requiring -P0 > 0).
inline double calibrate_k(const MomentumMapValue& mm, double m, double gamma,
                          EnergySign sign) {
  if (std::abs(mm.I) > 1e-12)
    throw DomainError("calibrate_k: point violates the constraint I = 0");
  if (sign == EnergySign::neg) {
    if (mm.J <= 0.0) throw DomainError("calibrate_k: J must be positive");
    return gamma * std::sqrt(m) / mm.J;
  }
  if (-mm.P[0] <= 0.0)
    throw DomainError("calibrate_k: positive regime requires -P0 > 0");
  return gamma * std::sqrt(m) / (-mm.P[0]);
}

/// Section of the KS fibration: lifts a physical state to (z, w) with
/// ks_pi(lift) = (sqrt(m) k X, Y/(k sqrt(m))). The U(1) phase is fixed by
/// making one spinor component real non-negative (chart chosen by the sign
/// of x3 so the formula stays away from its singular axis).
inline CotangentPoint lift_to_cotangent(const KeplerState& s) {
  const double r0 = norm(s.X);
  if (r0 == 0.0) throw DomainError("lift: collision state");
  const double sm = std::sqrt(s.m);
  const Vec3 x = (sm * s.k) * s.X;
  const Vec3 y = (1.0 / (s.k * sm)) * s.Y;
  const double r = norm(x);
  CotangentPoint p;
  if (x[2] >= 0.0) {
    const double z1 = std::sqrt(0.5 * (r + x[2]));
    p.z = {cxd(z1, 0.0), cxd(x[0], x[1]) / (2.0 * z1)};
  } else {
    const double z2 = std::sqrt(0.5 * (r - x[2]));
    p.z = {cxd(x[0], -x[1]) / (2.0 * z2), cxd(z2, 0.0)};
  }
  // w = -i (y . sigma) z satisfies Im<w, sigma z> = r y and Re<w,z> = 0.
  const cxd i(0.0, 1.0);
  C2 ysz{};
  for (int k = 1; k <= 3; ++k) {
    const C2 sz = pauli_apply(k, p.z);
    ysz[0] += y[k - 1] * sz[0];
    ysz[1] += y[k - 1] * sz[1];
  }
  p.w = {-i * ysz[0], -i * ysz[1]};
  return p;
}

inline SpinorPoint lift_to_spinor(const KeplerState& s) {
  return collision_injection(lift_to_cotangent(s));
}

}  // namespace keplerreg
