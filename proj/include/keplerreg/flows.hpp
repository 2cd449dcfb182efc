#pragma once

#include <array>
#include <cmath>

#include "keplerreg/errors.hpp"
#include "keplerreg/ks_map.hpp"
#include "keplerreg/spinor.hpp"

namespace keplerreg {

// ---- states of the three linearized systems --------------------------------

/// Four harmonic oscillators in resonance; C = (eta, conj(zeta)).
struct OscillatorState {
  std::array<cxd, 4> C{};
  double lambda = 0.0;
};

/// Four repulsive oscillators in resonance.
struct RepulsiveState {
  std::array<double, 4> alpha{};
  std::array<double, 4> nu{};
  double lambda = 0.0;
};

/// Four free particles; the (a,A) pairs carry the opposite canonical sign to
/// the (b,B) pairs.
struct FreeState {
  std::array<double, 2> a{};
  std::array<double, 2> b{};
  std::array<double, 2> A{};
  std::array<double, 2> B{};
  double lambda = 0.0;
};

// ---- group elements and composition laws -----------------------------------

struct HarmonicGroupElement {
  double lambda = 0.0;
  std::array<cxd, 4> C{};
  cxd varsigma{1.0, 0.0};
};

/// Composition g'' = g' * g:
///   lambda'' = lambda' + lambda,  C'' = C' e^{-i lambda} + C,
///   varsigma'' = varsigma' varsigma exp(-i Im(C'.conj(C) e^{-i lambda})).
inline HarmonicGroupElement group_compose_harmonic(const HarmonicGroupElement& gp,
                                                   const HarmonicGroupElement& g) {
  HarmonicGroupElement r;
  r.lambda = gp.lambda + g.lambda;
  const cxd ph = std::exp(cxd(0.0, -g.lambda));
  cxd cross = 0.0;
  for (int k = 0; k < 4; ++k) {
    r.C[k] = gp.C[k] * ph + g.C[k];
    cross += gp.C[k] * std::conj(g.C[k]) * ph;
  }
  r.varsigma = gp.varsigma * g.varsigma * std::exp(cxd(0.0, -cross.imag()));
  return r;
}

inline HarmonicGroupElement harmonic_identity() { return {}; }

inline HarmonicGroupElement group_inverse_harmonic(const HarmonicGroupElement& g) {
  HarmonicGroupElement r;
  r.lambda = -g.lambda;
  const cxd ph = std::exp(cxd(0.0, g.lambda));
  for (int k = 0; k < 4; ++k) r.C[k] = -g.C[k] * ph;
  r.varsigma = std::conj(g.varsigma);
  return r;
}

struct RepulsiveGroupElement {
  double lambda = 0.0;
  std::array<double, 4> alpha{};
  std::array<double, 4> nu{};
  cxd varsigma{1.0, 0.0};
};

inline RepulsiveGroupElement group_inverse_repulsive(const RepulsiveGroupElement& g) {
  RepulsiveGroupElement r;
  r.lambda = -g.lambda;
  const double ep = std::exp(g.lambda), em = std::exp(-g.lambda);
  for (int k = 0; k < 4; ++k) {
    r.alpha[k] = -g.alpha[k] * em;
    r.nu[k] = -g.nu[k] * ep;
  }
  r.varsigma = std::conj(g.varsigma);
  return r;
}

/// Composition:
///   alpha'' = alpha' e^{lambda} + alpha,  nu'' = nu' e^{-lambda} + nu,
///   varsigma'' = varsigma' varsigma exp[(i/2)(alpha.nu' e^{-lambda} - alpha'.nu e^{lambda})].
inline RepulsiveGroupElement group_compose_repulsive(const RepulsiveGroupElement& gp,
                                                     const RepulsiveGroupElement& g) {
  RepulsiveGroupElement r;
  r.lambda = gp.lambda + g.lambda;
  const double ep = std::exp(g.lambda), em = std::exp(-g.lambda);
  double an = 0.0, na = 0.0;
  for (int k = 0; k < 4; ++k) {
    r.alpha[k] = gp.alpha[k] * ep + g.alpha[k];
    r.nu[k] = gp.nu[k] * em + g.nu[k];
    an += g.alpha[k] * gp.nu[k];   // alpha . nu'
    na += gp.alpha[k] * g.nu[k];   // alpha' . nu
  }
  r.varsigma = gp.varsigma * g.varsigma * std::exp(cxd(0.0, 0.5 * (an * em - na * ep)));
  return r;
}

struct FreeGroupElement {
  double lambda = 0.0;
  std::array<double, 2> a{};
  std::array<double, 2> b{};
  std::array<double, 2> A{};
  std::array<double, 2> B{};
  cxd varsigma{1.0, 0.0};
};

inline FreeGroupElement group_inverse_free(const FreeGroupElement& g) {
  FreeGroupElement r;
  r.lambda = -g.lambda;
  double phase = 0.0;  // cocycle of (r, g) with the translation parts cancelled
  for (int k = 0; k < 2; ++k) {
    r.a[k] = g.A[k] * g.lambda - g.a[k];
    r.b[k] = g.B[k] * g.lambda - g.b[k];
    r.A[k] = -g.A[k];
    r.B[k] = -g.B[k];
    phase += r.a[k] * g.A[k] + g.lambda * (r.A[k] * g.A[k] + 0.5 * r.A[k] * r.A[k]);
    phase += g.b[k] * r.B[k] + 0.5 * r.B[k] * r.B[k] * g.lambda;
  }
  r.varsigma = std::conj(g.varsigma) * std::exp(cxd(0.0, -phase));
  return r;
}

/// Composition:
///   a'' = a + a' + A' lambda, b'' = b + b' + B' lambda, A'' = A + A', B'' = B + B',
/// with the two-sector cocycle
///   varsigma'' = varsigma' varsigma exp{i[a'.A + lambda(A'.A + A'.A'/2)]}
///                                   exp{i[b.B' + lambda B'.B'/2]}.
inline FreeGroupElement group_compose_free(const FreeGroupElement& gp,
                                           const FreeGroupElement& g) {
  FreeGroupElement r;
  r.lambda = gp.lambda + g.lambda;
  double aA = 0.0, AA = 0.0, Ap2 = 0.0, bB = 0.0, Bp2 = 0.0;
  for (int k = 0; k < 2; ++k) {
    r.a[k] = g.a[k] + gp.a[k] + gp.A[k] * g.lambda;
    r.b[k] = g.b[k] + gp.b[k] + gp.B[k] * g.lambda;
    r.A[k] = g.A[k] + gp.A[k];
    r.B[k] = g.B[k] + gp.B[k];
    aA += gp.a[k] * g.A[k];
    AA += gp.A[k] * g.A[k];
    Ap2 += gp.A[k] * gp.A[k];
    bB += g.b[k] * gp.B[k];
    Bp2 += gp.B[k] * gp.B[k];
  }
  const double phase = (aA + g.lambda * (AA + 0.5 * Ap2)) + (bB + 0.5 * Bp2 * g.lambda);
  r.varsigma = gp.varsigma * g.varsigma * std::exp(cxd(0.0, phase));
  return r;
}

// ---- exact flows ------------------------------------------------------------

/// C(lambda + d) = C(lambda) e^{-i d}; every |C_k| is preserved.
inline OscillatorState flow_harmonic(const OscillatorState& s, double dlambda) {
  OscillatorState r = s;
  const cxd ph = std::exp(cxd(0.0, -dlambda));
  for (auto& c : r.C) c *= ph;
  r.lambda += dlambda;
  return r;
}

/// alpha -> alpha e^{d}, nu -> nu e^{-d}; the products alpha_k nu_k are
/// invariant. |d| is bounded to keep exp() finite.
inline RepulsiveState flow_repulsive(const RepulsiveState& s, double dlambda) {
  if (std::abs(dlambda) > 700.0)
    throw DomainError("flow_repulsive: |dlambda| too large (exp overflow)");
  RepulsiveState r = s;
  const double ep = std::exp(dlambda), em = std::exp(-dlambda);
  for (int k = 0; k < 4; ++k) {
    r.alpha[k] *= ep;
    r.nu[k] *= em;
  }
  r.lambda += dlambda;
  return r;
}

/// a -> a + A d, b -> b + B d with A, B constant.
inline FreeState flow_free(const FreeState& s, double dlambda) {
  FreeState r = s;
  for (int k = 0; k < 2; ++k) {
    r.a[k] += r.A[k] * dlambda;
    r.b[k] += r.B[k] * dlambda;
  }
  r.lambda += dlambda;
  return r;
}

// ---- conserved quantities of the three flows --------------------------------

inline double oscillator_J(const OscillatorState& s) {
  double acc = 0.0;
  for (auto& c : s.C) acc += std::norm(c);
  return 0.5 * acc;
}

inline double alpha_nu_product(const RepulsiveState& s) {
  double acc = 0.0;
  for (int k = 0; k < 4; ++k) acc += s.alpha[k] * s.nu[k];
  return acc;
}

inline double free_energy(const FreeState& s) {
  double acc = 0.0;
  for (int k = 0; k < 2; ++k) acc += s.A[k] * s.A[k] + s.B[k] * s.B[k];
  return 0.5 * acc;
}

// ---- changes of variables (numeric point maps) ------------------------------

/// The real chart (q, p) of the cotangent point: z = (q0+iq1, q2+iq3),
/// w = (p0+ip1, p2+ip3).
struct QPPoint {
  std::array<double, 4> q{};
  std::array<double, 4> p{};
};

inline QPPoint qp_of_cotangent(const CotangentPoint& c) {
  QPPoint r;
  r.q = {c.z[0].real(), c.z[0].imag(), c.z[1].real(), c.z[1].imag()};
  r.p = {c.w[0].real(), c.w[0].imag(), c.w[1].real(), c.w[1].imag()};
  return r;
}

inline CotangentPoint cotangent_of_qp(const QPPoint& r) {
  CotangentPoint c;
  c.z = {cxd(r.q[0], r.q[1]), cxd(r.q[2], r.q[3])};
  c.w = {cxd(r.p[0], r.p[1]), cxd(r.p[2], r.p[3])};
  return c;
}

/// Repulsive chart: q_i = (alpha_{i+1}+nu_{i+1})/2, p_0 = (alpha2-nu2)/2,
/// p_1 = (nu1-alpha1)/2, p_2 = (alpha4-nu4)/2, p_3 = (nu3-alpha3)/2.
inline RepulsiveState change_variables_positive(const SpinorPoint& s) {
  const QPPoint r = qp_of_cotangent(cotangent_of(s));
  RepulsiveState out;
  out.alpha[0] = r.q[0] - r.p[1];
  out.nu[0] = r.q[0] + r.p[1];
  out.alpha[1] = r.q[1] + r.p[0];
  out.nu[1] = r.q[1] - r.p[0];
  out.alpha[2] = r.q[2] - r.p[3];
  out.nu[2] = r.q[2] + r.p[3];
  out.alpha[3] = r.q[3] + r.p[2];
  out.nu[3] = r.q[3] - r.p[2];
  return out;
}

inline SpinorPoint spinor_of_repulsive(const RepulsiveState& s) {
  QPPoint r;
  r.q[0] = 0.5 * (s.alpha[0] + s.nu[0]);
  r.q[1] = 0.5 * (s.alpha[1] + s.nu[1]);
  r.q[2] = 0.5 * (s.alpha[2] + s.nu[2]);
  r.q[3] = 0.5 * (s.alpha[3] + s.nu[3]);
  r.p[0] = 0.5 * (s.alpha[1] - s.nu[1]);
  r.p[1] = 0.5 * (s.nu[0] - s.alpha[0]);
  r.p[2] = 0.5 * (s.alpha[3] - s.nu[3]);
  r.p[3] = 0.5 * (s.nu[2] - s.alpha[2]);
  return collision_injection(cotangent_of_qp(r));
}

/// Zero-energy relabeling b0=q0, a0=q1, B0=p1, A0=p0, b1=q2, a1=q3, B1=p3, A1=p2.
inline FreeState change_variables_zero(const QPPoint& r) {
  FreeState out;
  out.b[0] = r.q[0];
  out.a[0] = r.q[1];
  out.B[0] = r.p[1];
  out.A[0] = r.p[0];
  out.b[1] = r.q[2];
  out.a[1] = r.q[3];
  out.B[1] = r.p[3];
  out.A[1] = r.p[2];
  return out;
}

inline QPPoint qp_of_free(const FreeState& s) {
  QPPoint r;
  r.q[0] = s.b[0];
  r.q[1] = s.a[0];
  r.p[1] = s.B[0];
  r.p[0] = s.A[0];
  r.q[2] = s.b[1];
  r.q[3] = s.a[1];
  r.p[3] = s.B[1];
  r.p[2] = s.A[1];
  return r;
}

inline FreeState free_of_spinor(const SpinorPoint& s) {
  return change_variables_zero(qp_of_cotangent(cotangent_of(s)));
}

inline SpinorPoint spinor_of_free(const FreeState& s) {
  return collision_injection(cotangent_of_qp(qp_of_free(s)));
}

/// Oscillator variables C = (eta, conj(zeta)).
inline OscillatorState oscillator_of_spinor(const SpinorPoint& s) {
  OscillatorState r;
  r.C = {s.eta[0], s.eta[1], std::conj(s.zeta[0]), std::conj(s.zeta[1])};
  return r;
}

inline SpinorPoint spinor_of_oscillator(const OscillatorState& s) {
  SpinorPoint r;
  r.eta = {s.C[0], s.C[1]};
  r.zeta = {std::conj(s.C[2]), std::conj(s.C[3])};
  return r;
}

// ---- chart point values for polynomial evaluation ---------------------------

inline std::array<cxd, 8> mu_slots(const RepulsiveState& s) {
  const double is2 = 1.0 / std::sqrt(2.0);
  std::array<cxd, 4> mu;
  for (int k = 0; k < 4; ++k) mu[k] = is2 * cxd(s.alpha[k], s.nu[k]);
  return slot_values(mu);
}

inline std::array<cxd, 8> uv_slots(const FreeState& s) {
  std::array<cxd, 4> c;
  c[0] = cxd(s.b[0], s.B[0]);
  c[1] = cxd(s.b[1], s.B[1]);
  c[2] = cxd(s.a[0], s.A[0]);
  c[3] = cxd(s.a[1], s.A[1]);
  return slot_values(c);
}

}  // namespace keplerreg
