#pragma once

#include <vector>

#include "keplerreg/phase_poly.hpp"

namespace keplerreg {

/// Exact polynomial realizations of the sixteen u(2,2) momentum-map
/// generators I, J, M, N, Q, P and the chart maps taking them to the
/// repulsive and zero-energy coordinate systems.
namespace generators {

// Spinor chart slots: 0=eta1 1=~eta1 2=eta2 3=~eta2 4=zeta1 5=~zeta1 6=zeta2 7=~zeta2.
namespace detail {

using Mat2 = std::array<std::array<CRational, 2>, 2>;

inline Mat2 pauli(int k) {
  const CRational zero, one(1), mone(-1);
  const CRational im = CRational::i(), mim = -CRational::i();
  switch (k) {
    case 0: return {{{one, zero}, {zero, one}}};
    case 1: return {{{zero, one}, {one, zero}}};
    case 2: return {{{zero, mim}, {im, zero}}};
    default: return {{{one, zero}, {zero, mone}}};
  }
}

/// sum_ab conj(x_a) A_ab y_b with x, y in {eta, zeta} selected by base slots.
inline PhasePolynomial sesquilinear(const ChartPtr& c, int xbase, int ybase, const Mat2& A) {
  PhasePolynomial p(c);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      if (A[a][b].is_zero()) continue;
      Monomial m;
      m.e[xbase + 2 * a + 1] += 1;  // conj slot
      m.e[ybase + 2 * b] += 1;
      p.add_term(m, A[a][b]);
    }
  return p;
}

}  // namespace detail

/// Canonical ordering of the sixteen generators.
inline const std::vector<std::string>& names() {
  static const std::vector<std::string> n = {"I",  "J",  "M1", "M2", "M3", "N1",
                                             "N2", "N3", "Q0", "Q1", "Q2", "Q3",
                                             "P0", "P1", "P2", "P3"};
  return n;
}

enum Index {
  kI = 0, kJ = 1, kM1 = 2, kM2 = 3, kM3 = 4, kN1 = 5, kN2 = 6, kN3 = 7,
  kQ0 = 8, kQ1 = 9, kQ2 = 10, kQ3 = 11, kP0 = 12, kP1 = 13, kP2 = 14, kP3 = 15
};

/// The generators as exact polynomials on the spinor chart:
///   I  = (1/2)(<eta,eta> - <zeta,zeta>)       J = (1/2)(<eta,eta> + <zeta,zeta>)
///   M  = -(1/2)<eta,sigma eta>                N = (1/2)<zeta,sigma zeta>
///   Q  = (-Im<eta,zeta>, Re<eta,sigma zeta>)  P = (Re<eta,zeta>, Im<eta,sigma zeta>)
inline std::vector<PhasePolynomial> spinor_generators() {
  using namespace detail;
  const ChartPtr c = charts::spinor();
  const CRational half(Rational(1, 2)), ihalf(Rational(0), Rational(1, 2));
  const Mat2 id = pauli(0);

  PhasePolynomial ee = sesquilinear(c, 0, 0, id);   // <eta,eta>
  PhasePolynomial zz = sesquilinear(c, 4, 4, id);   // <zeta,zeta>
  PhasePolynomial ez = sesquilinear(c, 0, 4, id);   // <eta,zeta>
  PhasePolynomial ze = sesquilinear(c, 4, 0, id);   // <zeta,eta>

  std::vector<PhasePolynomial> g(16, PhasePolynomial(c));
  g[kI] = half * (ee - zz);
  g[kJ] = half * (ee + zz);
  for (int k = 1; k <= 3; ++k) {
    const Mat2 s = pauli(k);
    g[kM1 + k - 1] = -half * sesquilinear(c, 0, 0, s);
    g[kN1 + k - 1] = half * sesquilinear(c, 4, 4, s);
    PhasePolynomial esz = sesquilinear(c, 0, 4, s);  // <eta,sigma_k zeta>
    PhasePolynomial zse = sesquilinear(c, 4, 0, s);  // <zeta,sigma_k eta>
    g[kQ1 + k - 1] = half * (esz + zse);             // Re<eta,sigma_k zeta>
    g[kP1 + k - 1] = -ihalf * (esz - zse);           // Im<eta,sigma_k zeta>
  }
  g[kQ0] = ihalf * (ez - ze);   // -Im<eta,zeta>
  g[kP0] = half * (ez + ze);    // Re<eta,zeta>
  return g;
}

// ---- exact chart maps -----------------------------------------------------

/// eta = (z+w)/sqrt2, zeta = (z-w)/sqrt2 (the collision injection).
inline LinearChartMap spinor_to_zw() {
  LinearChartMap m;
  m.from = charts::spinor();
  m.to = charts::zw();
  m.sqrt2_pow = 1;
  const CRational one(1), mone(-1);
  // zw slots: 0=z1 1=~z1 2=z2 3=~z2 4=w1 5=~w1 6=w2 7=~w2
  for (int comp = 0; comp < 4; ++comp) {  // eta1, ~eta1, eta2, ~eta2
    m.M[comp][comp] = one;
    m.M[comp][comp + 4] = one;
    m.M[comp + 4][comp] = one;       // zeta block
    m.M[comp + 4][comp + 4] = mone;
  }
  return m;
}

/// z = q + iq pairing, w = p + ip pairing with
/// q_i = (alpha_{i+1}+nu_{i+1})/2, p_0 = (alpha2-nu2)/2, p_1 = (nu1-alpha1)/2,
/// p_2 = (alpha4-nu4)/2, p_3 = (nu3-alpha3)/2.
inline LinearChartMap zw_to_alphanu() {
  LinearChartMap m;
  m.from = charts::zw();
  m.to = charts::alphanu();
  const CRational h(Rational(1, 2)), ih(Rational(0), Rational(1, 2));
  // alphanu slots: 0=alpha1 1=nu1 2=alpha2 3=nu2 4=alpha3 5=nu3 6=alpha4 7=nu4
  auto set = [&m](int row, int col, CRational v) { m.M[row][col] = v; };
  // z1 = q0 + i q1 = (alpha1+nu1)/2 + i(alpha2+nu2)/2
  set(0, 0, h); set(0, 1, h); set(0, 2, ih); set(0, 3, ih);
  set(1, 0, h); set(1, 1, h); set(1, 2, -ih); set(1, 3, -ih);
  // z2 = q2 + i q3 = (alpha3+nu3)/2 + i(alpha4+nu4)/2
  set(2, 4, h); set(2, 5, h); set(2, 6, ih); set(2, 7, ih);
  set(3, 4, h); set(3, 5, h); set(3, 6, -ih); set(3, 7, -ih);
  // w1 = p0 + i p1 = (alpha2-nu2)/2 + i(nu1-alpha1)/2
  set(4, 2, h); set(4, 3, -h); set(4, 1, ih); set(4, 0, -ih);
  set(5, 2, h); set(5, 3, -h); set(5, 1, -ih); set(5, 0, ih);
  // w2 = p2 + i p3 = (alpha4-nu4)/2 + i(nu3-alpha3)/2
  set(6, 6, h); set(6, 7, -h); set(6, 5, ih); set(6, 4, -ih);
  set(7, 6, h); set(7, 7, -h); set(7, 5, -ih); set(7, 4, ih);
  return m;
}

/// alpha_k = (mu_k + ~mu_k)/sqrt2, nu_k = -i(mu_k - ~mu_k)/sqrt2.
inline LinearChartMap alphanu_to_mu() {
  LinearChartMap m;
  m.from = charts::alphanu();
  m.to = charts::mu();
  m.sqrt2_pow = 1;
  const CRational one(1);
  const CRational mi(Rational(0), Rational(-1)), pi_(Rational(0), Rational(1));
  for (int k = 0; k < 4; ++k) {
    m.M[2 * k][2 * k] = one;        // alpha_k <- mu_k
    m.M[2 * k][2 * k + 1] = one;    //          + ~mu_k
    m.M[2 * k + 1][2 * k] = mi;     // nu_k <- -i mu_k
    m.M[2 * k + 1][2 * k + 1] = pi_;  //       + i ~mu_k
  }
  return m;
}

/// z1 = b0 + i a0, z2 = b1 + i a1, w1 = A0 + i B0, w2 = A1 + i B1.
inline LinearChartMap zw_to_abAB() {
  LinearChartMap m;
  m.from = charts::zw();
  m.to = charts::abAB();
  const CRational one(1);
  const CRational pi_ = CRational::i(), mi = -CRational::i();
  // abAB slots: 0=a0 1=A0 2=b0 3=B0 4=a1 5=A1 6=b1 7=B1
  m.M[0][2] = one; m.M[0][0] = pi_;   // z1
  m.M[1][2] = one; m.M[1][0] = mi;    // ~z1
  m.M[2][6] = one; m.M[2][4] = pi_;   // z2
  m.M[3][6] = one; m.M[3][4] = mi;    // ~z2
  m.M[4][1] = one; m.M[4][3] = pi_;   // w1
  m.M[5][1] = one; m.M[5][3] = mi;    // ~w1
  m.M[6][5] = one; m.M[6][7] = pi_;   // w2
  m.M[7][5] = one; m.M[7][7] = mi;    // ~w2
  return m;
}

/// b_i, B_i, a_i, A_i in terms of u_i = b_i + iB_i, v_i = a_i + iA_i.
inline LinearChartMap abAB_to_uv() {
  LinearChartMap m;
  m.from = charts::abAB();
  m.to = charts::uv();
  const CRational h(Rational(1, 2)), mih(Rational(0), Rational(-1, 2));
  // uv slots: 0=u0 1=~u0 2=u1 3=~u1 4=v0 5=~v0 6=v1 7=~v1
  for (int i = 0; i < 2; ++i) {
    const int a = 4 * i, A = 4 * i + 1, b = 4 * i + 2, B = 4 * i + 3;
    const int u = 2 * i, v = 4 + 2 * i;
    m.M[b][u] = h;  m.M[b][u + 1] = h;      // b = (u+~u)/2
    m.M[B][u] = mih; m.M[B][u + 1] = -mih;  // B = -i(u-~u)/2
    m.M[a][v] = h;  m.M[a][v + 1] = h;      // a = (v+~v)/2
    m.M[A][v] = mih; m.M[A][v + 1] = -mih;  // A = -i(v-~v)/2
  }
  return m;
}

inline LinearChartMap spinor_to_alphanu() { return spinor_to_zw().then(zw_to_alphanu()); }
inline LinearChartMap spinor_to_mu() { return spinor_to_alphanu().then(alphanu_to_mu()); }
inline LinearChartMap spinor_to_abAB() { return spinor_to_zw().then(zw_to_abAB()); }
inline LinearChartMap spinor_to_uv() { return spinor_to_abAB().then(abAB_to_uv()); }

/// The sixteen generators transported to another chart, exactly.
inline std::vector<PhasePolynomial> transported_generators(const LinearChartMap& map) {
  std::vector<PhasePolynomial> out;
  out.reserve(16);
  for (const auto& g : spinor_generators()) out.push_back(substitute(g, map));
  return out;
}

}  // namespace generators
}  // namespace keplerreg
