#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "keplerreg/algebra_table.hpp"
#include "keplerreg/errors.hpp"
#include "keplerreg/generators.hpp"
#include "keplerreg/graded_basis.hpp"
#include "keplerreg/propagate.hpp"
#include "keplerreg/sparse_op.hpp"

namespace keplerreg {

/// An internal closure or oracle-equivalence check failed.
struct ConsistencyError : std::runtime_error {
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

/// A representation: a graded basis plus one sparse operator per chart slot.
/// Quadratic classical observables on the chart quantize by Weyl ordering of
/// these slot operators. Every slot operator either raises or lowers the
/// basis degree; `comm` holds the exact scalar commutators [x_u, x_v], which
/// lets the quantizer order products lowering-first so that no matrix element
/// within the truncation is ever routed through the dropped top shell.
struct Representation {
  ChartPtr chart;
  BasisPtr basis;
  std::array<SparseOperator, 8> var_ops;
  std::array<bool, 8> raises{};
  std::array<std::array<cxd, 8>, 8> comm{};

  void set_pair_comm(int u, int v, cxd c) {
    comm[u][v] = c;
    comm[v][u] = -c;
  }
};

namespace detail {

/// Mode ladder operators on the fock4 basis,
/// a|n> = sqrt(n)|n-1>, adag|n> = sqrt(n+1)|n+1> (dropped past the cutoff).
inline SparseOperator annihilation(const BasisPtr& basis, int mode) {
  SparseOperator op(basis);
  for (int col = 0; col < basis->dim(); ++col) {
    MultiIndex m = basis->state(col);
    if (m.e[mode] == 0) continue;
    const double amp = std::sqrt(double(m.e[mode]));
    m.e[mode] -= 1;
    op.add_entry(basis->find(m), col, amp);
  }
  return op;
}

inline SparseOperator creation(const BasisPtr& basis, int mode) {
  SparseOperator op(basis);
  for (int col = 0; col < basis->dim(); ++col) {
    MultiIndex m = basis->state(col);
    const double amp = std::sqrt(double(m.e[mode] + 1));
    m.e[mode] += 1;
    const int row = basis->find(m);
    if (row >= 0) op.add_entry(row, col, amp);
  }
  return op;
}

/// Multiplication by complexified variable `pair` (0..3 indexing c, ~c
/// alternately: slot 2k = c_k, 2k+1 = conj(c_k)).
inline SparseOperator mult_var(const BasisPtr& basis, int var) {
  SparseOperator op(basis);
  for (int col = 0; col < basis->dim(); ++col) {
    MultiIndex m = basis->state(col);
    m.e[var] += 1;
    const int row = basis->find(m);
    if (row >= 0) op.add_entry(row, col, 1.0);
  }
  return op;
}

/// d/d(c_var) on monomials.
inline SparseOperator deriv_var(const BasisPtr& basis, int var) {
  SparseOperator op(basis);
  for (int col = 0; col < basis->dim(); ++col) {
    MultiIndex m = basis->state(col);
    if (m.e[var] == 0) continue;
    const double amp = double(m.e[var]);
    m.e[var] -= 1;
    op.add_entry(basis->find(m), col, amp);
  }
  return op;
}

}  // namespace detail

/// Standard ladder operators of the four-mode Fock space.
struct LadderOps {
  std::array<SparseOperator, 4> a;
  std::array<SparseOperator, 4> adag;
};

inline LadderOps ladder_ops(const BasisPtr& basis) {
  if (basis->kind() != BasisKind::fock4)
    throw UnsupportedError("ladder_ops: fock4 basis required");
  LadderOps l;
  for (int m = 0; m < 4; ++m) {
    l.a[m] = detail::annihilation(basis, m);
    l.adag[m] = detail::creation(basis, m);
  }
  return l;
}

/// Fock representation of the spinor chart: eta_i -> a_i, zeta_i -> a_{2+i}^+
/// (the oscillator variables are C = (eta, conj zeta)).
inline Representation make_fock_rep(int cutoff) {
  Representation rep;
  rep.chart = charts::spinor();
  rep.basis = std::make_shared<GradedBasis>(BasisKind::fock4, cutoff);
  const LadderOps l = ladder_ops(rep.basis);
  rep.var_ops[0] = l.a[0];     // eta1
  rep.var_ops[1] = l.adag[0];  // ~eta1
  rep.var_ops[2] = l.a[1];     // eta2
  rep.var_ops[3] = l.adag[1];  // ~eta2
  rep.var_ops[4] = l.adag[2];  // zeta1
  rep.var_ops[5] = l.a[2];     // ~zeta1
  rep.var_ops[6] = l.adag[3];  // zeta2
  rep.var_ops[7] = l.a[3];     // ~zeta2
  rep.raises = {false, true, false, true, true, false, true, false};
  rep.set_pair_comm(0, 1, 1.0);   // [a, adag] = 1
  rep.set_pair_comm(2, 3, 1.0);
  rep.set_pair_comm(4, 5, -1.0);  // [adag, a] = -1
  rep.set_pair_comm(6, 7, -1.0);
  return rep;
}

/// Monomial representation of the repulsive chart on polynomials phi(nu):
/// nu_k is multiplication, alpha_k = i d/d(nu_k). The basis is graded by the
/// complexified monomials c1 = nu1 + i nu2, c2 = nu3 + i nu4, on which the
/// constraint operator is diagonal.
inline Representation make_monomial_rep(int cutoff) {
  Representation rep;
  rep.chart = charts::alphanu();
  rep.basis = std::make_shared<GradedBasis>(BasisKind::monomial4, cutoff);
  const cxd i(0.0, 1.0);
  for (int pair = 0; pair < 2; ++pair) {
    const int c = 2 * pair, cb = 2 * pair + 1;  // basis variables c, conj c
    const SparseOperator mc = detail::mult_var(rep.basis, c);
    const SparseOperator mcb = detail::mult_var(rep.basis, cb);
    const SparseOperator dc = detail::deriv_var(rep.basis, c);
    const SparseOperator dcb = detail::deriv_var(rep.basis, cb);
    // nu_{2p+1} = (c + ~c)/2, nu_{2p+2} = -i(c - ~c)/2
    const SparseOperator nu_a = 0.5 * (mc + mcb);
    const SparseOperator nu_b = cxd(0.0, -0.5) * (mc - mcb);
    // d/d nu_{2p+1} = dc + dcb, d/d nu_{2p+2} = i(dc - dcb)
    const SparseOperator da = dc + dcb;
    const SparseOperator db = i * (dc - dcb);
    // chart slots: (alpha_{2p+1}, nu_{2p+1}, alpha_{2p+2}, nu_{2p+2})
    rep.var_ops[4 * pair + 0] = i * da;   // alpha_{2p+1}
    rep.var_ops[4 * pair + 1] = nu_a;
    rep.var_ops[4 * pair + 2] = i * db;   // alpha_{2p+2}
    rep.var_ops[4 * pair + 3] = nu_b;
    rep.raises[4 * pair + 0] = false;
    rep.raises[4 * pair + 1] = true;
    rep.raises[4 * pair + 2] = false;
    rep.raises[4 * pair + 3] = true;
    rep.set_pair_comm(4 * pair + 0, 4 * pair + 1, i);  // [alpha, nu] = i
    rep.set_pair_comm(4 * pair + 2, 4 * pair + 3, i);
  }
  return rep;
}

/// Zero-energy representation on polynomials phi(A, B): A_i, B_i multiply,
/// a_i = -(i/2) d/dA_i, b_i = (i/2) d/dB_i. Basis graded by d_i = A_i + iB_i.
inline Representation make_zero_rep(int cutoff) {
  Representation rep;
  rep.chart = charts::abAB();
  rep.basis = std::make_shared<GradedBasis>(BasisKind::polyAB, cutoff);
  const cxd i(0.0, 1.0);
  for (int pair = 0; pair < 2; ++pair) {
    const int d = 2 * pair, db_ = 2 * pair + 1;
    const SparseOperator md = detail::mult_var(rep.basis, d);
    const SparseOperator mdb = detail::mult_var(rep.basis, db_);
    const SparseOperator dd = detail::deriv_var(rep.basis, d);
    const SparseOperator ddb = detail::deriv_var(rep.basis, db_);
    const SparseOperator A_op = 0.5 * (md + mdb);
    const SparseOperator B_op = cxd(0.0, -0.5) * (md - mdb);
    const SparseOperator dA = dd + ddb;
    const SparseOperator dB = i * (dd - ddb);
    // chart slots: (a_p, A_p, b_p, B_p)
    rep.var_ops[4 * pair + 0] = cxd(0.0, -0.5) * dA;  // a_p
    rep.var_ops[4 * pair + 1] = A_op;
    rep.var_ops[4 * pair + 2] = cxd(0.0, 0.5) * dB;   // b_p
    rep.var_ops[4 * pair + 3] = B_op;
    rep.raises[4 * pair + 0] = false;
    rep.raises[4 * pair + 1] = true;
    rep.raises[4 * pair + 2] = false;
    rep.raises[4 * pair + 3] = true;
    rep.set_pair_comm(4 * pair + 0, 4 * pair + 1, cxd(0.0, -0.5));  // [a, A]
    rep.set_pair_comm(4 * pair + 2, 4 * pair + 3, cxd(0.0, 0.5));   // [b, B]
  }
  return rep;
}

/// Weyl (symmetric-ordering) quantization of a homogeneous quadratic.
inline SparseOperator weyl_quantize(const PhasePolynomial& f, const Representation& rep) {
  if (!f.chart() || !(*f.chart() == *rep.chart))
    throw ChartMismatchError();
  SparseOperator out(rep.basis);
  for (auto& [m, c] : f.terms()) {
    if (m.degree() != 2)
      throw UnsupportedError("weyl_quantize: homogeneous quadratic required, found degree " +
                             std::to_string(m.degree()) + " term");
    int u = -1, v = -1;
    for (int k = 0; k < 8; ++k)
      for (int q = 0; q < m.e[k]; ++q) {
        if (u < 0)
          u = k;
        else
          v = k;
      }
    const cxd coeff = c.to_complex();
    if (u == v || rep.raises[u] == rep.raises[v]) {
      // same direction: the slot operators commute, one product suffices
      out = out + coeff * (rep.var_ops[u] * rep.var_ops[v]);
    } else {
      // Weyl = (x_u x_v + x_v x_u)/2 = raise*lower - [raise, lower]/2;
      // applying the lowering factor first keeps every in-basis matrix
      // element away from the truncated shell
      const int r = rep.raises[u] ? u : v;
      const int l = rep.raises[u] ? v : u;
      out = out + coeff * (rep.var_ops[r] * rep.var_ops[l]);
      const cxd corr = -0.5 * rep.comm[r][l] * coeff;
      if (corr != cxd(0.0))
        out = out + corr * SparseOperator::identity(rep.basis);
    }
  }
  return out;
}

/// The classical structure constants in the canonical generator order,
/// computed once from the exact engine.
inline const AlgebraTable& classical_u22_table() {
  static const AlgebraTable t = structure_table(generators::spinor_generators(),
                                                generators::names(), *charts::spinor());
  return t;
}

/// Max entrywise residual of [X_i, X_j] = i * {X_i, X_j}^ over truncation-safe
/// columns; the anti-drift certification tying every convention together.
inline double commutator_oracle_residual(const std::vector<SparseOperator>& ops,
                                         const AlgebraTable& classical) {
  const BasisPtr& basis = ops.front().basis();
  std::vector<bool> safe(basis->dim(), false);
  for (int c : basis->safe_columns()) safe[c] = true;
  const SparseOperator id = SparseOperator::identity(basis);
  const cxd i(0.0, 1.0);
  double worst = 0.0;
  for (std::size_t a = 0; a < ops.size(); ++a)
    for (std::size_t b = 0; b < ops.size(); ++b) {
      SparseOperator expect(basis);
      for (std::size_t k = 0; k < ops.size(); ++k) {
        const cxd f = classical.f[a][b][k];
        if (f != cxd(0.0)) expect = expect + (i * f) * ops[k];
      }
      if (classical.affine[a][b] != cxd(0.0))
        expect = expect + (i * classical.affine[a][b]) * id;
      const SparseOperator diff = commutator(ops[a], ops[b]) - expect;
      worst = std::max(worst, diff.max_abs_on_columns(safe));
    }
  return worst;
}

/// The sixteen quantized generators for a regime, certified against the
/// classical table on construction.
inline std::vector<SparseOperator> su22_generators(const Representation& rep,
                                                   Regime regime, bool certify = true) {
  std::vector<PhasePolynomial> gens;
  switch (regime) {
    case Regime::neg:
      if (rep.basis->kind() != BasisKind::fock4)
        throw UnsupportedError("su22_generators: neg regime needs the fock4 basis");
      gens = generators::spinor_generators();
      break;
    case Regime::pos:
      if (rep.basis->kind() != BasisKind::monomial4)
        throw UnsupportedError("su22_generators: pos regime needs the monomial4 basis");
      gens = generators::transported_generators(generators::spinor_to_alphanu());
      break;
    case Regime::zero:
      if (rep.basis->kind() != BasisKind::polyAB)
        throw UnsupportedError("su22_generators: zero regime needs the polyAB basis");
      gens = generators::transported_generators(generators::spinor_to_abAB());
      break;
  }
  std::vector<SparseOperator> ops;
  ops.reserve(16);
  for (auto& g : gens) ops.push_back(weyl_quantize(g, rep));
  if (certify) {
    const double r = commutator_oracle_residual(ops, classical_u22_table());
    if (r > 1e-12)
      throw ConsistencyError("su22_generators: commutator table deviates from the "
                             "Poisson oracle by " + std::to_string(r));
  }
  return ops;
}

/// Sub-basis projection onto an operator eigenspace (the constraint kernel).
struct BasisProjection {
  BasisPtr basis;
  std::vector<int> indices;  // dense indices of kernel states

  std::size_t dim() const { return indices.size(); }

  /// Dense compression rows x cols over the kernel indices.
  std::vector<std::vector<cxd>> compress(const SparseOperator& op) const {
    std::vector<int> inv(basis->dim(), -1);
    for (std::size_t k = 0; k < indices.size(); ++k) inv[indices[k]] = int(k);
    std::vector<std::vector<cxd>> out(dim(), std::vector<cxd>(dim(), cxd(0.0)));
    for (std::size_t r = 0; r < indices.size(); ++r)
      for (auto& [j, v] : op.row(indices[r]))
        if (inv[j] >= 0) out[r][inv[j]] = v;
    return out;
  }
};

/// Kernel of a (diagonal) constraint operator: the states with eigenvalue 0.
inline BasisProjection constraint_kernel(const SparseOperator& I_hat) {
  if (I_hat.max_offdiagonal() > 1e-12)
    throw UnsupportedError("constraint_kernel: operator is not diagonal on this basis");
  BasisProjection proj;
  proj.basis = I_hat.basis();
  const auto diag = I_hat.diagonal();
  for (int i = 0; i < int(diag.size()); ++i)
    if (std::abs(diag[i]) < 1e-9) proj.indices.push_back(i);
  return proj;
}

struct SpectrumLine {
  int n = 0;  // principal quantum number (neg) or tau (pos)
  double energy = 0.0;
  int degeneracy = 0;
  bool truncation_complete = false;
};

/// Hydrogen spectrum for E < 0: diagonalizes H = -m gamma^2/(2 J^2) on the
/// constraint kernel and groups by the integer level n = J-eigenvalue.
inline std::vector<SpectrumLine> hydrogen_spectrum_neg(int cutoff, double m,
                                                       double gamma) {
  if (cutoff < 2) throw UnsupportedError("hydrogen_spectrum_neg: cutoff >= 2 required");
  const Representation rep = make_fock_rep(cutoff);
  const auto gens = generators::spinor_generators();
  const SparseOperator I_hat = weyl_quantize(gens[generators::kI], rep);
  const SparseOperator J_hat = weyl_quantize(gens[generators::kJ], rep);
  const BasisProjection kernel = constraint_kernel(I_hat);
  if (J_hat.max_offdiagonal() > 1e-12)
    throw ConsistencyError("hydrogen_spectrum_neg: J is not diagonal on number states");
  const auto diag = J_hat.diagonal();
  std::map<int, int> degeneracy;
  for (int idx : kernel.indices) {
    const double jv = diag[idx].real();
    const int n = int(std::lround(jv));
    if (std::abs(jv - n) > 1e-9)
      throw ConsistencyError("hydrogen_spectrum_neg: non-integer J eigenvalue");
    degeneracy[n] += 1;
  }
  std::vector<SpectrumLine> lines;
  for (auto& [n, deg] : degeneracy) {
    SpectrumLine l;
    l.n = n;
    l.energy = -m * gamma * gamma / (2.0 * double(n) * double(n));
    l.degeneracy = deg;
    l.truncation_complete = 2 * (n - 1) <= cutoff;
    lines.push_back(l);
  }
  return lines;
}

/// Discrete level labels for E > 0: -P0 acts on kernel monomials of total
/// degree d with the normalized eigenvalue tau = d + 2 (so the constant
/// polynomial sits at tau = 2); E_tau = +m gamma^2/(2 tau^2).
inline std::vector<SpectrumLine> spectrum_pos(int cutoff, double m, double gamma) {
  if (cutoff < 2) throw UnsupportedError("spectrum_pos: cutoff >= 2 required");
  const Representation rep = make_monomial_rep(cutoff);
  const auto gens = generators::transported_generators(generators::spinor_to_alphanu());
  const SparseOperator I_hat = weyl_quantize(gens[generators::kI], rep);
  const BasisProjection kernel = constraint_kernel(I_hat);
  std::map<int, int> degeneracy;
  for (int idx : kernel.indices)
    degeneracy[rep.basis->state(idx).total() + 2] += 1;
  std::vector<SpectrumLine> lines;
  for (auto& [tau, deg] : degeneracy) {
    SpectrumLine l;
    l.n = tau;
    l.energy = m * gamma * gamma / (2.0 * double(tau) * double(tau));
    l.degeneracy = deg;
    l.truncation_complete = (tau - 2) <= cutoff;
    lines.push_back(l);
  }
  return lines;
}

/// Commutator table of a named operator set, expressed in span{ops, id} by
/// least squares over truncation-safe columns; max_residual records the worst
/// Frobenius-norm deviation.
inline AlgebraTable commutator_table(const std::vector<SparseOperator>& ops,
                                     const std::vector<std::string>& names) {
  const std::size_t n = ops.size();
  const BasisPtr& basis = ops.front().basis();
  std::vector<bool> safe(basis->dim(), false);
  for (int c : basis->safe_columns()) safe[c] = true;

  std::vector<SparseOperator> span = ops;
  span.push_back(SparseOperator::identity(basis));
  const std::size_t ns = span.size();
  std::vector<std::vector<cxd>> gram(ns, std::vector<cxd>(ns));
  for (std::size_t a = 0; a < ns; ++a)
    for (std::size_t b = 0; b < ns; ++b)
      gram[a][b] = SparseOperator::inner_on_columns(span[a], span[b], safe);

  AlgebraTable t;
  t.generators = names;
  t.tolerance = 1e-12;
  t.f.assign(n, std::vector<std::vector<cxd>>(n, std::vector<cxd>(n, cxd(0.0))));
  t.affine.assign(n, std::vector<cxd>(n, cxd(0.0)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const SparseOperator c = commutator(ops[a], ops[b]);
      std::vector<cxd> rhs(ns);
      for (std::size_t k = 0; k < ns; ++k)
        rhs[k] = SparseOperator::inner_on_columns(span[k], c, safe);
      const std::vector<cxd> x = solve_dense(gram, rhs);
      SparseOperator recon(basis);
      for (std::size_t k = 0; k < ns; ++k) recon = recon + x[k] * span[k];
      const double resid = (c - recon).max_abs_on_columns(safe);
      t.max_residual = std::max(t.max_residual, resid);
      for (std::size_t k = 0; k < n; ++k) t.f[a][b][k] = x[k];
      t.affine[a][b] = x[n];
    }
  return t;
}

/// Vector operators in the doubled normalization, in which the closure
/// relations read [L_i, L_j] = -2i eps L_k etc. (L = angular momentum,
/// Q the positive-regime Runge-Lenz, S = R' + Q the zero-energy one).
struct VectorOps {
  std::array<SparseOperator, 3> L, Q, Rp, S;
};

inline VectorOps doubled_vector_ops(const std::vector<SparseOperator>& g16) {
  namespace gn = generators;
  VectorOps v;
  for (int k = 0; k < 3; ++k) {
    v.L[k] = 2.0 * (g16[gn::kM1 + k] + g16[gn::kN1 + k]);
    v.Q[k] = 2.0 * g16[gn::kQ1 + k];
    v.Rp[k] = 2.0 * (g16[gn::kM1 + k] - g16[gn::kN1 + k]);
    v.S[k] = v.Rp[k] + v.Q[k];
  }
  return v;
}

namespace detail {

inline int levi_civita(int i, int j, int k) {
  if (i == j || j == k || k == i) return 0;
  return j == (i + 1) % 3 ? 1 : -1;
}

/// Residual of [A_i, B_j] = coeff * eps_ijk target_k (target null -> zero).
inline double eps_closure_residual(const std::array<SparseOperator, 3>& A,
                                   const std::array<SparseOperator, 3>& B,
                                   const std::array<SparseOperator, 3>* target,
                                   cxd coeff, const std::vector<bool>& safe) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      SparseOperator expect(A[i].basis());
      if (target)
        for (int k = 0; k < 3; ++k)
          if (const int eps = levi_civita(i, j, k); eps != 0)
            expect = expect + (double(eps) * coeff) * (*target)[k];
      const SparseOperator diff = commutator(A[i], B[j]) - expect;
      worst = std::max(worst, diff.max_abs_on_columns(safe));
    }
  return worst;
}

}  // namespace detail

/// Max residual of the Lorentz closure [L,L] = -2i eps L, [L,Q] = -2i eps Q,
/// [Q,Q] = +2i eps L over truncation-safe columns.
inline double lorentz_closure_residual(const VectorOps& v, const BasisPtr& basis) {
  std::vector<bool> safe(basis->dim(), false);
  for (int c : basis->safe_columns()) safe[c] = true;
  const cxd m2i(0.0, -2.0), p2i(0.0, 2.0);
  double worst = detail::eps_closure_residual(v.L, v.L, &v.L, m2i, safe);
  worst = std::max(worst, detail::eps_closure_residual(v.L, v.Q, &v.Q, m2i, safe));
  worst = std::max(worst, detail::eps_closure_residual(v.Q, v.Q, &v.L, p2i, safe));
  return worst;
}

/// Max residual of the Euclidean closure [S,S] = 0, [L,S] = -2i eps S.
inline double e3_closure_residual(const VectorOps& v, const BasisPtr& basis) {
  std::vector<bool> safe(basis->dim(), false);
  for (int c : basis->safe_columns()) safe[c] = true;
  const cxd m2i(0.0, -2.0);
  double worst = detail::eps_closure_residual(v.S, v.S, nullptr, 0.0, safe);
  worst = std::max(worst, detail::eps_closure_residual(v.L, v.S, &v.S, m2i, safe));
  return worst;
}

/// Residual of (M)^2 = (N)^2 = J^2/4 - 1/4 on the constraint kernel.
inline double su2su2_identity_residual(const std::vector<SparseOperator>& g16,
                                       const BasisProjection& kernel) {
  namespace gn = generators;
  const BasisPtr& basis = g16.front().basis();
  SparseOperator M2(basis), N2(basis);
  for (int k = 0; k < 3; ++k) {
    M2 = M2 + g16[gn::kM1 + k] * g16[gn::kM1 + k];
    N2 = N2 + g16[gn::kN1 + k] * g16[gn::kN1 + k];
  }
  const SparseOperator target =
      0.25 * (g16[gn::kJ] * g16[gn::kJ]) - 0.25 * SparseOperator::identity(basis);
  double worst = 0.0;
  for (const SparseOperator* op : {&M2, &N2}) {
    const auto dense = kernel.compress(*op - target);
    for (auto& row : dense)
      for (auto& v : row) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

struct CasimirReport {
  cxd scalar = 0.0;
  double kernel_residual = 0.0;         // deviation from scalar on the kernel
  double unconstrained_residual = 0.0;  // same over the full space (control)
};

/// Quadratic Casimir sum kappa^{ij} X_i X_j of the fifteen non-central
/// generators, with kappa the Killing form computed from the classical
/// structure constants. Scalar on the constrained subspace, not scalar on
/// the unconstrained space.
inline CasimirReport casimir_check(const std::vector<SparseOperator>& g16,
                                   const BasisProjection& kernel) {
  namespace gn = generators;
  const AlgebraTable& ct = classical_u22_table();
  std::vector<int> idx;
  for (int k = 0; k < 16; ++k)
    if (k != gn::kI) idx.push_back(k);
  const std::size_t n = idx.size();

  // Killing form kappa_ab = sum_{c,d} f_{ac}^d f_{bd}^c (real here).
  std::vector<std::vector<cxd>> kappa(n, std::vector<cxd>(n, cxd(0.0)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      cxd acc = 0.0;
      for (int c = 0; c < 16; ++c)
        for (int d = 0; d < 16; ++d) acc += ct.f[idx[a]][c][d] * ct.f[idx[b]][d][c];
      kappa[a][b] = acc;
    }
  // invert via n solves
  std::vector<std::vector<cxd>> kinv(n, std::vector<cxd>(n));
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<cxd> e(n, cxd(0.0));
    e[c] = 1.0;
    const auto col = solve_dense(kappa, e);
    for (std::size_t r = 0; r < n; ++r) kinv[r][c] = col[r];
  }

  const BasisPtr& basis = g16.front().basis();
  SparseOperator C(basis);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (kinv[a][b] == cxd(0.0)) continue;
      C = C + kinv[a][b] * (g16[idx[a]] * g16[idx[b]]);
    }

  CasimirReport rep;
  // scalar estimate: mean diagonal over safe kernel columns
  std::vector<bool> in_kernel(basis->dim(), false);
  for (int i : kernel.indices) in_kernel[i] = true;
  cxd acc = 0.0;
  int count = 0;
  for (int i : kernel.indices)
    if (basis->truncation_safe(i)) {
      acc += C.entry(i, i);
      ++count;
    }
  rep.scalar = count ? acc / double(count) : cxd(0.0);

  double worst_k = 0.0, worst_u = 0.0;
  for (int col = 0; col < basis->dim(); ++col) {
    if (!basis->truncation_safe(col)) continue;
    for (int row = 0; row < basis->dim(); ++row) {
      const cxd v = C.entry(row, col) - (row == col ? rep.scalar : cxd(0.0));
      worst_u = std::max(worst_u, std::abs(v));
      if (in_kernel[col]) worst_k = std::max(worst_k, std::abs(v));
    }
  }
  rep.kernel_residual = worst_k;
  rep.unconstrained_residual = worst_u;
  return rep;
}

}  // namespace keplerreg
