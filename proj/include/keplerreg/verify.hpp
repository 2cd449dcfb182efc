#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "keplerreg/algebra_table.hpp"
#include "keplerreg/flows.hpp"
#include "keplerreg/generators.hpp"
#include "keplerreg/json_io.hpp"
#include "keplerreg/ks_map.hpp"
#include "keplerreg/propagate.hpp"
#include "keplerreg/quantum.hpp"

namespace keplerreg {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int cutoff = 8;
  bool inject_sign_error = false;  // negative control: flips one quantum generator
};

namespace verify_detail {

inline void push(std::vector<CheckResult>& out, std::string name, double residual,
                 double tol) {
  out.push_back({std::move(name), residual, tol, residual <= tol});
}

inline PhasePolynomial random_cubic(std::mt19937_64& rng, const ChartPtr& chart) {
  std::uniform_int_distribution<int> slot(0, 7), coeff(-3, 3), deg(0, 3);
  PhasePolynomial p(chart);
  for (int t = 0; t < 5; ++t) {
    Monomial m;
    const int d = deg(rng);
    for (int q = 0; q < d; ++q) m.e[slot(rng)] += 1;
    p.add_term(m, CRational(Rational(coeff(rng)), Rational(coeff(rng), 2)));
  }
  return p;
}

}  // namespace verify_detail

/// Runs every module invariant as a named check; deterministic given
/// (seed, cutoff). The sign-error injection flips the quantum N2 generator
/// so the oracle-equivalence check must catch and name it.
inline std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
  using verify_detail::push;
  std::vector<CheckResult> out;
  namespace gen = generators;
  const auto spin = charts::spinor();
  const auto gens = gen::spinor_generators();

  // --- exact bracket axioms -------------------------------------------------
  {
    std::mt19937_64 rng(opt.seed);
    bool exact = true;
    for (int rep = 0; rep < 6; ++rep) {
      auto f = verify_detail::random_cubic(rng, spin);
      auto g = verify_detail::random_cubic(rng, spin);
      auto h = verify_detail::random_cubic(rng, spin);
      exact = exact && (poisson_bracket(f, g) + poisson_bracket(g, f)).is_zero();
      exact = exact && (poisson_bracket(f, g * h) -
                        (poisson_bracket(f, g) * h + g * poisson_bracket(f, h)))
                          .is_zero();
      exact = exact && (poisson_bracket(f, poisson_bracket(g, h)) +
                        poisson_bracket(g, poisson_bracket(h, f)) +
                        poisson_bracket(h, poisson_bracket(f, g)))
                          .is_zero();
    }
    push(out, "poisson_axioms_exact", exact ? 0.0 : 1.0, 0.0);
  }
  {
    bool central = true;
    for (auto& g : gens) central = central && poisson_bracket(gens[gen::kI], g).is_zero();
    push(out, "constraint_central_exact", central ? 0.0 : 1.0, 0.0);
  }

  // --- u(2,2) closure and chart consistency ---------------------------------
  AlgebraTable classical;
  {
    double resid = 0.0;
    try {
      classical = structure_table(gens, gen::names(), *spin);
      resid = std::max(classical.antisymmetry_error(), classical.jacobi_error());
      const auto t_mu = structure_table(
          gen::transported_generators(gen::spinor_to_mu()), gen::names(), *charts::mu());
      const auto t_uv = structure_table(
          gen::transported_generators(gen::spinor_to_uv()), gen::names(), *charts::uv());
      resid = std::max(resid, classical.max_abs_difference(t_mu));
      resid = std::max(resid, classical.max_abs_difference(t_uv));
    } catch (const ClosureError&) {
      resid = 1.0;
    }
    push(out, "u22_closure_and_chart_consistency", resid, 1e-12);
  }

  // --- dictionary identities on sampled constraint points -------------------
  {
    double r_pn = 0.0, r_h = 0.0, r_l = 0.0, r_rl = 0.0, r_shell_n = 0.0,
           r_shell_p = 0.0;
    const double m = 1.3, gamma = 0.7, k = 1.1;
    for (std::uint64_t s = 0; s < 100; ++s) {
      const SpinorPoint p = sample_constraint_point(opt.seed * 1000 + s);
      const MomentumMapValue mm = momentum_map(p);
      r_pn = std::max(r_pn, std::abs(norm4(mm.P) - mm.J));
      KeplerState st;
      try {
        st = to_physical(mm, m, gamma, k);
      } catch (const CollisionError&) {
        continue;
      }
      r_h = std::max(r_h, std::abs(table_hamiltonian(mm, m, gamma, k) - hamiltonian(st)));
      const Vec3 L = angular_momentum(st);
      const Vec3 MN = mm.M + mm.N;
      const Vec3 rl = runge_lenz(st);
      const Vec3 rl2 = runge_lenz_linearized(mm, m, gamma, k);
      for (int j = 0; j < 3; ++j) {
        r_l = std::max(r_l, std::abs(L[j] - MN[j]));
        r_rl = std::max(r_rl, std::abs(rl[j] - rl2[j]));
      }
      const double kn = calibrate_k(mm, m, gamma, EnergySign::neg);
      r_shell_n = std::max(r_shell_n, std::abs(table_hamiltonian(mm, m, gamma, kn) +
                                               m * gamma * gamma / (2 * mm.J * mm.J)));
      const SpinorPoint pp = sample_constraint_point_negative_p0(opt.seed * 1000 + s);
      const MomentumMapValue mmp = momentum_map(pp);
      const double kp = calibrate_k(mmp, m, gamma, EnergySign::pos);
      r_shell_p = std::max(r_shell_p,
                           std::abs(table_hamiltonian(mmp, m, gamma, kp) -
                                    m * gamma * gamma / (2 * mmp.P[0] * mmp.P[0])));
    }
    push(out, "pnorm4_equals_J", r_pn, 1e-12);
    push(out, "table1_hamiltonian", r_h, 1e-12);
    push(out, "table1_angular_momentum", r_l, 1e-12);
    push(out, "table1_runge_lenz", r_rl, 1e-12);
    push(out, "energy_shell_neg", r_shell_n, 1e-12);
    push(out, "energy_shell_pos", r_shell_p, 1e-12);
  }

  // --- pullback identities (finite differences) ------------------------------
  {
    std::mt19937_64 rng(opt.seed + 17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double h = 1e-6;
    double worst = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
      CotangentPoint p;
      for (int k2 = 0; k2 < 2; ++k2) {
        p.z[k2] = cxd(u(rng), u(rng));
        p.w[k2] = cxd(u(rng), u(rng));
      }
      if (norm2(p.z) < 0.3) continue;
      const double c = inner(p.w, p.z).real() / norm2(p.z);
      for (int k2 = 0; k2 < 2; ++k2) p.w[k2] -= c * p.z[k2];
      C2 dz{cxd(u(rng), u(rng)), cxd(u(rng), u(rng))};
      C2 dw{cxd(u(rng), u(rng)), cxd(u(rng), u(rng))};
      auto at = [&](double s) {
        CotangentPoint q = p;
        for (int k2 = 0; k2 < 2; ++k2) {
          q.z[k2] += s * dz[k2];
          q.w[k2] += s * dw[k2];
        }
        return ks_pi(q);
      };
      const auto [xp, yp] = at(h);
      const auto [xm, ym] = at(-h);
      const auto [x0, y0] = ks_pi(p);
      Vec3 dx;
      for (int j = 0; j < 3; ++j) dx[j] = (xp[j] - xm[j]) / (2 * h);
      worst = std::max(worst, std::abs(dot(y0, dx) - 2.0 * inner(p.w, dz).imag()));
    }
    push(out, "pullback_ks_oneform", worst, 1e-9);
  }
  {
    std::mt19937_64 rng(opt.seed + 23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double h = 1e-6;
    double worst = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
      QPPoint qp, dqp;
      for (int k2 = 0; k2 < 4; ++k2) {
        qp.q[k2] = u(rng);
        qp.p[k2] = u(rng);
        dqp.q[k2] = u(rng);
        dqp.p[k2] = u(rng);
      }
      const FreeState f = change_variables_zero(qp);
      const FreeState df = change_variables_zero(dqp);
      double theta7 = 0.0;
      for (int k2 = 0; k2 < 2; ++k2)
        theta7 += -f.B[k2] * df.b[k2] + f.b[k2] * df.B[k2] + f.A[k2] * df.a[k2] -
                  f.a[k2] * df.A[k2];
      const double theta_zw =
          2.0 * inner(cotangent_of_qp(qp).w, cotangent_of_qp(dqp).z).imag();
      auto F = [](const QPPoint& q) {
        const FreeState s = change_variables_zero(q);
        return s.b[0] * s.B[0] + s.b[1] * s.B[1] - s.a[0] * s.A[0] - s.a[1] * s.A[1];
      };
      QPPoint plus = qp, minus = qp;
      for (int k2 = 0; k2 < 4; ++k2) {
        plus.q[k2] += h * dqp.q[k2];
        plus.p[k2] += h * dqp.p[k2];
        minus.q[k2] -= h * dqp.q[k2];
        minus.p[k2] -= h * dqp.p[k2];
      }
      const double dF = (F(plus) - F(minus)) / (2 * h);
      worst = std::max(worst, std::abs(theta7 - theta_zw - dF));
    }
    push(out, "pullback_zero_chart_oneform", worst, 1e-9);
  }

  // --- fibration and lift -----------------------------------------------------
  {
    std::mt19937_64 rng(opt.seed + 31);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double r_fiber = 0.0, r_norm = 0.0, r_lift = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
      C2 z{cxd(u(rng), u(rng)), cxd(u(rng), u(rng))};
      C2 w{cxd(u(rng), u(rng)), cxd(u(rng), u(rng))};
      if (norm2(z) < 0.1) continue;
      r_norm = std::max(r_norm, std::abs(norm(hopf(z)) - norm2(z)));
      const cxd ph = std::exp(cxd(0.0, u(rng)));
      const auto [x1, y1] = ks_pi({z, w});
      const auto [x2, y2] = ks_pi({{ph * z[0], ph * z[1]}, {ph * w[0], ph * w[1]}});
      for (int j = 0; j < 3; ++j)
        r_fiber = std::max({r_fiber, std::abs(x1[j] - x2[j]), std::abs(y1[j] - y2[j])});

      KeplerState st;
      st.m = 1.2;
      st.gamma = 0.9;
      st.k = 1.4;
      st.X = {u(rng), u(rng), u(rng)};
      st.Y = {u(rng), u(rng), u(rng)};
      if (norm(st.X) < 0.2) continue;
      const MomentumMapValue mm = momentum_map(lift_to_spinor(st));
      const KeplerState back = to_physical(mm, st.m, st.gamma, st.k);
      for (int j = 0; j < 3; ++j)
        r_lift = std::max({r_lift, std::abs(back.X[j] - st.X[j]),
                           std::abs(back.Y[j] - st.Y[j]), std::abs(mm.I)});
    }
    push(out, "hopf_norm_identity", r_norm, 1e-12);
    push(out, "fiber_invariance", r_fiber, 1e-12);
    push(out, "lift_section_roundtrip", r_lift, 1e-12);
  }

  // --- group laws and flows ----------------------------------------------------
  {
    std::mt19937_64 rng(opt.seed + 41);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      HarmonicGroupElement a, b, c;
      for (auto* g : {&a, &b, &c}) {
        g->lambda = u(rng);
        for (auto& cc : g->C) cc = cxd(u(rng), u(rng));
        g->varsigma = std::exp(cxd(0.0, u(rng)));
      }
      auto lhs = group_compose_harmonic(group_compose_harmonic(a, b), c);
      auto rhs = group_compose_harmonic(a, group_compose_harmonic(b, c));
      for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(lhs.C[j] - rhs.C[j]));
      worst = std::max(worst, std::abs(lhs.varsigma - rhs.varsigma));
      worst = std::max(worst, std::abs(std::abs(lhs.varsigma) - 1.0));

      RepulsiveGroupElement ra, rb, rc;
      for (auto* g : {&ra, &rb, &rc}) {
        g->lambda = u(rng);
        for (int j = 0; j < 4; ++j) {
          g->alpha[j] = u(rng);
          g->nu[j] = u(rng);
        }
        g->varsigma = std::exp(cxd(0.0, u(rng)));
      }
      auto rl = group_compose_repulsive(group_compose_repulsive(ra, rb), rc);
      auto rr = group_compose_repulsive(ra, group_compose_repulsive(rb, rc));
      for (int j = 0; j < 4; ++j) {
        worst = std::max(worst, std::abs(rl.alpha[j] - rr.alpha[j]));
        worst = std::max(worst, std::abs(rl.nu[j] - rr.nu[j]));
      }
      worst = std::max(worst, std::abs(rl.varsigma - rr.varsigma));

      FreeGroupElement fa, fb, fc;
      for (auto* g : {&fa, &fb, &fc}) {
        g->lambda = u(rng);
        for (int j = 0; j < 2; ++j) {
          g->a[j] = u(rng);
          g->b[j] = u(rng);
          g->A[j] = u(rng);
          g->B[j] = u(rng);
        }
        g->varsigma = std::exp(cxd(0.0, u(rng)));
      }
      auto fl = group_compose_free(group_compose_free(fa, fb), fc);
      auto fr = group_compose_free(fa, group_compose_free(fb, fc));
      for (int j = 0; j < 2; ++j)
        worst = std::max({worst, std::abs(fl.a[j] - fr.a[j]), std::abs(fl.b[j] - fr.b[j]),
                          std::abs(fl.A[j] - fr.A[j]), std::abs(fl.B[j] - fr.B[j])});
      worst = std::max(worst, std::abs(fl.varsigma - fr.varsigma));
    }
    push(out, "group_laws_associativity_cocycle", worst, 1e-12);
  }
  {
    std::mt19937_64 rng(opt.seed + 43);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double worst = 0.0, c_resid = 0.0;
    double num = 0.0, den = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
      OscillatorState os;
      for (auto& c : os.C) c = cxd(u(rng), u(rng));
      worst = std::max(worst,
                       std::abs(oscillator_J(flow_harmonic(os, u(rng))) - oscillator_J(os)));
      RepulsiveState rs;
      for (int j = 0; j < 4; ++j) {
        rs.alpha[j] = u(rng);
        rs.nu[j] = u(rng);
      }
      worst = std::max(worst, std::abs(alpha_nu_product(flow_repulsive(rs, u(rng))) -
                                       alpha_nu_product(rs)));
      FreeState fs;
      for (int j = 0; j < 2; ++j) {
        fs.a[j] = u(rng);
        fs.b[j] = u(rng);
        fs.A[j] = u(rng);
        fs.B[j] = u(rng);
      }
      worst = std::max(worst, std::abs(free_energy(flow_free(fs, u(rng))) - free_energy(fs)));

      SpinorPoint p;
      for (int j = 0; j < 2; ++j) {
        p.eta[j] = cxd(u(rng), u(rng));
        p.zeta[j] = cxd(u(rng), u(rng));
      }
      const RepulsiveState cv = change_variables_positive(p);
      const SpinorPoint back = spinor_of_repulsive(cv);
      for (int j = 0; j < 2; ++j)
        worst = std::max({worst, std::abs(back.eta[j] - p.eta[j]),
                          std::abs(back.zeta[j] - p.zeta[j])});
      const double an = alpha_nu_product(cv);
      num += (-momentum_map(p).P[0]) * an;
      den += an * an;
    }
    const double c_ls = num / den;
    for (int rep = 0; rep < 30; ++rep) {
      SpinorPoint p = sample_constraint_point(opt.seed * 77 + rep);
      c_resid = std::max(c_resid,
                         std::abs(-momentum_map(p).P[0] -
                                  c_ls * alpha_nu_product(change_variables_positive(p))));
    }
    push(out, "flow_invariants_and_roundtrips", worst, 1e-12);
    push(out, "minus_p0_is_half_alpha_nu", std::abs(c_ls + 0.5) + c_resid, 1e-12);
  }

  // --- propagation ----------------------------------------------------------------
  {
    const KeplerState s0 = make_orbit_state(1.0, 0.0, 1.0, 1.0);
    const double k = std::sqrt(-2.0 * hamiltonian(s0));
    const Trajectory tr = propagate_physical(s0, Regime::neg, 10000, 2 * M_PI / k / 10000);
    const double drift =
        std::max({tr.max_drift_H(), tr.max_drift_L(), tr.max_drift_RL()});
    push(out, "propagation_conservation_circular", drift, 1e-12);
  }
  {
    const double a = 1.3, e = 0.6;
    const KeplerState s0 = make_orbit_state(a, e, 1.0, 1.0);
    const double k = std::sqrt(-2.0 * hamiltonian(s0));
    const int n = 100000;
    const Trajectory tr = propagate_physical(s0, Regime::neg, n, 2 * M_PI / k / n);
    push(out, "kepler_period_quadrature",
         std::abs(tr.samples.back().t - kepler_period(a, 1.0, 1.0)), 1e-6);
  }

  // --- quantum representations ------------------------------------------------------
  const int cutoff = opt.cutoff;
  {
    const Representation rep = make_fock_rep(cutoff);
    auto ops = su22_generators(rep, Regime::neg, false);
    if (opt.inject_sign_error) ops[gen::kN2] = cxd(-1.0) * ops[gen::kN2];

    double herm = 0.0;
    for (auto& op : ops) herm = std::max(herm, op.hermiticity_error());
    push(out, "hermiticity_fock_generators", herm, 1e-14);

    const LadderOps l = ladder_ops(rep.basis);
    std::vector<bool> ok(rep.basis->dim());
    for (int s = 0; s < rep.basis->dim(); ++s)
      ok[s] = rep.basis->state(s).total() <= cutoff - 1;
    double ccr = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        SparseOperator expect =
            (i == j) ? SparseOperator::identity(rep.basis) : SparseOperator(rep.basis);
        ccr = std::max(
            ccr, (commutator(l.a[i], l.adag[j]) - expect).max_abs_on_columns(ok));
      }
    push(out, "ccr_truncation_safe", ccr, 1e-13);

    push(out, "oracle_equivalence_neg", commutator_oracle_residual(ops, classical),
         1e-12);

    const BasisProjection kernel = constraint_kernel(ops[gen::kI]);
    push(out, "su2su2_identity_on_kernel", su2su2_identity_residual(ops, kernel), 1e-12);

    const CasimirReport cas = casimir_check(ops, kernel);
    push(out, "casimir_scalar_on_kernel_neg", cas.kernel_residual, 1e-10);
    push(out, "casimir_nonscalar_unconstrained",
         cas.unconstrained_residual > 1e-3 ? 0.0 : 1.0, 0.0);

    double spec_resid = 0.0;
    const auto lines = hydrogen_spectrum_neg(cutoff, 1.0, 1.0);
    for (auto& ln : lines) {
      if (!ln.truncation_complete) continue;
      spec_resid = std::max(spec_resid,
                            std::abs(ln.energy + 1.0 / (2.0 * ln.n * ln.n)));
      if (ln.degeneracy != ln.n * ln.n) spec_resid = std::max(spec_resid, 1.0);
    }
    push(out, "hydrogen_spectrum_degeneracy", spec_resid, 1e-12);
  }
  {
    const Representation rep = make_monomial_rep(std::max(4, cutoff - 1));
    const auto ops = su22_generators(rep, Regime::pos, false);
    push(out, "oracle_equivalence_pos", commutator_oracle_residual(ops, classical),
         1e-12);
    push(out, "lorentz_closure_pos",
         lorentz_closure_residual(doubled_vector_ops(ops), rep.basis), 1e-12);
    const CasimirReport cas = casimir_check(ops, constraint_kernel(ops[gen::kI]));
    push(out, "casimir_scalar_on_kernel_pos", cas.kernel_residual, 1e-10);
    const auto lines = spectrum_pos(std::max(4, cutoff - 1), 1.0, 1.0);
    push(out, "spectrum_pos_tau2",
         lines.empty() ? 1.0 : std::abs(lines.front().energy - 0.125), 1e-12);
  }
  {
    const Representation rep = make_zero_rep(std::max(4, cutoff - 1));
    const auto ops = su22_generators(rep, Regime::zero, false);
    push(out, "oracle_equivalence_zero", commutator_oracle_residual(ops, classical),
         1e-12);
    push(out, "e3_closure_zero", e3_closure_residual(doubled_vector_ops(ops), rep.basis),
         1e-12);
  }
  {
    // truncation-complete lines stable under cutoff -> cutoff + 2
    const auto a = hydrogen_spectrum_neg(std::min(cutoff, 6), 1.0, 1.0);
    const auto b = hydrogen_spectrum_neg(std::min(cutoff, 6) + 2, 1.0, 1.0);
    double resid = 0.0;
    for (auto& la : a) {
      if (!la.truncation_complete) continue;
      bool found = false;
      for (auto& lb : b)
        if (lb.n == la.n) {
          found = true;
          resid = std::max(resid, std::abs(lb.energy - la.energy));
          if (lb.degeneracy != la.degeneracy) resid = std::max(resid, 1.0);
        }
      if (!found) resid = std::max(resid, 1.0);
    }
    push(out, "spectrum_truncation_stability", resid, 1e-15);
  }

  return out;
}

inline nlohmann::ordered_json verification_report(const std::vector<CheckResult>& checks,
                                                  const VerifyOptions& opt) {
  nlohmann::ordered_json j;
  j["seed"] = opt.seed;
  j["cutoff"] = opt.cutoff;
  bool all = true;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["residual"] = c.residual;
    cj["tolerance"] = c.tolerance;
    cj["pass"] = c.pass;
    arr.push_back(cj);
    all = all && c.pass;
  }
  j["checks"] = arr;
  j["all_pass"] = all;
  return j;
}

}  // namespace keplerreg
