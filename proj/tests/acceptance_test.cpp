// Acceptance suite: runs every contract criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code = number of failures.

#include <chrono>
#include <cstdio>
#include <random>

#include "keplerreg/flows.hpp"
#include "keplerreg/generators.hpp"
#include "keplerreg/ks_map.hpp"
#include "keplerreg/propagate.hpp"
#include "keplerreg/quantum.hpp"
#include "keplerreg/verify.hpp"

using namespace keplerreg;
namespace gen = keplerreg::generators;

namespace {

int failures = 0;

void report(int id, const char* label, bool pass, const std::string& detail) {
  std::printf("%s  criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, label,
              detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// 1. hydrogen spectrum at cutoff 10: E_n = -1/(2n^2), degeneracies n^2, < 10 s
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto lines = hydrogen_spectrum_neg(10, 1.0, 1.0);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double worst = 0.0;
  bool ok = true;
  const int expect_deg[5] = {1, 4, 9, 16, 25};
  for (int n = 1; n <= 5; ++n) {
    bool found = false;
    for (const auto& l : lines) {
      if (l.n != n) continue;
      found = true;
      worst = std::max(worst, std::abs(l.energy + 1.0 / (2.0 * n * n)));
      ok = ok && l.truncation_complete && l.degeneracy == expect_deg[n - 1];
    }
    ok = ok && found;
  }
  ok = ok && worst < 1e-12 && seconds < 10.0;
  report(1, "hydrogen spectrum E_n = -1/(2n^2), degeneracy n^2", ok,
         "max |dE| = " + fmt(worst) + ", runtime " + fmt(seconds) + " s");
}

// 2. (M)^2 = (N)^2 = J^2/4 - 1/4 on the constraint kernel
void criterion_2() {
  const Representation rep = make_fock_rep(10);
  const auto ops = su22_generators(rep, Regime::neg, false);
  const BasisProjection kernel = constraint_kernel(ops[gen::kI]);
  const double r = su2su2_identity_residual(ops, kernel);
  report(2, "su(2)xsu(2) identity on the kernel", r < 1e-12, "residual = " + fmt(r));
}

// 3. Lorentz closure in the positive-energy representation
void criterion_3() {
  const Representation rep = make_monomial_rep(8);
  const auto ops = su22_generators(rep, Regime::pos, false);
  const double r = lorentz_closure_residual(doubled_vector_ops(ops), rep.basis);
  report(3, "Lorentz closure [L,L], [L,Q], [Q,Q] with +-2i eps", r < 1e-12,
         "residual = " + fmt(r));
}

// 4. e(3) closure in the zero-energy representation
void criterion_4() {
  const Representation rep = make_zero_rep(8);
  const auto ops = su22_generators(rep, Regime::zero, false);
  const double r = e3_closure_residual(doubled_vector_ops(ops), rep.basis);
  report(4, "e(3) closure [S,S] = 0, [L,S] = -2i eps S", r < 1e-12,
         "residual = " + fmt(r));
}

// 5. oracle equivalence: quantum commutator tables = i x classical, entrywise
void criterion_5() {
  const AlgebraTable& classical = classical_u22_table();
  double worst = 0.0;
  {
    const Representation rep = make_fock_rep(10);
    worst = std::max(worst, commutator_oracle_residual(
                                su22_generators(rep, Regime::neg, false), classical));
  }
  {
    const Representation rep = make_monomial_rep(8);
    worst = std::max(worst, commutator_oracle_residual(
                                su22_generators(rep, Regime::pos, false), classical));
  }
  {
    const Representation rep = make_zero_rep(8);
    worst = std::max(worst, commutator_oracle_residual(
                                su22_generators(rep, Regime::zero, false), classical));
  }
  {
    // table-level entrywise comparison of the expressed structure constants
    const Representation rep = make_fock_rep(6);
    const AlgebraTable qt =
        commutator_table(su22_generators(rep, Regime::neg, false), gen::names());
    worst = std::max(worst, qt.max_residual);
    worst = std::max(worst, qt.max_abs_difference(classical.scaled(cxd(0.0, 1.0))));
  }
  report(5, "quantum tables = i x classical Poisson tables, all regimes", worst < 1e-12,
         "max residual = " + fmt(worst));
}

// 6. dictionary consistency on >= 100 random constraint points
void criterion_6() {
  const double m = 1.0, gamma = 1.0, k = 1.0;
  double worst = 0.0;
  int used = 0;
  for (std::uint64_t seed = 0; used < 100; ++seed) {
    const SpinorPoint p = sample_constraint_point(seed);
    const MomentumMapValue mm = momentum_map(p);
    KeplerState st;
    try {
      st = to_physical(mm, m, gamma, k);
    } catch (const CollisionError&) {
      continue;
    }
    ++used;
    worst = std::max(worst,
                     std::abs(table_hamiltonian(mm, m, gamma, k) - hamiltonian(st)));
    const Vec3 L = angular_momentum(st);
    const Vec3 MN = mm.M + mm.N;
    const Vec3 rl = runge_lenz(st);
    const Vec3 rl2 = runge_lenz_linearized(mm, m, gamma, k);
    for (int j = 0; j < 3; ++j)
      worst = std::max({worst, std::abs(L[j] - MN[j]), std::abs(rl[j] - rl2[j])});
  }
  report(6, "Table consistency: H, L = M+N, both Runge-Lenz routes", worst < 1e-12,
         "max residual over 100 points = " + fmt(worst));
}

// 7. energy-shell relations with calibrated k
void criterion_7() {
  const double m = 1.0, gamma = 1.0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SpinorPoint p = sample_constraint_point(seed);
    const MomentumMapValue mm = momentum_map(p);
    const double kn = calibrate_k(mm, m, gamma, EnergySign::neg);
    worst = std::max(worst, std::abs(table_hamiltonian(mm, m, gamma, kn) +
                                     m * gamma * gamma / (2.0 * mm.J * mm.J)));
    const SpinorPoint pp = sample_constraint_point_negative_p0(seed);
    const MomentumMapValue mmp = momentum_map(pp);
    const double kp = calibrate_k(mmp, m, gamma, EnergySign::pos);
    worst = std::max(worst, std::abs(table_hamiltonian(mmp, m, gamma, kp) -
                                     m * gamma * gamma / (2.0 * mmp.P[0] * mmp.P[0])));
  }
  report(7, "energy shells H = -mg^2/2J^2 and H = +mg^2/2P0^2", worst < 1e-12,
         "max residual = " + fmt(worst));
}

// 8. pullback identities by central finite differences
void criterion_8() {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double h = 1e-6;
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    CotangentPoint p;
    for (int k = 0; k < 2; ++k) {
      p.z[k] = cxd(u(rng), u(rng));
      p.w[k] = cxd(u(rng), u(rng));
    }
    if (norm2(p.z) < 0.3) continue;
    const double c = inner(p.w, p.z).real() / norm2(p.z);
    for (int k = 0; k < 2; ++k) p.w[k] -= c * p.z[k];
    C2 dz{cxd(u(rng), u(rng)), cxd(u(rng), u(rng))};
    C2 dw{cxd(u(rng), u(rng)), cxd(u(rng), u(rng))};
    auto at = [&](double s) {
      CotangentPoint q = p;
      for (int k = 0; k < 2; ++k) {
        q.z[k] += s * dz[k];
        q.w[k] += s * dw[k];
      }
      return ks_pi(q);
    };
    const auto [xp, yp] = at(h);
    const auto [xm, ym] = at(-h);
    const auto [x0, y0] = ks_pi(p);
    Vec3 dx;
    for (int j = 0; j < 3; ++j) dx[j] = (xp[j] - xm[j]) / (2.0 * h);
    worst = std::max(worst, std::abs(dot(y0, dx) - 2.0 * inner(p.w, dz).imag()));
  }
  for (int rep = 0; rep < 100; ++rep) {
    QPPoint qp, dqp;
    for (int k = 0; k < 4; ++k) {
      qp.q[k] = u(rng);
      qp.p[k] = u(rng);
      dqp.q[k] = u(rng);
      dqp.p[k] = u(rng);
    }
    const FreeState f = change_variables_zero(qp);
    const FreeState df = change_variables_zero(dqp);
    double theta7 = 0.0;
    for (int k = 0; k < 2; ++k)
      theta7 += -f.B[k] * df.b[k] + f.b[k] * df.B[k] + f.A[k] * df.a[k] -
                f.a[k] * df.A[k];
    const double theta_zw =
        2.0 * inner(cotangent_of_qp(qp).w, cotangent_of_qp(dqp).z).imag();
    auto F = [](const QPPoint& q) {
      const FreeState s = change_variables_zero(q);
      return s.b[0] * s.B[0] + s.b[1] * s.B[1] - s.a[0] * s.A[0] - s.a[1] * s.A[1];
    };
    QPPoint plus = qp, minus = qp;
    for (int k = 0; k < 4; ++k) {
      plus.q[k] += h * dqp.q[k];
      plus.p[k] += h * dqp.p[k];
      minus.q[k] -= h * dqp.q[k];
      minus.p[k] -= h * dqp.p[k];
    }
    const double dF = (F(plus) - F(minus)) / (2.0 * h);
    worst = std::max(worst, std::abs(theta7 - theta_zw - dF));
  }
  report(8, "pullback identities (KS 1-form and zero-energy 1-form)", worst < 1e-9,
         "max FD residual = " + fmt(worst));
}

// 9. Casimir scalar on the kernel, non-scalar unconstrained
void criterion_9() {
  double worst = 0.0;
  double control = 1e300;
  {
    const Representation rep = make_fock_rep(8);
    const auto ops = su22_generators(rep, Regime::neg, false);
    const CasimirReport c = casimir_check(ops, constraint_kernel(ops[gen::kI]));
    worst = std::max(worst, c.kernel_residual);
    control = std::min(control, c.unconstrained_residual);
  }
  {
    const Representation rep = make_monomial_rep(8);
    const auto ops = su22_generators(rep, Regime::pos, false);
    const CasimirReport c = casimir_check(ops, constraint_kernel(ops[gen::kI]));
    worst = std::max(worst, c.kernel_residual);
    control = std::min(control, c.unconstrained_residual);
  }
  const bool ok = worst < 1e-10 && control > 1e-3;
  report(9, "Casimir scalar on kernels, non-scalar unconstrained", ok,
         "kernel residual = " + fmt(worst) + ", control = " + fmt(control));
}

// 10. propagation: conservation, closed-form period, e = 0.99 benchmark
void criterion_10() {
  bool ok = true;
  std::string detail;
  {
    const KeplerState s0 = make_orbit_state(1.0, 0.0, 1.0, 1.0);
    const double k = std::sqrt(-2.0 * hamiltonian(s0));
    const Trajectory tr =
        propagate_physical(s0, Regime::neg, 10000, 2.0 * M_PI / k / 10000);
    const double drift =
        std::max({tr.max_drift_H(), tr.max_drift_L(), tr.max_drift_RL()});
    ok = ok && drift < 1e-12;
    detail += "circular drift = " + fmt(drift);
  }
  {
    const double a = 1.3, e = 0.6;
    const KeplerState s0 = make_orbit_state(a, e, 1.0, 1.0);
    const double k = std::sqrt(-2.0 * hamiltonian(s0));
    const int n = 100000;
    const Trajectory tr = propagate_physical(s0, Regime::neg, n, 2.0 * M_PI / k / n);
    const double dt = std::abs(tr.samples.back().t - kepler_period(a, 1.0, 1.0));
    ok = ok && dt < 1e-6;
    detail += ", period error = " + fmt(dt);
  }
  {
    const double e = 0.99;
    const KeplerState s0 = make_orbit_state(1.0, e, 1.0, 1.0);
    const double T = kepler_period(1.0, 1.0, 1.0);
    const double k = std::sqrt(-2.0 * hamiltonian(s0));
    const int n = 20000;
    const Trajectory reg = propagate_physical(s0, Regime::neg, n, 2.0 * M_PI / k / n);
    const Trajectory rk = direct_kepler_oracle(s0, T, n);
    const double reg_drift = reg.max_drift_H();
    const double rk_drift = rk.diverged ? 1e300 : rk.max_drift_H();
    const double ratio = rk_drift / std::max(reg_drift, 1e-300);
    ok = ok && ratio >= 1e3;
    detail += ", e=0.99 drift ratio = " + fmt(ratio);
  }
  report(10, "propagation conservation, period, benchmark ratio", ok, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%s: %d/10 criteria passed\n", failures == 0 ? "ACCEPTED" : "REJECTED",
              10 - failures);
  return failures;
}
