#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "keplerreg/errors.hpp"
#include "keplerreg/flows.hpp"
#include "keplerreg/ks_map.hpp"

namespace keplerreg {

enum class Regime { neg, pos, zero };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::neg: return "neg";
    case Regime::pos: return "pos";
    default: return "zero";
  }
}

struct TrajectorySample {
  double s = 0.0;  // fictitious time
  double t = 0.0;  // physical time
  KeplerState state;
  double H = 0.0;
  Vec3 L{};
  Vec3 RL{};
};

struct TrajectoryEvent {
  double s = 0.0;
  std::string kind;  // "collision" or "perihelion"
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::vector<TrajectoryEvent> events;
  bool diverged = false;

  double max_drift_H() const {
    if (samples.empty()) return 0.0;
    double d = 0.0;
    for (auto& s : samples) d = std::max(d, std::abs(s.H - samples.front().H));
    return d;
  }
  double max_drift_L() const {
    if (samples.empty()) return 0.0;
    double d = 0.0;
    for (auto& s : samples)
      for (int k = 0; k < 3; ++k)
        d = std::max(d, std::abs(s.L[k] - samples.front().L[k]));
    return d;
  }
  double max_drift_RL() const {
    if (samples.empty()) return 0.0;
    double d = 0.0;
    for (auto& s : samples)
      for (int k = 0; k < 3; ++k)
        d = std::max(d, std::abs(s.RL[k] - samples.front().RL[k]));
    return d;
  }
};

/// CSV per the external contract; one row per sample, 17 significant digits.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "s,t,x1,x2,x3,y1,y2,y3,H,L1,L2,L3,RL1,RL2,RL3\n";
  char buf[32];
  auto put = [&os, &buf](double v, bool last = false) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf << (last ? "\n" : ",");
  };
  for (const auto& s : tr.samples) {
    put(s.s);
    put(s.t);
    for (int k = 0; k < 3; ++k) put(s.state.X[k]);
    for (int k = 0; k < 3; ++k) put(s.state.Y[k]);
    put(s.H);
    for (int k = 0; k < 3; ++k) put(s.L[k]);
    for (int k = 0; k < 3; ++k) put(s.RL[k], k == 2);
  }
}

/// Closed-form Kepler period 2 pi sqrt(m a^3 / gamma) for bound orbits.
inline double kepler_period(double a, double m, double gamma) {
  return 2.0 * M_PI * std::sqrt(m * a * a * a / gamma);
}

/// Bound-orbit state at perihelion, orbit in the xy-plane.
inline KeplerState make_orbit_state(double a, double e, double m, double gamma) {
  const double rp = a * (1.0 - e);
  const double v = std::sqrt((gamma / m) * (2.0 / rp - 1.0 / a));
  KeplerState s;
  s.m = m;
  s.gamma = gamma;
  s.X = {rp, 0.0, 0.0};
  s.Y = {0.0, m * v, 0.0};
  return s;
}

/// Closed-form elliptic Kepler solution with perihelion passage at t = 0;
/// Newton iteration on E - e sin E = M (safe start near e -> 1).
inline std::pair<Vec3, Vec3> kepler_closed_form(double a, double e, double m,
                                                double gamma, double t) {
  const double n = 2.0 * M_PI / kepler_period(a, m, gamma);
  double M = std::fmod(n * t, 2.0 * M_PI);
  if (M < 0) M += 2.0 * M_PI;
  double E = (e < 0.8) ? M : M_PI;
  for (int it = 0; it < 100; ++it) {
    const double f = E - e * std::sin(E) - M;
    const double fp = 1.0 - e * std::cos(E);
    const double dE = f / fp;
    E -= dE;
    if (std::abs(dE) < 1e-15) break;
  }
  const double cE = std::cos(E), sE = std::sin(E);
  const double b = a * std::sqrt(1.0 - e * e);
  const Vec3 X = {a * (cE - e), b * sE, 0.0};
  const double r = a * (1.0 - e * cE);
  const double Edot = n * a / r;
  const Vec3 V = {-a * sE * Edot, b * cE * Edot, 0.0};
  return {X, {m * V[0], m * V[1], m * V[2]}};
}

namespace detail {

inline void fill_sample(TrajectorySample& out, const SpinorPoint& sp, double m,
                        double gamma, double k) {
  const MomentumMapValue mm = momentum_map(sp);
  out.state = to_physical(mm, m, gamma, k);
  out.H = hamiltonian(out.state);
  out.L = angular_momentum(out.state);
  out.RL = runge_lenz(out.state);
}

inline void tag_radial_minima(Trajectory& tr, const std::vector<double>& r,
                              const std::vector<double>& s, bool radial_orbit) {
  double rmax = 0.0;
  for (double v : r) rmax = std::max(rmax, v);
  const double prominence = 1e-9 * (rmax + 1.0);  // ignore rounding wiggles
  for (std::size_t j = 1; j + 1 < r.size(); ++j) {
    if (r[j] < r[j - 1] - prominence && r[j] < r[j + 1] - prominence) {
      const bool hit = radial_orbit || r[j] < 1e-10 * (r.front() + 1.0);
      tr.events.push_back({s[j], hit ? "collision" : "perihelion"});
    }
  }
}

}  // namespace detail

/// Exactly propagates a physical state through the linearized flow of its
/// energy regime and maps every sample back through the physical dictionary.
///
/// The evolution parameter s is the fictitious time of the level-set
/// Hamiltonians k J - gamma sqrt(m) (E<0), -(k P0 + gamma sqrt(m)) (E>0) and
/// k E0 - gamma sqrt(m) (E=0), all of which rescale the physical flow by
/// sqrt(m) r; physical time is recovered by the trapezoidal quadrature of
/// dt = sqrt(m) r ds, with the flow direction fixed so s increases along the
/// physical velocity field. k is calibrated so the shell is H = -k^2/2 (neg)
/// or +k^2/2 (pos); for zero energy k is the state's own scale parameter.
inline Trajectory propagate_physical(const KeplerState& initial, Regime regime,
                                     int n_steps, double dlambda) {
  const double H0 = hamiltonian(initial);
  const double scale = std::abs(initial.gamma / norm(initial.X)) +
                       dot(initial.Y, initial.Y) / (2.0 * initial.m);
  double k = initial.k;
  switch (regime) {
    case Regime::neg:
      if (!(H0 < 0.0))
        throw DomainError("propagate: regime 'neg' needs negative energy, H = " +
                          std::to_string(H0));
      k = std::sqrt(-2.0 * H0);
      break;
    case Regime::pos:
      if (!(H0 > 0.0))
        throw DomainError("propagate: regime 'pos' needs positive energy, H = " +
                          std::to_string(H0));
      k = std::sqrt(2.0 * H0);
      break;
    case Regime::zero:
      if (std::abs(H0) > 1e-10 * scale)
        throw DomainError("propagate: regime 'zero' needs H = 0, H = " +
                          std::to_string(H0));
      break;
  }

  KeplerState st = initial;
  st.k = k;
  const SpinorPoint sp0 = lift_to_spinor(st);
  const double m = initial.m, gamma = initial.gamma;
  const double sqm = std::sqrt(m);

  // Regime-specific exact flow in s, expressed through the group flows.
  const OscillatorState osc0 = oscillator_of_spinor(sp0);
  const RepulsiveState rep0 = change_variables_positive(sp0);
  const FreeState free0 = free_of_spinor(sp0);
  auto at = [&](double s) -> SpinorPoint {
    switch (regime) {
      case Regime::neg:
        return spinor_of_oscillator(flow_harmonic(osc0, -0.5 * k * s));
      case Regime::pos:
        return spinor_of_repulsive(flow_repulsive(rep0, 0.5 * k * s));
      default: {
        FreeState f = free0;
        for (int j = 0; j < 2; ++j) {
          f.a[j] += 0.5 * k * f.A[j] * s;
          f.b[j] -= 0.5 * k * f.B[j] * s;
        }
        f.lambda = s;
        return spinor_of_free(f);
      }
    }
  };

  Trajectory tr;
  tr.samples.reserve(n_steps + 1);
  std::vector<double> rs, ss;
  rs.reserve(n_steps + 1);
  ss.reserve(n_steps + 1);
  double t = 0.0, r_prev = 0.0;
  for (int j = 0; j <= n_steps; ++j) {
    const double s = j * dlambda;
    const SpinorPoint sp = at(s);
    const CotangentPoint ct = cotangent_of(sp);
    const double r = norm2(ct.z) / (sqm * k);  // physical radius, valid at collisions
    if (j > 0) t += sqm * 0.5 * (r_prev + r) * dlambda;
    r_prev = r;
    rs.push_back(r);
    ss.push_back(s);
    TrajectorySample sample;
    sample.s = s;
    sample.t = t;
    try {
      detail::fill_sample(sample, sp, m, gamma, k);
      tr.samples.push_back(sample);
    } catch (const CollisionError&) {
      tr.events.push_back({s, "collision"});
    } catch (const SingularChartError&) {
      tr.events.push_back({s, "chart-boundary"});
    }
  }
  const double l0 = norm(angular_momentum(initial));
  detail::tag_radial_minima(tr, rs, ss,
                            l0 < 1e-12 * (norm(initial.X) * norm(initial.Y) + 1.0));
  return tr;
}

/// Classic fixed-step RK4 baseline on X' = Y/m, Y' = -gamma X/|X|^3.
inline Trajectory direct_kepler_oracle(const KeplerState& initial, double t_end,
                                       int n_steps) {
  const double m = initial.m, gamma = initial.gamma;
  auto rhs = [m, gamma](const Vec3& X, const Vec3& Y, Vec3& dX, Vec3& dY) {
    const double r = norm(X);
    const double c = -gamma / (r * r * r);
    dX = (1.0 / m) * Y;
    dY = c * X;
  };
  Trajectory tr;
  tr.samples.reserve(n_steps + 1);
  KeplerState st = initial;
  const double h = t_end / n_steps;
  const double H0 = hamiltonian(initial);
  std::vector<double> rs, ss;
  for (int j = 0; j <= n_steps; ++j) {
    const double t = j * h;
    const double H = hamiltonian(st);
    if (!std::isfinite(norm(st.X)) || norm(st.X) < 1e-12 || !std::isfinite(H) ||
        std::abs(H - H0) > 10.0 * (std::abs(H0) + 1.0)) {
      tr.diverged = true;  // stepped through a close encounter it cannot resolve
      break;
    }
    TrajectorySample sample;
    sample.s = t;
    sample.t = t;
    sample.state = st;
    sample.H = H;
    sample.L = angular_momentum(st);
    sample.RL = runge_lenz(st);
    tr.samples.push_back(sample);
    rs.push_back(norm(st.X));
    ss.push_back(t);
    if (j == n_steps) break;
    Vec3 k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y;
    rhs(st.X, st.Y, k1x, k1y);
    rhs(st.X + (0.5 * h) * k1x, st.Y + (0.5 * h) * k1y, k2x, k2y);
    rhs(st.X + (0.5 * h) * k2x, st.Y + (0.5 * h) * k2y, k3x, k3y);
    rhs(st.X + h * k3x, st.Y + h * k3y, k4x, k4y);
    st.X = st.X + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    st.Y = st.Y + (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
  }
  detail::tag_radial_minima(tr, rs, ss, false);
  return tr;
}

}  // namespace keplerreg
