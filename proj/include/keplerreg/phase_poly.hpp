#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "keplerreg/rational.hpp"

namespace keplerreg {

struct ChartMismatchError : std::runtime_error {
  ChartMismatchError() : std::runtime_error("polynomials live on different charts") {}
};

/// A phase-space chart: four complex conjugate pairs with a symplectic sign
/// per pair. Slot 2k holds the k-th coordinate, slot 2k+1 its conjugate, and
/// {u_k, conj(u_k)} = -i * sign[k].
///
/// Real canonical charts (used only as quantization targets, never for
/// brackets) reuse the same 8-slot layout with sign[k] = 0.
struct Chart {
  std::string name;
  std::array<std::string, 8> slot_names;
  std::array<int, 4> signs{};  // 0 when the chart carries no bracket

  bool operator==(const Chart& o) const { return name == o.name; }
};

using ChartPtr = std::shared_ptr<const Chart>;

/// Builders for the charts used across the toolkit.
namespace charts {

inline ChartPtr spinor() {
  static const ChartPtr c = std::make_shared<Chart>(Chart{
      "spinor",
      {"eta1", "~eta1", "eta2", "~eta2", "zeta1", "~zeta1", "zeta2", "~zeta2"},
      {+1, +1, -1, -1}});
  return c;
}

/// Cotangent chart (z, w); {z_a, conj(w_b)} = -i delta is not of conjugate-pair
/// form, so this chart is a substitution target only (no bracket).
inline ChartPtr zw() {
  static const ChartPtr c = std::make_shared<Chart>(Chart{
      "zw", {"z1", "~z1", "z2", "~z2", "w1", "~w1", "w2", "~w2"}, {0, 0, 0, 0}});
  return c;
}

/// Repulsive-regime complex pairs mu_k = (alpha_k + i nu_k)/sqrt(2).
inline ChartPtr mu() {
  static const ChartPtr c = std::make_shared<Chart>(Chart{
      "mu", {"mu1", "~mu1", "mu2", "~mu2", "mu3", "~mu3", "mu4", "~mu4"},
      {+1, +1, +1, +1}});
  return c;
}

/// Repulsive-regime real chart (alpha_k, nu_k); quantization target.
inline ChartPtr alphanu() {
  static const ChartPtr c = std::make_shared<Chart>(Chart{
      "alphanu", {"a1", "n1", "a2", "n2", "a3", "n3", "a4", "n4"}, {0, 0, 0, 0}});
  return c;
}

/// Zero-energy complex pairs u_i = b_i + i B_i (sign +1), v_i = a_i + i A_i
/// (sign -1); the opposite signs realize the opposite canonical structure of
/// the (b,B) and (a,A) sectors.
inline ChartPtr uv() {
  static const ChartPtr c = std::make_shared<Chart>(Chart{
      "uv", {"u0", "~u0", "u1", "~u1", "v0", "~v0", "v1", "~v1"},
      {+1, +1, -1, -1}});
  return c;
}

/// Zero-energy real chart (a_i, A_i, b_i, B_i); quantization target.
inline ChartPtr abAB() {
  static const ChartPtr c = std::make_shared<Chart>(Chart{
      "abAB", {"sa0", "lA0", "sb0", "lB0", "sa1", "lA1", "sb1", "lB1"},
      {0, 0, 0, 0}});
  return c;
}

}  // namespace charts

/// Exponent vector over the 8 chart slots.
struct Monomial {
  std::array<std::uint8_t, 8> e{};

  int degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool operator<(const Monomial& o) const { return e < o.e; }
  bool operator==(const Monomial& o) const { return e == o.e; }
};

/// Exact multivariate polynomial over a chart's 8 slots with Gaussian
/// rational coefficients. No zero coefficients are stored; all arithmetic is
/// exact.
class PhasePolynomial {
 public:
  PhasePolynomial() = default;
  explicit PhasePolynomial(ChartPtr chart) : chart_(std::move(chart)) {}

  static PhasePolynomial constant(ChartPtr chart, CRational c) {
    PhasePolynomial p(std::move(chart));
    p.add_term(Monomial{}, c);
    return p;
  }
  static PhasePolynomial variable(ChartPtr chart, int slot) {
    PhasePolynomial p(std::move(chart));
    Monomial m;
    m.e[slot] = 1;
    p.add_term(m, CRational(1));
    return p;
  }

  const ChartPtr& chart() const { return chart_; }
  const std::map<Monomial, CRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }
  bool is_homogeneous(int d) const {
    for (auto& [m, c] : terms_)
      if (m.degree() != d) return false;
    return true;
  }

  void add_term(const Monomial& m, const CRational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend PhasePolynomial operator+(const PhasePolynomial& a, const PhasePolynomial& b) {
    a.check_chart(b);
    PhasePolynomial r = a;
    for (auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend PhasePolynomial operator-(const PhasePolynomial& a, const PhasePolynomial& b) {
    a.check_chart(b);
    PhasePolynomial r = a;
    for (auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  friend PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b) {
    a.check_chart(b);
    PhasePolynomial r(a.chart_ ? a.chart_ : b.chart_);
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) {
        Monomial m;
        for (int k = 0; k < 8; ++k) m.e[k] = std::uint8_t(ma.e[k] + mb.e[k]);
        r.add_term(m, ca * cb);
      }
    return r;
  }
  friend PhasePolynomial operator*(const CRational& c, const PhasePolynomial& p) {
    PhasePolynomial r(p.chart_);
    for (auto& [m, pc] : p.terms_) r.add_term(m, c * pc);
    return r;
  }
  PhasePolynomial operator-() const { return CRational(-1) * (*this); }

  bool operator==(const PhasePolynomial& o) const { return terms_ == o.terms_; }

  PhasePolynomial derivative(int slot) const {
    PhasePolynomial r(chart_);
    for (auto& [m, c] : terms_) {
      if (m.e[slot] == 0) continue;
      Monomial d = m;
      d.e[slot] -= 1;
      r.add_term(d, CRational(Rational(m.e[slot])) * c);
    }
    return r;
  }

  /// Term-by-term evaluation; values holds the 8 slot values (conjugate slots
  /// are the caller's responsibility, see eval_point below).
  std::complex<double> evaluate(const std::array<std::complex<double>, 8>& values) const {
    std::complex<double> acc = 0.0;
    for (auto& [m, c] : terms_) {
      std::complex<double> t = c.to_complex();
      for (int k = 0; k < 8; ++k)
        for (int p = 0; p < m.e[k]; ++p) t *= values[k];
      acc += t;
    }
    return acc;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += c.str();
      for (int k = 0; k < 8; ++k)
        for (int p = 0; p < m.e[k]; ++p)
          s += "*" + (chart_ ? chart_->slot_names[k] : std::to_string(k));
    }
    return s;
  }

 private:
  void check_chart(const PhasePolynomial& o) const {
    if (chart_ && o.chart_ && !(*chart_ == *o.chart_)) throw ChartMismatchError();
  }

  ChartPtr chart_;
  std::map<Monomial, CRational> terms_;
};

/// Fills the 8 slot values from the 4 coordinate values (conjugate slots get
/// the complex conjugates).
inline std::array<std::complex<double>, 8> slot_values(
    const std::array<std::complex<double>, 4>& coords) {
  std::array<std::complex<double>, 8> v;
  for (int k = 0; k < 4; ++k) {
    v[2 * k] = coords[k];
    v[2 * k + 1] = std::conj(coords[k]);
  }
  return v;
}

/// Exact Poisson bracket induced by the chart signature:
/// {f,g} = sum_k (-i s_k) (df/du_k dg/d~u_k - df/d~u_k dg/du_k).
/// The normalization {eta_i, ~eta_j} = -i delta_ij, {zeta_i, ~zeta_j} =
/// +i delta_ij is the convention certified by the quantum commutator tables.
inline PhasePolynomial poisson_bracket(const PhasePolynomial& f, const PhasePolynomial& g,
                                       const Chart& sig) {
  if (!f.chart() || !g.chart() || !(*f.chart() == sig) || !(*g.chart() == sig))
    throw ChartMismatchError();
  PhasePolynomial r(f.chart());
  for (int k = 0; k < 4; ++k) {
    if (sig.signs[k] == 0)
      throw std::invalid_argument("chart '" + sig.name + "' carries no bracket");
    CRational factor(Rational(0), Rational(-sig.signs[k]));  // -i * s_k
    PhasePolynomial t = f.derivative(2 * k) * g.derivative(2 * k + 1) -
                        f.derivative(2 * k + 1) * g.derivative(2 * k);
    r = r + factor * t;
  }
  return r;
}

inline PhasePolynomial poisson_bracket(const PhasePolynomial& f, const PhasePolynomial& g) {
  if (!f.chart()) throw ChartMismatchError();
  return poisson_bracket(f, g, *f.chart());
}

/// Exact linear change of chart x = (M y) / sqrt(2)^p, applied to polynomials
/// whose every monomial has even total degree times p (so the result stays
/// rational). In practice this transforms the quadratic generators.
struct LinearChartMap {
  ChartPtr from;  // chart of the input polynomial
  ChartPtr to;    // chart of the output
  std::array<std::array<CRational, 8>, 8> M{};
  int sqrt2_pow = 0;

  /// Composition: this: A <- B, other: B <- C gives A <- C.
  LinearChartMap then(const LinearChartMap& other) const {
    if (!(*to == *other.from))
      throw std::invalid_argument("chart map composition mismatch");
    LinearChartMap r;
    r.from = from;
    r.to = other.to;
    r.sqrt2_pow = sqrt2_pow + other.sqrt2_pow;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        CRational acc;
        for (int k = 0; k < 8; ++k) acc += M[i][k] * other.M[k][j];
        r.M[i][j] = acc;
      }
    return r;
  }
};

inline PhasePolynomial substitute(const PhasePolynomial& p, const LinearChartMap& map) {
  if (!p.chart() || !(*p.chart() == *map.from)) throw ChartMismatchError();
  PhasePolynomial result(map.to);
  for (auto& [m, c] : p.terms()) {
    int d = m.degree();
    if ((d * map.sqrt2_pow) % 2 != 0)
      throw std::invalid_argument("irrational scale: odd sqrt2 power on degree-" +
                                  std::to_string(d) + " term");
    // scale = 2^{-d*p/2}
    Rational scale(1);
    for (int q = 0; q < d * map.sqrt2_pow / 2; ++q) scale = scale * Rational(1, 2);
    PhasePolynomial term = PhasePolynomial::constant(map.to, c * CRational(scale));
    for (int k = 0; k < 8; ++k)
      for (int rep = 0; rep < m.e[k]; ++rep) {
        PhasePolynomial lin(map.to);
        for (int j = 0; j < 8; ++j) {
          if (map.M[k][j].is_zero()) continue;
          Monomial mj;
          mj.e[j] = 1;
          lin.add_term(mj, map.M[k][j]);
        }
        term = term * lin;
      }
    result = result + term;
  }
  return result;
}

}  // namespace keplerreg
