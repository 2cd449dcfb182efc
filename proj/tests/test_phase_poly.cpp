#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "keplerreg/algebra_table.hpp"
#include "keplerreg/flows.hpp"
#include "keplerreg/generators.hpp"
#include "keplerreg/phase_poly.hpp"
#include "keplerreg/spinor.hpp"

using namespace keplerreg;
namespace gen = keplerreg::generators;

namespace {

PhasePolynomial random_poly(std::mt19937_64& rng, const ChartPtr& chart, int max_degree,
                            int n_terms) {
  std::uniform_int_distribution<int> slot(0, 7), coeff(-3, 3), deg(0, max_degree);
  PhasePolynomial p(chart);
  for (int t = 0; t < n_terms; ++t) {
    Monomial m;
    const int d = deg(rng);
    for (int q = 0; q < d; ++q) m.e[slot(rng)] += 1;
    p.add_term(m, CRational(Rational(coeff(rng)), Rational(coeff(rng), 2)));
  }
  return p;
}

}  // namespace

TEST_CASE("bracket normalization on coordinates") {
  const auto c = charts::spinor();
  auto eta1 = PhasePolynomial::variable(c, 0);
  auto eta1c = PhasePolynomial::variable(c, 1);
  auto eta2c = PhasePolynomial::variable(c, 3);
  auto zeta1 = PhasePolynomial::variable(c, 4);
  auto zeta1c = PhasePolynomial::variable(c, 5);

  // {eta1, ~eta1} = -i, {zeta1, ~zeta1} = +i, cross brackets vanish
  auto b = poisson_bracket(eta1, eta1c);
  CHECK(b == PhasePolynomial::constant(c, -CRational::i()));
  b = poisson_bracket(zeta1, zeta1c);
  CHECK(b == PhasePolynomial::constant(c, CRational::i()));
  CHECK(poisson_bracket(eta1, eta2c).is_zero());
  CHECK(poisson_bracket(eta1, zeta1c).is_zero());
  CHECK(poisson_bracket(eta1, zeta1).is_zero());
}

TEST_CASE("bracket axioms hold exactly on random cubics") {
  std::mt19937_64 rng(7);
  const auto c = charts::spinor();
  for (int rep = 0; rep < 12; ++rep) {
    auto f = random_poly(rng, c, 3, 5);
    auto g = random_poly(rng, c, 3, 5);
    auto h = random_poly(rng, c, 3, 5);

    // antisymmetry, and {f,f} = 0
    CHECK(poisson_bracket(f, f).is_zero());
    CHECK((poisson_bracket(f, g) + poisson_bracket(g, f)).is_zero());

    // Leibniz: {f, g h} = {f,g} h + g {f,h}
    auto lhs = poisson_bracket(f, g * h);
    auto rhs = poisson_bracket(f, g) * h + g * poisson_bracket(f, h);
    CHECK((lhs - rhs).is_zero());

    // Jacobi: {f,{g,h}} + {g,{h,f}} + {h,{f,g}} = 0
    auto jac = poisson_bracket(f, poisson_bracket(g, h)) +
               poisson_bracket(g, poisson_bracket(h, f)) +
               poisson_bracket(h, poisson_bracket(f, g));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("bilinearity") {
  std::mt19937_64 rng(11);
  const auto c = charts::spinor();
  auto f = random_poly(rng, c, 2, 4);
  auto g = random_poly(rng, c, 2, 4);
  auto h = random_poly(rng, c, 2, 4);
  CRational a(Rational(3, 2)), b(Rational(-2, 5));
  auto lhs = poisson_bracket(a * f + b * g, h);
  auto rhs = a * poisson_bracket(f, h) + b * poisson_bracket(g, h);
  CHECK((lhs - rhs).is_zero());
}

TEST_CASE("chart mismatch is a structural error") {
  auto f = PhasePolynomial::variable(charts::spinor(), 0);
  auto g = PhasePolynomial::variable(charts::mu(), 0);
  CHECK_THROWS_AS(poisson_bracket(f, g), ChartMismatchError);
  CHECK_THROWS_AS(f + g, ChartMismatchError);
}

TEST_CASE("I is central among the sixteen generators") {
  const auto g = gen::spinor_generators();
  for (std::size_t k = 0; k < g.size(); ++k)
    CHECK(poisson_bracket(g[gen::kI], g[k]).is_zero());
}

TEST_CASE("{I, J} = 0 and singleton table") {
  const auto g = gen::spinor_generators();
  CHECK(poisson_bracket(g[gen::kI], g[gen::kJ]).is_zero());

  auto t = structure_table({g[gen::kI]}, {"I"}, *charts::spinor());
  CHECK(t.f[0][0][0] == std::complex<double>(0.0));
  CHECK(t.affine[0][0] == std::complex<double>(0.0));

  auto t2 = structure_table({g[gen::kJ], g[gen::kI]}, {"J", "I"}, *charts::spinor());
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(t2.affine[i][j] == std::complex<double>(0.0));
      for (std::size_t k = 0; k < 2; ++k)
        CHECK(t2.f[i][j][k] == std::complex<double>(0.0));
    }
}

TEST_CASE("{M1, M2} = -M3 exactly, and evaluates per the quantum convention") {
  const auto g = gen::spinor_generators();
  auto b = poisson_bracket(g[gen::kM1], g[gen::kM2]);
  CHECK((b + g[gen::kM3]).is_zero());

  // At eta=(1,0), zeta=(1,0): M3 = -1/2 so the bracket evaluates to +1/2.
  SpinorPoint p{{cxd(1, 0), cxd(0, 0)}, {cxd(1, 0), cxd(0, 0)}};
  CHECK(b.evaluate(spinor_slots(p)) == cxd(0.5, 0.0));
}

TEST_CASE("the sixteen generators close as u(2,2) with I central") {
  const auto g = gen::spinor_generators();
  auto t = structure_table(g, gen::names(), *charts::spinor());
  CHECK(t.antisymmetry_error() == 0.0);
  CHECK(t.jacobi_error() < 1e-12);
  CHECK_FALSE(t.has_affine());
  for (std::size_t j = 0; j < 16; ++j)
    for (std::size_t k = 0; k < 16; ++k) {
      CHECK(t.f[gen::kI][j][k] == std::complex<double>(0.0));
      CHECK(t.f[j][gen::kI][k] == std::complex<double>(0.0));
    }
  // a few known entries: {M1,M2} = -M3, {Q0,P0} = -J, {P1,P2} = +L3
  CHECK(t.f[gen::kM1][gen::kM2][gen::kM3] == std::complex<double>(-1.0));
  CHECK(t.f[gen::kQ0][gen::kP0][gen::kJ] == std::complex<double>(-1.0));
  CHECK(t.f[gen::kP1][gen::kP2][gen::kM3] == std::complex<double>(1.0));
  CHECK(t.f[gen::kP1][gen::kP2][gen::kN3] == std::complex<double>(1.0));
}

TEST_CASE("bracket outside the span raises a closure error with the pair") {
  const auto g = gen::spinor_generators();
  try {
    structure_table({g[gen::kM1], g[gen::kM2]}, {"M1", "M2"}, *charts::spinor());
    FAIL("expected ClosureError");
  } catch (const ClosureError& e) {
    CHECK(e.lhs == "M1");
    CHECK(e.rhs == "M2");
    CHECK(!e.residual_poly.empty());
  }
}

TEST_CASE("structure table is identical in the repulsive and zero-energy charts") {
  const auto base = structure_table(gen::spinor_generators(), gen::names(),
                                    *charts::spinor());
  const auto in_mu = structure_table(gen::transported_generators(gen::spinor_to_mu()),
                                     gen::names(), *charts::mu());
  const auto in_uv = structure_table(gen::transported_generators(gen::spinor_to_uv()),
                                     gen::names(), *charts::uv());
  CHECK(base.max_abs_difference(in_mu) == 0.0);
  CHECK(base.max_abs_difference(in_uv) == 0.0);
}

TEST_CASE("transported generators evaluate consistently at mapped points") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto gs = gen::spinor_generators();
  const auto gmu = gen::transported_generators(gen::spinor_to_mu());
  const auto guv = gen::transported_generators(gen::spinor_to_uv());
  for (int rep = 0; rep < 20; ++rep) {
    SpinorPoint p;
    for (int k = 0; k < 2; ++k) {
      p.eta[k] = cxd(u(rng), u(rng));
      p.zeta[k] = cxd(u(rng), u(rng));
    }
    const auto sv = spinor_slots(p);
    const auto mv = mu_slots(change_variables_positive(p));
    const auto uvv = uv_slots(free_of_spinor(p));
    for (std::size_t k = 0; k < gs.size(); ++k) {
      const cxd a = gs[k].evaluate(sv);
      CHECK(std::abs(a - gmu[k].evaluate(mv)) < 1e-13);
      CHECK(std::abs(a - guv[k].evaluate(uvv)) < 1e-13);
    }
  }
}

TEST_CASE("evaluation agrees with the momentum map") {
  const auto gs = gen::spinor_generators();
  SpinorPoint p = sample_constraint_point(5);
  const auto sv = spinor_slots(p);
  const auto mm = momentum_map(p);
  CHECK(std::abs(gs[gen::kI].evaluate(sv) - mm.I) < 1e-15);
  CHECK(std::abs(gs[gen::kJ].evaluate(sv) - mm.J) < 1e-15);
  CHECK(std::abs(gs[gen::kM3].evaluate(sv) - mm.M[2]) < 1e-15);
  CHECK(std::abs(gs[gen::kN1].evaluate(sv) - mm.N[0]) < 1e-15);
  CHECK(std::abs(gs[gen::kQ0].evaluate(sv) - mm.Q[0]) < 1e-15);
  CHECK(std::abs(gs[gen::kP2].evaluate(sv) - mm.P[2]) < 1e-15);
}

TEST_CASE("algebra table serializes to the documented JSON shape") {
  const auto g = gen::spinor_generators();
  auto t = structure_table({g[gen::kM1], g[gen::kM2], g[gen::kM3]}, {"M1", "M2", "M3"},
                           *charts::spinor());
  auto j = t.to_json();
  CHECK(j["generators"].size() == 3);
  CHECK(j["f"].size() == 3);
  CHECK(j["f"][0].size() == 3);
  CHECK(j["f"][0][1].size() == 3);
  CHECK(j["f"][0][1][2][0] == -1.0);  // {M1,M2} = -M3, real part
  CHECK(j["f"][0][1][2][1] == 0.0);
  CHECK_FALSE(j.contains("affine"));
}
