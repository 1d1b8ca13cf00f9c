#include "support.hpp"

#include <random>

using namespace ct;

TEST_CASE("build_operator validates the coefficient table") {
  CHECK_NOTHROW(bessel(0.5));
  CHECK(bessel(0.5).order() == 2);
  CHECK(bessel(0.5).weight() == doctest::Approx(-1.0));
  try {
    build_operator(2, {{0.25, 0.0}, {0.0, 0.0}, {0.0, 1.0}});
    FAIL("expected DegenerateLeadingCoefficient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateLeadingCoefficient);
  }
  CHECK_THROWS_AS(build_operator(2, {{0.25}, {1.0}}), Error);
  // Δ_straight-type symbol σ² + iσ
  const auto d = build_operator(2, {{0.0}, {kI}, {1.0}});
  const auto p = conormal_symbol(d, 0);
  CHECK(close(p.coeff(2), 1.0, 0) );
  CHECK(close(p.coeff(1), kI, 0));
  CHECK(close(p.coeff(0), 0.0, 0));
}

TEST_CASE("taylor components and conormal symbols read the table") {
  const auto a = bessel(0.5);
  const auto p0 = conormal_symbol(a, 0);
  CHECK(close(p0(kI * 0.5), 0.0, 1e-15));
  CHECK(close(p0(2.0), 4.25, 1e-15));
  CHECK(conormal_symbol(a, 1).is_zero());
  const auto p = perturbed(3.0);
  CHECK(close(conormal_symbol(p, 1).coeff(0), 3.0, 0));
  CHECK(conormal_symbol(p, 1).degree() == 0);
  const auto frozen = taylor_component(p, 1);
  CHECK(frozen.m == 2);
}

TEST_CASE("model operator drops x-dependence") {
  CHECK(has_x_independent_coefficients(bessel(0.5)));
  CHECK_FALSE(has_x_independent_coefficients(perturbed(1.0)));
  CHECK(has_x_independent_coefficients(bessel(0.5).with_depth(6)));
  const auto m = model_operator(perturbed(1.0));
  CHECK(has_x_independent_coefficients(m));
  CHECK(close(conormal_symbol(m, 0)(1.0), 1.25, 1e-15));
}

TEST_CASE("symbolic application on log-power functions") {
  const auto a0 = taylor_component(bessel(0.5), 0);
  CHECK(apply_symbolic(a0, LogPowerFunction::monomial(power_sigma(0.5), 0)).trimmed(1e-14).is_zero());
  // (xD) log x = -i
  const auto xdlog = LogPowerFunction::monomial(0.0, 1).apply_xD();
  CHECK(close(xdlog.coeff(0.0, 0), -kI, 1e-15));
  CHECK(close(xdlog.coeff(0.0, 1), 0.0, 1e-15));
  CHECK(apply_symbolic(taylor_component(bessel(0.0), 0), LogPowerFunction::monomial(0.0, 1)).trimmed(1e-14).is_zero());
}

TEST_CASE("property: symbolic action matches finite differences") {
  // A u at x versus x^{-2}(-(x∂)^2 u + ν² u + c x u) from the Euler jet
  const auto p = perturbed(0.7);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    LogPowerFunction f = LogPowerFunction::block({u(rng), u(rng)}, {cplx(u(rng), u(rng)), cplx(u(rng), u(rng))});
    f += LogPowerFunction::monomial({0.0, u(rng)}, 0, cplx(u(rng), 0.0));
    const auto af = apply_symbolic(p, f, p.depth());
    for (double x : {0.2, 0.5, 0.9}) {
      const auto jet = f.euler_jet(x, 3);
      const cplx direct = (-jet[2] + 0.25 * jet[0] + 0.7 * x * jet[0]) / (x * x);
      CHECK(std::abs(af(x) - direct) <= 1e-12 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("parameter ellipticity on sectors") {
  const auto a = bessel(0.5);
  CHECK(check_parameter_ellipticity(a, Sector{kPi, kPi / 4}));
  CHECK_FALSE(check_parameter_ellipticity(a, Sector{0.0, kPi / 4}));
  CHECK(check_parameter_ellipticity(a.negated(), Sector{0.0, kPi / 4}));
}

TEST_CASE("formal symmetry") {
  CHECK(is_formally_symmetric(bessel(0.5)));
  CHECK(is_formally_symmetric(build_operator(2, {{0.0}, {1.0}, {1.0}})));  // real symbol in t = log x
  CHECK_FALSE(is_formally_symmetric(build_operator(2, {{0.0}, {kI}, {1.0}})));
}

TEST_CASE("polynomial arithmetic and roots") {
  const Polynomial p({0.25, 0.0, 1.0});
  const auto roots = polynomial_roots(p);
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) CHECK(std::abs(std::abs(r.value) - 0.5) < 1e-14);
  const auto dbl = polynomial_roots(Polynomial({0.0, 0.0, 1.0}));
  REQUIRE(dbl.size() == 1);
  CHECK(dbl[0].multiplicity == 2);
  const auto q = Polynomial({1.0, 2.0}) * Polynomial({-1.0, 1.0});
  CHECK(close(q(3.0), 7.0 * 2.0, 1e-14));
  CHECK(close(p.derivative()(1.0), 2.0, 1e-15));
  CHECK(close(p.shifted(1.0)(0.0), p(1.0), 1e-15));
}

TEST_CASE("log-power functions: canonical form and kappa scaling") {
  auto f = LogPowerFunction::monomial(power_sigma(0.5), 1, 2.0);
  f += LogPowerFunction::monomial(power_sigma(0.5), 1, -2.0);
  CHECK(f.is_zero());
  // κ_ρ f(x) = ρ^{m/2} f(ρx)
  const auto g = LogPowerFunction::monomial(power_sigma(-0.5), 1) + LogPowerFunction::monomial(power_sigma(1.5), 0, kI);
  const double rho = 0.3;
  for (double x : {0.1, 0.5, 2.0}) CHECK(close(g.kappa(rho, 2)(x), rho * g(rho * x), 1e-13));
  CHECK(LogPowerFunction::monomial(power_sigma(0.5), 0).terms()[0].real_power() == doctest::Approx(0.5));
}
