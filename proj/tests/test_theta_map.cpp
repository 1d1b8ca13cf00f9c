#include "support.hpp"

using namespace ct;

TEST_CASE("x-independent coefficients give vanishing tails") {
  for (double nu : {0.0, 0.25, 0.5}) {
    const auto a = bessel(nu).with_depth(5);
    for (const auto& b : canonical_basis(a))
      for (const auto& s : e_steps(a, b.function(), 5)) CHECK(s.value.is_zero());
  }
  const auto tm = theta_matrix(bessel(0.5));
  CHECK(tm.dimension() == 2);
  CHECK(tm.theta().isIdentity());
  for (const auto& t : tm.tails)
    for (const auto& st : t.steps) CHECK(st.value.is_zero());
}

TEST_CASE("perturbed Bessel: first tail step matches the Frobenius oracle") {
  for (double c : {1.0, -2.0, 0.3}) {
    const auto p = perturbed(c).with_depth(3);
    const auto psi = LogPowerFunction::monomial(power_sigma(0.5), 0);
    const auto steps = e_steps(p, psi, 2);
    CHECK(close(steps[0].value.coeff(power_sigma(1.5), 0), c / 2.0, 1e-13));
    CHECK_FALSE(steps[0].resonant);
    // second order: (P0 + c x) recursion gives γ2 = c γ1 / ((ν+2)² − ν²)
    CHECK(close(steps[1].value.coeff(power_sigma(2.5), 0), c * c / 2.0 / 6.0, 1e-13));
  }
}

TEST_CASE("theta_inverse totals") {
  const auto psi = LogPowerFunction::monomial(power_sigma(0.5), 0);
  const auto t0 = theta_inverse(bessel(0.5), psi, 0);
  CHECK(t0.total.terms().size() == 1);
  const auto t1 = theta_inverse(perturbed(1.0).with_depth(4), psi, 1);
  CHECK(close(t1.total.coeff(power_sigma(0.5), 0), 1.0, 0));
  CHECK(close(t1.total.coeff(power_sigma(1.5), 0), 0.5, 1e-13));
  CHECK(theta_inverse(bessel(0.5), LogPowerFunction{}, 1).total.is_zero());
}

TEST_CASE("resonant steps carry logs") {
  // x^{-1/2} reaches the root +1/2 after one step
  const auto p = perturbed(1.0).with_depth(3);
  const auto steps = e_steps(p, LogPowerFunction::monomial(power_sigma(-0.5), 0), 2);
  CHECK(steps[0].resonant);
  CHECK(steps[0].log_depth == 1);
  // its image under the frozen operator cancels the forcing from x·P1 ψ
  const auto forcing = apply_symbolic(taylor_component(p, 1), LogPowerFunction::monomial(power_sigma(-0.5), 0)).times_power(1);
  const auto lhs = apply_symbolic(taylor_component(p, 0), steps[0].value);
  CHECK((lhs + forcing).trimmed(1e-13).is_zero());
}

TEST_CASE("property: residual gain through three steps") {
  for (double c : {1.0, 0.4}) {
    const auto p = perturbed(c).with_depth(4);
    const auto psi = LogPowerFunction::monomial(power_sigma(0.5), 0);
    const auto steps = e_steps(p, psi, 3);
    auto total = psi;
    for (int n = 1; n <= 3; ++n) {
      total += steps[n - 1].value;
      const auto res = apply_symbolic(p, total, p.depth());
      for (const auto& t : res.terms())
        if (t.real_power() < 0.5 + n - 1 - 1e-9)
          for (auto v : t.coeffs) CHECK(std::abs(v) < 1e-12);
    }
  }
}

TEST_CASE("d = 0 gives an empty structure") {
  const auto tm = theta_matrix(bessel(1.5));
  CHECK(tm.dimension() == 0);
  CHECK(tm.tails.empty());
}
