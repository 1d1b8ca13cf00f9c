#include "support.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "conetrace/laurent.hpp"

using namespace ct;

namespace {
// ∫_0^1 x^{i(σ0 − σ) − 1} log^k x dx
cplx mellin_numeric(cplx sigma0, int k, cplx sigma) {
  boost::math::quadrature::tanh_sinh<double> q;
  auto f = [&](double x, bool im) {
    const cplx v = std::pow(x, kI * (sigma0 - sigma) - 1.0) * std::pow(std::log(x), k);
    return im ? v.imag() : v.real();
  };
  return {q.integrate([&](double x) { return f(x, false); }, 0.0, 1.0),
          q.integrate([&](double x) { return f(x, true); }, 0.0, 1.0)};
}
cplx evaluate(const LaurentExpansion& l, cplx s) {
  cplx v = 0.0;
  for (int j = l.lo(); j <= l.hi(); ++j) v += l[j] * std::pow(s - l.center(), j);
  return v;
}
}  // namespace

TEST_CASE("mellin cutoff matches the quadrature oracle") {
  const cplx s0(0.0, -0.5);
  const cplx expect[3] = {kI, 1.0, -2.0 * kI};
  for (int k = 0; k < 3; ++k) {
    const auto l = mellin_cutoff(s0, k, 2);
    CHECK(l.pole_order() == k + 1);
    CHECK(close(l[-(k + 1)], expect[k], 1e-15));
    for (cplx s : {cplx(1.0, 2.0), cplx(-0.5, 1.0), cplx(0.3, 0.2)})
      CHECK(close(evaluate(l, s), mellin_numeric(s0, k, s), 1e-9));
  }
}

TEST_CASE("inverse of a polynomial") {
  const Polynomial p({0.25, 0.0, 1.0});
  const auto a = laurent_inverse_of_polynomial(p, cplx(0.0, -1.5), 0);
  CHECK(a.pole_order() == 0);
  CHECK(close(a[0], -0.5, 1e-15));
  const auto b = laurent_inverse_of_polynomial(Polynomial({0.0, 1.0}), 0.0, 0);
  CHECK(b.lo() == -1);
  CHECK(close(b[-1], 1.0, 1e-15));
  const auto c = laurent_inverse_of_polynomial(Polynomial({0.0, 0.0, 1.0}), 0.0, 1);
  CHECK(c.pole_order() == 2);
  CHECK(close(c[-2], 1.0, 1e-15));
  CHECK(close(c[-1], 0.0, 1e-15));
  CHECK(close(c[0], 0.0, 1e-15));
  CHECK(close(c[1], 0.0, 1e-15));
}

TEST_CASE("singular part, products and argument shifts") {
  const cplx s0(0.2, -0.5);
  const LaurentExpansion f(s0, -1, {kI, 5.0 + s0, 1.0});
  const auto sp = singular_part(f);
  CHECK(close(sp[-1], kI, 0));
  CHECK(close(sp[0], 0.0, 0));
  const auto one = laurent_mul(LaurentExpansion(s0, -1, {1.0}), LaurentExpansion(s0, 1, {1.0}));
  CHECK(close(one[0], 1.0, 1e-15));
  CHECK(one.pole_order() == 0);
  const auto g = shift_argument(LaurentExpansion(s0, -1, {kI}), kI);
  CHECK(close(g.center(), s0 - kI, 1e-15));
  for (cplx s : {cplx(1.0, 1.0), cplx(-2.0, 0.3)}) CHECK(close(evaluate(g, s), kI / (s - (s0 - kI)), 1e-14));
}

TEST_CASE("property: inverse times polynomial is one") {
  const Polynomial p({cplx(0.3, 0.1), cplx(-1.0, 0.5), 2.0, cplx(0.0, 1.0)});
  for (cplx c : {cplx(0.1, 0.2), cplx(-1.0, 0.0), cplx(2.0, -1.0)}) {
    const auto inv = laurent_inverse_of_polynomial(p, c, 6);
    const auto prod = laurent_mul(inv, laurent_of_polynomial(p, c, 6));
    CHECK(close(prod[0], 1.0, 1e-12));
    // coefficients grow like dist(c, roots)^{-j}; compare relative to that scale
    for (int j = 1; j <= 6; ++j) CHECK(std::abs(prod[j]) <= 1e-13 * (1.0 + std::abs(inv[j]) * p.scale()));
  }
  // at a root: a genuine pole, residue 1/P'(root)
  const auto roots = polynomial_roots(p);
  const auto inv = laurent_inverse_of_polynomial(p, roots[0].value, 3);
  CHECK(inv.pole_order() == 1);
  CHECK(close(inv[-1], 1.0 / p.derivative()(roots[0].value), 1e-8));
}

TEST_CASE("laurent_add aligns windows") {
  const auto a = LaurentExpansion(0.0, -2, {1.0, 2.0, 3.0});
  const auto b = LaurentExpansion(0.0, 0, {4.0, 5.0});
  const auto s = laurent_add(a, b);
  CHECK(close(s[-2], 1.0, 0));
  CHECK(close(s[0], 7.0, 0));
  CHECK(s.hi() == 0);  // exact only through the smaller hi
  CHECK_THROWS_AS(laurent_add(a, LaurentExpansion(1.0, 0, {1.0})), Error);
}
