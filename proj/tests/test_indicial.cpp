#include "support.hpp"

using namespace ct;

TEST_CASE("boundary spectrum") {
  const auto s = boundary_spectrum(bessel(0.5));
  REQUIRE(s.size() == 2);
  CHECK(s[0].multiplicity == 1);
  CHECK(root_multiplicity_at(s, cplx(0.0, 0.5)) == 1);
  CHECK(root_multiplicity_at(s, cplx(0.0, -0.5)) == 1);
  const auto z = boundary_spectrum(bessel(0.0));
  REQUIRE(z.size() == 1);
  CHECK(z[0].multiplicity == 2);
  const auto d = boundary_spectrum(build_operator(2, {{0.0}, {kI}, {1.0}}));
  CHECK(root_multiplicity_at(d, 0.0) == 1);
  CHECK(root_multiplicity_at(d, -kI) == 1);
}

TEST_CASE("strip roots") {
  CHECK(strip_sigma(bessel(0.5)).roots.size() == 2);
  CHECK(strip_sigma(bessel(1.5)).roots.empty());
  const auto d = strip_sigma(build_operator(2, {{0.0}, {kI}, {1.0}}));
  REQUIRE(d.roots.size() == 1);
  CHECK(std::abs(d.roots[0].sigma) < 1e-12);
  // ν = 1: roots on the strip boundary
  const auto b = strip_sigma(bessel(1.0));
  CHECK(b.roots.empty());
  CHECK_FALSE(b.warnings.empty());
  CHECK(classify_root(bessel(1.5), cplx(0.0, 1.5)) == StripPosition::Above);
  CHECK(classify_root(bessel(1.5), cplx(0.0, -1.5)) == StripPosition::Below);
}

TEST_CASE("wedge singular functions") {
  const auto a = bessel(0.5);
  const auto s = strip_sigma(a);
  for (const auto& root : s.roots) {
    const auto basis = wedge_singular_basis(a, root);
    REQUIRE(basis.basis.size() == 1);
    CHECK(apply_symbolic(taylor_component(a, 0), basis.basis[0]).trimmed(1e-14).is_zero());
  }
  const auto z = bessel(0.0);
  const auto zb = wedge_singular_basis(z, strip_sigma(z).roots[0]);
  REQUIRE(zb.basis.size() == 2);
  for (const auto& f : zb.basis) CHECK(apply_symbolic(taylor_component(z, 0), f).trimmed(1e-14).is_zero());
  CHECK_THROWS_AS(wedge_singular_basis(bessel(1.5), IndicialRoot{cplx(0.0, 1.5), 1}), Error);
}

TEST_CASE("max domain dimension") {
  CHECK(max_domain_dimension(bessel(0.5)) == 2);
  CHECK(max_domain_dimension(bessel(1.5)) == 0);
  CHECK(max_domain_dimension(bessel(0.0)) == 2);
  CHECK(max_domain_dimension(bessel(0.25)) == 2);
}

TEST_CASE("property: roots of x-dependent perturbations only use P0") {
  for (double c : {0.0, 0.5, 3.0}) {
    const auto s = boundary_spectrum(perturbed(c));
    REQUIRE(s.size() == 2);
    CHECK(root_multiplicity_at(s, cplx(0.0, 0.5)) == 1);
  }
}
