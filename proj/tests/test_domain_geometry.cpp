#include "support.hpp"

#include <random>

using namespace ct;

TEST_CASE("kappa matrices on the canonical basis") {
  const auto a = bessel(0.5);
  const CMatrix k4 = kappa_matrix(a, 4.0);
  // basis order: x^{1/2}, x^{-1/2}
  CHECK(close(k4(0, 0), 8.0, 1e-13));
  CHECK(close(k4(1, 1), 2.0, 1e-13));
  CHECK(std::abs(k4(0, 1)) + std::abs(k4(1, 0)) < 1e-14);
  CHECK(kappa_matrix(a, 1.0).isIdentity(1e-14));
  const double e = std::exp(1.0);
  const CMatrix ke = kappa_matrix(bessel(0.0), e);
  // basis order: 1, log x; κ_e log x = e (log x + 1)
  CHECK(close(ke(0, 0), e, 1e-13));
  CHECK(close(ke(0, 1), e, 1e-13));
  CHECK(close(ke(1, 0), 0.0, 1e-13));
  CHECK(close(ke(1, 1), e, 1e-13));
}

TEST_CASE("kappa generator") {
  const auto g = generator(bessel(0.5));
  CHECK(close(g.T(0, 0), 1.5, 1e-12));
  CHECK(close(g.T(1, 1), 0.5, 1e-12));
  const auto g0 = generator(bessel(0.0));
  CHECK(close(g0.T(0, 0), 1.0, 1e-12));
  CHECK(close(g0.T(0, 1), 1.0, 1e-12));
  CHECK(close(g0.T(1, 0), 0.0, 1e-12));
  CHECK(close(g0.T(1, 1), 1.0, 1e-12));
  CHECK(generator(bessel(1.5)).T.size() == 0);
}

TEST_CASE("property: group law and exponential of the generator") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (double nu : {0.0, 0.2, 0.5, 0.9}) {
    const auto a = bessel(nu);
    const auto g = generator(a);
    for (int i = 0; i < 10; ++i) {
      const double r1 = std::exp(u(rng)), r2 = std::exp(u(rng));
      const CMatrix k12 = kappa_matrix(a, r1 * r2);
      CHECK((kappa_matrix(a, r1) * kappa_matrix(a, r2) - k12).norm() <= 1e-10 * k12.norm());
      CHECK((g.kappa(r1) - kappa_matrix(a, r1)).norm() <= 1e-10 * kappa_matrix(a, r1).norm());
    }
  }
}

TEST_CASE("stationarity verdicts") {
  const auto a = bessel(0.5);
  CHECK(is_stationary(a, powers_domain(a, {{0.5, 1.0}})));
  CHECK(is_stationary(a, powers_domain(a, {{-0.5, 1.0}})));
  CHECK_FALSE(is_stationary(a, powers_domain(a, {{0.5, 1.0}, {-0.5, 1.0}})));
  CHECK(is_stationary(a, maximal_domain(a)));
  CHECK(is_stationary(a, minimal_domain(a)));
  const auto v = stationarity(a, powers_domain(a, {{0.5, 1.0}, {-0.5, 1.0}}));
  CHECK(v.kappa_agrees);
  CHECK(v.generator_residual > 0.1);
  // A_0: log x alone is not invariant, 1 is
  const auto z = bessel(0.0);
  CMatrix w(2, 1);
  w << 0.0, 1.0;
  CHECK_FALSE(is_stationary(z, make_domain(z, w, "log")));
  w << 1.0, 0.0;
  CHECK(is_stationary(z, make_domain(z, w, "one")));
}

TEST_CASE("enumeration of stationary domains") {
  const auto s = stationary_domains(bessel(0.5), 1);
  CHECK_FALSE(s.continuum);
  REQUIRE(s.domains.size() == 2);
  const auto z = stationary_domains(bessel(0.0), 1);
  REQUIRE(z.domains.size() == 1);
  CHECK(std::abs(canonical_columns(z.domains[0].W)(1, 0)) < 1e-12);
  CHECK(invariant_subspaces(2.0 * CMatrix::Identity(2, 2), 1).continuum);
  CHECK(invariant_subspaces(CMatrix::Identity(3, 3) * 0.5 + CMatrix::Zero(3, 3), 2).continuum);
  const auto full = stationary_domains(bessel(0.5), 2);
  CHECK(full.domains.size() == 1);
}

TEST_CASE("friedrichs domains") {
  const auto a = bessel(0.5);
  const auto f = friedrichs_domain(a);
  REQUIRE(f.dimension() == 1);
  CHECK(std::abs(canonical_columns(f.W)(1, 0)) < 1e-12);
  const auto f0 = friedrichs_domain(bessel(0.0));
  REQUIRE(f0.dimension() == 1);
  CHECK(std::abs(canonical_columns(f0.W)(1, 0)) < 1e-12);
  CHECK(friedrichs_domain(bessel(1.5)).dimension() == 0);
  for (double nu : {0.0, 0.1, 0.5, 0.8, 2.0}) CHECK(is_stationary(bessel(nu), friedrichs_domain(bessel(nu))));
  try {
    friedrichs_domain(build_operator(2, {{0.0}, {kI}, {1.0}}));
    FAIL("expected NotSymmetric");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSymmetric);
  }
}

TEST_CASE("domain construction and ranks") {
  const auto a = bessel(0.5);
  CHECK_THROWS_AS(make_domain(a, CMatrix::Ones(3, 1), "bad"), Error);
  CMatrix dep(2, 2);
  dep << 1.0, 2.0, 1.0, 2.0;
  CHECK_THROWS_AS(make_domain(a, dep, "dependent"), Error);
  CHECK(minimal_domain(a).dimension() == 0);
  CHECK(maximal_domain(a).dimension() == 2);
  CMatrix m = CMatrix::Identity(3, 3);
  m(2, 2) = 1e-14;
  CHECK(numerical_rank(m) == 2);
  m(2, 2) = 1e-8;
  try {
    numerical_rank(m);
    FAIL("expected RankIndeterminate");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankIndeterminate);
  }
}
