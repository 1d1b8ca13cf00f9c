#include "support.hpp"

using namespace ct;

namespace {
const std::vector<double>& eigs() {
  static const std::vector<double> e = [] {
    const auto a = bessel(0.5);
    CharacteristicSystem sys(a, friedrichs_domain(a));
    std::vector<double> out;
    for (const auto& v : eigenvalues(sys, Region::interval(0.0, std::pow(60.5 * kPi, 2)), 60)) out.push_back(v.value.real());
    return out;
  }();
  return e;
}
FitResult heat_fit() {
  return fit_heat(heat_trace(eigs(), 2, geometric_grid(1e-3, 3e-2, 30)), 2, 4, {}, {-0.25});
}
}  // namespace

TEST_CASE("Weyl tail of the Dirichlet spectrum") {
  const auto w = fit_weyl(eigs(), 2, 10);
  CHECK(w.c == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(std::abs(w.delta) < 1e-8);
  CHECK(w.first == 61);
}

TEST_CASE("eigen traces") {
  const auto t = eigen_trace(eigs(), 2, -1.0, 1);
  CHECK(close(t.value, (coth(1.0) - 1.0) / 2.0, 1e-10));
  CHECK(t.method == TraceMethod::Eigen);
  CHECK(std::abs(t.value - (coth(1.0) - 1.0) / 2.0) <= t.error_estimate);
  const auto t2 = eigen_trace(eigs(), 2, -1.0, 2);
  CHECK(close(t2.value, 0.0092742366, 1e-9));
  CHECK_THROWS_AS(eigen_trace(eigs(), 1, -1.0, 1), Error);
}

TEST_CASE("heat trace") {
  const auto h = heat_trace(eigs(), 2, {0.01, 10.0});
  CHECK(h[0].value == doctest::Approx(1.0 / (2.0 * std::sqrt(kPi * 0.01)) - 0.5).epsilon(1e-12));
  CHECK(std::abs(h[0].value - 2.3209482) < 1e-6);
  CHECK(h[1].value < 1e-40);
  CHECK(h[1].error_estimate < 1e-40);
}

TEST_CASE("heat expansion fit") {
  const auto f = heat_fit();
  CHECK(f.alpha(0, 0).real() == doctest::Approx(0.5 / std::sqrt(kPi)).epsilon(1e-6));
  CHECK(close(f.alpha(1, 0), -0.5, 1e-3));
  const auto* probe = f.find(-1, 0);
  REQUIRE(probe != nullptr);
  CHECK(std::abs(probe->alpha) < 1e-6);
  const auto basis = heat_basis(2, 2, {}, {-0.25});
  CHECK(basis.size() == 4);
}

TEST_CASE("zeta values and poles") {
  const auto& e = eigs();
  double err = 0.0;
  const double z1 = zeta_direct(e, 2, 1.0, TailOptions{}, &err);
  CHECK(std::abs(z1 - 1.0 / 6.0) < 1e-10);
  CHECK(std::abs(z1 - 1.0 / 6.0) <= err);
  // ζ_A(s) = π^{-2s} ζ(2s)
  const auto rep = zeta_report(e, 2, heat_fit(), {1.0, 0.75, 0.25, 0.0, -0.5});
  const double expect[] = {1.0 / 6.0, 0.469148970781, -0.8239168021571, -0.5, -0.26179938779915};
  REQUIRE(rep.values.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(rep.values[i].value - expect[i]) < 1e-8);
  int poles = 0;
  for (const auto& p : rep.poles) {
    if (p.status == "pole") {
      ++poles;
      CHECK(p.s == doctest::Approx(0.5));
      CHECK(p.residue.real() == doctest::Approx(0.5 / kPi).epsilon(1e-6));
    }
    if (p.s == 0.0 || p.s == -1.0) CHECK(p.status == "cancelled");
    if (p.s == -0.5) CHECK(p.status == "none");
    if (p.status == "probe") CHECK(std::abs(p.residue) < 1e-6);
  }
  CHECK(poles == 1);
}

TEST_CASE("reciprocal gamma") {
  CHECK(rgamma(0.0) == 0.0);
  CHECK(rgamma(-3.0) == 0.0);
  CHECK(rgamma(1.0) == doctest::Approx(1.0));
  CHECK(rgamma(0.5) == doctest::Approx(1.0 / std::sqrt(kPi)));
}

TEST_CASE("tail dominates with too few eigenvalues") {
  std::vector<double> few(eigs().begin(), eigs().begin() + 20);
  TailOptions o;
  o.tolerance = 1e-30;
  CHECK_THROWS_AS(eigen_trace(few, 2, -1.0, 1, o), Error);
}
