#include "support.hpp"

using namespace ct;

namespace {
const RaySamples& friedrichs_ray() {
  static const RaySamples s = [] {
    const auto a = bessel(0.5);
    CharacteristicSystem sys(a, friedrichs_domain(a));
    return sample_ray(sys, 1, Polynomial::constant(1.0), kPi, 10.0, 1e5, 40, TraceOptions{}, 2);
  }();
  return s;
}
const RaySamples& neumann_ray() {
  static const RaySamples s = [] {
    const auto a = bessel(0.5);
    CharacteristicSystem sys(a, powers_domain(a, {{-0.5, 1.0}}, "N"));
    return sample_ray(sys, 1, Polynomial::constant(1.0), kPi, 10.0, 1e5, 40);
  }();
  return s;
}
FitOptions window() {
  FitOptions o;
  o.r_min = 300.0;
  return o;
}
}  // namespace

TEST_CASE("geometric grid") {
  const auto g = geometric_grid(10.0, 1e5, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == doctest::Approx(10.0));
  CHECK(g[1] == doctest::Approx(100.0));
  CHECK(g.back() == doctest::Approx(1e5));
}

TEST_CASE("ray samples match the closed forms") {
  const auto& f = friedrichs_ray();
  const auto& n = neumann_ray();
  REQUIRE(f.samples.size() == 40);
  REQUIRE(n.samples.size() == 40);
  CHECK(f.failures.empty());
  for (std::size_t i = 0; i < f.r.size(); ++i) {
    const double r = f.r[i], s = std::sqrt(r);
    CHECK(close(f.samples[i].value, (s * coth(s) - 1.0) / (2 * r), 1e-6 * 1e-3));
    CHECK(close(n.samples[i].value, std::tanh(s) / (2 * s), 1e-9));
  }
}

TEST_CASE("threaded sampling is identical to sequential") {
  const auto a = bessel(0.5);
  CharacteristicSystem sys(a, friedrichs_domain(a));
  const auto s1 = sample_ray(sys, 1, Polynomial::constant(1.0), kPi, 10.0, 1e5, 8, TraceOptions{}, 1);
  const auto s4 = sample_ray(sys, 1, Polynomial::constant(1.0), kPi, 10.0, 1e5, 8, TraceOptions{}, 4);
  for (std::size_t i = 0; i < s1.samples.size(); ++i) CHECK(s1.samples[i].value == s4.samples[i].value);
}

TEST_CASE("rays through the spectrum are rejected") {
  const auto a = bessel(0.5);
  CharacteristicSystem sys(a, friedrichs_domain(a));
  try {
    sample_ray(sys, 1, Polynomial::constant(1.0), 0.0, 10.0, 100.0, 4);
    FAIL("expected SectorNotAdmissible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SectorNotAdmissible);
  }
}

TEST_CASE("synthetic round trips") {
  const auto r = geometric_grid(10.0, 1e5, 40);
  std::vector<cplx> v, w;
  for (double x : r) v.push_back(0.5 / std::sqrt(x) - 0.5 / x), w.push_back(std::log(x) / x);
  const auto basis = expansion_basis(2, 1, 4, {0, 1, 0, 0, 0});
  const auto f = fit_basis(r, v, basis);
  CHECK(close(f.alpha(0, 0), 0.5, 1e-8));
  CHECK(close(f.alpha(1, 0), -0.5, 1e-8));
  for (const auto& t : f.terms)
    if (t.j >= 2 || t.k > 0) CHECK(std::abs(t.alpha) < 1e-8);
  CHECK(close(fit_basis(r, w, basis).alpha(1, 1), 1.0, 1e-8));
  CHECK(f.residual_norm < 1e-12);
  CHECK(f.condition > 1.0);
}

TEST_CASE("expansion basis exponents") {
  const auto b = expansion_basis(2, 1, 2, {0, 1});
  REQUIRE(b.size() == 4);
  CHECK(b[0].exponent == doctest::Approx(-0.5));
  CHECK(b[1].exponent == doctest::Approx(-1.0));
  CHECK(b[2].k == 1);
  CHECK(b[3].exponent == doctest::Approx(-1.5));
}

TEST_CASE("ray expansion coefficients") {
  const std::vector<int> caps{0, 1, 0, 0, 0};
  const auto ff = fit_expansion(friedrichs_ray(), 2, 4, caps, window());
  CHECK(close(ff.alpha(0, 0), 0.5, 1e-3));
  CHECK(close(ff.alpha(1, 0), -0.5, 1e-2));
  CHECK(std::abs(ff.alpha(1, 1)) < 1e-3);
  for (const auto& t : ff.terms)
    if (t.j >= 2) CHECK(std::abs(t.alpha) < 1e-3);
  const auto fn = fit_expansion(neumann_ray(), 2, 4, caps, window());
  CHECK(close(fn.alpha(0, 0), 0.5, 1e-3));
  CHECK(std::abs(fn.alpha(1, 0)) < 1e-2);
  const auto cmp = compare_domains(ff, fn, 1);
  CHECK(cmp.max_required_delta < 2e-3);
  bool a10_differs = false;
  for (const auto& row : cmp.rows)
    if (row.j == 1 && row.k == 0) a10_differs = !row.must_agree && row.delta > 0.4;
  CHECK(a10_differs);
  const auto same = compare_domains(ff, ff, 1);
  for (const auto& row : same.rows) CHECK(row.delta == 0.0);
}

TEST_CASE("frozen values: Friedrichs fit") {
  // regression pins for the default fit window
  const auto ff = fit_expansion(friedrichs_ray(), 2, 4, {0, 1, 0, 0, 0}, window());
  CHECK(ff.alpha(0, 0).real() == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(ff.alpha(1, 0).real() == doctest::Approx(-0.5).epsilon(1e-8));
  CHECK(ff.residual_norm < 1e-11);
}

TEST_CASE("log detection") {
  const auto& s = friedrichs_ray();
  const auto v = sample_values(s);
  const std::vector<int> caps(5, 0);
  for (int j = 0; j <= 4; ++j) CHECK(detect_logs(s.r, v, 2, 1, 4, caps, j, 10.0, 2, window()).m_j == 0);
  auto w = v;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += 0.1 * std::log(s.r[i]) / s.r[i];
  CHECK(detect_logs(s.r, w, 2, 1, 4, caps, 1, 10.0, 2, window()).m_j == 1);
  // synthetic log² at j = 2
  const auto r = geometric_grid(10.0, 1e5, 40);
  std::vector<cplx> q;
  for (double x : r) q.push_back(0.5 / std::sqrt(x) + std::pow(std::log(x), 2) * std::pow(x, -1.5));
  CHECK(detect_logs(r, q, 2, 1, 4, caps, 2).m_j == 2);
}

TEST_CASE("window drift separates exact from misspecified models") {
  const auto r = geometric_grid(10.0, 1e5, 40);
  std::vector<cplx> good, bad;
  for (double x : r) good.push_back(0.5 / std::sqrt(x) - 0.5 / x), bad.push_back(0.5 / std::sqrt(x) + 1.0 / (x * std::log(x)));
  const std::vector<BasisTerm> b{{0, 0, -0.5}, {1, 0, -1.0}};
  CHECK(window_drift(r, good, b)[1] < 1e-10);
  CHECK(window_drift(r, bad, b)[1] > 1e-3);
}

TEST_CASE("d = 0: minimal and maximal domains give the same fit") {
  const auto a = bessel(1.5);
  CharacteristicSystem smin(a, minimal_domain(a)), smax(a, maximal_domain(a));
  const auto s1 = sample_ray(smin, 1, Polynomial::constant(1.0), kPi, 10.0, 1e4, 12);
  const auto s2 = sample_ray(smax, 1, Polynomial::constant(1.0), kPi, 10.0, 1e4, 12);
  for (std::size_t i = 0; i < s1.samples.size(); ++i) CHECK(s1.samples[i].value == s2.samples[i].value);
}
