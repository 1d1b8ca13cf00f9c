#include "support.hpp"

#include <cstdio>
#include <filesystem>

#include "conetrace/commands.hpp"

using namespace ct;
using nlohmann::json;

namespace {
json half_config() {
  return json::parse(R"({
    "operator": {"m": 2, "coeffs": [[0.25], [0], [1]]},
    "domain": "friedrichs",
    "ray": {"r_min": 1, "r_max": 1e5, "points": 41}
  })");
}
ErrorCode code_of(const json& j) {
  try {
    parse_config(j);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::VerificationFailed;  // "did not throw"
}
}  // namespace

TEST_CASE("config defaults and parsing") {
  const auto c = parse_config(half_config());
  CHECK(c.m == 2);
  CHECK(c.coeffs.size() == 3u);
  CHECK(c.domains.size() == 1u);
  CHECK(c.domains[0].preset == "friedrichs");
  CHECK(c.sector.theta0 == doctest::Approx(kPi));
  CHECK(c.fit.r_min == 300.0);
  CHECK(c.numerics.rank_tol == 1e-8);
  CHECK(c.ray.points == 41);
  auto j = half_config();
  j["operator"]["coeffs"][0][0] = json::array({0.25, 0.5});
  CHECK(parse_config(j).coeffs[0][0] == cplx(0.25, 0.5));
  CHECK_FALSE(config_help().empty());
}

TEST_CASE("config errors are ConfigError with a path") {
  auto j = half_config();
  j["bogus"] = 1;
  CHECK(code_of(j) == ErrorCode::ConfigError);
  j = half_config();
  j["ray"]["pts"] = 3;
  try {
    parse_config(j);
    FAIL("unknown key accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("$.ray.pts") != std::string::npos);
  }
  j = half_config();
  j["operator"]["coeffs"] = json::array({json::array({1.0}), json::array({0.0})});
  CHECK(code_of(j) == ErrorCode::ConfigError);
  j = half_config();
  j["operator"]["coeffs"][1][0] = "x";
  CHECK(code_of(j) == ErrorCode::ConfigError);
  j = half_config();
  j["domain"] = "neumann";
  CHECK(code_of(j) == ErrorCode::ConfigError);
  j = half_config();
  j["ray"]["r_min"] = 1e6;
  CHECK(code_of(j) == ErrorCode::ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), Error);
  // degenerate operator surfaces as a config error
  j = half_config();
  j["operator"]["coeffs"][2][0] = 0;
  CHECK_THROWS_AS(build_operator(parse_config(j)), Error);
}

TEST_CASE("config hash") {
  const auto a = parse_config(half_config()), b = parse_config(half_config());
  CHECK(a.hash == b.hash);
  auto j = half_config();
  j["ray"]["points"] = 40;
  CHECK(parse_config(j).hash != a.hash);
  CHECK(fnv1a("") == 14695981039346656037ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(hash_hex(0xabcull) == "0000000000000abc");
}

TEST_CASE("float formatting") {
  CHECK(fnum(0.1 + 0.2).dump() == "0.3");
  CHECK(fnum(1.0 / 3.0).dump() == "0.333333333333333");
  CHECK(fnum(std::nan("")).is_null());
  CHECK(fnum(-0.0).dump() == "0.0");
  CHECK(cjson(cplx(1.0, -2.0)).dump() == "[1.0,-2.0]");
}

TEST_CASE("samples CSV round trip") {
  RaySamples s;
  s.r = {1.0, 2.0};
  s.samples = {TraceSample{-1.0, 1, cplx(0.25, 1e-18), TraceMethod::Green, 1e-13},
               TraceSample{-2.0, 1, cplx(0.125, 0.0), TraceMethod::Eigen, 2e-13}};
  const std::string text = samples_csv(s);
  CHECK(text.rfind("r,re_value,im_value,error_estimate,method\n", 0) == 0);
  const auto back = parse_samples_csv(text);
  REQUIRE(back.r.size() == 2);
  CHECK(back.values[0] == cplx(0.25, 1e-18));
  CHECK(back.methods[1] == "eigen");
  CHECK_THROWS_AS(parse_samples_csv("r,value\n1,2\n"), Error);
  CHECK_THROWS_AS(parse_samples_csv(std::string(kSamplesHeader) + "\n2,1,0,0,green\n1,1,0,0,green\n"), Error);
}

TEST_CASE("svg plot") {
  const auto svg = svg_loglog({{"a", {1.0, 10.0, 100.0}, {1.0, 0.1, 0.01}, true}}, "t", "x", "y");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("analyze reports") {
  const auto r = cmd_analyze(parse_config(half_config())).report;
  CHECK(r["d"] == 2);
  CHECK(r["spec_b"].size() == 2);
  CHECK(r["version"] == kVersion);
  CHECK(r["config_hash"].get<std::string>().size() == 16);
  for (const auto& t : r["theta_tails"]) CHECK(t["steps"].empty());
  auto j = half_config();
  j["operator"]["coeffs"][0][0] = 2.25;
  const auto r32 = cmd_analyze(parse_config(j)).report;
  CHECK(r32["d"] == 0);
  CHECK(r32["note"] == "D_min = D_max");
  j = half_config();
  j["operator"]["coeffs"] = json::parse("[[0.25, 1], [0, 0], [1, 0]]");
  const auto rp = cmd_analyze(parse_config(j)).report;
  CHECK(rp["operator"]["x_independent"] == false);
  bool found = false;
  for (const auto& t : rp["theta_tails"])
    for (const auto& s : t["steps"])
      if (s["vartheta"] == 1 && !s["resonant"].get<bool>()) found = s["value"][0]["log_coeffs"][0][0] == 0.5;
  CHECK(found);
}

TEST_CASE("domains reports") {
  auto j = half_config();
  j.erase("domain");
  j["domains"] = json::parse(R"(["friedrichs", {"label": "mixed", "columns": [[1, 1]]}])");
  const auto r = cmd_domains(parse_config(j)).report;
  CHECK(r["stationary_codim1"]["count"] == 2);
  CHECK(r["domains"][0]["verdict"] == "stationary");
  CHECK(r["domains"][1]["verdict"] == "nonstationary");
  CHECK(r["friedrichs"]["stationary"] == true);
  j["operator"]["coeffs"][0][0] = 0.0;
  j["domains"] = json::parse(R"(["friedrichs"])");
  CHECK(cmd_domains(parse_config(j)).report["stationary_codim1"]["count"] == 1);
}

TEST_CASE("trace-ray and fit through the CSV") {
  const auto c = parse_config(half_config());
  const auto out = cmd_trace_ray(c);
  REQUIRE(out.files.size() == 1);
  CHECK(out.files[0].first == "samples.csv");
  const auto csv = parse_samples_csv(out.files[0].second);
  CHECK(csv.r[0] == 1.0);
  CHECK(csv.values[0].real() == doctest::Approx(0.1565176427).epsilon(1e-9));
  const auto path = (std::filesystem::temp_directory_path() / "conetrace_test_samples.csv").string();
  write_file(path, out.files[0].second);
  RunOptions ro;
  ro.samples_path = path;
  const auto fit = cmd_fit(c, ro).report;
  std::remove(path.c_str());
  bool ok = false;
  for (const auto& t : fit["fit"]["terms"])
    if (t["j"] == 0 && t["k"] == 0) ok = std::abs(t["alpha"][0].get<double>() - 0.5) < 1e-6;
  CHECK(ok);
  for (const auto& l : fit["log_detection"]) CHECK(l["m_j"] == 0);
  // byte-stable
  CHECK(dump_report(cmd_trace_ray(c).report) == dump_report(out.report));
  RunOptions plot;
  plot.plot = true;
  CHECK(cmd_trace_ray(c, plot).files.size() == 2);
}

TEST_CASE("commands need a domain") {
  auto j = half_config();
  j.erase("domain");
  CHECK_THROWS_AS(cmd_trace_ray(parse_config(j)), Error);
}
