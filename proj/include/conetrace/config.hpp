#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "conetrace/green.hpp"
#include "conetrace/heat_zeta.hpp"

namespace conetrace {

struct DomainChoice {
  std::string preset;  // "min", "max", "friedrichs", or empty for explicit columns
  std::string label;
  std::vector<std::vector<cplx>> columns;
};

struct RayConfig {
  double r_min = 10.0;
  double r_max = 1e5;
  int points = 40;
  int ell = 1;
  std::vector<cplx> phi{1.0};
};

struct NumericsConfig {
  double x_match = 0.1;
  int series_order = 40;
  double rel_tol = 1e-12;   // ODE integrator
  double quad_tol = 1e-9;   // trace quadrature (relative)
  int quad_panels = 1;      // panels per |λ|^{-1/m} length near x = 1
  int gauss_nodes = 16;
  double rank_tol = 1e-8;
};

struct FitConfig {
  int J = 4;
  std::vector<int> log_caps{0, 1};
  double r_min = 300.0;  // samples below are pre-asymptotic (exponentially small terms)
  bool peel = false;
  double detect_threshold = 10.0;
  double condition_limit = 1e12;
};

struct HeatConfig {
  int eigenvalues = 60;
  double lambda_min = -100.0;  // eigenvalue search starts here
  double t_min = 1e-3;
  double t_max = 3e-2;
  int points = 30;
  int J = 4;
  std::vector<int> log_caps;
  std::vector<double> probes;  // empty → one probe midway between the first two lattice powers
  std::vector<double> s_grid{1.0, 0.75, 0.25, 0.0, -0.5};
  double residue_tol = 1e-3;
};

struct OutputConfig {
  std::string dir = ".";
  bool plot = false;
};

struct AnalysisConfig {
  int m = 2;
  ConeOperator::Table coeffs;
  std::optional<std::vector<std::vector<cplx>>> bc;
  std::vector<DomainChoice> domains;
  Sector sector;
  RayConfig ray;
  NumericsConfig numerics;
  FitConfig fit;
  HeatConfig heat;
  OutputConfig output;
  std::string canonical;  // canonical JSON dump used for the hash
  std::uint64_t hash = 0;
};

/// Throws Error(ConfigError) with a path-qualified diagnostic.
AnalysisConfig parse_config(const nlohmann::json& j);
AnalysisConfig load_config(const std::string& path);

std::uint64_t fnv1a(const std::string& s);

ConeOperator build_operator(const AnalysisConfig& c);
DomainSpec resolve_domain(const ConeOperator& a, const DomainChoice& d);
EngineOptions engine_options(const AnalysisConfig& c);
TraceOptions trace_options(const AnalysisConfig& c);
Polynomial phi_polynomial(const AnalysisConfig& c);

/// Help text listing every key and default.
std::string config_help();

}  // namespace conetrace
