#pragma once

#include <string>
#include <utility>
#include <vector>

#include "conetrace/report.hpp"

namespace conetrace {

struct RunOptions {
  int threads = 1;
  bool plot = false;
  std::string samples_path;  // fit: read samples instead of tracing
};

/// Report plus auxiliary artifacts (file name → contents); the caller writes them.
struct CommandOutput {
  nlohmann::json report;
  std::vector<std::pair<std::string, std::string>> files;
};

CommandOutput cmd_analyze(const AnalysisConfig& c);
CommandOutput cmd_domains(const AnalysisConfig& c);
CommandOutput cmd_trace_ray(const AnalysisConfig& c, const RunOptions& o = {});
CommandOutput cmd_fit(const AnalysisConfig& c, const RunOptions& o = {});
CommandOutput cmd_zeta(const AnalysisConfig& c, const RunOptions& o = {});

/// First `count` eigenvalues of A_D above lambda_min (real, ascending).
std::vector<double> lowest_eigenvalues(const CharacteristicSystem& sys, int count, double lambda_min);

}  // namespace conetrace
