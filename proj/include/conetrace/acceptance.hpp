#pragma once

#include <string>
#include <vector>

namespace conetrace {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 9;

/// Never throws: numerical errors become a failed result.
CriterionResult run_criterion(int id, int threads = 1);
std::vector<CriterionResult> run_acceptance(int threads = 1);

/// "PASS  criterion 3  ray expansion  ...  (1.2 s)"
std::string format_result(const CriterionResult& r);

}  // namespace conetrace
