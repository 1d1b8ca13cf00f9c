#include <iostream>

#include "conetrace/acceptance.hpp"

int main() {
  bool ok = true;
  for (int id = 1; id <= conetrace::kCriterionCount; ++id) {
    const auto r = conetrace::run_criterion(id, 2);
    ok = ok && r.passed;
    std::cout << conetrace::format_result(r) << std::endl;
  }
  return ok ? 0 : 1;
}
