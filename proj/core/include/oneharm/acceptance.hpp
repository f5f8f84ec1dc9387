#pragma once

#include <functional>
#include <string>
#include <vector>

namespace oneharm {

enum class SuiteLevel { quick, full };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool observational = false;  // failures are reported as warnings
  std::string measured;
  std::string tolerance;
  double seconds = 0.0;
};

struct CriterionSpec {
  int id = 0;
  std::string name;
  bool in_quick = false;
  std::function<CriterionResult()> run;
};

std::vector<CriterionSpec> acceptance_criteria();

// Runs the suite; `on_result` sees each result as soon as it is available.
std::vector<CriterionResult> run_acceptance(SuiteLevel level,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace oneharm
