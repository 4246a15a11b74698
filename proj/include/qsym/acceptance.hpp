#pragma once

#include <string>
#include <vector>

namespace qsym {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0;   // worst value of the governing quantity
  double threshold = 0;  // pass bound for measured
  std::string detail;
  double seconds = 0;
};

constexpr int kCriterionCount = 12;

CriterionResult run_criterion(int id);
// All criteria in id order; independent criteria run on separate threads when parallel.
std::vector<CriterionResult> run_acceptance(bool parallel = true);
std::string format_criterion(const CriterionResult& r);

}  // namespace qsym
