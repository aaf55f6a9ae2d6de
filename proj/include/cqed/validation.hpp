// Fast invariant suite run by `cqed validate`.
#pragma once

#include <string>
#include <vector>

namespace cqed {

struct ValidationCheck {
  std::string name;
  double value;
  double tolerance;
  bool passed;
};

/// All checks at the given cutoff. The last entry is the wall-clock runtime
/// against its 60 s budget.
std::vector<ValidationCheck> run_validation_suite(int n_max = 30);

}  // namespace cqed
