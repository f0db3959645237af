#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace hgf {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

// Runs the selected criteria (all when empty), printing one line per
// criterion as it finishes.
std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::vector<int>& only = {});

std::string format_result(const CriterionResult& r);

}  // namespace hgf
