#include <iostream>
#include <string>
#include <vector>

#include "hgfrob/acceptance.hpp"
#include "hgfrob/scalar.hpp"

// Runs every criterion (or those given as arguments) and fails if any does.
int main(int argc, char** argv) {
  std::vector<int> only;
  for (int k = 1; k < argc; ++k) only.push_back(std::stoi(argv[k]));
  hgf::PrecisionScope scope(256);
  auto results = hgf::run_acceptance(std::cout, only);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
