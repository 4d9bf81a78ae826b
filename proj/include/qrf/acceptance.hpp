/// @file
/// End-to-end verification suite: every analytic benchmark the library must
/// reproduce, with one pass/fail line per criterion.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qrf::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured vs expected values
};

/// Runs all criteria. `fast` lowers Monte Carlo trial counts (statistical
/// checks keep their confidence bands).
std::vector<CriterionResult> run_all(bool fast = false);

/// Prints one line per criterion; returns the number of failures.
int print_report(std::ostream& os, bool fast = false);

}  // namespace qrf::acceptance
