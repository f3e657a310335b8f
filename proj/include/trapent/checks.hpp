#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trapent::validation {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Individual acceptance criteria, numbered as in the acceptance report.
CheckResult check_special_functions();       // 1
CheckResult check_unitarity_roots();         // 2
CheckResult check_spectrum_monotonicity();   // 3
CheckResult check_molecular_fraction();      // 4
CheckResult check_branch1_limits();          // 5
CheckResult check_branch2_limits();          // 6
CheckResult check_curve_shape();             // 7
CheckResult check_geometry_ordering();       // 8
CheckResult check_toy_model();               // 9
CheckResult check_oracle_equivalence();      // 10
CheckResult check_determinism();             // 11

// Runs every check in order, printing one PASS/FAIL line per check as it
// completes, followed by a summary line.
std::vector<CheckResult> run_acceptance(std::ostream& out);

// True iff every check in run_acceptance passes.
bool validate_all(std::ostream& out);

}  // namespace trapent::validation
