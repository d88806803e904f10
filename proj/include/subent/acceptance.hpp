#pragma once

// The acceptance suite behind `subent verify` and the acceptance test
// binary: eight numbered criteria, one PASS/FAIL line each.

#include <iosfwd>
#include <string>
#include <vector>

namespace subent::acceptance {

struct Outcome {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // measured quantities and the bounds they were held to
};

/// Evaluates criterion `id` (1..8); throws InvalidConfig for other ids.
Outcome evaluate(int id);

/// Runs the listed criteria (all when empty), printing one line per
/// criterion as it finishes. Returns true when every criterion passed.
bool run_suite(std::ostream& out, const std::vector<int>& only = {});

}  // namespace subent::acceptance
