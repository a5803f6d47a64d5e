#pragma once

// Named identity checks, each reporting a max residual against a fixed
// tolerance. The CLI renders them as a table; tests assert they pass.

#include <string>
#include <vector>

namespace eol {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// Runs every check whose name contains `filter` (empty = all) at the
// given quadrature order. Deterministic: fixed seeds, fixed ordering.
std::vector<CheckResult> run_verification(const std::string& filter = "",
                                          int order = 24);

}  // namespace eol
