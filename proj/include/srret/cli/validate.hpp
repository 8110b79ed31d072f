#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "srret/cli/config.hpp"

namespace srret::cli {

struct CheckResult {
  std::string id;
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

/// Oracle suite: analytic closed forms against the discrete, quadrature and
/// Monte Carlo paths, at the tolerances of the acceptance criteria.
ValidationReport run_validation(const RunConfig& cfg);

}  // namespace srret::cli
