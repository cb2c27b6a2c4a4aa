#pragma once

#include <string>
#include <vector>

#include "gamow/config.hpp"

namespace gamow {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured numbers vs thresholds, fmt17
};

// Runs the ten acceptance criteria against cfg (the pinned defaults unless a
// study overrides them). Criterion 10 regenerates the full artifact set twice
// and byte-compares, so this is expensive (~ a minute).
std::vector<CriterionResult> run_all_criteria(const RunConfig& cfg);

// "PASS criterion 3 (sum-rule decay): ..." one line per criterion.
std::string format_criterion_line(const CriterionResult& r);

}  // namespace gamow
