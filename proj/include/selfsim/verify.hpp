#pragma once

#include <string>
#include <vector>

#include "selfsim/graph.hpp"

namespace selfsim::verify {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool quick = false;
  bool pass = false;
  std::vector<std::string> notes;  // failures first, then supplementary facts
  double seconds = 0;
};

constexpr int kCriterionCount = 11;
bool is_quick(int id);
std::string criterion_title(int id);
CriterionResult run_criterion(int id);

// "PASS  3  closed form vs recursion (12.3 s)" followed by indented notes.
std::string format(const CriterionResult& r, bool with_notes = true);

struct OracleCheck {
  bool ok = false;
  std::string message;
};
// Enumerated closed polygons against the generating function.
OracleCheck verify_oracle(graph::Family f, int n, std::size_t rank_budget);

}  // namespace selfsim::verify
