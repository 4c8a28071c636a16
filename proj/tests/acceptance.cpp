#include <CLI11.hpp>
#include <iostream>

#include "selfsim/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> ids;
  bool quick = false;
  app.add_option("--criterion", ids, "criterion number (repeatable); default all")
      ->check(CLI::Range(1, selfsim::verify::kCriterionCount));
  app.add_flag("--quick", quick, "only the quick criteria");
  CLI11_PARSE(app, argc, argv);
  if (ids.empty())
    for (int i = 1; i <= selfsim::verify::kCriterionCount; ++i)
      if (!quick || selfsim::verify::is_quick(i)) ids.push_back(i);
  bool ok = true;
  for (int id : ids) {
    auto r = selfsim::verify::run_criterion(id);
    std::cout << selfsim::verify::format(r) << std::flush;
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
