// One line per acceptance criterion; criterion 11 reruns the suite and compares output bytes.
#include <iostream>

#include "skop_selftest/selftest.hpp"

int main() {
  using namespace skop::selftest;
  std::vector<CriterionResult> results;
  const CriterionResult repeat = determinism({}, &results);
  results.push_back(repeat);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << format_line(r) << '\n';
    ok = ok && r.pass;
  }
  std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << '\n';
  return ok ? 0 : 1;
}
