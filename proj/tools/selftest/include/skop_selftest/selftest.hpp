#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace skop::selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Worst observed error (or 0/1 for exact checks) and the bound it is held to.
  double metric = 0.0;
  double tolerance = 0.0;
  std::string summary;
  /// One JSON record per checked case, in a fixed order.
  std::vector<nlohmann::json> records;
};

struct Options {
  int threads = 0;  // 0: hardware concurrency
  /// Criteria to run (1..10); empty means all.
  std::vector<int> only;
};

int criterion_count();
std::string criterion_name(int id);

/// Runs the numerical criteria 1..10 (or the selected subset) in order.
std::vector<CriterionResult> run(const Options& options);

/// Line-delimited JSON for a result set (records, then a verdict record per criterion).
std::string to_json_lines(const std::vector<CriterionResult>& results);

/// Determinism check: runs the suite twice and compares the JSON byte for byte.
CriterionResult determinism(const Options& options, std::vector<CriterionResult>* first_run = nullptr);

/// "criterion N PASS|FAIL name: metric <= tolerance (summary)".
std::string format_line(const CriterionResult& r);

}  // namespace skop::selftest
