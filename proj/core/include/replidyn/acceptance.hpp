#pragma once

#include <string>
#include <vector>

namespace replidyn {

// Built-in verification suite over the bundled example games. Each criterion
// pins its tolerances in code; `quick` cuts the Monte Carlo sizes by 10x and
// demotes the statistical criteria to informational rows (they report their
// margins instead of failing).
struct SuiteOptions {
  bool quick = false;
  int threads = 0;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  bool informational = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteReport {
  std::vector<CriterionResult> items;
  bool all_pass() const {
    for (const auto& item : items) {
      if (!item.informational && !item.pass) return false;
    }
    return true;
  }
};

SuiteReport builtin_suite(const SuiteOptions& options = {});

}  // namespace replidyn
