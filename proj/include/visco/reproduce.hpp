#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace visco::lab {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool passed = false;
  bool skipped = false;
  /// Measured values against their thresholds, one "key=value" item per check.
  std::vector<std::string> details;
  double seconds = 0.0;
};

struct ReproduceOptions {
  bool include_slow = false;
  int workers = 1;
  /// Progress lines, if set.
  std::ostream* log = nullptr;
};

struct Criterion {
  int number;
  std::string name;
  bool slow;
  std::function<CriterionResult(const ReproduceOptions&)> run;
};

const std::vector<Criterion>& criteria();

/// "all" or one criterion name. Throws std::invalid_argument for an unknown name.
std::vector<CriterionResult> reproduce(const std::string& which, const ReproduceOptions& options);

/// One line: "PASS [n] name (s): details" (FAIL / SKIP likewise).
std::string format_result(const CriterionResult& r);

}  // namespace visco::lab
