#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bellseq {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  std::string detail;
};

/// Runs every acceptance criterion with its pinned tolerances; used by
/// both the `selftest` CLI subcommand and the acceptance test binary.
std::vector<CriterionResult> run_acceptance_suite();

/// One line per criterion plus a footer; returns true when all passed.
bool print_acceptance_table(const std::vector<CriterionResult>& results, std::ostream& out);

} // namespace bellseq
