#include "bellseq/acceptance.hpp"
#include <ostream>
namespace bellseq {
std::vector<CriterionResult> run_acceptance_suite() { return {}; }
bool print_acceptance_table(const std::vector<CriterionResult>& results, std::ostream& out) {
  bool all = true;
  for (const auto& r : results) { all = all && r.passed; out << r.id << "\n"; }
  return all;
}
}
