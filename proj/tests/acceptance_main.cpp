#include "bellseq/acceptance.hpp"
#include <iostream>
int main() {
  const auto results = bellseq::run_acceptance_suite();
  return bellseq::print_acceptance_table(results, std::cout) ? 0 : 1;
}
