// Acceptance suite: one PASS/FAIL line per criterion; nonzero exit on failure.

#include <iostream>

#include "ergolab/acceptance.hpp"

int main() {
  const unsigned threads = ergolab::thread_cap();
  int failed = 0;
  for (const auto& c : ergolab::acceptance::criteria()) {
    auto r = ergolab::acceptance::run_criterion(c, threads);
    std::cout << r.line() << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
