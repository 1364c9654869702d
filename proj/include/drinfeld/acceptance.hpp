#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace drinfeld {

// Runs one CLI invocation (argument list without the program name) and
// returns its stdout; throws on a nonzero exit.
using CliRunner = std::function<std::string(const std::vector<std::string>&)>;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// The twelve acceptance criteria, printed to `out` one [PASS]/[FAIL] line
// each as they finish.  The returned vector has one entry per criterion;
// the failure count is the suggested process exit status.
std::vector<CriterionResult> run_acceptance_suite(std::ostream& out,
                                                  const CliRunner& cli);

}  // namespace drinfeld
