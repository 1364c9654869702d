#include <array>
#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "drinfeld/acceptance.hpp"

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

std::string run_cli(const std::vector<std::string>& args) {
  std::string cmd = shell_quote(DRINFELD_CLI_PATH);
  for (const std::string& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  std::string output;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) output.append(buf.data(), n);
  int rc = pclose(p);
  if (rc != 0) throw std::runtime_error("cli exited with status " + std::to_string(rc));
  return output;
}

}  // namespace

int main() {
  std::vector<drinfeld::CriterionResult> results =
      drinfeld::run_acceptance_suite(std::cout, run_cli);
  int failures = 0;
  for (const drinfeld::CriterionResult& r : results) failures += r.pass ? 0 : 1;
  std::cout << failures << " of " << results.size() << " criteria failed"
            << std::endl;
  return failures;
}
