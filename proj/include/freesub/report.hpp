#pragma once

#include <string>
#include <utility>
#include <vector>

namespace freesub {

/// One verification check: a stable name, the outcome, and on failure a
/// human-readable witness of the violation.
struct Check {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct Report {
  std::vector<Check> checks;

  void add(std::string name, bool pass, std::string witness = "") {
    checks.push_back(Check{std::move(name), pass, std::move(witness)});
  }
  bool all_pass() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

}  // namespace freesub
