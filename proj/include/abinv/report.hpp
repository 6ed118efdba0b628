#pragma once

#include <string>
#include <vector>

namespace abinv {

/// One asserted identity: both sides rendered as text, plus the verdict.
struct Check {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool passed = false;
  std::string note;
};

struct Report {
  std::string title;
  std::vector<Check> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.passed ? 0 : 1;
    return n;
  }
  void add(std::string name, std::string lhs, std::string rhs, bool passed, std::string note = {}) {
    checks.push_back({std::move(name), std::move(lhs), std::move(rhs), passed, std::move(note)});
  }
  void append(const Report& other) {
    for (const auto& c : other.checks) checks.push_back(c);
  }
};

}  // namespace abinv
