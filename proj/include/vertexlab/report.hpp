#pragma once

#include <string>
#include <vector>

namespace vertexlab {

/// Outcome of one verification: pass/fail plus a witness for the first
/// violated identity.
struct Check {
  std::string name;
  bool pass = false;
  std::string witness;  // empty on pass
};

struct Report {
  std::string title;
  std::vector<Check> checks;

  bool pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
  void add(const std::string& name, bool ok, const std::string& witness = "") {
    checks.push_back({name, ok, ok ? "" : witness});
  }
  std::string firstFailure() const {
    for (auto& c : checks)
      if (!c.pass) return c.name + (c.witness.empty() ? "" : (": " + c.witness));
    return "";
  }
};

}  // namespace vertexlab
