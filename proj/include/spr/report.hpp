#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace spr {

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct CheckReport {
  std::vector<Check> checks;

  void add(std::string name, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(detail)});
  }

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }

  const Check* find(const std::string& name) const {
    auto it = std::find_if(checks.begin(), checks.end(), [&](const Check& c) { return c.name == name; });
    return it == checks.end() ? nullptr : &*it;
  }

  bool passed(const std::string& name) const {
    const Check* c = find(name);
    return c != nullptr && c->passed;
  }
};

}  // namespace spr
