#include "leftce/report.hpp"

#include <algorithm>
#include <ostream>
#include <utility>

namespace leftce {

CheckResult& Report::check(std::string_view name) {
  auto it = std::find_if(checks_.begin(), checks_.end(), [&](const CheckResult& c) { return c.name == name; });
  if (it != checks_.end()) return *it;
  CheckResult fresh;
  fresh.name = std::string(name);
  checks_.push_back(std::move(fresh));
  return checks_.back();
}

void Report::expect(std::string_view name, bool ok, Stage stage, const std::string& detail) {
  CheckResult& c = check(name);
  ++c.evaluated;
  if (ok) return;
  if (c.failures++ == 0) {
    c.first_failure_stage = stage;
    c.first_failure = detail;
  }
}

void Report::merge(const Report& other, std::string_view prefix) {
  for (const CheckResult& theirs : other.checks_) {
    CheckResult& mine = check(std::string(prefix) + theirs.name);
    mine.evaluated += theirs.evaluated;
    if (theirs.failures > 0 && mine.failures == 0) {
      mine.first_failure_stage = theirs.first_failure_stage;
      mine.first_failure = theirs.first_failure;
    }
    mine.failures += theirs.failures;
  }
}

bool Report::passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const CheckResult& c) { return c.passed(); });
}

const CheckResult* Report::find(std::string_view name) const {
  for (const auto& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void Report::print(std::ostream& os) const {
  for (const auto& c : checks_) {
    if (c.passed()) {
      os << "PASS " << c.name << " (" << c.evaluated << " evaluated)\n";
    } else {
      os << "FAIL " << c.name << " (" << c.failures << "/" << c.evaluated << " failed)";
      if (c.first_failure_stage) os << " first at stage " << *c.first_failure_stage;
      if (!c.first_failure.empty()) os << ": " << c.first_failure;
      os << '\n';
    }
  }
}

}  // namespace leftce
