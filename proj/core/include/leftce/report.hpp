#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leftce/streams.hpp"

namespace leftce {

/// Outcome of one named invariant over a trace. Only the first
/// counterexample is kept.
struct CheckResult {
  std::string name;
  std::size_t evaluated = 0;
  std::size_t failures = 0;
  std::optional<Stage> first_failure_stage;
  std::string first_failure;

  bool passed() const { return failures == 0; }
};

class Report {
 public:
  /// Registers the check (so it is listed even if never evaluated) and
  /// returns it.
  CheckResult& check(std::string_view name);

  /// Records one evaluation of `name`; `ok == false` counts a failure.
  void expect(std::string_view name, bool ok, Stage stage, const std::string& detail = {});
  template <typename DetailFn>
  void expect_lazy(std::string_view name, bool ok, Stage stage, DetailFn&& detail) {
    if (ok) {
      expect(name, true, stage);
    } else {
      expect(name, false, stage, detail());
    }
  }

  void merge(const Report& other, std::string_view prefix = {});

  bool passed() const;
  const std::vector<CheckResult>& checks() const { return checks_; }
  const CheckResult* find(std::string_view name) const;

  /// One line per check: "PASS name (n evaluated)" or "FAIL name at stage s: ...".
  void print(std::ostream& os) const;

 private:
  std::vector<CheckResult> checks_;
};

}  // namespace leftce
