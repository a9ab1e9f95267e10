#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "leftce/dyadic.hpp"

namespace leftce {

using Stage = std::int64_t;

enum class Direction { nondecreasing, nonincreasing };

std::string_view to_string(Direction d);
Direction parse_direction(std::string_view text);

/// A stage-indexed monotone sequence of dyadics, total on stages
/// 0..horizon(). Left-c.e. approximations are nondecreasing, right-c.e.
/// ones nonincreasing. Immutable once built.
template <Direction D>
class MonotoneStream {
 public:
  static constexpr Direction direction = D;

  MonotoneStream() = default;

  /// Throws ContractViolation naming the first stage that breaks monotonicity.
  explicit MonotoneStream(std::vector<Dyadic> values);

  /// Same, additionally enforcing lo <= value(s) <= hi at every stage.
  MonotoneStream(std::vector<Dyadic> values, Dyadic lo, Dyadic hi);

  /// Throws std::out_of_range outside 0..horizon().
  const Dyadic& at(Stage s) const;
  const Dyadic& operator[](Stage s) const { return at(s); }

  Stage horizon() const { return static_cast<Stage>(values_.size()) - 1; }
  bool empty() const { return values_.empty(); }
  const std::vector<Dyadic>& values() const { return values_; }
  const Dyadic& final_value() const { return values_.back(); }

  const std::optional<Dyadic>& lower_bound() const { return lo_; }
  const std::optional<Dyadic>& upper_bound() const { return hi_; }

  /// Prefix of stages 0..horizon (or the whole stream if shorter).
  MonotoneStream truncated(Stage horizon) const;

 private:
  std::vector<Dyadic> values_;
  std::optional<Dyadic> lo_;
  std::optional<Dyadic> hi_;
};

using LeftCEStream = MonotoneStream<Direction::nondecreasing>;
using RightCEStream = MonotoneStream<Direction::nonincreasing>;
using AnyStream = std::variant<LeftCEStream, RightCEStream>;

extern template class MonotoneStream<Direction::nondecreasing>;
extern template class MonotoneStream<Direction::nonincreasing>;

struct ScriptEvent {
  Stage stage = 0;
  Dyadic value;
};

/// Step function through the events, holding the last value until
/// `horizon` (default: the last event's stage). The first event must be at
/// stage 0 and stages must strictly increase; a monotonicity violation is
/// rejected with ContractViolation.
template <Direction D>
MonotoneStream<D> scripted_stream(std::span<const ScriptEvent> events,
                                  std::optional<Stage> horizon = std::nullopt);

AnyStream scripted_stream(std::span<const ScriptEvent> events, Direction direction,
                          std::optional<Stage> horizon = std::nullopt);

/// s -> q * base(s) + l, q > 0.
LeftCEStream affine(const LeftCEStream& base, const Dyadic& q, const Dyadic& l);

/// The default witness for the machine diagonalization:
/// beta_s = 13/16 - 2^(-s-2), increasing to 13/16.
LeftCEStream default_beta(Stage horizon);

struct DominationVerdict {
  bool holds = true;
  /// First stage t at which n*(beta_t - beta_s) < alpha_t - alpha_s for some s < t.
  std::optional<Stage> violated_at;
};

/// Finite-prefix Solovay check: n * (beta_t - beta_s) >= alpha_t - alpha_s
/// for all s < t <= horizon, for the supplied witness n >= 1.
DominationVerdict solovay_domination_check(const LeftCEStream& alpha, const LeftCEStream& beta,
                                           std::int64_t n, Stage horizon);

}  // namespace leftce
