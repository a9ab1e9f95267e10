#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "leftce/bitstring.hpp"
#include "leftce/dyadic.hpp"
#include "leftce/streams.hpp"

namespace leftce {

/// One convergence M(program) = output, first observed at `stage`.
struct DescriptionEvent {
  Stage stage = 0;
  BitString program;
  BitString output;

  friend bool operator==(const DescriptionEvent&, const DescriptionEvent&) = default;
};

/// Prefix-free complexity; std::nullopt stands for infinity.
using Complexity = std::optional<std::size_t>;

/// A prefix-free machine observed as an append-only enumeration of
/// description events. Events must arrive in nondecreasing stage order.
/// An event whose program is comparable with an accepted one is logged in
/// rejected() and otherwise ignored.
class MachineTape {
 public:
  /// Returns true if accepted. Throws ContractViolation on a stage that
  /// goes backwards.
  bool append(DescriptionEvent event);
  bool append(Stage stage, BitString program, BitString output) {
    return append(DescriptionEvent{stage, std::move(program), std::move(output)});
  }

  /// Whether `program` is incomparable with every accepted program.
  bool admits(const BitString& program) const;

  const std::vector<DescriptionEvent>& events() const { return events_; }
  const std::vector<DescriptionEvent>& rejected() const { return rejected_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  Stage last_stage() const { return last_stage_; }

  /// Sum of 2^-|program| over accepted events with stage <= s.
  Dyadic omega_at(Stage s) const;
  Dyadic omega() const { return cumulative_.empty() ? Dyadic() : cumulative_.back(); }

  /// min |p| over accepted events p -> target with stage <= s.
  Complexity complexity_at(const BitString& target, Stage s) const;
  Complexity complexity(const BitString& target) const;

  /// Every output that has at least one accepted description.
  std::vector<BitString> outputs() const;

 private:
  std::vector<DescriptionEvent> events_;
  std::vector<DescriptionEvent> rejected_;
  std::vector<Dyadic> cumulative_;
  std::set<BitString> domain_;
  // Per output: (stage, length) each time the shortest description improved.
  std::unordered_map<BitString, std::vector<std::pair<Stage, std::size_t>>> shortest_;
  Stage last_stage_ = -1;
};

/// Replays a stage-ordered raw log, keeping only events whose program is
/// incomparable with everything accepted before it.
MachineTape enforce_prefix_free(std::span<const DescriptionEvent> raw);

/// U(0^e 1 p) = M_e(p). Events keep their stage; ties are ordered by
/// component index.
MachineTape adjoin_universal(std::span<const MachineTape> components);

/// V(p0) = V(p1) = U(p) for odd |p|, V(p) = U(p) for even |p|.
MachineTape footnote_pad(const MachineTape& u);

/// Least string in length-lex order whose complexity at stage s exceeds
/// `bound` (infinite complexity counts as exceeding).
BitString least_string_with_complexity_above(const MachineTape& tape, std::size_t bound, Stage s);

/// Some pair of distinct comparable programs, if any. Sort-based, O(n log n).
std::optional<std::pair<BitString, BitString>> find_comparable_pair(std::vector<BitString> programs);

std::vector<BitString> domain_of(const MachineTape& tape);

}  // namespace leftce
