#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "leftce/dyadic.hpp"
#include "leftce/report.hpp"
#include "leftce/streams.hpp"

namespace leftce {

enum class DiffCase {
  init,      // stage 0
  wait,      // alpha held, delta pulled toward alpha - beta
  overtake,  // follow case 1: alpha jumps just past theta^i
  jump,      // follow case 2: alpha jumps just past some theta^j
  track,     // follow case 3: alpha copies beta's increment
};

std::string_view to_string(DiffCase c);
DiffCase parse_diff_case(std::string_view text);

/// State between stages: alpha_s, delta_s and the mode of stage s+1
/// (nullopt for wait, i for follow(i)).
struct DiffState {
  Stage stage = 0;
  Dyadic alpha;
  Dyadic delta;
  std::optional<int> next_follow;
};

struct DiffRecord {
  Stage stage = 0;
  DiffCase kind = DiffCase::init;
  /// i when this stage ran in follow(i).
  std::optional<int> follow;
  Dyadic alpha;
  Dyadic beta;
  Dyadic delta;
  /// theta^0_s .. theta^(I-1)_s.
  std::vector<Dyadic> theta;
  /// The j of a case-2 jump.
  std::optional<int> j;
  std::optional<Dyadic> epsilon;
  std::optional<int> next_follow;

  friend bool operator==(const DiffRecord&, const DiffRecord&) = default;
};

struct DiffTrace {
  Stage horizon = 0;
  Dyadic bootstrap;
  std::vector<DiffRecord> records;

  friend bool operator==(const DiffTrace&, const DiffTrace&) = default;
};

/// min(2^-(index+1), slack) / 2: positive, below 2^-index and below slack.
Dyadic choose_epsilon(int index, const Dyadic& slack);

/// alpha_0 is the bootstrap stream's final (handoff) value and
/// delta_0 = 1 + alpha_0 - beta_0; stage 1 waits.
DiffState diff_init(const LeftCEStream& gamma_bootstrap, const LeftCEStream& beta);

/// Runs stage state.stage + 1 and advances the state.
DiffRecord diff_step(DiffState& state, const LeftCEStream& beta, std::span<const RightCEStream> thetas);

/// Stages 0..horizon. beta and every theta must be defined to the horizon.
DiffTrace run_diff(const LeftCEStream& beta, std::span<const RightCEStream> thetas,
                   const LeftCEStream& gamma_bootstrap, Stage horizon);

/// delta_s > alpha_s - beta_s, the wait-stage sandwich, per-epoch alpha
/// budgets, the half-bound and increment domination inside follow runs,
/// overtake permanence, the case-2 factor identity, and the stage updates
/// themselves.
Report verify_diff_claims(const DiffTrace& trace);

}  // namespace leftce
