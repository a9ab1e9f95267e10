#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leftce/bitstring.hpp"
#include "leftce/dyadic.hpp"
#include "leftce/machines.hpp"
#include "leftce/opponents.hpp"
#include "leftce/report.hpp"
#include "leftce/streams.hpp"

namespace leftce {

enum class RequirementState { inactive, preparing, waiting, restraining };

std::string_view to_string(RequirementState s);
RequirementState parse_requirement_state(std::string_view text);

/// What a stage did.
enum class DiagCase {
  start,              // stage 0 of a (re)started run
  prepare,            // case 1, still preparing
  settle,             // case 1, witness chosen, now waiting
  activate,           // case 2
  restrain,           // case 3
  hold,               // case 4, reference values kept
  release,            // case 4, incremental, back to waiting
  reset,              // case 4, incremental, new reference values
  bailout,            // gamma_s > alpha_(s-1) observed this stage
  bailout_hold,       // any later stage of a bailed-out run
};

std::string_view to_string(DiagCase c);
DiagCase parse_diag_case(std::string_view text);

/// Active requirement after a stage. `activation` numbers activations
/// within a run; the reserved code has length code_length and
/// restraint == 2^-(code_length + d).
struct RequirementSnapshot {
  int d = 0;
  RequirementState state = RequirementState::inactive;
  std::uint64_t activation = 0;
  std::size_t code_length = 0;
  Dyadic restraint;
  std::optional<Dyadic> q;
  std::optional<Dyadic> l;
  std::optional<BitString> witness;
  std::size_t incremental = 0;

  friend bool operator==(const RequirementSnapshot&, const RequirementSnapshot&) = default;
};

struct ActivationEvent {
  int d = 0;
  std::uint64_t activation = 0;
  BitString code;

  friend bool operator==(const ActivationEvent&, const ActivationEvent&) = default;
};

struct DiagRecord {
  Stage stage = 0;
  int segment = 0;
  DiagCase kind = DiagCase::start;
  /// Lowest-priority active requirement the case was dispatched on.
  std::optional<int> focus;
  Dyadic alpha;
  /// Target the run copies: floor + (ceiling - floor) * beta_s.
  Dyadic beta;
  Dyadic gamma;
  std::vector<RequirementSnapshot> requirements;
  std::vector<ActivationEvent> activated;
  std::vector<int> cancelled;
  std::optional<int> incremental;
  /// Bailout reference values (q, l) once bailed out.
  std::optional<Dyadic> bailout_q;
  std::optional<Dyadic> bailout_l;
  std::vector<DescriptionEvent> opponent_events;
  std::vector<DescriptionEvent> q_events;

  friend bool operator==(const DiagRecord&, const DiagRecord&) = default;
};

/// A run confined to [floor, ceiling] against one opponent.
struct DiagSegment {
  Stage start = 0;
  std::int64_t opponent_index = 0;
  Dyadic floor;
  Dyadic ceiling;
  std::string opponent;

  friend bool operator==(const DiagSegment&, const DiagSegment&) = default;
};

struct DiagTrace {
  Stage horizon = 0;
  int max_requirements = 0;
  bool layerwise = false;
  std::vector<DiagSegment> segments;
  std::vector<DiagRecord> records;
  /// Non-empty if the run stopped before the horizon.
  std::string diagnostic;

  friend bool operator==(const DiagTrace&, const DiagTrace&) = default;
};

struct DiagConfig {
  Dyadic floor{0};
  Dyadic ceiling{1};
  /// Requirements R_0 .. R_(max_requirements - 1) are ever activated.
  int max_requirements = 16;
};

/// Requires every beta value in [0,1) and a final value above 3/4.
void check_beta_contract(const LeftCEStream& beta, Stage horizon);

/// Stages 0..horizon of the diagonalization against `opponent`.
DiagTrace run_diag(Opponent& opponent, const LeftCEStream& beta, Stage horizon, const DiagConfig& config = {});

using OpponentFactory = std::function<std::unique_ptr<Opponent>(std::int64_t index)>;

/// Restarts the run inside [xi_n, xi_(n+1)], n the number of index changes
/// so far, against a fresh factory(index[s]) whenever index[s] != index[s-1].
/// `index` must cover
/// stages 0..horizon. Running out of xi values stops the trace early with
/// a diagnostic; a non-increasing xi step throws ContractViolation.
DiagTrace run_layerwise_diag(const std::vector<std::int64_t>& index, const OpponentFactory& factory,
                             const LeftCEStream& beta, const LeftCEStream& xi, Stage horizon,
                             int max_requirements = 16);

/// Stagewise alpha bounds and alpha - gamma < r_d, the
/// single-non-waiting-requirement rule, the incremental-stage bound and
/// gamma growth, successive gamma increments below r_d, settled witnesses,
/// Q prefix-freeness and bailout soundness.
Report verify_diag_claims(const DiagTrace& trace);

/// Segment bookkeeping of a layerwise trace, global monotonicity and
/// confinement, plus the claim suite on every segment.
Report verify_layerwise(const DiagTrace& trace);

}  // namespace leftce
