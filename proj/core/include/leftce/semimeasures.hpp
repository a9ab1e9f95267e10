#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "leftce/dyadic.hpp"
#include "leftce/report.hpp"
#include "leftce/streams.hpp"

namespace leftce {

using Index = std::int64_t;

struct MassIncrement {
  Stage stage = 0;
  Index index = 0;
  Dyadic amount;

  friend bool operator==(const MassIncrement&, const MassIncrement&) = default;
};

/// A left-c.e. discrete semi-measure given by its stage-ordered positive
/// increments. The running total never exceeds 1.
class SemiMeasureTape {
 public:
  /// Throws ContractViolation on a non-positive amount, a stage going
  /// backwards, a negative index, or a total above 1.
  void add(Stage stage, Index index, const Dyadic& amount);
  void add(const MassIncrement& inc) { add(inc.stage, inc.index, inc.amount); }

  const std::vector<MassIncrement>& increments() const { return increments_; }
  bool empty() const { return increments_.empty(); }

  Dyadic mass(Index i) const;
  Dyadic mass_at(Index i, Stage s) const;
  Dyadic total() const { return cumulative_.empty() ? Dyadic() : cumulative_.back(); }
  Dyadic total_at(Stage s) const;

  /// Indices with positive mass, ascending.
  std::vector<Index> support() const;

 private:
  std::vector<MassIncrement> increments_;
  std::vector<Dyadic> cumulative_;
  std::map<Index, std::vector<std::pair<Stage, Dyadic>>> per_index_;
};

struct TestInterval {
  int level = 0;
  Stage stage = 0;
  Dyadic lo;
  Dyadic hi;

  friend bool operator==(const TestInterval&, const TestInterval&) = default;
};

/// Levels U_k of a Martin-Loef test as lists of open dyadic intervals.
class MLTestTape {
 public:
  void add(TestInterval interval);
  const std::map<int, std::vector<TestInterval>>& levels() const { return levels_; }
  /// Sum of interval lengths at level k (an upper bound on its measure).
  Dyadic level_length(int k) const;
  /// Whether x lies in some open interval of level k.
  bool covers(int k, const Dyadic& x) const;

 private:
  std::map<int, std::vector<TestInterval>> levels_;
};

/// m(i) = sum_e 2^(-e-1) mu_e(i), merged in stage order.
SemiMeasureTape mixture_universal(std::span<const SemiMeasureTape> components);

/// Per-level state of the sum-prescribing construction after a stage.
struct LevelRecord {
  int level = 0;
  /// 1 while waiting for a mu-increase, 3 while feeding alpha's growth into m_k.
  int phase = 1;
  /// alpha at the stage the level last entered step 1 (0 before the run).
  Dyadic entry_alpha;
  std::optional<Index> active_index;
  /// Upper end alpha_s + 2^-k x of the interval put into U_k at the trigger.
  std::optional<Dyadic> ceiling;
  /// Sum over i of m_k(i) after this stage.
  Dyadic mass;
  /// x of a trigger that happened at this stage.
  std::optional<Dyadic> trigger_amount;
  std::vector<std::pair<Index, Dyadic>> increments;
  std::optional<TestInterval> interval;

  friend bool operator==(const LevelRecord&, const LevelRecord&) = default;
};

struct SemiRecord {
  Stage stage = 0;
  Dyadic alpha;
  std::vector<MassIncrement> mu_increments;
  std::vector<LevelRecord> levels;

  friend bool operator==(const SemiRecord&, const SemiRecord&) = default;
};

struct SemiTrace {
  int kmax = 0;
  std::vector<SemiRecord> records;

  friend bool operator==(const SemiTrace&, const SemiTrace&) = default;
};

struct SemiMeasureResult {
  SemiMeasureTape m;
  /// levels[k-1] is m_k.
  std::vector<SemiMeasureTape> levels;
  MLTestTape test;
  SemiTrace trace;
};

/// Builds m = sum_{k=1..kmax} m_k where each m_k spends alpha's growth on
/// whichever mu(i) increased (least recently served first), 2^-k at a
/// time, and records the matching test intervals. Requires alpha in [0,1].
SemiMeasureResult uniform_semimeasure_with_sum(const LeftCEStream& alpha, const SemiMeasureTape& mu, int kmax,
                                               Stage horizon);

struct SemiDominationVerdict {
  bool strict = true;
  bool non_strict = true;
  std::optional<Index> first_strict_failure;
  std::optional<Index> first_failure;

  bool holds() const { return non_strict; }
};

/// m(i) > 2^-j mu(i) (strict) and >= (non-strict) at the horizon, for all
/// i with mu(i) > 0.
SemiDominationVerdict verify_domination(const SemiMeasureTape& m, const SemiMeasureTape& mu, int j, Stage horizon);

/// True when every level has spent all of alpha's final value: it is in
/// step 3, or back in step 1 with nothing left to spend.
bool fully_consumed(const SemiTrace& trace);

/// Test-measure bound, per-level mass accounting, phase bookkeeping, and
/// (when fully consumed) the total sum identity.
Report verify_semimeasure_trace(const SemiTrace& trace);

}  // namespace leftce
