#include "leftce/semimeasures.hpp"

#include <algorithm>
#include <string>

#include "leftce/errors.hpp"

namespace leftce {

void SemiMeasureTape::add(Stage stage, Index index, const Dyadic& amount) {
  if (!amount.is_positive()) throw ContractViolation("semi-measure increments must be positive, got " + amount.to_string());
  if (index < 0) throw ContractViolation("semi-measure index must be >= 0");
  if (stage < 0) throw ContractViolation("semi-measure stage must be >= 0");
  if (!increments_.empty() && stage < increments_.back().stage) {
    throw ContractViolation("semi-measure increments out of stage order at stage " + std::to_string(stage));
  }
  Dyadic total = this->total() + amount;
  if (Dyadic(1) < total) {
    throw ContractViolation("semi-measure total would exceed 1 at stage " + std::to_string(stage) + " (" +
                            total.to_string() + ")");
  }
  auto& history = per_index_[index];
  Dyadic mass = history.empty() ? amount : history.back().second + amount;
  if (!history.empty() && history.back().first == stage) {
    history.back().second = std::move(mass);
  } else {
    history.emplace_back(stage, std::move(mass));
  }
  cumulative_.push_back(std::move(total));
  increments_.push_back({stage, index, amount});
}

Dyadic SemiMeasureTape::mass(Index i) const {
  auto it = per_index_.find(i);
  return it == per_index_.end() ? Dyadic() : it->second.back().second;
}

Dyadic SemiMeasureTape::mass_at(Index i, Stage s) const {
  auto it = per_index_.find(i);
  if (it == per_index_.end()) return Dyadic();
  const auto& history = it->second;
  auto pos = std::upper_bound(history.begin(), history.end(), s,
                              [](Stage stage, const auto& entry) { return stage < entry.first; });
  if (pos == history.begin()) return Dyadic();
  return std::prev(pos)->second;
}

Dyadic SemiMeasureTape::total_at(Stage s) const {
  auto it = std::upper_bound(increments_.begin(), increments_.end(), s,
                             [](Stage stage, const MassIncrement& inc) { return stage < inc.stage; });
  if (it == increments_.begin()) return Dyadic();
  return cumulative_[static_cast<std::size_t>(it - increments_.begin()) - 1];
}

std::vector<Index> SemiMeasureTape::support() const {
  std::vector<Index> out;
  for (const auto& [i, history] : per_index_) out.push_back(i);
  return out;
}

void MLTestTape::add(TestInterval interval) {
  if (!(interval.lo < interval.hi)) throw ContractViolation("test interval must have lo < hi");
  levels_[interval.level].push_back(std::move(interval));
}

Dyadic MLTestTape::level_length(int k) const {
  Dyadic total;
  auto it = levels_.find(k);
  if (it == levels_.end()) return total;
  for (const auto& iv : it->second) total += iv.hi - iv.lo;
  return total;
}

bool MLTestTape::covers(int k, const Dyadic& x) const {
  auto it = levels_.find(k);
  if (it == levels_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](const TestInterval& iv) { return iv.lo < x && x < iv.hi; });
}

SemiMeasureTape mixture_universal(std::span<const SemiMeasureTape> components) {
  struct Ref {
    Stage stage;
    std::size_t component;
    std::size_t index;
  };
  std::vector<Ref> order;
  for (std::size_t e = 0; e < components.size(); ++e) {
    const auto& incs = components[e].increments();
    for (std::size_t i = 0; i < incs.size(); ++i) order.push_back({incs[i].stage, e, i});
  }
  std::stable_sort(order.begin(), order.end(), [](const Ref& a, const Ref& b) {
    return a.stage != b.stage ? a.stage < b.stage : a.component < b.component;
  });
  SemiMeasureTape m;
  for (const Ref& r : order) {
    const MassIncrement& inc = components[r.component].increments()[r.index];
    m.add(inc.stage, inc.index, inc.amount.scaled(-static_cast<std::int64_t>(r.component) - 1));
  }
  return m;
}

namespace {

struct Served {
  Stage stage = -1;
  Dyadic mass;
};

struct LevelState {
  int level = 0;
  int phase = 1;
  Dyadic entry_alpha;
  std::optional<Index> active;
  std::optional<Dyadic> ceiling;
  Dyadic mass;
  std::map<Index, Served> served;
};

// Step 1: the index whose mu-mass grew since it was last served, least
// recently served first (never served counts as stage -1), ties to the
// smaller index.
std::optional<std::pair<Index, Dyadic>> pick_trigger(const std::map<Index, Served>& served,
                                                     const std::vector<Index>& indices, const SemiMeasureTape& mu,
                                                     Stage s) {
  std::optional<std::pair<Index, Dyadic>> best;
  Stage best_stage = 0;
  for (Index i : indices) {
    if (i > s) break;
    const Dyadic now = mu.mass_at(i, s);
    auto it = served.find(i);
    const Stage last = it == served.end() ? -1 : it->second.stage;
    const Dyadic before = it == served.end() ? Dyadic() : it->second.mass;
    if (!(before < now)) continue;
    if (!best || last < best_stage) {
      best = std::make_pair(i, now - before);
      best_stage = last;
    }
  }
  return best;
}

}  // namespace

SemiMeasureResult uniform_semimeasure_with_sum(const LeftCEStream& alpha, const SemiMeasureTape& mu, int kmax,
                                               Stage horizon) {
  if (kmax < 1) throw ContractViolation("kmax must be >= 1");
  if (horizon > alpha.horizon()) throw ContractViolation("alpha is not defined up to the horizon");
  for (Stage s = 0; s <= horizon; ++s) {
    if (alpha.at(s).is_negative() || Dyadic(1) < alpha.at(s)) {
      throw ContractViolation("alpha must stay in [0,1]; stage " + std::to_string(s) + " has " +
                              alpha.at(s).to_string());
    }
  }

  SemiMeasureResult result;
  result.levels.resize(static_cast<std::size_t>(kmax));
  result.trace.kmax = kmax;
  std::vector<LevelState> levels(static_cast<std::size_t>(kmax));
  for (int k = 1; k <= kmax; ++k) levels[static_cast<std::size_t>(k - 1)].level = k;

  const std::vector<Index> indices = mu.support();
  std::size_t mu_cursor = 0;

  for (Stage s = 0; s <= horizon; ++s) {
    const Dyadic& a = alpha.at(s);
    SemiRecord record;
    record.stage = s;
    record.alpha = a;
    while (mu_cursor < mu.increments().size() && mu.increments()[mu_cursor].stage <= s) {
      record.mu_increments.push_back(mu.increments()[mu_cursor++]);
    }

    for (LevelState& st : levels) {
      const std::int64_t k = st.level;
      LevelRecord rec;
      rec.level = st.level;
      auto spend = [&](Index i, const Dyadic& amount) {
        if (!amount.is_positive()) return;
        const Dyadic inc = amount.scaled(-k);
        st.mass += inc;
        rec.increments.emplace_back(i, inc);
        result.levels[static_cast<std::size_t>(k - 1)].add(s, i, inc);
        result.m.add(s, i, inc);
      };

      // Step 3 carried over from an earlier stage.
      if (st.phase == 3 && s > 0) {
        spend(*st.active, a - alpha.at(s - 1));
        if (*st.ceiling < a) {
          st.phase = 1;
          st.entry_alpha = a;
          st.active.reset();
          st.ceiling.reset();
        }
      }
      if (st.phase == 1) {
        if (auto trigger = pick_trigger(st.served, indices, mu, s)) {
          const auto& [i, x] = *trigger;
          st.served[i] = Served{s, mu.mass_at(i, s)};
          TestInterval iv{st.level, s, a, a + x.scaled(-k)};
          result.test.add(iv);
          rec.interval = iv;
          rec.trigger_amount = x;
          st.active = i;
          st.ceiling = iv.hi;
          st.phase = 3;
          spend(i, a - st.entry_alpha);
        }
      }
      rec.phase = st.phase;
      rec.entry_alpha = st.entry_alpha;
      rec.active_index = st.active;
      rec.ceiling = st.ceiling;
      rec.mass = st.mass;
      record.levels.push_back(std::move(rec));
    }
    result.trace.records.push_back(std::move(record));
  }
  return result;
}

SemiDominationVerdict verify_domination(const SemiMeasureTape& m, const SemiMeasureTape& mu, int j, Stage horizon) {
  SemiDominationVerdict v;
  for (Index i : mu.support()) {
    const Dyadic target = mu.mass_at(i, horizon).scaled(-j);
    if (!target.is_positive()) continue;
    const Dyadic have = m.mass_at(i, horizon);
    if (!(target < have) && v.strict) {
      v.strict = false;
      v.first_strict_failure = i;
    }
    if (have < target && v.non_strict) {
      v.non_strict = false;
      v.first_failure = i;
    }
  }
  return v;
}

bool fully_consumed(const SemiTrace& trace) {
  if (trace.records.empty()) return true;
  const SemiRecord& last = trace.records.back();
  return std::all_of(last.levels.begin(), last.levels.end(), [&](const LevelRecord& l) {
    return l.phase == 3 || l.entry_alpha == last.alpha;
  });
}

Report verify_semimeasure_trace(const SemiTrace& trace) {
  Report report;
  report.check("alpha-monotone");
  report.check("test-level-bound");
  report.check("interval-shape");
  report.check("mass-accounting");
  report.check("phase-bookkeeping");
  report.check("trigger-selection");
  report.check("total-at-most-one");
  report.check("sum-at-quiescence");

  const auto kmax = static_cast<std::size_t>(trace.kmax);
  std::vector<Dyadic> level_length(kmax);
  std::vector<Dyadic> level_mass(kmax);
  std::vector<std::map<Index, Served>> served(kmax);
  std::map<Index, Dyadic> mu_mass;
  std::vector<const LevelRecord*> prev(kmax, nullptr);
  const SemiRecord* prev_record = nullptr;

  for (const SemiRecord& r : trace.records) {
    const Stage s = r.stage;
    if (prev_record) {
      report.expect_lazy("alpha-monotone", prev_record->alpha <= r.alpha, s,
                         [&] { return "alpha decreased to " + r.alpha.to_string(); });
    }
    for (const auto& inc : r.mu_increments) mu_mass[inc.index] += inc.amount;

    Dyadic total;
    if (r.levels.size() != kmax) {
      report.expect("mass-accounting", false, s, "record has the wrong number of levels");
      continue;
    }
    for (std::size_t idx = 0; idx < kmax; ++idx) {
      const LevelRecord& l = r.levels[idx];
      const std::int64_t k = l.level;
      const Dyadic scale = Dyadic::pow2(-k);

      for (const auto& [i, amount] : l.increments) {
        report.expect_lazy("mass-accounting", amount.is_positive(), s,
                           [&] { return "non-positive increment at level " + std::to_string(k); });
        level_mass[idx] += amount;
      }
      if (l.interval) {
        level_length[idx] += l.interval->hi - l.interval->lo;
        const bool shape = l.trigger_amount && l.interval->lo == r.alpha &&
                           l.interval->hi - l.interval->lo == *l.trigger_amount * scale;
        report.expect_lazy("interval-shape", shape, s, [&] {
          return "level " + std::to_string(k) + " interval is not (alpha_s, alpha_s + 2^-k x)";
        });
      }
      report.expect_lazy("test-level-bound", level_length[idx] <= scale, s, [&] {
        return "level " + std::to_string(k) + " has total length " + level_length[idx].to_string();
      });

      const Dyadic expected = l.phase == 3 ? r.alpha * scale : l.entry_alpha * scale;
      report.expect_lazy("mass-accounting", level_mass[idx] == l.mass && l.mass == expected, s, [&] {
        return "level " + std::to_string(k) + " holds " + level_mass[idx].to_string() + " (recorded " +
               l.mass.to_string() + "), expected " + expected.to_string();
      });
      total += level_mass[idx];

      // Phase transitions.
      const LevelRecord* p = prev[idx];
      const bool was3 = p && p->phase == 3;
      bool ok = true;
      std::string why;
      if (was3 && !l.trigger_amount && l.phase == 3) {
        ok = r.alpha <= *p->ceiling && l.ceiling == p->ceiling && l.active_index == p->active_index;
        why = "stayed in step 3 past its ceiling";
      } else if (was3) {
        ok = *p->ceiling < r.alpha && l.entry_alpha == r.alpha;
        why = "left step 3 without alpha passing the ceiling";
      } else if (p && !l.trigger_amount) {
        ok = l.phase == 1 && l.entry_alpha == p->entry_alpha;
        why = "step-1 entry value changed while waiting";
      }
      if (l.trigger_amount) ok = ok && l.phase == 3 && l.active_index && l.ceiling == l.interval->hi;
      report.expect_lazy("phase-bookkeeping", ok, s, [&] { return "level " + std::to_string(k) + " " + why; });
      for (const auto& [i, amount] : l.increments) {
        report.expect_lazy("phase-bookkeeping", l.active_index == i || (was3 && p->active_index == i), s, [&] {
          return "level " + std::to_string(k) + " paid index " + std::to_string(i) + " which is not being served";
        });
      }

      // Trigger selection against the replayed mu.
      if (l.trigger_amount) {
        const Index chosen = *l.active_index;
        std::optional<Index> expected_i;
        Stage best_stage = 0;
        Dyadic expected_x;
        for (const auto& [i, mass] : mu_mass) {
          if (i > s) break;
          auto it = served[idx].find(i);
          const Stage last = it == served[idx].end() ? -1 : it->second.stage;
          const Dyadic before = it == served[idx].end() ? Dyadic() : it->second.mass;
          if (!(before < mass)) continue;
          if (!expected_i || last < best_stage) {
            expected_i = i;
            best_stage = last;
            expected_x = mass - before;
          }
        }
        report.expect_lazy("trigger-selection", expected_i == chosen && expected_x == *l.trigger_amount, s, [&] {
          return "level " + std::to_string(k) + " served index " + std::to_string(chosen);
        });
        served[idx][chosen] = Served{s, mu_mass[chosen]};
      } else if (l.phase == 1) {
        // Waiting in step 1 is only legal when nothing is eligible.
        bool eligible = false;
        for (const auto& [i, mass] : mu_mass) {
          if (i > s) break;
          auto it = served[idx].find(i);
          const Dyadic before = it == served[idx].end() ? Dyadic() : it->second.mass;
          if (before < mass) eligible = true;
        }
        report.expect_lazy("trigger-selection", !eligible, s,
                           [&] { return "level " + std::to_string(k) + " idled in step 1 with an eligible index"; });
      }
      prev[idx] = &l;
    }
    report.expect_lazy("total-at-most-one", total <= Dyadic(1), s, [&] { return "m total " + total.to_string(); });
    prev_record = &r;
  }

  if (!trace.records.empty() && fully_consumed(trace)) {
    const SemiRecord& last = trace.records.back();
    Dyadic total;
    for (const Dyadic& m : level_mass) total += m;
    const Dyadic expected = last.alpha * (Dyadic(1) - Dyadic::pow2(-trace.kmax));
    report.expect_lazy("sum-at-quiescence", total == expected, last.stage, [&] {
      return "sum " + total.to_string() + " != alpha * (1 - 2^-kmax) = " + expected.to_string();
    });
  }
  return report;
}

}  // namespace leftce
