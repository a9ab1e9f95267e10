// One PASS/FAIL line per acceptance criterion. Every check is exact dyadic
// arithmetic; the only thresholds are the pinned run counts, stage counts
// and wall-clock limits below.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "leftce/diag_diff.hpp"
#include "leftce/diag_machine.hpp"
#include "leftce/kraft_chaitin.hpp"
#include "leftce/machines.hpp"
#include "leftce/omega_diff.hpp"
#include "leftce/opponents.hpp"
#include "leftce/semimeasures.hpp"
#include "support/generators.hpp"

namespace {

using namespace leftce;
using leftce::testing::Rng;
using leftce::testing::uniform;

constexpr int kPrefixFreeRuns = 1000;
constexpr Stage kDiagPrefixStages = 200;
constexpr int kKcStreams = 100;
constexpr Stage kKcStages = 1000;
constexpr int kRandomOpponents = 100;
constexpr Stage kDiagStages = 10000;
constexpr int kSatisfiedUpTo = 4;
constexpr int kDiffFixtures = 100;
constexpr Stage kDiffStages = 10000;
constexpr int kLedgerFixtures = 100;
constexpr std::int64_t kMaxUEvents = 200;
constexpr Stage kLedgerStages = 100;
constexpr int kSemiFixtures = 50;
constexpr int kSemiKmax = 8;
constexpr Stage kSemiStages = 10000;
constexpr int kPadFixtures = 100;
constexpr double kTimeLimitSeconds = 60.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// Independent prefix-freeness oracle: a binary trie with terminal marks.
class PrefixTrie {
 public:
  PrefixTrie() : next_(1, {0, 0}), terminal_(1, false) {}

  /// False if `p` is comparable with an earlier insertion.
  bool insert(const BitString& p) {
    std::size_t node = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (terminal_[node]) return false;
      const int b = p[i] == '1';
      if (next_[node][b] == 0) {
        next_[node][b] = next_.size();
        next_.push_back({0, 0});
        terminal_.push_back(false);
      }
      node = next_[node][b];
    }
    if (terminal_[node] || next_[node][0] != 0 || next_[node][1] != 0) return false;
    terminal_[node] = true;
    return true;
  }

 private:
  std::vector<std::array<std::size_t, 2>> next_;
  std::vector<bool> terminal_;
};

bool prefix_free(const std::vector<DescriptionEvent>& events) {
  PrefixTrie trie;
  for (const auto& e : events) {
    if (!trie.insert(e.program)) return false;
  }
  return true;
}

// Omega at every stage 0..horizon, summed directly from program lengths.
std::vector<Dyadic> omega_by_stage(const std::vector<DescriptionEvent>& events, Stage horizon) {
  std::vector<Dyadic> out(static_cast<std::size_t>(horizon) + 1);
  for (const auto& e : events) {
    if (e.stage <= horizon) out[static_cast<std::size_t>(e.stage)] += Dyadic::pow2(-static_cast<std::int64_t>(e.program.size()));
  }
  for (std::size_t s = 1; s < out.size(); ++s) out[s] += out[s - 1];
  return out;
}

std::optional<std::size_t> shortest(const std::vector<DescriptionEvent>& events, const BitString& x, Stage s) {
  std::optional<std::size_t> best;
  for (const auto& e : events) {
    if (e.stage <= s && e.output == x && (!best || e.program.size() < *best)) best = e.program.size();
  }
  return best;
}

MachineTape random_tape(Rng& rng, std::size_t count, Stage last, std::size_t max_program, std::size_t max_output) {
  return leftce::testing::random_machine(rng, count, last, max_program, max_output);
}

void print(int n, const char* title, const Outcome& o, double seconds) {
  std::printf("%s criterion %d: %s (%.1f s)%s%s\n", o.pass ? "PASS" : "FAIL", n, title, seconds,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------

Outcome prefix_freeness() {
  Outcome o;
  Rng rng(1001);
  auto check = [&](const char* producer, int run, const MachineTape& tape) {
    if (!tape.rejected().empty() || !prefix_free(tape.events())) {
      o.fail(std::string(producer) + " run " + std::to_string(run) + " produced comparable programs");
    }
  };
  for (int run = 0; run < kPrefixFreeRuns && o.pass; ++run) {
    std::vector<Request> requests;
    const auto n = uniform(rng, 1, 40);
    Stage stage = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      stage += uniform(rng, 0, 2);
      Request r{stage, Dyadic::pow2(-uniform(rng, 0, 12)), std::nullopt};
      if (leftce::testing::coin(rng, 0.3)) r.target = leftce::testing::random_bits(rng, 0, 4);
      requests.push_back(r);
    }
    check("kc_allocate", run, kc_allocate(requests).tape);

    const LeftCEStream alpha = leftce::testing::random_left_stream(rng, 50, 0.4, 16);
    check("real_to_machine", run, real_to_machine(alpha, 50));

    std::vector<MachineTape> comps;
    const auto k = uniform(rng, 1, 5);
    for (std::int64_t i = 0; i < k; ++i) comps.push_back(random_tape(rng, 10, 20, 8, 3));
    check("adjoin_universal", run, adjoin_universal(comps));

    const MachineTape u = random_tape(rng, static_cast<std::size_t>(uniform(rng, 1, 60)), 30, 10, 3);
    check("footnote_pad", run, footnote_pad(u));

    const MachineTape q = random_tape(rng, 5, 30, 8, 2);
    const bool literal = run % 4 == 0;
    const MachineTape small = literal ? random_tape(rng, 30, 30, 9, 2) : u;
    const HSpec h = HSpec::offset(uniform(rng, 1, literal ? 3 : 6));
    const auto r = transform_v(small, h, q, 30, literal ? ReplacementMode::literal : ReplacementMode::cover);
    std::vector<DescriptionEvent> raw_v;
    for (const auto& rec : r.ledger.records) raw_v.insert(raw_v.end(), rec.v_events.begin(), rec.v_events.end());
    if (!prefix_free(raw_v)) o.fail("transform_v run " + std::to_string(run) + " produced comparable programs");
    check("transform_v", run, r.v);
    check("combine_w", run, combine_w(small, r.v));

    RandomOpponent opp(static_cast<std::uint64_t>(run), static_cast<std::uint32_t>(uniform(rng, 20, 2000)));
    const DiagTrace t = run_diag(opp, default_beta(kDiagPrefixStages), kDiagPrefixStages);
    std::vector<DescriptionEvent> q_events;
    for (const auto& rec : t.records) q_events.insert(q_events.end(), rec.q_events.begin(), rec.q_events.end());
    if (!prefix_free(q_events)) o.fail("diag Q-tape run " + std::to_string(run) + " has comparable programs");
  }
  if (o.pass) o.detail = std::to_string(kPrefixFreeRuns) + " runs x 7 producers";
  return o;
}

Outcome kraft_chaitin_exactness() {
  Outcome o;
  Rng rng(1002);
  for (int run = 0; run < kKcStreams && o.pass; ++run) {
    const LeftCEStream alpha = leftce::testing::random_left_stream(rng, kKcStages, 0.3, 40);
    const MachineTape m = real_to_machine(alpha, kKcStages);
    const auto omega = omega_by_stage(m.events(), kKcStages);
    for (Stage s = 0; s <= kKcStages; ++s) {
      if (omega[static_cast<std::size_t>(s)] != alpha.at(s) || m.omega_at(s) != alpha.at(s)) {
        o.fail("stream " + std::to_string(run) + " stage " + std::to_string(s));
        break;
      }
    }
  }
  return o;
}

struct DiagRun {
  std::string name;
  std::unique_ptr<Opponent> opponent;
  DiagTrace trace;
};

// Criteria 3 and 4 on one trace.
void claim_one(const DiagRun& run, const LeftCEStream& beta, Outcome& c3, Outcome& c4) {
  const auto& recs = run.trace.records;
  if (static_cast<Stage>(recs.size()) != kDiagStages + 1) c3.fail(run.name + " stopped early");
  struct Tally {
    std::uint64_t activation = 0;
    std::int64_t count = 0;
    std::optional<Dyadic> last_gamma;
  };
  std::map<int, Tally> tallies;
  for (std::size_t k = 1; k < recs.size(); ++k) {
    const DiagRecord& r = recs[k];
    const DiagRecord& p = recs[k - 1];
    // Bailout abandons the construction: alpha_t = alpha_(s-1) + (gamma_s - alpha_(s-1)) beta_t
    // is only held to monotonicity here and to alpha_t < gamma_s in criterion 6.
    const bool bailed = r.kind == DiagCase::bailout || r.kind == DiagCase::bailout_hold;
    if (!(p.alpha <= r.alpha) || (!bailed && !(r.alpha <= beta.at(r.stage)))) {
      c3.fail(run.name + " stage " + std::to_string(r.stage) + " breaks alpha_(s-1) <= alpha_s <= beta_s");
    }
    for (const auto& q : r.requirements) {
      if (q.restraint != Dyadic::pow2(-static_cast<std::int64_t>(q.code_length) - q.d)) {
        c3.fail(run.name + " stage " + std::to_string(r.stage) + " R_" + std::to_string(q.d) + " restraint mismatch");
      }
      const bool active = q.state == RequirementState::waiting || q.state == RequirementState::restraining;
      if (active && !(r.alpha - r.gamma < q.restraint)) {
        c3.fail(run.name + " stage " + std::to_string(r.stage) + " R_" + std::to_string(q.d) + " has alpha - gamma >= r_d");
      }
    }
    if (!r.incremental) continue;
    const int d = *r.incremental;
    const RequirementSnapshot* snap = nullptr;
    for (const auto& q : r.requirements) {
      if (q.d == d) snap = &q;
    }
    if (!snap) {
      c4.fail(run.name + " stage " + std::to_string(r.stage) + " incremental for an inactive requirement");
      continue;
    }
    Tally& t = tallies[d];
    if (t.activation != snap->activation) t = Tally{snap->activation, 0, std::nullopt};
    ++t.count;
    if (Dyadic(static_cast<long>(t.count)) * snap->restraint > Dyadic(2)) {
      c4.fail(run.name + " R_" + std::to_string(d) + " exceeds 2/r_d incremental stages");
    }
    if (t.last_gamma && r.gamma - *t.last_gamma < snap->restraint.half()) {
      c4.fail(run.name + " stage " + std::to_string(r.stage) + " gamma grew less than r_d/2");
    }
    t.last_gamma = r.gamma;
  }
  if (!verify_diag_claims(run.trace).passed()) c3.fail(run.name + " fails the trace verifier");
}

Outcome satisfaction(const DiagRun& run) {
  Outcome o;
  std::vector<DescriptionEvent> q_events;
  for (const auto& rec : run.trace.records) q_events.insert(q_events.end(), rec.q_events.begin(), rec.q_events.end());
  const std::vector<DescriptionEvent>& m_events = run.opponent->tape().events();
  const DiagRecord& last = run.trace.records.back();
  for (int d = 0; d <= kSatisfiedUpTo; ++d) {
    const RequirementSnapshot* snap = nullptr;
    for (const auto& q : last.requirements) {
      if (q.d == d) snap = &q;
    }
    if (!snap || !snap->witness || snap->state == RequirementState::preparing) {
      o.fail("R_" + std::to_string(d) + " never settled");
      continue;
    }
    const auto kq = shortest(q_events, *snap->witness, last.stage);
    const auto km = shortest(m_events, *snap->witness, last.stage);
    if (!kq || *kq > snap->code_length) o.fail("R_" + std::to_string(d) + ": K_Q(sigma) > |tau|");
    if (km && *km <= snap->code_length + static_cast<std::size_t>(d)) {
      o.fail("R_" + std::to_string(d) + ": K_M(sigma) <= |tau| + d");
    }
  }
  return o;
}

void bailout_soundness(const DiagTrace& trace, const std::string& name, Outcome& o) {
  std::optional<Dyadic> gamma_b;
  for (const auto& r : trace.records) {
    if (!gamma_b && r.kind == DiagCase::bailout) gamma_b = r.gamma;
    if (gamma_b && !(r.alpha < *gamma_b)) {
      o.fail(name + " stage " + std::to_string(r.stage) + " has alpha >= gamma at bailout");
      return;
    }
  }
  if (!gamma_b) o.fail(name + " never bailed out");
}

Outcome diff_claims() {
  Outcome o;
  Rng rng(1007);
  for (int fx = 0; fx < kDiffFixtures && o.pass; ++fx) {
    const LeftCEStream beta = leftce::testing::random_left_stream(rng, kDiffStages, 0.02, 24, 1);
    std::vector<RightCEStream> thetas;
    const auto n = uniform(rng, 1, 8);
    for (std::int64_t i = 0; i < n; ++i) {
      const Dyadic start = leftce::testing::random_unit_dyadic(rng, 10) + leftce::testing::random_unit_dyadic(rng, 4);
      thetas.push_back(leftce::testing::random_right_stream(rng, kDiffStages, 0.01, 16, start, 0));
    }
    const LeftCEStream boot = leftce::testing::random_left_stream(rng, 4, 0.5, 8, Dyadic::make(1, 1));
    const DiffTrace t = run_diff(beta, thetas, boot, kDiffStages);
    const std::string where = "fixture " + std::to_string(fx);
    auto room = [](const DiffRecord& r) { return r.delta - (r.alpha - r.beta); };

    std::optional<int> epoch;
    Dyadic charged;
    Dyadic first_room;
    for (std::size_t k = 0; k < t.records.size() && o.pass; ++k) {
      const DiffRecord& r = t.records[k];
      const std::string at = where + " stage " + std::to_string(r.stage);
      if (!(r.alpha - r.beta < r.delta)) o.fail(at + ": delta <= alpha - beta");
      if (k == 0) continue;
      const DiffRecord& p = t.records[k - 1];
      if (!r.follow) {
        const Dyadic lag = r.delta - (r.alpha - r.beta);
        if (lag.is_negative() || Dyadic::pow2(1 - r.stage) < lag) o.fail(at + ": wait sandwich");
        epoch.reset();
        continue;
      }
      const int i = *r.follow;
      if (epoch != i) {
        epoch = i;
        charged = Dyadic();
        first_room = room(r);
      }
      const Dyadic gain = r.alpha - p.alpha;
      const Dyadic beta_step = r.beta - p.beta;
      // A jump past some other theta^j beyond beta's reach is charged to j.
      const bool charged_to_j = r.kind == DiffCase::jump && r.j && *r.j != i && p.alpha + beta_step < r.alpha;
      if (charged_to_j) {
        if (Dyadic::pow2(1 - *r.j) < gain) o.fail(at + ": jump gain above 2 * 2^-j");
      } else {
        charged += gain;
      }
      if (Dyadic::pow2(1 - i) < charged) o.fail(at + ": follow epoch gained more than 2 * 2^-i");
      if (r.kind != DiffCase::overtake && gain < beta_step) o.fail(at + ": alpha increment below beta increment");
      if (room(r).scaled(1) < first_room) o.fail(at + ": room fell below half its epoch start");
      if (!r.next_follow) epoch.reset();
    }
    if (o.pass && !verify_diff_claims(t).passed()) o.fail(where + " fails the trace verifier");
  }
  return o;
}

struct LedgerFixture {
  MachineTape u;
  MachineTape q;
  OmegaDiffResult result;
};

LedgerFixture make_ledger_fixture(Rng& rng, int fx) {
  const bool literal = fx % 4 == 3;
  const auto count = static_cast<std::size_t>(uniform(rng, 1, kMaxUEvents));
  LedgerFixture f;
  f.u = random_tape(rng, count, kLedgerStages, 12, literal ? 2 : 4);
  f.q = random_tape(rng, static_cast<std::size_t>(uniform(rng, 0, 20)), kLedgerStages, 10, 3);
  HSpec h = HSpec::offset(uniform(rng, 1, literal ? 3 : 8));
  if (!literal && fx % 2 == 0) {
    std::map<BitString, std::int64_t> table;
    for (std::uint64_t rank = 0; rank < 31; ++rank) table[BitString::from_length_lex_rank(rank)] = uniform(rng, 1, 14);
    h = HSpec::table(std::move(table));
  }
  f.result = transform_v(f.u, h, f.q, kLedgerStages, literal ? ReplacementMode::literal : ReplacementMode::cover);
  return f;
}

void ledger_identity(const LedgerFixture& f, int fx, Outcome& c8, Outcome& c9) {
  const DiffLedger& ledger = f.result.ledger;
  const auto& u = f.u.events();
  const auto& v = f.result.v.events();
  const auto omega_u = omega_by_stage(u, kLedgerStages);
  const auto omega_v = omega_by_stage(v, kLedgerStages);
  const auto omega_q = omega_by_stage(f.q.events(), kLedgerStages);
  const MachineTape w = combine_w(f.u, f.result.v);
  const auto omega_w = omega_by_stage(w.events(), kLedgerStages);
  const std::string where = "fixture " + std::to_string(fx);

  // A: outputs other than tau_0 whose first short description arrived.
  std::optional<BitString> sigma0;
  std::optional<BitString> tau0;
  std::set<BitString> in_a;
  std::vector<Dyadic> withheld(static_cast<std::size_t>(kLedgerStages) + 1);
  std::size_t cursor = 0;
  for (Stage s = 0; s <= kLedgerStages; ++s) {
    Dyadic& wsum = withheld[static_cast<std::size_t>(s)];
    if (s > 0) wsum = withheld[static_cast<std::size_t>(s - 1)];
    for (; cursor < u.size() && u[cursor].stage == s; ++cursor) {
      const auto& e = u[cursor];
      if (!sigma0) {
        sigma0 = e.program;
        tau0 = e.output;
        continue;
      }
      if (e.output == *tau0 || in_a.count(e.output)) continue;
      const std::int64_t hv = ledger.h(e.output);
      if (static_cast<std::int64_t>(e.program.size()) < hv) {
        in_a.insert(e.output);
        wsum += Dyadic::pow2(-hv);
      }
    }
  }
  if (sigma0 != ledger.sigma0) c8.fail(where + ": first description mismatch");

  const Stage first = u.empty() ? kLedgerStages + 1 : u.front().stage;
  std::set<BitString> outputs;
  for (const auto& e : u) outputs.insert(e.output);
  for (Stage s = 0; s <= kLedgerStages && c8.pass; ++s) {
    const auto i = static_cast<std::size_t>(s);
    if (omega_w[i] != (omega_u[i] + omega_v[i]).half()) c9.fail(where + " stage " + std::to_string(s));
    if (s < first) {
      if (!omega_v[i].is_zero()) c8.fail(where + ": V describes before U does");
      continue;
    }
    const std::int64_t c = static_cast<std::int64_t>(sigma0->size());
    const Dyadic rhs = Dyadic::pow2(-c - 1) * (Dyadic(1) - omega_q[i]) + withheld[i];
    if (omega_u[i] - omega_v[i] != rhs) c8.fail(where + " stage " + std::to_string(s) + ": identity broken");
    for (const auto& x : outputs) {
      const auto ku = shortest(u, x, s);
      if (!ku) continue;
      const auto kv = shortest(v, x, s);
      if (!kv || *kv > *ku + 1) c8.fail(where + " stage " + std::to_string(s) + ": K_V > K_U + 1");
    }
  }
}

Outcome semimeasure_claims() {
  Outcome o;
  Rng rng(1010);
  const Stage alpha_settles = kSemiStages / 2;
  for (int fx = 0; fx < kSemiFixtures && o.pass; ++fx) {
    const LeftCEStream early = leftce::testing::random_left_stream(rng, alpha_settles, 0.05, 30, 1);
    std::vector<Dyadic> values = early.values();
    values.resize(static_cast<std::size_t>(kSemiStages) + 1, early.final_value());
    const LeftCEStream alpha(values);
    SemiMeasureTape mu = leftce::testing::random_semimeasure(rng, 60, kSemiStages - 1000, 40, Dyadic::make(1, 1));
    mu.add(kSemiStages - 500, 0, Dyadic::make(1, 3));
    const auto r = uniform_semimeasure_with_sum(alpha, mu, kSemiKmax, kSemiStages);
    const std::string where = "fixture " + std::to_string(fx);

    for (int k = 1; k <= kSemiKmax; ++k) {
      Dyadic length;
      auto it = r.test.levels().find(k);
      if (it != r.test.levels().end()) {
        for (const auto& iv : it->second) length += iv.hi - iv.lo;
      }
      if (Dyadic::pow2(-k) < length) o.fail(where + ": U_" + std::to_string(k) + " exceeds 2^-k");

      const auto& incs = r.levels[static_cast<std::size_t>(k - 1)].increments();
      std::size_t cursor = 0;
      Dyadic mass;
      for (const SemiRecord& rec : r.trace.records) {
        for (; cursor < incs.size() && incs[cursor].stage == rec.stage; ++cursor) mass += incs[cursor].amount;
        const LevelRecord& lv = rec.levels[static_cast<std::size_t>(k - 1)];
        const Dyadic consumed = lv.phase == 3 ? rec.alpha : lv.entry_alpha;
        if (mass != consumed.scaled(-k)) {
          o.fail(where + " stage " + std::to_string(rec.stage) + ": m_" + std::to_string(k) + " mass accounting");
          break;
        }
      }
    }
    const SemiRecord& last = r.trace.records.back();
    for (const LevelRecord& lv : last.levels) {
      if (lv.phase != 3 && lv.entry_alpha != last.alpha) o.fail(where + ": level " + std::to_string(lv.level) + " not quiescent");
    }
    Dyadic total;
    for (const auto& inc : r.m.increments()) total += inc.amount;
    if (total != last.alpha * (Dyadic(1) - Dyadic::pow2(-kSemiKmax))) o.fail(where + ": sum is not alpha (1 - 2^-8)");
  }
  return o;
}

Outcome layerwise() {
  Outcome o;
  const Stage horizon = 600;
  std::vector<Dyadic> xi_values;
  for (Stage n = 0; n <= horizon + 1; ++n) xi_values.push_back(Dyadic(1) - Dyadic::pow2(-n));
  const LeftCEStream xi(xi_values);
  const LeftCEStream beta = default_beta(horizon);
  const OpponentFactory factory = [](std::int64_t i) {
    return make_builtin_opponent(i % 3 == 0 ? "copying" : "random:" + std::to_string(i) + ":400");
  };

  std::vector<std::int64_t> twice(static_cast<std::size_t>(horizon) + 1, 4);
  for (Stage s = 40; s <= horizon; ++s) twice[static_cast<std::size_t>(s)] = s < 150 ? 9 : 2;
  const DiagTrace t = run_layerwise_diag(twice, factory, beta, xi, horizon);
  if (t.segments.size() != 3) o.fail("expected two restarts, saw " + std::to_string(t.segments.size() - 1));
  if (!t.diagnostic.empty()) o.fail("stopped early: " + t.diagnostic);
  for (std::size_t k = 1; k < t.records.size(); ++k) {
    if (t.records[k].alpha < t.records[k - 1].alpha) o.fail("alpha fell at stage " + std::to_string(k));
  }
  for (const auto& r : t.records) {
    if (r.stage >= 150 && (r.alpha < xi.at(2) || xi.at(3) < r.alpha)) {
      o.fail("final segment leaves [xi_2, xi_3] at stage " + std::to_string(r.stage));
      break;
    }
  }
  if (!verify_layerwise(t).passed()) o.fail("two-change trace fails the verifier");

  for (const Stage period : {1, 7}) {
    std::vector<std::int64_t> index;
    for (Stage s = 0; s <= horizon; ++s) index.push_back(s / period);
    const DiagTrace u = run_layerwise_diag(index, factory, beta, xi, horizon);
    std::int64_t changes = 0;
    for (const auto& r : u.records) {
      if (r.stage > 0 && index[static_cast<std::size_t>(r.stage)] != index[static_cast<std::size_t>(r.stage - 1)]) ++changes;
      if (r.alpha < xi.at(changes)) {
        o.fail("period " + std::to_string(period) + " stage " + std::to_string(r.stage) + ": alpha below xi");
        break;
      }
    }
    if (static_cast<Stage>(u.records.size()) != horizon + 1) o.fail("period " + std::to_string(period) + " stopped early");
  }
  return o;
}

Outcome footnote() {
  Outcome o;
  Rng rng(1012);
  for (int fx = 0; fx < kPadFixtures && o.pass; ++fx) {
    const MachineTape u = random_tape(rng, static_cast<std::size_t>(uniform(rng, 1, 80)), 50, 12, 4);
    const MachineTape v = footnote_pad(u);
    if (omega_by_stage(u.events(), 50) != omega_by_stage(v.events(), 50)) o.fail("fixture " + std::to_string(fx) + ": omega differs");
    for (const auto& e : v.events()) {
      if (e.program.size() % 2 != 0) o.fail("fixture " + std::to_string(fx) + ": odd program " + e.program.str());
    }
    if (!prefix_free(v.events())) o.fail("fixture " + std::to_string(fx) + ": comparable programs");
  }
  return o;
}

template <typename Fn>
std::pair<Outcome, double> timed(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o = fn();
  return {o, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()};
}

}  // namespace

int main() {
  bool all = true;
  auto report = [&](int n, const char* title, Outcome o, double seconds, bool limited) {
    if (limited && seconds >= kTimeLimitSeconds) o.fail("over the time limit");
    all = all && o.pass;
    print(n, title, o, seconds);
  };

  {
    auto [o, t] = timed(prefix_freeness);
    report(1, "prefix-freeness of every producer", o, t, true);
  }
  {
    auto [o, t] = timed(kraft_chaitin_exactness);
    report(2, "Kraft-Chaitin omega tracks alpha exactly", o, t, true);
  }
  {
    const auto start = std::chrono::steady_clock::now();
    const LeftCEStream beta = default_beta(kDiagStages);
    Outcome c3, c4, c5, c6;
    Rng rng(1003);
    for (int k = 0; k < 3 + kRandomOpponents; ++k) {
      DiagRun run;
      if (k == 0) run.opponent = std::make_unique<StallingOpponent>();
      if (k == 1) run.opponent = std::make_unique<CopyingOpponent>();
      if (k == 2) run.opponent = std::make_unique<OvershootingOpponent>(8);
      if (k >= 3) {
        const auto odds = static_cast<std::uint32_t>(uniform(rng, 1000, 100000));
        run.opponent = std::make_unique<RandomOpponent>(static_cast<std::uint64_t>(k), odds);
      }
      run.name = run.opponent->describe();
      run.trace = run_diag(*run.opponent, beta, kDiagStages);
      claim_one(run, beta, c3, c4);
      if (k == 1) c5 = satisfaction(run);
      if (k == 2) bailout_soundness(run.trace, run.name, c6);
    }
    for (const Stage at : {1, 2, 3, 5, 13, 100, 1000}) {
      OvershootingOpponent opp(at);
      bailout_soundness(run_diag(opp, default_beta(2000), 2000), opp.describe(), c6);
    }
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(3, "alpha_(s-1) <= alpha_s <= beta_s before bailout and alpha_s - gamma_s < r_d", c3, t, false);
    report(4, "incremental stages per activation <= 2/r_d with gamma growth >= r_d/2", c4, t, false);
    report(5, "copying opponent: R_0..R_4 satisfied at the horizon", c5, t, false);
    report(6, "bailout keeps alpha below gamma", c6, t, false);
  }
  {
    auto [o, t] = timed(diff_claims);
    report(7, "difference diagonalization claims", o, t, false);
  }
  {
    const auto start = std::chrono::steady_clock::now();
    Outcome c8, c9;
    Rng rng(1008);
    for (int fx = 0; fx < kLedgerFixtures; ++fx) ledger_identity(make_ledger_fixture(rng, fx), fx, c8, c9);
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(8, "omega difference ledger identity and K_V <= K_U + 1", c8, t, true);
    report(9, "Omega_W = (Omega_U + Omega_V) / 2", c9, t, false);
  }
  {
    auto [o, t] = timed(semimeasure_claims);
    report(10, "semimeasure levels, mass accounting and sum", o, t, false);
  }
  {
    auto [o, t] = timed(layerwise);
    report(11, "layerwise restarts", o, t, false);
  }
  {
    auto [o, t] = timed(footnote);
    report(12, "footnote padding keeps omega with even programs", o, t, false);
  }
  std::printf("%s\n", all ? "ALL PASS" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
