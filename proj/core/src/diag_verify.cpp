#include <map>
#include <span>
#include <string>

#include "leftce/diag_machine.hpp"

namespace leftce {

namespace {

bool running(const DiagRecord& r) { return r.kind != DiagCase::bailout && r.kind != DiagCase::bailout_hold; }

std::string req_name(const RequirementSnapshot& q) { return "R_" + std::to_string(q.d); }

struct EpochTally {
  Dyadic restraint;
  std::size_t count = 0;
  std::optional<Dyadic> last_gamma;
};

void check_segment(Report& report, std::span<const DiagRecord> recs, const DiagSegment& segment) {
  std::map<std::uint64_t, EpochTally> epochs;
  MachineTape m;
  std::vector<BitString> q_programs;
  MachineTape q;
  std::optional<std::size_t> bailout_at;
  std::size_t last_running = 0;

  for (std::size_t j = 0; j < recs.size(); ++j) {
    const DiagRecord& r = recs[j];
    const Stage s = r.stage;
    for (const auto& ev : r.opponent_events) m.append(ev);
    for (const auto& ev : r.q_events) {
      q_programs.push_back(ev.program);
      q.append(ev);
    }
    if (j > 0) {
      report.expect_lazy("stage-order", r.stage == recs[j - 1].stage + 1, s, [&] { return "stages are not consecutive"; });
      report.expect_lazy("alpha-nondecreasing", recs[j - 1].alpha <= r.alpha, s,
                         [&] { return "alpha fell from " + recs[j - 1].alpha.to_string() + " to " + r.alpha.to_string(); });
    } else {
      report.expect_lazy("stage-order", r.kind == DiagCase::start && r.alpha == segment.floor, s,
                         [&] { return "run does not open with a start stage at its floor"; });
    }

    // Shape of the active set: R_0..R_k, all but the last waiting.
    bool shape = true;
    for (std::size_t k = 0; k < r.requirements.size(); ++k) {
      const RequirementSnapshot& q = r.requirements[k];
      if (q.d != static_cast<int>(k)) shape = false;
      if (k + 1 < r.requirements.size() && q.state != RequirementState::waiting) shape = false;
      report.expect_lazy("restraint-rule",
                         q.restraint == Dyadic::pow2(-static_cast<std::int64_t>(q.code_length) - q.d), s,
                         [&] { return req_name(q) + " has restraint " + q.restraint.to_string(); });
      if (q.state == RequirementState::restraining) {
        report.expect_lazy("q-positive", q.q && q.l && q.q->is_positive(), s,
                           [&] { return req_name(q) + " is restraining without positive q"; });
      }
    }
    report.expect_lazy("single-non-waiting", shape && !r.requirements.empty(), s,
                       [&] { return "active requirements are not R_0..R_k with only R_k non-waiting"; });

    if (!running(r)) {
      if (!bailout_at) {
        bailout_at = j;
        report.expect_lazy("bailout-soundness", r.kind == DiagCase::bailout && j > 0, s,
                           [&] { return "bailout-hold without a bailout stage"; });
      }
      const DiagRecord& b = recs[*bailout_at];
      const Dyadic l = *bailout_at > 0 ? recs[*bailout_at - 1].alpha : Dyadic();
      const Dyadic qv = min(b.gamma, segment.ceiling) - l;
      const bool ok = r.bailout_q == qv && r.bailout_l == l && qv.is_positive() && r.alpha == l + qv * r.beta &&
                      r.alpha < b.gamma;
      report.expect_lazy("bailout-soundness", ok, s, [&] {
        return "alpha " + r.alpha.to_string() + " against bailout gamma " + b.gamma.to_string();
      });
      continue;
    }
    last_running = j;
    if (j == 0) continue;

    const DiagRecord& p = recs[j - 1];
    report.expect_lazy("claim1-below-beta", r.alpha <= r.beta, s,
                       [&] { return "alpha " + r.alpha.to_string() + " > beta " + r.beta.to_string(); });
    for (const RequirementSnapshot& q : r.requirements) {
      if (q.state == RequirementState::preparing) continue;
      report.expect_lazy("claim1-restraint", r.alpha - r.gamma < q.restraint, s, [&] {
        return req_name(q) + ": alpha - gamma = " + (r.alpha - r.gamma).to_string() + " >= r = " + q.restraint.to_string();
      });
    }

    // The value the dispatched case must have assigned.
    if (r.focus && static_cast<std::size_t>(*r.focus) < r.requirements.size()) {
      const RequirementSnapshot& f = r.requirements[static_cast<std::size_t>(*r.focus)];
      bool ok = true;
      switch (r.kind) {
        case DiagCase::prepare:
        case DiagCase::settle:
        case DiagCase::activate:
        case DiagCase::release:
          ok = r.alpha == r.beta;
          break;
        case DiagCase::restrain:
        case DiagCase::reset:
          ok = f.l == p.alpha && f.q == f.restraint - (p.alpha - r.gamma) && r.alpha == *f.q * r.beta + *f.l;
          break;
        case DiagCase::hold:
          ok = f.q && f.l && r.alpha == *f.q * r.beta + *f.l && r.gamma <= *f.l + f.q->half();
          break;
        default:
          ok = false;
      }
      report.expect_lazy("case-assignment", ok, s, [&] { return std::string(to_string(r.kind)) + " assigned " + r.alpha.to_string(); });
    } else {
      report.expect("case-assignment", false, s, "no focus requirement");
    }

    // Successive opponent increments while a requirement is past preparing.
    for (const RequirementSnapshot& q : p.requirements) {
      if (q.state == RequirementState::preparing) continue;
      report.expect_lazy("successive-increments", r.gamma - p.gamma < q.restraint, s, [&] {
        return req_name(q) + ": gamma grew by " + (r.gamma - p.gamma).to_string() + " >= r = " + q.restraint.to_string();
      });
    }

    if (r.incremental) {
      const RequirementSnapshot* f = nullptr;
      for (const auto& q : r.requirements) {
        if (q.d == *r.incremental) f = &q;
      }
      if (!f) {
        report.expect("incremental-bound", false, s, "incremental requirement is not active");
        continue;
      }
      EpochTally& tally = epochs[f->activation];
      tally.restraint = f->restraint;
      ++tally.count;
      report.expect_lazy("incremental-bound", Dyadic(static_cast<long>(tally.count)) * tally.restraint <= Dyadic(2), s,
                         [&] { return req_name(*f) + " has " + std::to_string(tally.count) + " incremental stages"; });
      if (tally.last_gamma) {
        report.expect_lazy("incremental-gamma-growth", *tally.last_gamma + tally.restraint.half() <= r.gamma, s, [&] {
          return req_name(*f) + ": gamma " + r.gamma.to_string() + " < previous " + tally.last_gamma->to_string() +
                 " + r/2";
        });
      }
      tally.last_gamma = r.gamma;
    }
  }

  auto pair = find_comparable_pair(q_programs);
  report.expect_lazy("q-prefix-free", !pair, recs.empty() ? 0 : recs.back().stage,
                     [&] { return "Q programs " + pair->first.str() + " and " + pair->second.str() + " are comparable"; });

  if (recs.empty()) return;
  const DiagRecord& end = recs[last_running];
  for (const RequirementSnapshot& req : end.requirements) {
    if (!req.witness) continue;
    const Complexity kq = q.complexity_at(*req.witness, end.stage);
    const Complexity km = m.complexity_at(*req.witness, end.stage);
    const std::size_t bound = req.code_length + static_cast<std::size_t>(req.d);
    const bool ok = kq && *kq <= req.code_length && (!km || *km > bound);
    report.expect_lazy("settled-witness", ok, end.stage, [&] {
      return req_name(req) + " witness " + req.witness->str() + ": K_Q = " + (kq ? std::to_string(*kq) : "inf") +
             ", K_M = " + (km ? std::to_string(*km) : "inf");
    });
  }
}

void register_claims(Report& report) {
  for (const char* name :
       {"stage-order", "alpha-nondecreasing", "claim1-below-beta", "claim1-restraint", "single-non-waiting",
        "restraint-rule", "q-positive", "case-assignment", "incremental-bound", "incremental-gamma-growth",
        "successive-increments", "settled-witness", "q-prefix-free", "bailout-soundness"}) {
    report.check(name);
  }
}

}  // namespace

Report verify_diag_claims(const DiagTrace& trace) {
  Report report;
  register_claims(report);
  std::size_t begin = 0;
  for (std::size_t seg = 0; seg < trace.segments.size(); ++seg) {
    std::size_t end = begin;
    while (end < trace.records.size() && trace.records[end].segment == static_cast<int>(seg)) ++end;
    check_segment(report, std::span<const DiagRecord>(trace.records).subspan(begin, end - begin), trace.segments[seg]);
    begin = end;
  }
  if (begin != trace.records.size()) report.expect("stage-order", false, trace.records[begin].stage, "record outside any segment");
  return report;
}

Report verify_layerwise(const DiagTrace& trace) {
  Report report;
  report.check("restart-bookkeeping");
  report.check("alpha-global-monotone");
  report.check("confinement");
  for (std::size_t i = 0; i < trace.segments.size(); ++i) {
    const DiagSegment& seg = trace.segments[i];
    bool ok = i == 0 ? seg.start == 0 : seg.start > trace.segments[i - 1].start && seg.floor == trace.segments[i - 1].ceiling;
    ok = ok && seg.floor < seg.ceiling;
    report.expect_lazy("restart-bookkeeping", ok, seg.start,
                       [&] { return "segment " + std::to_string(i) + " does not continue the interval ladder"; });
  }
  for (std::size_t j = 0; j < trace.records.size(); ++j) {
    const DiagRecord& r = trace.records[j];
    if (r.segment < 0 || static_cast<std::size_t>(r.segment) >= trace.segments.size()) {
      report.expect("restart-bookkeeping", false, r.stage, "record names an unknown segment");
      continue;
    }
    const DiagSegment& seg = trace.segments[static_cast<std::size_t>(r.segment)];
    report.expect_lazy("restart-bookkeeping", (r.kind == DiagCase::start) == (r.stage == seg.start), r.stage,
                       [&] { return "restart stages and segment starts disagree"; });
    if (j > 0) {
      report.expect_lazy("alpha-global-monotone", trace.records[j - 1].alpha <= r.alpha, r.stage,
                         [&] { return "alpha fell to " + r.alpha.to_string(); });
    }
    report.expect_lazy("confinement", seg.floor <= r.alpha && r.alpha <= seg.ceiling, r.stage, [&] {
      return "alpha " + r.alpha.to_string() + " outside [" + seg.floor.to_string() + ", " + seg.ceiling.to_string() + "]";
    });
  }
  report.merge(verify_diag_claims(trace));
  return report;
}

}  // namespace leftce
