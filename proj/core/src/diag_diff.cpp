#include "leftce/diag_diff.hpp"

#include <array>
#include <map>
#include <string>

#include "leftce/errors.hpp"

namespace leftce {

namespace {

constexpr std::array<std::string_view, 5> kNames{"init", "wait", "overtake", "jump", "track"};

Dyadic theta_at(std::span<const RightCEStream> thetas, int i, Stage s) { return thetas[static_cast<std::size_t>(i)].at(s); }

std::vector<Dyadic> snapshot(std::span<const RightCEStream> thetas, Stage s) {
  std::vector<Dyadic> out;
  out.reserve(thetas.size());
  for (const auto& t : thetas) out.push_back(t.at(s));
  return out;
}

int scan_limit(std::span<const RightCEStream> thetas, Stage s) {
  return static_cast<int>(std::min<Stage>(s, static_cast<Stage>(thetas.size()) - 1));
}

}  // namespace

std::string_view to_string(DiffCase c) { return kNames[static_cast<std::size_t>(c)]; }

DiffCase parse_diff_case(std::string_view text) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == text) return static_cast<DiffCase>(i);
  }
  throw ParseError("unknown diff case '" + std::string(text) + "'");
}

Dyadic choose_epsilon(int index, const Dyadic& slack) {
  if (!slack.is_positive()) throw std::logic_error("epsilon needs positive slack");
  return min(Dyadic::pow2(-index - 1), slack).half();
}

DiffState diff_init(const LeftCEStream& gamma_bootstrap, const LeftCEStream& beta) {
  if (gamma_bootstrap.empty()) throw ContractViolation("bootstrap stream is empty");
  if (beta.empty()) throw ContractViolation("beta is not defined at stage 0");
  DiffState st;
  st.alpha = gamma_bootstrap.final_value();
  st.delta = Dyadic(1) + st.alpha - beta.at(0);
  return st;
}

DiffRecord diff_step(DiffState& st, const LeftCEStream& beta, std::span<const RightCEStream> thetas) {
  const Stage s = st.stage;
  const Stage t = s + 1;
  DiffRecord rec;
  rec.stage = t;
  rec.beta = beta.at(t);
  rec.theta = snapshot(thetas, t);
  rec.follow = st.next_follow;
  const Dyadic beta_step = rec.beta - beta.at(s);

  if (!st.next_follow) {
    rec.kind = DiffCase::wait;
    st.delta = min(st.delta, st.alpha - rec.beta + Dyadic::pow2(-s));
    for (int i = 0; i <= scan_limit(thetas, s); ++i) {
      const Dyadic gap = rec.theta[static_cast<std::size_t>(i)] - st.alpha;
      if (!gap.is_negative() && gap < Dyadic::pow2(-i)) {
        rec.next_follow = i;
        break;
      }
    }
  } else {
    const int i = *st.next_follow;
    const Dyadic reach = st.alpha + beta_step;
    const Dyadic& theta_i = rec.theta[static_cast<std::size_t>(i)];
    if (theta_i < reach) {
      rec.kind = DiffCase::overtake;
      rec.epsilon = choose_epsilon(i, reach - theta_i);
      st.alpha = max(st.alpha, theta_i + *rec.epsilon);
    } else {
      const Dyadic room = st.delta - (st.alpha - beta.at(s));
      for (int j = 0; j <= scan_limit(thetas, s); ++j) {
        const Dyadic gap = theta_at(thetas, j, s) - st.alpha;
        const Dyadic bound = room.scaled(-j - 2);
        if (!gap.is_negative() && gap < bound) {
          rec.kind = DiffCase::jump;
          rec.j = j;
          rec.epsilon = choose_epsilon(j, bound - gap);
          st.alpha = max(theta_at(thetas, j, s) + *rec.epsilon, reach);
          if (j != i) rec.next_follow = i;
          break;
        }
      }
      if (!rec.j) {
        rec.kind = DiffCase::track;
        st.alpha = reach;
        rec.next_follow = i;
      }
    }
  }
  rec.alpha = st.alpha;
  rec.delta = st.delta;
  st.next_follow = rec.next_follow;
  st.stage = t;
  return rec;
}

DiffTrace run_diff(const LeftCEStream& beta, std::span<const RightCEStream> thetas,
                   const LeftCEStream& gamma_bootstrap, Stage horizon) {
  if (horizon < 0) throw ContractViolation("horizon must be >= 0");
  if (thetas.empty()) throw ContractViolation("theta family is empty");
  if (beta.empty() || beta.horizon() < horizon) throw ContractViolation("beta is not defined up to the horizon");
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (thetas[i].empty() || thetas[i].horizon() < horizon) {
      throw ContractViolation("theta^" + std::to_string(i) + " is not defined up to the horizon");
    }
  }
  DiffTrace trace;
  trace.horizon = horizon;
  DiffState st = diff_init(gamma_bootstrap, beta);
  trace.bootstrap = st.alpha;
  DiffRecord first;
  first.kind = DiffCase::init;
  first.alpha = st.alpha;
  first.beta = beta.at(0);
  first.delta = st.delta;
  first.theta = snapshot(thetas, 0);
  trace.records.push_back(std::move(first));
  while (st.stage < horizon) trace.records.push_back(diff_step(st, beta, thetas));
  return trace;
}

namespace {

Dyadic room_of(const DiffRecord& r) { return r.delta - (r.alpha - r.beta); }

}  // namespace

Report verify_diff_claims(const DiffTrace& trace) {
  Report report;
  for (const char* name : {"stage-order", "delta-above-gap", "alpha-nondecreasing", "delta-nonincreasing", "wait-sandwich",
                           "stage-update", "epoch-budget", "overtake-budget", "half-bound", "increment-domination",
                           "overtake-permanence", "factor-identity"}) {
    report.check(name);
  }
  const auto& recs = trace.records;
  if (recs.empty()) return report;

  // Open follow epoch: index, alpha at entry, gain charged to it, room at
  // its first stage.
  struct Epoch {
    int i = 0;
    Dyadic charged;
    std::optional<Dyadic> first_room;
  };
  std::optional<Epoch> epoch;
  std::map<int, Stage> overtaken;  // j -> stage alpha first passed theta^j

  report.expect_lazy("stage-order", recs[0].kind == DiffCase::init && recs[0].stage == 0, 0,
                     [] { return "trace does not start with the init stage"; });
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const DiffRecord& r = recs[k];
    const Stage s = r.stage;
    report.expect_lazy("delta-above-gap", r.alpha - r.beta < r.delta, s, [&] {
      return "delta " + r.delta.to_string() + " <= alpha - beta = " + (r.alpha - r.beta).to_string();
    });
    for (const auto& [j, when] : overtaken) {
      if (static_cast<std::size_t>(j) >= r.theta.size()) continue;
      report.expect_lazy("overtake-permanence", r.theta[static_cast<std::size_t>(j)] < r.alpha, s, [&] {
        return "theta^" + std::to_string(j) + " caught up with alpha after the overtake at stage " + std::to_string(when);
      });
    }
    if (k == 0) continue;

    const DiffRecord& p = recs[k - 1];
    report.expect_lazy("stage-order", r.stage == p.stage + 1 && r.follow == p.next_follow && r.theta.size() == p.theta.size(), s,
                       [&] { return "stage does not continue the previous one"; });
    report.expect_lazy("alpha-nondecreasing", p.alpha <= r.alpha, s, [&] { return "alpha fell to " + r.alpha.to_string(); });
    report.expect_lazy("delta-nonincreasing", r.delta <= p.delta, s, [&] { return "delta rose to " + r.delta.to_string(); });
    const Dyadic beta_step = r.beta - p.beta;
    const Dyadic gain = r.alpha - p.alpha;

    if (!r.follow) {
      // wait stage
      const Dyadic bound = Dyadic::pow2(1 - s);
      const bool sandwich = r.alpha - r.beta <= r.delta && r.delta <= r.alpha - r.beta + bound;
      report.expect_lazy("wait-sandwich", sandwich, s, [&] {
        return "delta " + r.delta.to_string() + " not within [alpha - beta, alpha - beta + 2^(1-s)]";
      });
      bool ok = r.kind == DiffCase::wait && r.alpha == p.alpha &&
                r.delta == min(p.delta, r.alpha - r.beta + Dyadic::pow2(-p.stage));
      std::optional<int> expect_next;
      for (int i = 0; i <= std::min<Stage>(p.stage, static_cast<Stage>(r.theta.size()) - 1); ++i) {
        const Dyadic g = r.theta[static_cast<std::size_t>(i)] - r.alpha;
        if (!g.is_negative() && g < Dyadic::pow2(-i)) {
          expect_next = i;
          break;
        }
      }
      ok = ok && r.next_follow == expect_next;
      report.expect_lazy("stage-update", ok, s, [&] { return "wait stage does not follow the wait rule"; });
      epoch.reset();
      if (r.next_follow) epoch = Epoch{*r.next_follow, Dyadic(), std::nullopt};
      continue;
    }

    // follow(i) stage
    const int i = *r.follow;
    if (!epoch || epoch->i != i) {
      report.expect("stage-update", false, s, "follow stage without an entry from a wait stage");
      epoch = Epoch{i, Dyadic(), room_of(r)};
    }
    if (!epoch->first_room) epoch->first_room = room_of(r);
    bool ok = r.delta == p.delta && static_cast<std::size_t>(i) < r.theta.size();
    const Dyadic reach = p.alpha + beta_step;
    Dyadic charge_i = gain;
    switch (r.kind) {
      case DiffCase::overtake: {
        const Dyadic& th = r.theta[static_cast<std::size_t>(i)];
        ok = ok && th < reach && r.epsilon && r.epsilon->is_positive() && *r.epsilon < Dyadic::pow2(-i) &&
             th + *r.epsilon <= reach && r.alpha == max(p.alpha, th + *r.epsilon) && !r.next_follow;
        overtaken.emplace(i, s);
        break;
      }
      case DiffCase::jump: {
        ok = ok && r.j && *r.j <= p.stage && static_cast<std::size_t>(*r.j) < p.theta.size() && r.epsilon &&
             r.epsilon->is_positive();
        if (!ok) break;
        const int j = *r.j;
        const Dyadic& th = p.theta[static_cast<std::size_t>(j)];
        const Dyadic bound = room_of(p).scaled(-j - 2);
        ok = !(r.theta[static_cast<std::size_t>(i)] < reach) && !(th < p.alpha) && th + *r.epsilon - p.alpha < bound &&
             r.alpha == max(th + *r.epsilon, reach) && (j == i ? !r.next_follow : r.next_follow == i);
        // Only the least j may fire.
        for (int k2 = 0; k2 < j && ok; ++k2) {
          const Dyadic g = p.theta[static_cast<std::size_t>(k2)] - p.alpha;
          if (!g.is_negative() && g < room_of(p).scaled(-k2 - 2)) ok = false;
        }
        const Dyadic d_next = room_of(r);
        const Dyadic factor = Dyadic(1) - Dyadic::pow2(-j - 2);
        report.expect_lazy("factor-identity", factor * room_of(p) <= d_next, s, [&] {
          return "room shrank from " + room_of(p).to_string() + " to " + d_next.to_string();
        });
        overtaken.emplace(j, s);
        if (j != i && reach < th + *r.epsilon) {
          charge_i = Dyadic();
          report.expect_lazy("overtake-budget", gain <= Dyadic::pow2(1 - j), s,
                             [&] { return "jump past theta^" + std::to_string(j) + " gained " + gain.to_string(); });
        }
        break;
      }
      case DiffCase::track:
        ok = ok && !(r.theta[static_cast<std::size_t>(i)] < reach) && r.alpha == reach && r.next_follow == i;
        for (int j = 0; j <= std::min<Stage>(p.stage, static_cast<Stage>(p.theta.size()) - 1) && ok; ++j) {
          const Dyadic g = p.theta[static_cast<std::size_t>(j)] - p.alpha;
          if (!g.is_negative() && g < room_of(p).scaled(-j - 2)) ok = false;
        }
        break;
      default:
        ok = false;
    }
    report.expect_lazy("stage-update", ok, s, [&] { return "follow stage does not match its case (" + std::string(to_string(r.kind)) + ")"; });

    epoch->charged += charge_i;
    report.expect_lazy("epoch-budget", epoch->charged <= Dyadic::pow2(1 - i), s, [&] {
      return "follow(" + std::to_string(i) + ") epoch gained " + epoch->charged.to_string();
    });
    report.expect_lazy("half-bound", *epoch->first_room <= room_of(r).scaled(1), s, [&] {
      return "room " + room_of(r).to_string() + " below half of " + epoch->first_room->to_string();
    });
    if (r.kind != DiffCase::overtake) {
      report.expect_lazy("increment-domination", beta_step <= gain, s,
                         [&] { return "alpha gained " + gain.to_string() + " < beta's " + beta_step.to_string(); });
    }
    if (!r.next_follow) epoch.reset();
  }
  return report;
}

}  // namespace leftce
