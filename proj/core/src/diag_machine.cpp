#include "leftce/diag_machine.hpp"

#include <array>
#include <string>
#include <utility>

#include "leftce/errors.hpp"

namespace leftce {

namespace {

constexpr std::array<std::string_view, 4> kStateNames{"inactive", "preparing", "waiting", "restraining"};
constexpr std::array<std::string_view, 10> kCaseNames{"start",   "prepare", "settle",  "activate", "restrain",
                                                      "hold",    "release", "reset",   "bailout",  "bailout-hold"};

template <typename Enum, std::size_t N>
Enum parse_named(std::string_view text, const std::array<std::string_view, N>& names, const char* what) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == text) return static_cast<Enum>(i);
  }
  throw ParseError(std::string("unknown ") + what + " '" + std::string(text) + "'");
}

}  // namespace

std::string_view to_string(RequirementState s) { return kStateNames[static_cast<std::size_t>(s)]; }
RequirementState parse_requirement_state(std::string_view text) {
  return parse_named<RequirementState>(text, kStateNames, "requirement state");
}
std::string_view to_string(DiagCase c) { return kCaseNames[static_cast<std::size_t>(c)]; }
DiagCase parse_diag_case(std::string_view text) { return parse_named<DiagCase>(text, kCaseNames, "stage case"); }

void check_beta_contract(const LeftCEStream& beta, Stage horizon) {
  if (beta.empty() || horizon > beta.horizon()) {
    throw ContractViolation("beta is not defined up to stage " + std::to_string(horizon));
  }
  for (Stage s = 0; s <= beta.horizon(); ++s) {
    if (beta.at(s).is_negative() || !(beta.at(s) < Dyadic(1))) {
      throw ContractViolation("beta must lie in [0,1); stage " + std::to_string(s) + " has " + beta.at(s).to_string());
    }
  }
  if (!(Dyadic::make(3, 2) < beta.final_value())) {
    throw ContractViolation("beta must end above 3/4, ends at " + beta.final_value().to_string());
  }
}

namespace {

struct Requirement {
  RequirementState state = RequirementState::inactive;
  std::uint64_t activation = 0;
  BitString code;
  Dyadic restraint;
  std::optional<Dyadic> q;
  std::optional<Dyadic> l;
  std::optional<BitString> witness;
  std::size_t incremental = 0;
};

// One confined run of the construction. Reserved codes are 1^n 0 for the
// n-th activation of the run, so they form an antichain and Q stays
// prefix-free.
class Run {
 public:
  Run(Opponent& opponent, const LeftCEStream& beta, const DiagConfig& config, int segment)
      : opponent_(opponent),
        beta_(beta),
        config_(config),
        segment_(segment),
        reqs_(static_cast<std::size_t>(config.max_requirements)) {}

  DiagRecord start(Stage s, const Dyadic& alpha_prev) {
    DiagRecord rec = open(s, alpha_prev);
    alpha_ = config_.floor;
    activate(0, rec);
    rec.kind = DiagCase::start;
    rec.focus = 0;
    return close(std::move(rec));
  }

  DiagRecord step(Stage s) {
    DiagRecord rec = open(s, alpha_);
    const Dyadic& target = rec.beta;
    const Dyadic& gamma = rec.gamma;
    if (bailed_) {
      alpha_ = bailout_l_ + bailout_q_ * target;
      rec.kind = DiagCase::bailout_hold;
      return close(std::move(rec));
    }
    if (alpha_ < gamma) {
      bailed_ = true;
      bailout_l_ = alpha_;
      bailout_q_ = min(gamma, config_.ceiling) - alpha_;
      alpha_ = bailout_l_ + bailout_q_ * target;
      rec.kind = DiagCase::bailout;
      return close(std::move(rec));
    }

    const Dyadic gap = target - gamma;
    int top = -1;
    int lowest = -1;
    for (int d = 0; d < config_.max_requirements; ++d) {
      const Requirement& r = req(d);
      if (r.state == RequirementState::inactive) continue;
      lowest = d;
      if (top < 0 && r.restraint <= gap) top = d;
    }
    if (top >= 0) {
      for (int d = top + 1; d <= lowest; ++d) {
        if (req(d).state == RequirementState::inactive) continue;
        req(d) = Requirement{};
        rec.cancelled.push_back(d);
      }
      lowest = top;
    }
    const int d = lowest;
    Requirement& r = req(d);
    rec.focus = d;

    switch (r.state) {
      case RequirementState::preparing:
        alpha_ = target;
        if (gap < r.restraint) {
          r.witness = least_string_with_complexity_above(opponent_.tape(), r.code.size() + static_cast<std::size_t>(d), s);
          DescriptionEvent ev{s, r.code, *r.witness};
          if (!q_.append(ev)) throw std::logic_error("reserved code is not free in Q");
          rec.q_events.push_back(std::move(ev));
          r.state = RequirementState::waiting;
          rec.kind = DiagCase::settle;
        } else {
          rec.kind = DiagCase::prepare;
        }
        break;
      case RequirementState::waiting:
        if (gap < r.restraint) {
          alpha_ = target;
          rec.kind = DiagCase::activate;
          if (d + 1 < config_.max_requirements) activate(d + 1, rec);
        } else {
          set_reference(r, gamma);
          alpha_ = *r.q * target + *r.l;
          r.state = RequirementState::restraining;
          rec.kind = DiagCase::restrain;
        }
        break;
      case RequirementState::restraining:
        if (gamma <= *r.l + r.q->half()) {
          alpha_ = *r.q * target + *r.l;
          rec.kind = DiagCase::hold;
        } else {
          ++r.incremental;
          rec.incremental = d;
          if (gap < r.restraint) {
            alpha_ = target;
            r.q.reset();
            r.l.reset();
            r.state = RequirementState::waiting;
            rec.kind = DiagCase::release;
          } else {
            set_reference(r, gamma);
            alpha_ = *r.q * target + *r.l;
            rec.kind = DiagCase::reset;
          }
        }
        break;
      case RequirementState::inactive:
        throw std::logic_error("no active requirement");
    }
    return close(std::move(rec));
  }

  const Dyadic& alpha() const { return alpha_; }

 private:
  Requirement& req(int d) { return reqs_[static_cast<std::size_t>(d)]; }

  Dyadic target(Stage s) const { return config_.floor + (config_.ceiling - config_.floor) * beta_.at(s); }

  // l_d = alpha_(s-1), q_d = r_d - (alpha_(s-1) - gamma_s).
  void set_reference(Requirement& r, const Dyadic& gamma) const {
    r.l = alpha_;
    r.q = r.restraint - (alpha_ - gamma);
  }

  void activate(int d, DiagRecord& rec) {
    Requirement& r = req(d);
    r = Requirement{};
    r.state = RequirementState::preparing;
    r.activation = next_activation_++;
    r.code = BitString::repeat('1', r.activation) + '0';
    r.restraint = Dyadic::pow2(-static_cast<std::int64_t>(r.code.size()) - d);
    rec.activated.push_back({d, r.activation, r.code});
  }

  DiagRecord open(Stage s, const Dyadic& alpha_prev) {
    DiagRecord rec;
    rec.stage = s;
    rec.segment = segment_;
    rec.beta = target(s);
    opponent_.advance(s, alpha_prev);
    const MachineTape& tape = opponent_.tape();
    while (cursor_ < tape.size() && tape.events()[cursor_].stage <= s) rec.opponent_events.push_back(tape.events()[cursor_++]);
    rec.gamma = tape.omega_at(s);
    if (Dyadic(1) < rec.gamma) throw ContractViolation("opponent measure exceeds 1 at stage " + std::to_string(s));
    if (rec.gamma < gamma_prev_) throw ContractViolation("opponent measure decreased at stage " + std::to_string(s));
    gamma_prev_ = rec.gamma;
    return rec;
  }

  DiagRecord close(DiagRecord rec) {
    rec.alpha = alpha_;
    if (bailed_) {
      rec.bailout_q = bailout_q_;
      rec.bailout_l = bailout_l_;
    }
    for (int d = 0; d < config_.max_requirements; ++d) {
      const Requirement& r = req(d);
      if (r.state == RequirementState::inactive) continue;
      rec.requirements.push_back({d, r.state, r.activation, r.code.size(), r.restraint, r.q, r.l, r.witness, r.incremental});
    }
    return rec;
  }

  Opponent& opponent_;
  const LeftCEStream& beta_;
  DiagConfig config_;
  int segment_;
  std::vector<Requirement> reqs_;
  MachineTape q_;
  Dyadic alpha_;
  Dyadic gamma_prev_;
  std::size_t cursor_ = 0;
  std::uint64_t next_activation_ = 0;
  bool bailed_ = false;
  Dyadic bailout_q_;
  Dyadic bailout_l_;
};

void check_config(const DiagConfig& config) {
  if (config.max_requirements < 1) throw ContractViolation("max_requirements must be >= 1");
  if (config.floor.is_negative() || Dyadic(1) < config.ceiling || !(config.floor < config.ceiling)) {
    throw ContractViolation("need 0 <= floor < ceiling <= 1, got [" + config.floor.to_string() + ", " +
                            config.ceiling.to_string() + "]");
  }
}

}  // namespace

DiagTrace run_diag(Opponent& opponent, const LeftCEStream& beta, Stage horizon, const DiagConfig& config) {
  if (horizon < 0) throw ContractViolation("horizon must be >= 0");
  check_beta_contract(beta, horizon);
  check_config(config);
  DiagTrace trace;
  trace.horizon = horizon;
  trace.max_requirements = config.max_requirements;
  trace.segments.push_back({0, 0, config.floor, config.ceiling, opponent.describe()});
  Run run(opponent, beta, config, 0);
  trace.records.push_back(run.start(0, Dyadic()));
  for (Stage s = 1; s <= horizon; ++s) trace.records.push_back(run.step(s));
  return trace;
}

DiagTrace run_layerwise_diag(const std::vector<std::int64_t>& index, const OpponentFactory& factory,
                             const LeftCEStream& beta, const LeftCEStream& xi, Stage horizon, int max_requirements) {
  if (horizon < 0) throw ContractViolation("horizon must be >= 0");
  check_beta_contract(beta, horizon);
  if (static_cast<Stage>(index.size()) <= horizon) {
    throw ContractViolation("opponent index stream is not defined up to stage " + std::to_string(horizon));
  }
  DiagTrace trace;
  trace.horizon = horizon;
  trace.max_requirements = max_requirements;
  trace.layerwise = true;

  std::unique_ptr<Run> run;
  std::unique_ptr<Opponent> opponent;
  Dyadic alpha_prev;
  int segment = -1;
  for (Stage s = 0; s <= horizon; ++s) {
    const auto i = static_cast<std::size_t>(s);
    if (s == 0 || index[i] != index[i - 1]) {
      ++segment;
      if (segment + 1 > xi.horizon()) {
        trace.diagnostic = "ran out of xi intervals at stage " + std::to_string(s) + ": restart " +
                           std::to_string(segment) + " needs xi_" + std::to_string(segment + 1);
        break;
      }
      DiagConfig config{xi.at(segment), xi.at(segment + 1), max_requirements};
      check_config(config);
      run.reset();
      opponent = factory(index[i]);
      run = std::make_unique<Run>(*opponent, beta, config, segment);
      trace.segments.push_back({s, index[i], config.floor, config.ceiling, opponent->describe()});
      trace.records.push_back(run->start(s, alpha_prev));
    } else {
      trace.records.push_back(run->step(s));
    }
    alpha_prev = trace.records.back().alpha;
  }
  return trace;
}

}  // namespace leftce
