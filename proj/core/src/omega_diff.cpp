#include "leftce/omega_diff.hpp"

#include <charconv>
#include <set>

#include "leftce/errors.hpp"

namespace leftce {

HSpec HSpec::offset(std::int64_t k) {
  HSpec h;
  h.offset_ = k;
  return h;
}

HSpec HSpec::table(std::map<BitString, std::int64_t> values) {
  HSpec h;
  h.table_ = std::move(values);
  return h;
}

HSpec HSpec::parse_formula(std::string_view text) {
  if (text.empty() || text.front() != 'n') throw ParseError("h formula must look like n+K, got '" + std::string(text) + "'");
  if (text.size() == 1) return offset(0);
  const char sign = text[1];
  if (sign != '+' && sign != '-') throw ParseError("h formula must look like n+K, got '" + std::string(text) + "'");
  std::int64_t k = 0;
  const char* first = text.data() + 2;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, k);
  if (first == last || ec != std::errc() || ptr != last || k < 0) {
    throw ParseError("h formula must look like n+K, got '" + std::string(text) + "'");
  }
  return offset(sign == '+' ? k : -k);
}

std::int64_t HSpec::operator()(const BitString& tau) const {
  std::int64_t value = 0;
  if (offset_) {
    value = static_cast<std::int64_t>(length_lex_rank(tau)) + *offset_;
  } else {
    auto it = table_.find(tau);
    if (it == table_.end()) throw ContractViolation("h is not defined on output '" + tau.str() + "'");
    value = it->second;
  }
  if (value <= 0) throw ContractViolation("h('" + tau.str() + "') = " + std::to_string(value) + " is not positive");
  return value;
}

std::string HSpec::describe() const {
  if (!offset_) return "table";
  if (*offset_ == 0) return "n";
  return *offset_ > 0 ? "n+" + std::to_string(*offset_) : "n-" + std::to_string(-*offset_);
}

std::string_view to_string(ReplacementMode m) { return m == ReplacementMode::cover ? "cover" : "literal"; }

ReplacementMode parse_replacement_mode(std::string_view text) {
  if (text == "cover") return ReplacementMode::cover;
  if (text == "literal") return ReplacementMode::literal;
  throw ParseError("unknown replacement mode '" + std::string(text) + "'");
}

std::vector<BitString> replacement_programs(const BitString& sigma, std::int64_t h, ReplacementMode mode) {
  const auto len = static_cast<std::int64_t>(sigma.size());
  if (h <= len) throw std::logic_error("replacement needs h > |sigma|");
  const auto m = static_cast<std::size_t>(h - len);
  std::vector<BitString> out{sigma + '0'};
  if (mode == ReplacementMode::cover) {
    for (std::size_t j = 1; j < m; ++j) out.push_back(sigma + BitString::repeat('1', j) + '0');
    return out;
  }
  const std::size_t free_bits = m - 1;
  if (free_bits > 20) {
    throw ContractViolation("literal replacement of '" + sigma.str() + "' would issue 2^" + std::to_string(free_bits) +
                            " descriptions");
  }
  const BitString head = sigma + '1';
  const std::uint64_t count = (std::uint64_t{1} << free_bits) - 1;  // all but 1^free_bits
  for (std::uint64_t x = 0; x < count; ++x) {
    std::string bits(free_bits, '0');
    for (std::size_t b = 0; b < free_bits; ++b) {
      if (x >> (free_bits - 1 - b) & 1U) bits[b] = '1';
    }
    out.push_back(head + BitString(std::move(bits)));
  }
  return out;
}

namespace {

// Stage-ordered replay shared by the construction and the verifier.
class Transformer {
 public:
  Transformer(const HSpec& h, ReplacementMode mode) : h_(h), mode_(mode) {}

  void on_u(Stage s, const DescriptionEvent& ev, OmegaDiffRecord& rec) {
    if (!sigma0_) {
      sigma0_ = ev.program;
      tau0_ = ev.output;
      emit(s, ev.program + '0', ev.output, rec);
      return;
    }
    if (ev.output == *tau0_ || a_.contains(ev.output)) {
      emit(s, ev.program, ev.output, rec);
      return;
    }
    const std::int64_t h = h_(ev.output);
    if (static_cast<std::int64_t>(ev.program.size()) < h) {
      for (BitString& p : replacement_programs(ev.program, h, mode_)) emit(s, std::move(p), ev.output, rec);
      a_.insert(ev.output);
      withheld_ += Dyadic::pow2(-h);
      rec.replacements.push_back({ev.output, ev.program, h});
    } else {
      emit(s, ev.program, ev.output, rec);
    }
  }

  // Q(p) becomes V(sigma_0 1 p); only once sigma_0 is known.
  bool on_q(Stage s, const DescriptionEvent& ev, OmegaDiffRecord& rec) {
    if (!sigma0_) return false;
    emit(s, *sigma0_ + '1' + ev.program, ev.output, rec);
    gamma_ += Dyadic::pow2(-static_cast<std::int64_t>(ev.program.size()));
    return true;
  }

  void close(OmegaDiffRecord& rec, const Dyadic& omega_u) {
    rec.omega_u = omega_u;
    rec.omega_v = v_.omega();
    rec.gamma = gamma_;
    rec.withheld = withheld_;
  }

  const MachineTape& v() const { return v_; }
  MachineTape& v() { return v_; }
  const std::optional<BitString>& sigma0() const { return sigma0_; }
  const std::optional<BitString>& tau0() const { return tau0_; }
  const Dyadic& gamma() const { return gamma_; }
  const Dyadic& withheld() const { return withheld_; }

 private:
  void emit(Stage s, BitString program, const BitString& output, OmegaDiffRecord& rec) {
    DescriptionEvent ev{s, std::move(program), output};
    rec.v_events.push_back(ev);
    if (!v_.append(std::move(ev))) rejected_ = true;
  }

 public:
  bool rejected_ = false;

 private:
  const HSpec& h_;
  ReplacementMode mode_;
  MachineTape v_;
  std::optional<BitString> sigma0_;
  std::optional<BitString> tau0_;
  std::set<BitString> a_;
  Dyadic gamma_;
  Dyadic withheld_;
};

}  // namespace

OmegaDiffResult transform_v(const MachineTape& u, const HSpec& h, const MachineTape& q, Stage horizon,
                            ReplacementMode mode) {
  if (horizon < 0) throw ContractViolation("horizon must be >= 0");
  Transformer tf(h, mode);
  OmegaDiffResult result;
  result.ledger.horizon = horizon;
  result.ledger.mode = mode;
  result.ledger.h = h;
  std::size_t ui = 0;
  std::size_t qi = 0;
  const auto& ue = u.events();
  const auto& qe = q.events();
  for (Stage s = 0; s <= horizon; ++s) {
    OmegaDiffRecord rec;
    rec.stage = s;
    while (ui < ue.size() && ue[ui].stage <= s) {
      rec.u_events.push_back(ue[ui]);
      tf.on_u(s, ue[ui++], rec);
    }
    while (qi < qe.size() && qe[qi].stage <= s) {
      if (!tf.on_q(s, qe[qi], rec)) break;
      rec.q_events.push_back(qe[qi++]);
    }
    if (tf.rejected_) throw std::logic_error("transformed machine lost prefix-freeness");
    tf.close(rec, u.omega_at(s));
    result.ledger.records.push_back(std::move(rec));
  }
  result.ledger.sigma0 = tf.sigma0();
  result.ledger.tau0 = tf.tau0();
  result.v = std::move(tf.v());
  return result;
}

MachineTape combine_w(const MachineTape& u, const MachineTape& v) {
  MachineTape w;
  std::size_t i = 0;
  std::size_t j = 0;
  const auto& ue = u.events();
  const auto& ve = v.events();
  while (i < ue.size() || j < ve.size()) {
    if (j == ve.size() || (i < ue.size() && ue[i].stage <= ve[j].stage)) {
      w.append(ue[i].stage, BitString("0") + ue[i].program, ue[i].output);
      ++i;
    } else {
      w.append(ve[j].stage, BitString("1") + ve[j].program, ve[j].output);
      ++j;
    }
  }
  return w;
}

namespace {

Dyadic expected_difference(const std::optional<BitString>& sigma0, const Dyadic& gamma, const Dyadic& withheld) {
  if (!sigma0) return Dyadic();
  const Dyadic unit = Dyadic::pow2(-static_cast<std::int64_t>(sigma0->size()) - 1);
  return unit - unit * gamma + withheld;
}

std::string show(const Complexity& k) { return k ? std::to_string(*k) : "inf"; }

}  // namespace

Report ledger_check(const MachineTape& u, const MachineTape& v, const DiffLedger& ledger, Stage s) {
  Report report;
  report.check("difference-identity");
  report.check("complexity-bound");
  if (s < 0 || s >= static_cast<Stage>(ledger.records.size())) {
    report.expect("difference-identity", false, s, "no ledger record for this stage");
    return report;
  }
  const OmegaDiffRecord& rec = ledger.records[static_cast<std::size_t>(s)];
  const Dyadic diff = u.omega_at(s) - v.omega_at(s);
  const bool started = ledger.sigma0 && !u.empty() && u.events().front().stage <= s;
  const Dyadic expected = started ? expected_difference(ledger.sigma0, rec.gamma, rec.withheld) : Dyadic();
  report.expect_lazy("difference-identity", diff == expected, s, [&] {
    return "Omega_U - Omega_V = " + diff.to_string() + ", ledger says " + expected.to_string();
  });
  for (const BitString& tau : u.outputs()) {
    const Complexity ku = u.complexity_at(tau, s);
    if (!ku) continue;
    const Complexity kv = v.complexity_at(tau, s);
    report.expect_lazy("complexity-bound", kv && *kv <= *ku + 1, s,
                       [&] { return "K_V('" + tau.str() + "') = " + show(kv) + " > K_U + 1 = " + std::to_string(*ku + 1); });
  }
  return report;
}

Report verify_omega_diff(const DiffLedger& ledger) {
  Report report;
  for (const char* name : {"stage-order", "v-derivation", "v-prefix-free", "record-values", "difference-identity",
                           "complexity-bound", "a-monotone", "first-description"}) {
    report.check(name);
  }
  MachineTape u;
  MachineTape v;
  Transformer replay(ledger.h, ledger.mode);
  std::set<BitString> a;
  for (std::size_t k = 0; k < ledger.records.size(); ++k) {
    const OmegaDiffRecord& r = ledger.records[k];
    const Stage s = r.stage;
    report.expect_lazy("stage-order", s == static_cast<Stage>(k), s, [] { return "records are not one per stage"; });

    OmegaDiffRecord expect;
    bool derivable = true;
    try {
      for (const auto& ev : r.u_events) {
        u.append(ev);
        replay.on_u(s, ev, expect);
      }
      for (const auto& ev : r.q_events) derivable = replay.on_q(s, ev, expect) && derivable;
    } catch (const ContractViolation& e) {
      report.expect("v-derivation", false, s, e.what());
      derivable = false;
    }
    report.expect_lazy("v-derivation", derivable && expect.v_events == r.v_events && expect.replacements == r.replacements, s,
                       [&] { return "V events at this stage differ from the transformation rules"; });
    bool accepted = true;
    for (const auto& ev : r.v_events) accepted = v.append(ev) && accepted;
    report.expect_lazy("v-prefix-free", accepted, s, [] { return "a V program is comparable with an earlier one"; });

    for (const Replacement& rep : r.replacements) {
      const bool fresh = a.insert(rep.output).second && (!ledger.tau0 || rep.output != *ledger.tau0);
      report.expect_lazy("a-monotone", fresh, s, [&] { return "'" + rep.output.str() + "' replaced twice or is tau_0"; });
    }
    if (!r.u_events.empty() && u.size() == r.u_events.size()) {
      const DescriptionEvent& first = r.u_events.front();
      const bool ok = !r.v_events.empty() && r.v_events.front().program == first.program + '0' &&
                      r.v_events.front().output == first.output;
      report.expect_lazy("first-description", ok, s, [] { return "first U description was not split as V(sigma_0 0)"; });
    }

    const bool values = r.omega_u == u.omega() && r.omega_v == v.omega() && r.gamma == replay.gamma() &&
                        r.withheld == replay.withheld();
    report.expect_lazy("record-values", values, s, [&] { return "recorded Omega/gamma/withheld do not match the events"; });

    const Dyadic diff = u.omega() - v.omega();
    const Dyadic expected = expected_difference(replay.sigma0(), replay.gamma(), replay.withheld());
    report.expect_lazy("difference-identity", diff == expected, s, [&] {
      return "Omega_U - Omega_V = " + diff.to_string() + " but the ledger gives " + expected.to_string();
    });
    for (const auto& ev : r.u_events) {
      const Complexity ku = u.complexity_at(ev.output, s);
      const Complexity kv = v.complexity_at(ev.output, s);
      report.expect_lazy("complexity-bound", ku && kv && *kv <= *ku + 1, s, [&] {
        return "K_V('" + ev.output.str() + "') = " + show(kv) + " > K_U + 1 with K_U = " + show(ku);
      });
    }
  }
  report.expect_lazy("first-description",
                     replay.sigma0() == ledger.sigma0 && replay.tau0() == ledger.tau0,
                     ledger.records.empty() ? 0 : ledger.records.back().stage,
                     [] { return "ledger's sigma_0/tau_0 disagree with the first U description"; });
  return report;
}

}  // namespace leftce
