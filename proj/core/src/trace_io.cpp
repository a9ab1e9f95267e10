#include "leftce/trace_io.hpp"

#include <array>
#include <istream>
#include <ostream>

#include "json_util.hpp"

namespace leftce {

using detail::bits_field;
using detail::bits_value;
using detail::dyadic_field;
using detail::dyadic_value;
using detail::event_from_json;
using detail::event_to_json;
using detail::field;
using detail::int_field;
using detail::JsonLines;
using detail::ordered_json;
using detail::string_field;

namespace {

constexpr std::array<std::string_view, 5> kConstructions{"diag-machine", "diag-machine-layerwise", "diag-diff",
                                                         "semimeasure", "omega-diff"};

std::optional<std::int64_t> opt_int(const ordered_json& obj, const char* key, std::size_t line) {
  if (!obj.contains(key)) return std::nullopt;
  return int_field(obj, key, line);
}

std::optional<Dyadic> opt_dyadic(const ordered_json& obj, const char* key, std::size_t line) {
  if (!obj.contains(key)) return std::nullopt;
  return dyadic_field(obj, key, line);
}

std::optional<BitString> opt_bits(const ordered_json& obj, const char* key, std::size_t line) {
  if (!obj.contains(key)) return std::nullopt;
  return bits_field(obj, key, line);
}

const ordered_json& array_field(const ordered_json& obj, const char* key, std::size_t line) {
  const ordered_json& v = field(obj, key, line);
  if (!v.is_array()) throw ParseError("line " + std::to_string(line) + ": field '" + key + "' must be an array");
  return v;
}

std::optional<int> opt_small(const ordered_json& obj, const char* key, std::size_t line) {
  auto v = opt_int(obj, key, line);
  return v ? std::optional<int>(static_cast<int>(*v)) : std::nullopt;
}

ordered_json events_json(const std::vector<DescriptionEvent>& events) {
  ordered_json arr = ordered_json::array();
  for (const auto& ev : events) arr.push_back(event_to_json(ev));
  return arr;
}

std::vector<DescriptionEvent> events_from(const ordered_json& obj, const char* key, std::size_t line) {
  std::vector<DescriptionEvent> out;
  for (const auto& e : array_field(obj, key, line)) out.push_back(event_from_json(e, line));
  return out;
}

void put_opt(ordered_json& j, const char* key, const std::optional<Dyadic>& v) {
  if (v) j[key] = v->to_string();
}
void put_opt(ordered_json& j, const char* key, const std::optional<int>& v) {
  if (v) j[key] = *v;
}
void put_opt(ordered_json& j, const char* key, const std::optional<BitString>& v) {
  if (v) j[key] = v->str();
}

void header_line(std::ostream& out, ordered_json header) { out << header.dump() << '\n'; }

// ---- diag-machine ----

void write_diag(std::ostream& out, const DiagTrace& t) {
  ordered_json h;
  h["construction"] = std::string(to_string(t.layerwise ? Construction::diag_machine_layerwise : Construction::diag_machine));
  h["horizon"] = t.horizon;
  h["max_requirements"] = t.max_requirements;
  ordered_json segs = ordered_json::array();
  for (const auto& s : t.segments) {
    ordered_json j;
    j["start"] = s.start;
    j["index"] = s.opponent_index;
    j["floor"] = s.floor.to_string();
    j["ceiling"] = s.ceiling.to_string();
    j["opponent"] = s.opponent;
    segs.push_back(std::move(j));
  }
  h["segments"] = std::move(segs);
  if (!t.diagnostic.empty()) h["diagnostic"] = t.diagnostic;
  header_line(out, std::move(h));

  for (const DiagRecord& r : t.records) {
    ordered_json j;
    j["stage"] = r.stage;
    j["segment"] = r.segment;
    j["case"] = std::string(to_string(r.kind));
    put_opt(j, "focus", r.focus);
    j["alpha"] = r.alpha.to_string();
    j["beta"] = r.beta.to_string();
    j["gamma"] = r.gamma.to_string();
    ordered_json reqs = ordered_json::array();
    for (const auto& q : r.requirements) {
      ordered_json rq;
      rq["d"] = q.d;
      rq["state"] = std::string(to_string(q.state));
      rq["activation"] = q.activation;
      rq["code_length"] = q.code_length;
      rq["r"] = q.restraint.to_string();
      put_opt(rq, "q", q.q);
      put_opt(rq, "l", q.l);
      put_opt(rq, "witness", q.witness);
      rq["incremental"] = q.incremental;
      reqs.push_back(std::move(rq));
    }
    j["requirements"] = std::move(reqs);
    ordered_json act = ordered_json::array();
    for (const auto& a : r.activated) act.push_back({{"d", a.d}, {"activation", a.activation}, {"code", a.code.str()}});
    j["activated"] = std::move(act);
    j["cancelled"] = r.cancelled;
    put_opt(j, "incremental", r.incremental);
    put_opt(j, "bailout_q", r.bailout_q);
    put_opt(j, "bailout_l", r.bailout_l);
    j["m_events"] = events_json(r.opponent_events);
    j["q_events"] = events_json(r.q_events);
    out << j.dump() << '\n';
  }
}

DiagTrace read_diag(const ordered_json& h, JsonLines& lines, bool layerwise) {
  DiagTrace t;
  const std::size_t hl = lines.line();
  t.layerwise = layerwise;
  t.horizon = int_field(h, "horizon", hl);
  t.max_requirements = static_cast<int>(int_field(h, "max_requirements", hl));
  for (const auto& s : array_field(h, "segments", hl)) {
    t.segments.push_back({int_field(s, "start", hl), int_field(s, "index", hl), dyadic_field(s, "floor", hl),
                          dyadic_field(s, "ceiling", hl), string_field(s, "opponent", hl)});
  }
  if (h.contains("diagnostic")) t.diagnostic = string_field(h, "diagnostic", hl);
  while (auto j = lines.next()) {
    const std::size_t ln = lines.line();
    DiagRecord r;
    r.stage = int_field(*j, "stage", ln);
    r.segment = static_cast<int>(int_field(*j, "segment", ln));
    r.kind = parse_diag_case(string_field(*j, "case", ln));
    r.focus = opt_small(*j, "focus", ln);
    r.alpha = dyadic_field(*j, "alpha", ln);
    r.beta = dyadic_field(*j, "beta", ln);
    r.gamma = dyadic_field(*j, "gamma", ln);
    for (const auto& q : array_field(*j, "requirements", ln)) {
      RequirementSnapshot s;
      s.d = static_cast<int>(int_field(q, "d", ln));
      s.state = parse_requirement_state(string_field(q, "state", ln));
      s.activation = static_cast<std::uint64_t>(int_field(q, "activation", ln));
      s.code_length = static_cast<std::size_t>(int_field(q, "code_length", ln));
      s.restraint = dyadic_field(q, "r", ln);
      s.q = opt_dyadic(q, "q", ln);
      s.l = opt_dyadic(q, "l", ln);
      s.witness = opt_bits(q, "witness", ln);
      s.incremental = static_cast<std::size_t>(int_field(q, "incremental", ln));
      r.requirements.push_back(std::move(s));
    }
    for (const auto& a : array_field(*j, "activated", ln)) {
      r.activated.push_back({static_cast<int>(int_field(a, "d", ln)), static_cast<std::uint64_t>(int_field(a, "activation", ln)),
                             bits_field(a, "code", ln)});
    }
    for (const auto& c : array_field(*j, "cancelled", ln)) {
      if (!c.is_number_integer()) throw ParseError("line " + std::to_string(ln) + ": cancelled entries must be integers");
      r.cancelled.push_back(c.get<int>());
    }
    r.incremental = opt_small(*j, "incremental", ln);
    r.bailout_q = opt_dyadic(*j, "bailout_q", ln);
    r.bailout_l = opt_dyadic(*j, "bailout_l", ln);
    r.opponent_events = events_from(*j, "m_events", ln);
    r.q_events = events_from(*j, "q_events", ln);
    t.records.push_back(std::move(r));
  }
  return t;
}

// ---- diag-diff ----

void write_diff(std::ostream& out, const DiffTrace& t) {
  ordered_json h;
  h["construction"] = std::string(to_string(Construction::diag_diff));
  h["horizon"] = t.horizon;
  h["bootstrap"] = t.bootstrap.to_string();
  header_line(out, std::move(h));
  for (const DiffRecord& r : t.records) {
    ordered_json j;
    j["stage"] = r.stage;
    put_opt(j, "follow", r.follow);
    j["case"] = std::string(to_string(r.kind));
    j["alpha"] = r.alpha.to_string();
    j["beta"] = r.beta.to_string();
    j["delta"] = r.delta.to_string();
    ordered_json theta = ordered_json::array();
    for (const auto& v : r.theta) theta.push_back(v.to_string());
    j["theta"] = std::move(theta);
    put_opt(j, "j", r.j);
    put_opt(j, "epsilon", r.epsilon);
    put_opt(j, "next_follow", r.next_follow);
    out << j.dump() << '\n';
  }
}

DiffTrace read_diff(const ordered_json& h, JsonLines& lines) {
  DiffTrace t;
  t.horizon = int_field(h, "horizon", lines.line());
  t.bootstrap = dyadic_field(h, "bootstrap", lines.line());
  while (auto j = lines.next()) {
    const std::size_t ln = lines.line();
    DiffRecord r;
    r.stage = int_field(*j, "stage", ln);
    r.kind = parse_diff_case(string_field(*j, "case", ln));
    r.follow = opt_small(*j, "follow", ln);
    r.alpha = dyadic_field(*j, "alpha", ln);
    r.beta = dyadic_field(*j, "beta", ln);
    r.delta = dyadic_field(*j, "delta", ln);
    for (const auto& v : array_field(*j, "theta", ln)) r.theta.push_back(dyadic_value(v, ln));
    r.j = opt_small(*j, "j", ln);
    r.epsilon = opt_dyadic(*j, "epsilon", ln);
    r.next_follow = opt_small(*j, "next_follow", ln);
    t.records.push_back(std::move(r));
  }
  return t;
}

// ---- semimeasure ----

void write_semi(std::ostream& out, const SemiTrace& t) {
  ordered_json h;
  h["construction"] = std::string(to_string(Construction::semimeasure));
  h["kmax"] = t.kmax;
  h["horizon"] = t.records.empty() ? 0 : t.records.back().stage;
  header_line(out, std::move(h));
  for (const SemiRecord& r : t.records) {
    ordered_json j;
    j["stage"] = r.stage;
    j["alpha"] = r.alpha.to_string();
    ordered_json mu = ordered_json::array();
    for (const auto& inc : r.mu_increments) {
      mu.push_back({{"stage", inc.stage}, {"index", inc.index}, {"amount", inc.amount.to_string()}});
    }
    j["mu"] = std::move(mu);
    ordered_json levels = ordered_json::array();
    for (const LevelRecord& l : r.levels) {
      ordered_json lj;
      lj["k"] = l.level;
      lj["phase"] = l.phase;
      lj["entry_alpha"] = l.entry_alpha.to_string();
      if (l.active_index) lj["active"] = *l.active_index;
      put_opt(lj, "ceiling", l.ceiling);
      lj["mass"] = l.mass.to_string();
      put_opt(lj, "trigger", l.trigger_amount);
      ordered_json incs = ordered_json::array();
      for (const auto& [i, amount] : l.increments) incs.push_back({{"index", i}, {"amount", amount.to_string()}});
      lj["increments"] = std::move(incs);
      if (l.interval) lj["interval"] = {{"lo", l.interval->lo.to_string()}, {"hi", l.interval->hi.to_string()}};
      levels.push_back(std::move(lj));
    }
    j["levels"] = std::move(levels);
    out << j.dump() << '\n';
  }
}

SemiTrace read_semi(const ordered_json& h, JsonLines& lines) {
  SemiTrace t;
  t.kmax = static_cast<int>(int_field(h, "kmax", lines.line()));
  while (auto j = lines.next()) {
    const std::size_t ln = lines.line();
    SemiRecord r;
    r.stage = int_field(*j, "stage", ln);
    r.alpha = dyadic_field(*j, "alpha", ln);
    for (const auto& m : array_field(*j, "mu", ln)) {
      r.mu_increments.push_back({int_field(m, "stage", ln), int_field(m, "index", ln), dyadic_field(m, "amount", ln)});
    }
    for (const auto& lj : array_field(*j, "levels", ln)) {
      LevelRecord l;
      l.level = static_cast<int>(int_field(lj, "k", ln));
      l.phase = static_cast<int>(int_field(lj, "phase", ln));
      l.entry_alpha = dyadic_field(lj, "entry_alpha", ln);
      l.active_index = opt_int(lj, "active", ln);
      l.ceiling = opt_dyadic(lj, "ceiling", ln);
      l.mass = dyadic_field(lj, "mass", ln);
      l.trigger_amount = opt_dyadic(lj, "trigger", ln);
      for (const auto& inc : array_field(lj, "increments", ln)) {
        l.increments.emplace_back(int_field(inc, "index", ln), dyadic_field(inc, "amount", ln));
      }
      if (lj.contains("interval")) {
        const auto& iv = lj["interval"];
        l.interval = TestInterval{l.level, r.stage, dyadic_field(iv, "lo", ln), dyadic_field(iv, "hi", ln)};
      }
      r.levels.push_back(std::move(l));
    }
    t.records.push_back(std::move(r));
  }
  return t;
}

// ---- omega-diff ----

void write_omega(std::ostream& out, const DiffLedger& l) {
  ordered_json h;
  h["construction"] = std::string(to_string(Construction::omega_diff));
  h["horizon"] = l.horizon;
  h["mode"] = std::string(to_string(l.mode));
  if (l.h.is_table()) {
    ordered_json table = ordered_json::object();
    for (const auto& [tau, v] : l.h.values()) table[tau.str()] = v;
    h["h"] = {{"table", std::move(table)}};
  } else {
    h["h"] = l.h.describe();
  }
  put_opt(h, "sigma0", l.sigma0);
  put_opt(h, "tau0", l.tau0);
  header_line(out, std::move(h));
  for (const OmegaDiffRecord& r : l.records) {
    ordered_json j;
    j["stage"] = r.stage;
    j["u_events"] = events_json(r.u_events);
    j["q_events"] = events_json(r.q_events);
    j["v_events"] = events_json(r.v_events);
    ordered_json reps = ordered_json::array();
    for (const auto& rep : r.replacements) {
      reps.push_back({{"output", rep.output.str()}, {"program", rep.program.str()}, {"h", rep.h}});
    }
    j["replacements"] = std::move(reps);
    j["omega_u"] = r.omega_u.to_string();
    j["omega_v"] = r.omega_v.to_string();
    j["gamma"] = r.gamma.to_string();
    j["withheld"] = r.withheld.to_string();
    out << j.dump() << '\n';
  }
}

DiffLedger read_omega(const ordered_json& h, JsonLines& lines) {
  DiffLedger l;
  const std::size_t hl = lines.line();
  l.horizon = int_field(h, "horizon", hl);
  l.mode = parse_replacement_mode(string_field(h, "mode", hl));
  const ordered_json& hv = field(h, "h", hl);
  if (hv.is_string()) {
    l.h = HSpec::parse_formula(hv.get<std::string>());
  } else if (hv.is_object() && hv.contains("table") && hv["table"].is_object()) {
    std::map<BitString, std::int64_t> table;
    for (const auto& [key, value] : hv["table"].items()) {
      if (!value.is_number_integer()) throw ParseError("line " + std::to_string(hl) + ": h table values must be integers");
      table.emplace(BitString(key), value.get<std::int64_t>());
    }
    l.h = HSpec::table(std::move(table));
  } else {
    throw ParseError("line " + std::to_string(hl) + ": field 'h' must be a formula or {\"table\": {...}}");
  }
  l.sigma0 = opt_bits(h, "sigma0", hl);
  l.tau0 = opt_bits(h, "tau0", hl);
  while (auto j = lines.next()) {
    const std::size_t ln = lines.line();
    OmegaDiffRecord r;
    r.stage = int_field(*j, "stage", ln);
    r.u_events = events_from(*j, "u_events", ln);
    r.q_events = events_from(*j, "q_events", ln);
    r.v_events = events_from(*j, "v_events", ln);
    for (const auto& rep : array_field(*j, "replacements", ln)) {
      r.replacements.push_back({bits_field(rep, "output", ln), bits_field(rep, "program", ln), int_field(rep, "h", ln)});
    }
    r.omega_u = dyadic_field(*j, "omega_u", ln);
    r.omega_v = dyadic_field(*j, "omega_v", ln);
    r.gamma = dyadic_field(*j, "gamma", ln);
    r.withheld = dyadic_field(*j, "withheld", ln);
    l.records.push_back(std::move(r));
  }
  return l;
}

}  // namespace

std::string_view to_string(Construction c) { return kConstructions[static_cast<std::size_t>(c)]; }

Construction parse_construction(std::string_view text) {
  for (std::size_t i = 0; i < kConstructions.size(); ++i) {
    if (kConstructions[i] == text) return static_cast<Construction>(i);
  }
  throw ParseError("unknown construction '" + std::string(text) +
                   "' (expected diag-machine, diag-machine-layerwise, diag-diff, semimeasure, omega-diff)");
}

void write_trace(std::ostream& out, const DiagTrace& trace) { write_diag(out, trace); }
void write_trace(std::ostream& out, const DiffTrace& trace) { write_diff(out, trace); }
void write_trace(std::ostream& out, const SemiTrace& trace) { write_semi(out, trace); }
void write_trace(std::ostream& out, const DiffLedger& ledger) { write_omega(out, ledger); }

LoadedTrace read_trace(std::istream& in) {
  JsonLines lines(in);
  auto header = lines.next();
  if (!header) throw ParseError("trace is empty");
  LoadedTrace loaded;
  loaded.construction = parse_construction(string_field(*header, "construction", lines.line()));
  try {
    switch (loaded.construction) {
      case Construction::diag_machine:
        loaded.trace = read_diag(*header, lines, false);
        break;
      case Construction::diag_machine_layerwise:
        loaded.trace = read_diag(*header, lines, true);
        break;
      case Construction::diag_diff:
        loaded.trace = read_diff(*header, lines);
        break;
      case Construction::semimeasure:
        loaded.trace = read_semi(*header, lines);
        break;
      case Construction::omega_diff:
        loaded.trace = read_omega(*header, lines);
        break;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("line " + std::to_string(lines.line()) + ": " + e.what());
  } catch (const ContractViolation& e) {
    throw ParseError("line " + std::to_string(lines.line()) + ": " + e.what());
  }
  return loaded;
}

}  // namespace leftce
