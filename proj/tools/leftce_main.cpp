#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leftce/diag_diff.hpp"
#include "leftce/diag_machine.hpp"
#include "leftce/errors.hpp"
#include "leftce/io.hpp"
#include "leftce/kraft_chaitin.hpp"
#include "leftce/machines.hpp"
#include "leftce/omega_diff.hpp"
#include "leftce/opponents.hpp"
#include "leftce/semimeasures.hpp"
#include "leftce/trace_io.hpp"

namespace fs = std::filesystem;
using namespace leftce;

namespace {

enum Exit : int { kPass = 0, kFail = 1, kUsage = 2, kContract = 3 };

struct Options {
  std::string construction;
  Stage stages = 1000;
  std::string out;
  std::string trace;
  std::string suite = "claims";
  std::string h;
  std::string opponent;
  std::string beta;
  std::string theta_dir;
  std::string xi;
  std::string index;
  std::string alpha;
  std::string mu;
  std::string u;
  std::string q;
  std::string v;
  std::string gamma;
  std::string in;
  std::string mode = "cover";
  std::string ledger;
  int kmax = 8;
  int max_requirements = 16;
  std::vector<std::string> machines;
};

// Holds the last value up to `horizon`.
template <Direction D>
MonotoneStream<D> held_to(const MonotoneStream<D>& s, Stage horizon) {
  if (s.horizon() >= horizon) return s.truncated(horizon);
  std::vector<Dyadic> values = s.values();
  values.resize(static_cast<std::size_t>(horizon) + 1, s.final_value());
  return MonotoneStream<D>(std::move(values));
}

LeftCEStream load_left(const std::string& path, Stage horizon) {
  auto f = io::open_in(path);
  return held_to(io::read_left_stream(f), horizon);
}

MachineTape load_tape(const std::string& path) {
  auto f = io::open_in(path);
  return io::read_machine_tape(f);
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw ParseError(std::string("missing required option ") + flag);
}

class OutFile {
 public:
  explicit OutFile(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw ParseError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

template <typename Trace>
void emit_trace(const std::string& path, const Trace& trace) {
  OutFile out(path);
  write_trace(out.stream(), trace);
}

std::unique_ptr<Opponent> make_opponent(const std::string& spec) {
  if (!spec.empty() && fs::is_regular_file(spec)) {
    return std::make_unique<TapeOpponent>(load_tape(spec), fs::path(spec).filename().string());
  }
  return make_builtin_opponent(spec.empty() ? "copying" : spec);
}

// "{i}" in the template is replaced by the opponent index.
OpponentFactory make_factory(const std::string& templ) {
  const std::string t = templ.empty() ? "random:{i}:16" : templ;
  return [t](std::int64_t i) {
    std::string spec = t;
    for (auto pos = spec.find("{i}"); pos != std::string::npos; pos = spec.find("{i}")) {
      spec.replace(pos, 3, std::to_string(i));
    }
    return make_opponent(spec);
  };
}

int cmd_simulate(const Options& o) {
  if (o.stages < 0) throw ParseError("--stages must be nonnegative");
  const Stage n = o.stages;
  const Construction c = parse_construction(o.construction);
  switch (c) {
    case Construction::diag_machine: {
      const LeftCEStream beta = o.beta.empty() ? default_beta(n) : load_left(o.beta, n);
      auto opp = make_opponent(o.opponent);
      DiagConfig cfg;
      cfg.max_requirements = o.max_requirements;
      emit_trace(o.out, run_diag(*opp, beta, n, cfg));
      return kPass;
    }
    case Construction::diag_machine_layerwise: {
      require(o.xi, "--xi");
      require(o.index, "--index");
      const LeftCEStream beta = o.beta.empty() ? default_beta(n) : load_left(o.beta, n);
      auto xi_file = io::open_in(o.xi);
      const LeftCEStream xi = io::read_left_stream(xi_file);
      auto index_file = io::open_in(o.index);
      const auto index = io::read_index_stream(index_file, n);
      const DiagTrace trace = run_layerwise_diag(index, make_factory(o.opponent), beta, xi, n, o.max_requirements);
      emit_trace(o.out, trace);
      if (!trace.diagnostic.empty()) {
        std::cerr << "leftce: " << trace.diagnostic << '\n';
        return kContract;
      }
      return kPass;
    }
    case Construction::diag_diff: {
      require(o.beta, "--beta");
      require(o.theta_dir, "--theta-dir");
      const LeftCEStream beta = load_left(o.beta, n);
      std::vector<RightCEStream> thetas;
      for (const auto& t : io::load_theta_dir(o.theta_dir)) thetas.push_back(held_to(t, n));
      LeftCEStream boot({Dyadic()});
      if (!o.gamma.empty()) {
        auto f = io::open_in(o.gamma);
        boot = io::read_left_stream(f);
      }
      emit_trace(o.out, run_diff(beta, thetas, boot, n));
      return kPass;
    }
    case Construction::semimeasure: {
      require(o.alpha, "--alpha");
      require(o.mu, "--mu");
      const LeftCEStream alpha = load_left(o.alpha, n);
      auto mu_file = io::open_in(o.mu);
      const SemiMeasureTape mu = io::read_semimeasure(mu_file);
      if (o.kmax < 1 || o.kmax > 62) throw ParseError("--kmax must be in 1..62");
      emit_trace(o.out, uniform_semimeasure_with_sum(alpha, mu, o.kmax, n).trace);
      return kPass;
    }
    case Construction::omega_diff: {
      require(o.u, "--u");
      require(o.h, "--h");
      const MachineTape u = load_tape(o.u);
      const MachineTape q = o.q.empty() ? MachineTape() : load_tape(o.q);
      const auto result = transform_v(u, io::load_h(o.h), q, n, parse_replacement_mode(o.mode));
      emit_trace(o.out, result.ledger);
      return kPass;
    }
  }
  return kUsage;
}

int cmd_transform(const Options& o) {
  require(o.u, "--u");
  require(o.h, "--h");
  if (o.stages < 0) throw ParseError("--stages must be nonnegative");
  const MachineTape u = load_tape(o.u);
  const MachineTape q = o.q.empty() ? MachineTape() : load_tape(o.q);
  const auto result = transform_v(u, io::load_h(o.h), q, o.stages, parse_replacement_mode(o.mode));
  OutFile out(o.out);
  io::write_machine_tape(out.stream(), result.v);
  if (!o.ledger.empty()) {
    OutFile ledger(o.ledger);
    write_trace(ledger.stream(), result.ledger);
  }
  return kPass;
}

Report run_suite(const LoadedTrace& loaded, const std::string& suite) {
  static const std::map<std::string, std::vector<Construction>> kSuites{
      {"claims", {}},
      {"diag", {Construction::diag_machine, Construction::diag_machine_layerwise}},
      {"layerwise", {Construction::diag_machine_layerwise}},
      {"diff", {Construction::diag_diff}},
      {"semimeasure", {Construction::semimeasure}},
      {"ledger", {Construction::omega_diff}},
  };
  auto it = kSuites.find(suite);
  if (it == kSuites.end()) {
    throw ParseError("unknown suite '" + suite + "' (expected claims, diag, layerwise, diff, semimeasure, ledger)");
  }
  if (!it->second.empty() &&
      std::find(it->second.begin(), it->second.end(), loaded.construction) == it->second.end()) {
    throw ParseError("suite '" + suite + "' does not apply to a " + std::string(to_string(loaded.construction)) +
                     " trace");
  }
  switch (loaded.construction) {
    case Construction::diag_machine:
      return verify_diag_claims(std::get<DiagTrace>(loaded.trace));
    case Construction::diag_machine_layerwise:
      return suite == "diag" ? verify_diag_claims(std::get<DiagTrace>(loaded.trace))
                             : verify_layerwise(std::get<DiagTrace>(loaded.trace));
    case Construction::diag_diff:
      return verify_diff_claims(std::get<DiffTrace>(loaded.trace));
    case Construction::semimeasure:
      return verify_semimeasure_trace(std::get<SemiTrace>(loaded.trace));
    case Construction::omega_diff:
      return verify_omega_diff(std::get<DiffLedger>(loaded.trace));
  }
  return {};
}

int cmd_verify(const Options& o) {
  require(o.trace, "--trace");
  auto f = io::open_in(o.trace);
  const LoadedTrace loaded = read_trace(f);
  const Report report = run_suite(loaded, o.suite);
  report.print(std::cout);
  std::cout << (report.passed() ? "PASS" : "FAIL") << ' ' << to_string(loaded.construction) << ' ' << o.suite
            << '\n';
  return report.passed() ? kPass : kFail;
}

int cmd_kc(const Options& o) {
  require(o.alpha, "--alpha");
  if (o.stages < 0) throw ParseError("--stages must be nonnegative");
  const LeftCEStream alpha = load_left(o.alpha, o.stages);
  OutFile out(o.out);
  io::write_machine_tape(out.stream(), real_to_machine(alpha, o.stages));
  return kPass;
}

int cmd_combine_w(const Options& o) {
  require(o.u, "--u");
  require(o.v, "--v");
  OutFile out(o.out);
  io::write_machine_tape(out.stream(), combine_w(load_tape(o.u), load_tape(o.v)));
  return kPass;
}

int cmd_pad_footnote(const Options& o) {
  require(o.in, "--in");
  OutFile out(o.out);
  io::write_machine_tape(out.stream(), footnote_pad(load_tape(o.in)));
  return kPass;
}

int cmd_adjoin(const Options& o) {
  if (o.machines.empty()) throw ParseError("adjoin needs at least one machine file");
  std::vector<MachineTape> tapes;
  for (const auto& path : o.machines) tapes.push_back(load_tape(path));
  OutFile out(o.out);
  io::write_machine_tape(out.stream(), adjoin_universal(tapes));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact stage-by-stage simulation of left-c.e. constructions"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options o;

  auto* simulate = app.add_subcommand("simulate", "Run a construction and write its JSON-lines trace");
  simulate->add_option("construction", o.construction,
                       "diag-machine | diag-machine-layerwise | diag-diff | semimeasure | omega-diff")
      ->required();
  simulate->add_option("--stages", o.stages, "Last stage (horizon)");
  simulate->add_option("--out", o.out, "Trace file (default stdout)");
  simulate->add_option("--beta", o.beta, "Left-c.e. stream file for beta");
  simulate->add_option("--opponent", o.opponent,
                       "stalling | copying | overshoot[:s] | random:seed[:odds] | machine file; "
                       "layerwise runs substitute {i} with the opponent index");
  simulate->add_option("--max-requirements", o.max_requirements, "Requirements R_0.. ever activated")
      ->check(CLI::Range(1, 60));
  simulate->add_option("--xi", o.xi, "Left-c.e. stream of xi boundaries");
  simulate->add_option("--index", o.index, "Index stream change points");
  simulate->add_option("--theta-dir", o.theta_dir, "Directory of right-c.e. theta streams");
  simulate->add_option("--gamma", o.gamma, "Bootstrap stream whose final value is alpha_0");
  simulate->add_option("--alpha", o.alpha, "Left-c.e. stream file for alpha");
  simulate->add_option("--mu", o.mu, "Semi-measure increments file");
  simulate->add_option("--kmax", o.kmax, "Number of test levels");
  simulate->add_option("--u", o.u, "Machine tape U");
  simulate->add_option("--q", o.q, "Machine tape Q");
  simulate->add_option("--h", o.h, "h formula (n+K) or JSON table file");
  simulate->add_option("--mode", o.mode, "cover | literal");

  auto* verify = app.add_subcommand("verify", "Check a trace against a claim suite");
  verify->add_option("--trace", o.trace, "Trace file")->required();
  verify->add_option("--suite", o.suite, "claims | diag | layerwise | diff | semimeasure | ledger");

  auto* kc = app.add_subcommand("kc", "Build a prefix-free machine with Omega[s] = alpha[s]");
  kc->add_option("--alpha", o.alpha, "Left-c.e. stream file")->required();
  kc->add_option("--stages", o.stages, "Last stage (horizon)");
  kc->add_option("--out", o.out, "Machine tape file (default stdout)");

  auto* transform = app.add_subcommand("transform", "Machine transformations");
  transform->require_subcommand(1);
  auto* omega_diff = transform->add_subcommand("omega-diff", "Build V from U, h and Q");
  omega_diff->add_option("--u", o.u, "Machine tape U")->required();
  omega_diff->add_option("--q", o.q, "Machine tape Q");
  omega_diff->add_option("--h", o.h, "h formula (n+K) or JSON table file")->required();
  omega_diff->add_option("--stages", o.stages, "Last stage (horizon)");
  omega_diff->add_option("--mode", o.mode, "cover | literal");
  omega_diff->add_option("--out", o.out, "V machine tape file (default stdout)");
  omega_diff->add_option("--trace", o.ledger, "Ledger trace file");

  auto* combine = app.add_subcommand("combine-w", "W(0s) = U(s), W(1s) = V(s)");
  combine->add_option("--u", o.u, "Machine tape U")->required();
  combine->add_option("--v", o.v, "Machine tape V")->required();
  combine->add_option("--out", o.out, "W machine tape file (default stdout)");

  auto* pad = app.add_subcommand("pad-footnote", "Pad every program to even length");
  pad->add_option("--in", o.in, "Machine tape U")->required();
  pad->add_option("--out", o.out, "Padded machine tape file (default stdout)");

  auto* adjoin = app.add_subcommand("adjoin", "U(0^e 1 p) = M_e(p)");
  adjoin->add_option("machines", o.machines, "Machine tape files M_0, M_1, ...")->required();
  adjoin->add_option("--out", o.out, "Machine tape file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(o);
    if (verify->parsed()) return cmd_verify(o);
    if (kc->parsed()) return cmd_kc(o);
    if (omega_diff->parsed()) return cmd_transform(o);
    if (combine->parsed()) return cmd_combine_w(o);
    if (pad->parsed()) return cmd_pad_footnote(o);
    if (adjoin->parsed()) return cmd_adjoin(o);
  } catch (const ParseError& e) {
    std::cerr << "leftce: " << e.what() << '\n';
    if (simulate->parsed()) std::cerr << simulate->help();
    return kUsage;
  } catch (const ContractViolation& e) {
    std::cerr << "leftce: contract violation: " << e.what() << '\n';
    return kContract;
  }
  return kUsage;
}
