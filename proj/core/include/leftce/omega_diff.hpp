#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leftce/bitstring.hpp"
#include "leftce/dyadic.hpp"
#include "leftce/machines.hpp"
#include "leftce/report.hpp"
#include "leftce/streams.hpp"

namespace leftce {

/// h on outputs: either rank(tau) + k with rank the length-lex rank, or an
/// explicit table. Values must be positive.
class HSpec {
 public:
  static HSpec offset(std::int64_t k);
  static HSpec table(std::map<BitString, std::int64_t> values);
  /// "n", "n+K" or "n-K".
  static HSpec parse_formula(std::string_view text);

  /// Throws ContractViolation if tau is outside the table or h(tau) <= 0.
  std::int64_t operator()(const BitString& tau) const;

  bool is_table() const { return !offset_; }
  std::int64_t offset_value() const { return offset_.value_or(0); }
  const std::map<BitString, std::int64_t>& values() const { return table_; }
  /// "n+K" for formulas, "table" otherwise.
  std::string describe() const;

  friend bool operator==(const HSpec&, const HSpec&) = default;

 private:
  std::optional<std::int64_t> offset_;
  std::map<BitString, std::int64_t> table_;
};

/// How a short description U(sigma) = tau with |sigma| < h(tau) is replaced.
/// literal: V(sigma 0) and every length-h extension of sigma 1 except
/// sigma 1^(h - |sigma|). cover: V(sigma 0) and V(sigma 1^j 0) for
/// j = 1 .. h - |sigma| - 1. Both withhold exactly 2^-h and coincide when
/// h - |sigma| <= 2.
enum class ReplacementMode { cover, literal };

std::string_view to_string(ReplacementMode m);
ReplacementMode parse_replacement_mode(std::string_view text);

/// Programs that stand in for U(sigma) = tau.
std::vector<BitString> replacement_programs(const BitString& sigma, std::int64_t h, ReplacementMode mode);

struct Replacement {
  BitString output;
  BitString program;
  std::int64_t h = 0;

  friend bool operator==(const Replacement&, const Replacement&) = default;
};

struct OmegaDiffRecord {
  Stage stage = 0;
  std::vector<DescriptionEvent> u_events;
  std::vector<DescriptionEvent> q_events;
  std::vector<DescriptionEvent> v_events;
  std::vector<Replacement> replacements;
  Dyadic omega_u;
  Dyadic omega_v;
  /// Measure of dom(Q) copied under sigma_0 1 so far.
  Dyadic gamma;
  /// Sum of 2^-h(tau) over tau in A.
  Dyadic withheld;

  friend bool operator==(const OmegaDiffRecord&, const OmegaDiffRecord&) = default;
};

struct DiffLedger {
  Stage horizon = 0;
  ReplacementMode mode = ReplacementMode::cover;
  HSpec h;
  std::optional<BitString> sigma0;
  std::optional<BitString> tau0;
  std::vector<OmegaDiffRecord> records;

  std::optional<std::size_t> c() const { return sigma0 ? std::optional<std::size_t>(sigma0->size()) : std::nullopt; }

  friend bool operator==(const DiffLedger&, const DiffLedger&) = default;
};

struct OmegaDiffResult {
  MachineTape v;
  DiffLedger ledger;
};

/// Builds V from U, h and Q stage by stage. All V events caused by a stage-s
/// U event carry stage s; Q events are copied after the U events of their
/// stage, and Q events before the first U event wait for it.
OmegaDiffResult transform_v(const MachineTape& u, const HSpec& h, const MachineTape& q, Stage horizon,
                            ReplacementMode mode = ReplacementMode::cover);

/// W(0 sigma) = U(sigma), W(1 sigma) = V(sigma); same-stage ties put U first.
MachineTape combine_w(const MachineTape& u, const MachineTape& v);

/// Difference identity and K_V <= K_U + 1 at stage s against the ledger
/// record for s.
Report ledger_check(const MachineTape& u, const MachineTape& v, const DiffLedger& ledger, Stage s);

/// Rebuilds U, Q and V from the ledger records and checks, at every stage:
/// the identity, the complexity bound, prefix-freeness of V, the shape and
/// trigger of every replacement, monotonicity of A, and the first-description
/// rule.
Report verify_omega_diff(const DiffLedger& ledger);

}  // namespace leftce
