#include "leftce/opponents.hpp"

#include <charconv>

#include "leftce/errors.hpp"

namespace leftce {

TapeOpponent::TapeOpponent(MachineTape tape, std::string name) : tape_(std::move(tape)), name_(std::move(name)) {}

bool AllocatingOpponent::issue(Stage s, const Dyadic& weight, BitString output) {
  auto program = allocator_.grant(weight);
  if (!program) return false;
  tape_.append(s, std::move(*program), std::move(output));
  return true;
}

void AllocatingOpponent::issue_expansion(Stage s, const Dyadic& amount) {
  if (!amount.is_positive()) return;
  for (const Request& r : expansion_requests(amount, s)) {
    issue(s, r.weight, BitString::from_length_lex_rank(next_token_++));
  }
}

void CopyingOpponent::advance(Stage s, const Dyadic& alpha_prev) { issue_expansion(s, alpha_prev - tape_.omega()); }

namespace {

// Largest 2^-n not exceeding `room`, for 0 < room <= 1.
Dyadic largest_power_below(const Dyadic& room) { return Dyadic::pow2(-static_cast<std::int64_t>(room.binary_expansion().front())); }

}  // namespace

void OvershootingOpponent::advance(Stage s, const Dyadic& alpha_prev) {
  issue_expansion(s, alpha_prev - tape_.omega());
  if (s == stage_) {
    const Dyadic room = Dyadic(1) - tape_.omega();
    if (room.is_positive()) issue(s, largest_power_below(room), BitString::from_length_lex_rank(next_token_++));
  }
}

RandomOpponent::RandomOpponent(std::uint64_t seed, std::uint32_t overshoot_odds)
    : seed_(seed), overshoot_odds_(overshoot_odds), rng_(seed) {}

std::string RandomOpponent::describe() const {
  return "random:" + std::to_string(seed_) + ":" + std::to_string(overshoot_odds_);
}

BitString RandomOpponent::random_output() {
  std::uniform_int_distribution<int> len_dist(0, 6);
  std::bernoulli_distribution bit(0.5);
  std::string bits(static_cast<std::size_t>(len_dist(rng_)), '0');
  for (char& c : bits) c = bit(rng_) ? '1' : '0';
  return BitString(std::move(bits));
}

void RandomOpponent::advance(Stage s, const Dyadic& alpha_prev) {
  if (overshoot_odds_ > 0 && std::uniform_int_distribution<std::uint32_t>(1, overshoot_odds_)(rng_) == 1) {
    const Dyadic room = Dyadic(1) - tape_.omega();
    if (room.is_positive()) issue(s, largest_power_below(room), random_output());
    return;
  }
  if (std::bernoulli_distribution(0.4)(rng_)) return;
  const Dyadic gap = alpha_prev - tape_.omega();
  if (!gap.is_positive()) return;
  const auto terms = gap.binary_expansion();
  const std::size_t take = std::min<std::size_t>(terms.size(), std::uniform_int_distribution<std::size_t>(1, 4)(rng_));
  for (std::size_t t = 0; t < take; ++t) {
    issue(s, Dyadic::pow2(-static_cast<std::int64_t>(terms[t])), random_output());
  }
}

namespace {

std::uint64_t parse_u64(std::string_view text, const std::string& spec) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("bad number in opponent spec '" + spec + "'");
  }
  return value;
}

}  // namespace

std::unique_ptr<Opponent> make_builtin_opponent(const std::string& spec) {
  std::string_view view(spec);
  const auto colon = view.find(':');
  const std::string_view head = view.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view() : view.substr(colon + 1);
  if (head == "stalling" && colon == std::string_view::npos) return std::make_unique<StallingOpponent>();
  if (head == "copying" && colon == std::string_view::npos) return std::make_unique<CopyingOpponent>();
  if (head == "overshoot") {
    const Stage stage = colon == std::string_view::npos ? 8 : static_cast<Stage>(parse_u64(rest, spec));
    return std::make_unique<OvershootingOpponent>(stage);
  }
  if (head == "random" && colon != std::string_view::npos) {
    const auto second = rest.find(':');
    const std::uint64_t seed = parse_u64(rest.substr(0, second), spec);
    const std::uint64_t odds = second == std::string_view::npos ? 0 : parse_u64(rest.substr(second + 1), spec);
    return std::make_unique<RandomOpponent>(seed, static_cast<std::uint32_t>(odds));
  }
  throw ParseError("unknown opponent '" + spec + "' (expected stalling, copying, overshoot[:stage], random:seed[:odds])");
}

}  // namespace leftce
