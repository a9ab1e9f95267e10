#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>

#include "leftce/dyadic.hpp"
#include "leftce/kraft_chaitin.hpp"
#include "leftce/machines.hpp"
#include "leftce/streams.hpp"

namespace leftce {

/// The machine a diagonalization plays against. At each stage the
/// construction calls advance(s, alpha_(s-1)) once, then reads gamma_s and
/// K_M[s] from tape(). Every event appended by advance(s, .) has stage s.
class Opponent {
 public:
  virtual ~Opponent() = default;
  virtual void advance(Stage s, const Dyadic& alpha_prev) = 0;
  virtual const MachineTape& tape() const = 0;
  virtual std::string describe() const = 0;
};

/// Replays a fixed machine tape; advance is a no-op.
class TapeOpponent final : public Opponent {
 public:
  explicit TapeOpponent(MachineTape tape, std::string name = "tape");
  void advance(Stage, const Dyadic&) override {}
  const MachineTape& tape() const override { return tape_; }
  std::string describe() const override { return name_; }

 private:
  MachineTape tape_;
  std::string name_;
};

/// Shared base for opponents that grow their domain through a
/// Kraft-Chaitin allocator.
class AllocatingOpponent : public Opponent {
 public:
  const MachineTape& tape() const override { return tape_; }

 protected:
  /// Grants weight 2^-n at stage s with the given output. Returns false if
  /// the allocator is out of budget.
  bool issue(Stage s, const Dyadic& weight, BitString output);
  /// Issues the binary expansion of `amount` with fresh length-lex tokens.
  void issue_expansion(Stage s, const Dyadic& amount);

  MachineTape tape_;
  KraftChaitinAllocator allocator_;
  std::uint64_t next_token_ = 0;
};

/// Never converges: gamma_s = 0.
class StallingOpponent final : public Opponent {
 public:
  void advance(Stage, const Dyadic&) override {}
  const MachineTape& tape() const override { return tape_; }
  std::string describe() const override { return "stalling"; }

 private:
  MachineTape tape_;
};

/// Keeps gamma_s = alpha_(s-1) by allocating each increase exactly.
class CopyingOpponent : public AllocatingOpponent {
 public:
  void advance(Stage s, const Dyadic& alpha_prev) override;
  std::string describe() const override { return "copying"; }
};

/// Copies, except that at `stage` it also issues the largest power of two
/// that fits in the remaining budget, so gamma_s > alpha_(s-1).
class OvershootingOpponent final : public AllocatingOpponent {
 public:
  explicit OvershootingOpponent(Stage stage) : stage_(stage) {}
  void advance(Stage s, const Dyadic& alpha_prev) override;
  std::string describe() const override { return "overshoot:" + std::to_string(stage_); }

 private:
  Stage stage_;
};

/// Seeded erratic opponent. Each stage it stalls, or issues the first one
/// to four terms of the binary expansion of alpha_(s-1) - gamma with random
/// short outputs; with probability 1/overshoot_odds it instead overshoots.
/// overshoot_odds = 0 disables overshooting.
class RandomOpponent final : public AllocatingOpponent {
 public:
  RandomOpponent(std::uint64_t seed, std::uint32_t overshoot_odds);
  void advance(Stage s, const Dyadic& alpha_prev) override;
  std::string describe() const override;

 private:
  BitString random_output();

  std::uint64_t seed_;
  std::uint32_t overshoot_odds_;
  std::mt19937_64 rng_;
};

/// Builds an opponent from "stalling", "copying", "overshoot[:stage]"
/// (default stage 8) or "random:seed[:odds]". Throws ParseError otherwise.
std::unique_ptr<Opponent> make_builtin_opponent(const std::string& spec);

}  // namespace leftce
