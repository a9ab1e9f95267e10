#include <gtest/gtest.h>

#include "leftce/errors.hpp"
#include "leftce/streams.hpp"
#include "support/generators.hpp"

namespace leftce {
namespace {

Dyadic d(long m, std::uint64_t k) { return Dyadic::make(mpz_class(m), k); }

TEST(Streams, ScriptedLeftHoldsValues) {
  const std::vector<ScriptEvent> ev{{0, Dyadic()}, {3, d(1, 1)}};
  const auto s = scripted_stream<Direction::nondecreasing>(ev, 5);
  EXPECT_EQ(s.values(), (std::vector<Dyadic>{0, 0, 0, d(1, 1), d(1, 1), d(1, 1)}));
  EXPECT_EQ(s.horizon(), 5);
}

TEST(Streams, ScriptedRightHoldsValues) {
  const std::vector<ScriptEvent> ev{{0, Dyadic(1)}, {2, d(3, 2)}};
  const auto s = scripted_stream<Direction::nonincreasing>(ev, 3);
  EXPECT_EQ(s.values(), (std::vector<Dyadic>{1, 1, d(3, 2), d(3, 2)}));
}

TEST(Streams, ScriptedDefaultHorizonIsLastEvent) {
  const std::vector<ScriptEvent> ev{{0, Dyadic()}, {4, d(1, 3)}};
  EXPECT_EQ(scripted_stream<Direction::nondecreasing>(ev).horizon(), 4);
}

TEST(Streams, ScriptedRejectsDecrease) {
  const std::vector<ScriptEvent> ev{{0, Dyadic()}, {1, d(1, 1)}, {2, d(1, 2)}};
  EXPECT_THROW(scripted_stream<Direction::nondecreasing>(ev), ContractViolation);
  EXPECT_THROW(scripted_stream(ev, Direction::nondecreasing), ContractViolation);
}

TEST(Streams, ScriptedRejectsBadStages) {
  const std::vector<ScriptEvent> late_start{{1, Dyadic()}};
  EXPECT_THROW(scripted_stream<Direction::nondecreasing>(late_start), ContractViolation);
  const std::vector<ScriptEvent> repeat{{0, Dyadic()}, {2, d(1, 1)}, {2, d(3, 2)}};
  EXPECT_THROW(scripted_stream<Direction::nondecreasing>(repeat), ContractViolation);
  EXPECT_THROW(scripted_stream<Direction::nondecreasing>({}), ContractViolation);
}

TEST(Streams, BoundsAreEnforced) {
  EXPECT_THROW(LeftCEStream(std::vector<Dyadic>{0, 2}, Dyadic(0), Dyadic(1)), ContractViolation);
  EXPECT_NO_THROW(LeftCEStream(std::vector<Dyadic>{0, 1}, Dyadic(0), Dyadic(1)));
}

TEST(Streams, AtOutsideHorizonThrows) {
  const LeftCEStream s(std::vector<Dyadic>{0, 1});
  EXPECT_THROW((void)s.at(2), std::out_of_range);
  EXPECT_THROW((void)s.at(-1), std::out_of_range);
}

TEST(Streams, AffineCaseThreeValue) {
  const LeftCEStream base(std::vector<Dyadic>{d(13, 4)});
  EXPECT_EQ(affine(base, d(1, 4), d(1, 1)).at(0), d(141, 8));
  const LeftCEStream one(std::vector<Dyadic>{1});
  EXPECT_EQ(affine(one, d(1, 3), d(1, 1)).at(0), d(5, 3));
}

TEST(Streams, AffineIdentity) {
  const LeftCEStream base = default_beta(20);
  EXPECT_EQ(affine(base, Dyadic(1), Dyadic()).values(), base.values());
}

TEST(Streams, AffineRejectsNonPositiveScale) {
  EXPECT_THROW(affine(default_beta(3), Dyadic(), Dyadic()), ContractViolation);
}

TEST(Streams, DefaultBetaShape) {
  const LeftCEStream b = default_beta(6);
  EXPECT_EQ(b.at(0), d(9, 4));
  EXPECT_EQ(b.at(1), d(11, 4));
  EXPECT_EQ(b.at(6), d(13, 4) - Dyadic::pow2(-8));
  for (Stage s = 0; s <= 6; ++s) EXPECT_LT(b.at(s), d(13, 4));
}

TEST(Streams, SolovayExamples) {
  const LeftCEStream beta = default_beta(40);
  EXPECT_TRUE(solovay_domination_check(affine(beta, d(1, 4), d(1, 1)), beta, 16, 40).holds);
  EXPECT_TRUE(solovay_domination_check(beta, beta, 1, 40).holds);
  const LeftCEStream flat(std::vector<Dyadic>{d(1, 2), d(1, 2), d(1, 2)});
  const LeftCEStream jump(std::vector<Dyadic>{0, 0, d(1, 1)});
  const auto v = solovay_domination_check(jump, flat, 100, 2);
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.violated_at, 2);
}

TEST(Streams, SolovayRejectsBadArguments) {
  const LeftCEStream b = default_beta(3);
  EXPECT_THROW(solovay_domination_check(b, b, 0, 3), ContractViolation);
  EXPECT_THROW(solovay_domination_check(b, b, 1, 4), ContractViolation);
}

TEST(StreamsProperty, SolovayMatchesAllPairsOracle) {
  testing::Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const Stage h = testing::uniform(rng, 1, 30);
    const LeftCEStream a = testing::random_left_stream(rng, h, 0.4, 10);
    const LeftCEStream b = testing::random_left_stream(rng, h, 0.4, 10);
    const std::int64_t n = testing::uniform(rng, 1, 6);
    std::optional<Stage> first;
    for (Stage t = 1; t <= h && !first; ++t) {
      for (Stage s = 0; s < t; ++s) {
        if (Dyadic(static_cast<long>(n)) * (b.at(t) - b.at(s)) < a.at(t) - a.at(s)) {
          first = t;
          break;
        }
      }
    }
    const auto v = solovay_domination_check(a, b, n, h);
    EXPECT_EQ(v.holds, !first.has_value());
    EXPECT_EQ(v.violated_at, first);
  }
}

TEST(StreamsProperty, TruncationAgreesPointwise) {
  testing::Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const LeftCEStream a = testing::random_left_stream(rng, 50, 0.3, 16);
    const Stage cut = testing::uniform(rng, 0, 60);
    const LeftCEStream t = a.truncated(cut);
    EXPECT_EQ(t.horizon(), std::min<Stage>(cut, 50));
    for (Stage s = 0; s <= t.horizon(); ++s) EXPECT_EQ(t.at(s), a.at(s));
  }
}

}  // namespace
}  // namespace leftce
