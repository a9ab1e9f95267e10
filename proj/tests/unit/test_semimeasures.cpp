#include <gtest/gtest.h>

#include "leftce/errors.hpp"
#include "leftce/semimeasures.hpp"
#include "support/generators.hpp"

namespace leftce {
namespace {

Dyadic d(long m, std::uint64_t k) { return Dyadic::make(mpz_class(m), k); }

TEST(SemiMeasureTape, AccumulatesPerIndex) {
  SemiMeasureTape t;
  t.add(0, 2, d(1, 2));
  t.add(0, 2, d(1, 3));
  t.add(3, 5, d(1, 1));
  EXPECT_EQ(t.mass(2), d(3, 3));
  EXPECT_EQ(t.mass_at(5, 2), Dyadic());
  EXPECT_EQ(t.mass_at(5, 3), d(1, 1));
  EXPECT_EQ(t.total(), d(7, 3));
  EXPECT_EQ(t.total_at(0), d(3, 3));
  EXPECT_EQ(t.total_at(-1), Dyadic());
  EXPECT_EQ(t.support(), (std::vector<Index>{2, 5}));
}

TEST(SemiMeasureTape, RejectsContractBreaks) {
  SemiMeasureTape t;
  EXPECT_THROW(t.add(0, 0, Dyadic()), ContractViolation);
  EXPECT_THROW(t.add(0, -1, d(1, 1)), ContractViolation);
  t.add(2, 0, d(3, 2));
  EXPECT_THROW(t.add(1, 0, d(1, 4)), ContractViolation);
  EXPECT_THROW(t.add(2, 1, d(1, 1)), ContractViolation);
  EXPECT_NO_THROW(t.add(2, 1, d(1, 2)));
}

TEST(MLTestTape, LengthsAndCover) {
  MLTestTape u;
  u.add({1, 0, d(1, 3), d(1, 2)});
  u.add({1, 4, d(5, 3), d(3, 2)});
  EXPECT_EQ(u.level_length(1), d(1, 2));
  EXPECT_EQ(u.level_length(2), Dyadic());
  EXPECT_TRUE(u.covers(1, d(3, 4)));
  EXPECT_FALSE(u.covers(1, d(1, 2)));
  EXPECT_FALSE(u.covers(1, d(1, 3)));
  EXPECT_THROW(u.add({1, 5, d(1, 2), d(1, 2)}), ContractViolation);
}

TEST(Mixture, Examples) {
  SemiMeasureTape mu;
  mu.add(0, 0, d(1, 1));
  const std::vector<SemiMeasureTape> one{mu};
  EXPECT_EQ(mixture_universal(one).mass(0), d(1, 2));
  EXPECT_TRUE(mixture_universal(std::vector<SemiMeasureTape>{}).empty());

  SemiMeasureTape full_a;
  full_a.add(0, 0, Dyadic(1));
  SemiMeasureTape full_b;
  full_b.add(1, 1, Dyadic(1));
  const std::vector<SemiMeasureTape> two{full_a, full_b};
  EXPECT_EQ(mixture_universal(two).total(), d(3, 2));
}

TEST(Domination, Examples) {
  SemiMeasureTape mu;
  mu.add(0, 0, d(1, 2));
  mu.add(3, 4, d(1, 3));
  const std::vector<SemiMeasureTape> comps{mu};
  const SemiMeasureTape m = mixture_universal(comps);
  const auto ok = verify_domination(m, mu, 1, 3);
  EXPECT_TRUE(ok.holds());
  EXPECT_FALSE(ok.strict);
  EXPECT_EQ(ok.first_strict_failure, 0);

  EXPECT_TRUE(verify_domination(m, SemiMeasureTape(), 5, 3).strict);

  SemiMeasureTape half;
  half.add(0, 0, d(1, 1));
  const auto bad = verify_domination(SemiMeasureTape(), half, 3, 0);
  EXPECT_FALSE(bad.holds());
  EXPECT_EQ(bad.first_failure, 0);
}

TEST(SumConstruction, HandSimulatedLevelOne) {
  const LeftCEStream alpha(std::vector<Dyadic>{0, d(1, 3), d(3, 4), d(5, 4)});
  SemiMeasureTape mu;
  mu.add(1, 1, d(1, 2));
  const auto r = uniform_semimeasure_with_sum(alpha, mu, 1, 3);
  const SemiMeasureTape& m1 = r.levels.at(0);
  EXPECT_EQ(m1.mass_at(1, 1), d(1, 4));
  EXPECT_EQ(m1.mass_at(1, 2), d(3, 5));
  EXPECT_EQ(m1.mass_at(1, 3), d(5, 5));
  ASSERT_EQ(r.test.levels().at(1).size(), 1U);
  const TestInterval& iv = r.test.levels().at(1)[0];
  EXPECT_EQ(iv.lo, d(1, 3));
  EXPECT_EQ(iv.hi, d(1, 2));
  EXPECT_EQ(iv.stage, 1);
  const LevelRecord& last = r.trace.records.back().levels.at(0);
  EXPECT_EQ(last.phase, 1);
  EXPECT_EQ(last.entry_alpha, d(5, 4));
  EXPECT_TRUE(fully_consumed(r.trace));
  EXPECT_EQ(r.m.total(), d(5, 4).half());
  EXPECT_TRUE(verify_semimeasure_trace(r.trace).passed());
}

TEST(SumConstruction, IndexAboveStageWaits) {
  const LeftCEStream alpha(std::vector<Dyadic>{0, d(1, 3), d(3, 4), d(5, 4)});
  SemiMeasureTape mu;
  mu.add(1, 3, d(1, 2));
  const auto r = uniform_semimeasure_with_sum(alpha, mu, 1, 3);
  EXPECT_TRUE(r.levels.at(0).mass_at(3, 2).is_zero());
  const TestInterval& iv = r.test.levels().at(1).at(0);
  EXPECT_EQ(iv.stage, 3);
  EXPECT_EQ(iv.lo, d(5, 4));
  EXPECT_EQ(r.levels.at(0).mass(3), d(5, 5));
}

TEST(SumConstruction, NoMuIncreaseMeansNothing) {
  const LeftCEStream alpha(std::vector<Dyadic>{0, d(1, 2), d(1, 1)});
  const auto r = uniform_semimeasure_with_sum(alpha, SemiMeasureTape(), 4, 2);
  EXPECT_TRUE(r.m.empty());
  EXPECT_TRUE(r.test.levels().empty());
  EXPECT_FALSE(fully_consumed(r.trace));
  EXPECT_TRUE(verify_semimeasure_trace(r.trace).passed());
}

TEST(SumConstruction, RejectsBadArguments) {
  const LeftCEStream alpha(std::vector<Dyadic>{0, 2});
  EXPECT_THROW(uniform_semimeasure_with_sum(alpha, SemiMeasureTape(), 2, 1), ContractViolation);
  const LeftCEStream ok(std::vector<Dyadic>{0});
  EXPECT_THROW(uniform_semimeasure_with_sum(ok, SemiMeasureTape(), 0, 0), ContractViolation);
  EXPECT_THROW(uniform_semimeasure_with_sum(ok, SemiMeasureTape(), 2, 1), ContractViolation);
}

TEST(SumConstruction, CorruptedMassIsFlagged) {
  const LeftCEStream alpha(std::vector<Dyadic>{0, d(1, 3), d(3, 4)});
  SemiMeasureTape mu;
  mu.add(1, 0, d(1, 2));
  auto r = uniform_semimeasure_with_sum(alpha, mu, 2, 2);
  r.trace.records[2].levels[1].mass += d(1, 10);
  const Report report = verify_semimeasure_trace(r.trace);
  EXPECT_FALSE(report.passed());
  EXPECT_FALSE(report.find("mass-accounting")->passed());
  EXPECT_EQ(report.find("mass-accounting")->first_failure_stage, 2);
}

TEST(SumConstructionProperty, LedgersAndTestBounds) {
  testing::Rng rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    const Stage h = testing::uniform(rng, 5, 300);
    const LeftCEStream alpha = testing::random_left_stream(rng, h, 0.2, 14);
    const SemiMeasureTape mu = testing::random_semimeasure(rng, 25, h, 6);
    const int kmax = static_cast<int>(testing::uniform(rng, 1, 8));
    const auto r = uniform_semimeasure_with_sum(alpha, mu, kmax, h);
    const Report report = verify_semimeasure_trace(r.trace);
    EXPECT_TRUE(report.passed());
    Dyadic levels_total;
    for (int k = 1; k <= kmax; ++k) {
      EXPECT_LE(r.test.level_length(k), Dyadic::pow2(-k));
      levels_total += r.levels[static_cast<std::size_t>(k - 1)].total();
    }
    EXPECT_EQ(levels_total, r.m.total());
    EXPECT_LE(r.m.total(), Dyadic(1));
    if (fully_consumed(r.trace)) {
      Dyadic expected;
      for (int k = 1; k <= kmax; ++k) expected += alpha.at(h).scaled(-k);
      EXPECT_EQ(r.m.total(), expected);
    }
  }
}

}  // namespace
}  // namespace leftce
