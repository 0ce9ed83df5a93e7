#include "credeval/type_two.hpp"

#include <gtest/gtest.h>

#include <random>

#include "credeval/baseline.hpp"
#include "test_util.hpp"

namespace credeval {
namespace {

ScoredRanking random_ranking(std::mt19937& rng, std::size_t n, bool integer = true) {
  std::uniform_real_distribution<double> real(0.0, 4.0);
  ScoredRanking r(n);
  for (auto& p : r) {
    p.relevance = integer ? static_cast<double>(rng() % 5) : real(rng);
    p.credibility = integer ? static_cast<double>(rng() % 5) : real(rng);
  }
  return r;
}

TEST(Wcs, HandEvaluated) {
  const ScoredRanking r{{1, 1}, {4, 4}};
  EXPECT_NEAR(wcs(r, 0.5), 3.52371901428583, 1e-12);
  EXPECT_DOUBLE_EQ(wcs(ScoredRanking{{4, 2}}, 0.5), 3.0);
  // lambda = 1 drops credibility
  EXPECT_DOUBLE_EQ(wcs(ScoredRanking{{1, 100}, {4, -7}}, 1.0), wcs(ScoredRanking{{1, 0}, {4, 0}}, 1.0));
  EXPECT_THROW(wcs(r, 1.5), ArgumentError);
}

TEST(Iwcs, SortsByCombinedScore) {
  const ScoredRanking r{{1, 1}, {4, 4}};
  EXPECT_NEAR(iwcs(r, 0.5), 4.630929753571458, 1e-12);
  const ScoredRanking ideal{{4, 4}, {3, 1}, {1, 2}};
  EXPECT_EQ(iwcs(ideal, 0.5), wcs(ideal, 0.5));
  // combined scores all equal: every order is ideal
  const ScoredRanking tied{{1, 3}, {3, 1}, {2, 2}};
  EXPECT_DOUBLE_EQ(iwcs(tied, 0.5), wcs(tied, 0.5));
}

TEST(Iwcs, MatchesExhaustiveMaximum) {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = random_ranking(rng, 1 + rng() % 6, false);
    const double lambda = static_cast<double>(rng() % 5) / 4.0;
    std::vector<double> combined;
    for (const auto& p : r) combined.push_back(lambda * p.relevance + (1 - lambda) * p.credibility);
    EXPECT_NEAR(iwcs(r, lambda), testing::brute::max_discounted_sum(combined, combined.size()),
                1e-9);
  }
}

TEST(Nwcs, Examples) {
  const auto r = nwcs(ScoredRanking{{1, 1}, {4, 4}}, 0.5);
  EXPECT_NEAR(r.value, 0.7609096232928763, 1e-12);
  EXPECT_FALSE(r.degenerate);
  EXPECT_EQ(nwcs(ScoredRanking{{4, 4}, {2, 1}}, 0.5).value, 1.0);
}

TEST(Nwcs, AllZeroScoresAreDegenerate) {
  const auto r = nwcs(ScoredRanking{{0, 0}, {0, 0}}, 0.3);
  EXPECT_EQ(r.value, 1.0);
  EXPECT_TRUE(r.degenerate);
}

TEST(Nwcs, EqualsLinearNdcgAtLambdaOne) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const auto r = random_ranking(rng, 1 + rng() % 10);
    std::vector<double> grades;
    for (const auto& p : r) grades.push_back(p.relevance);
    EXPECT_NEAR(nwcs(r, 1.0).value, ndcg(grades, Gain::linear, grades.size()).value, 1e-12);
  }
}

TEST(Nwcs, InUnitIntervalAndScaleFree) {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 500; ++trial) {
    const auto r = random_ranking(rng, 1 + rng() % 10, false);
    const double lambda = static_cast<double>(rng() % 11) / 10.0;
    const double v = nwcs(r, lambda).value;
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0 + 1e-15);
    ScoredRanking scaled = r;
    for (auto& p : scaled) {
      p.relevance *= 6.5;
      p.credibility *= 6.5;
    }
    EXPECT_NEAR(nwcs(scaled, lambda).value, v, 1e-12);
  }
}

// Moving the higher-scored document of an adjacent pair up never lowers NWCS.
TEST(Nwcs, ImprovingSwapNeverHurts) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    auto r = random_ranking(rng, 2 + rng() % 8, false);
    const std::size_t i = rng() % (r.size() - 1);
    const double before = nwcs(r, 0.5).value;
    if (detail::combined(r[i + 1], 0.5) > detail::combined(r[i], 0.5)) {
      std::swap(r[i], r[i + 1]);
      EXPECT_GE(nwcs(r, 0.5).value, before);
    }
  }
}

// Raising one document's score raises WCS.
TEST(Wcs, MonotoneInScores) {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    auto r = random_ranking(rng, 1 + rng() % 8, false);
    const std::size_t i = rng() % r.size();
    const double before = wcs(r, 0.5);
    r[i].credibility += 1.0;
    EXPECT_GT(wcs(r, 0.5), before);
    r[i].relevance += 1.0;
    EXPECT_GT(wcs(r, 0.5), before);
  }
}

// With tied credibility, NWCS orders permutations exactly as its
// relevance-only form does.
TEST(Nwcs, TiedCredibilityPreservesOrdering) {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    ScoredRanking a(n), b;
    for (auto& p : a) p = {static_cast<double>(rng() % 5), 2.0};
    b = a;
    std::shuffle(b.begin(), b.end(), rng);
    const double joint = wcs(a, 0.5) - wcs(b, 0.5);
    const double rel_only = wcs(a, 1.0) - wcs(b, 1.0);
    if (std::abs(rel_only) > 1e-12) {
      EXPECT_EQ(joint > 0, rel_only > 0);
    } else {
      EXPECT_NEAR(joint, 0.0, 1e-12);
    }
  }
}

TEST(Cam, Examples) {
  EXPECT_DOUBLE_EQ(cam({0.8, 0.4}, 0.5), 0.6);
  EXPECT_DOUBLE_EQ(cam({0.3, 0.9}, 1.0), 0.3);
  EXPECT_DOUBLE_EQ(cam({0.4, 0.8}, 0.25), 0.7);
  EXPECT_THROW(cam({0.4, 0.8}, -0.1), ArgumentError);
}

TEST(Wham, Examples) {
  for (double lambda : {0.0, 0.3, 0.5, 1.0}) {
    EXPECT_EQ(wham({0.0, 0.9}, lambda), 0.0);
    EXPECT_EQ(wham({0.9, 0.0}, lambda), 0.0);
    EXPECT_DOUBLE_EQ(wham({0.7, 0.7}, lambda), 0.7);
  }
  EXPECT_NEAR(wham({1.0, 0.5}, 0.5), 0.6666666666666666, 1e-12);
}

TEST(Aggregators, Algebra) {
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const AggregationInput m{u(rng), u(rng)};
    const double lambda = u(rng);
    EXPECT_LE(wham(m, lambda), cam(m, lambda) + 1e-15);
    const double p = m.relevance;
    const double r = m.credibility;
    EXPECT_NEAR(wham(m, 0.5), 2 * p * r / (p + r), 1e-12);
    // monotone in each input
    EXPECT_GE(cam({p + 0.1, r}, lambda), cam(m, lambda));
    EXPECT_GE(wham({p, r + 0.1}, lambda) + 1e-15, wham(m, lambda));
  }
}

TEST(ScoredRanking, FromUnitGrades) {
  const auto unit = testing::make_unit({{4, 1}, {2, 3}});
  EXPECT_EQ(scored_ranking(unit), (ScoredRanking{{4, 1}, {2, 3}}));
}

}  // namespace
}  // namespace credeval
