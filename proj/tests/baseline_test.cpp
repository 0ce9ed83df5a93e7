#include "credeval/baseline.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace credeval {
namespace {

BinaryJudgedList make_list(std::vector<int> bits, std::size_t positives, std::size_t negatives) {
  BinaryJudgedList l;
  for (int b : bits) {
    l.labels.push_back(b == 1 ? Label::positive : b == 0 ? Label::negative : Label::unjudged);
  }
  l.judged_positive_total = positives;
  l.judged_negative_total = negatives;
  return l;
}

BinaryJudgedList fully_judged(std::vector<int> bits) {
  std::size_t p = 0;
  for (int b : bits) p += b == 1;
  return make_list(bits, p, bits.size() - p);
}

TEST(Binarize, ConversionTable) {
  EXPECT_EQ(binarize(1, 3), 0);
  EXPECT_EQ(binarize(2, 3), 0);
  EXPECT_EQ(binarize(3, 3), 1);
  EXPECT_EQ(binarize(4, 3), 1);
  EXPECT_EQ(binarize(4, 5), 0);
  for (int t = 0; t <= 5; ++t) {
    for (int g = 0; g < 4; ++g) EXPECT_LE(binarize(g, t), binarize(g + 1, t));
  }
}

TEST(PrecisionAtK, Examples) {
  EXPECT_DOUBLE_EQ(precision_at_k(fully_judged({1, 0, 1, 0, 0}), 5), 0.4);
  EXPECT_DOUBLE_EQ(precision_at_k(fully_judged({1, 1, 1}), 2), 1.0);
  EXPECT_DOUBLE_EQ(precision_at_k(fully_judged({0, 1}), 1), 0.0);
  EXPECT_THROW(precision_at_k(fully_judged({0, 1}), 3), ArgumentError);
  EXPECT_THROW(precision_at_k(fully_judged({0, 1}), 0), ArgumentError);
}

TEST(RecallAtK, Examples) {
  EXPECT_DOUBLE_EQ(recall_at_k(make_list({1, 0, 1}, 2, 1), 3).value, 1.0);
  EXPECT_DOUBLE_EQ(recall_at_k(make_list({1, 0, 0}, 2, 2), 3).value, 0.5);
  const auto none = recall_at_k(make_list({0, 0}, 0, 2), 2);
  EXPECT_EQ(none.value, 0.0);
  EXPECT_TRUE(none.degenerate);
}

TEST(AveragePrecision, Examples) {
  EXPECT_NEAR(average_precision(make_list({1, 0, 1}, 2, 1)).value, 0.8333333333333333, 1e-12);
  EXPECT_DOUBLE_EQ(average_precision(fully_judged({1, 1, 1, 1})).value, 1.0);
  EXPECT_NEAR(average_precision(make_list({0, 0, 1}, 1, 2)).value, 1.0 / 3.0, 1e-12);
  EXPECT_TRUE(average_precision(make_list({0, 0}, 0, 2)).degenerate);
  // unretrieved positives count against AP
  EXPECT_DOUBLE_EQ(average_precision(make_list({1, 0}, 2, 1)).value, 0.5);
}

TEST(Mrr, Examples) {
  EXPECT_DOUBLE_EQ(mrr(fully_judged({0, 1, 0})), 0.5);
  EXPECT_DOUBLE_EQ(mrr(fully_judged({1, 0})), 1.0);
  EXPECT_DOUBLE_EQ(mrr(fully_judged({0, 0, 0})), 0.0);
}

TEST(Bpref, Examples) {
  EXPECT_DOUBLE_EQ(bpref(make_list({1, 0, 1}, 2, 2)).value, 0.75);
  EXPECT_DOUBLE_EQ(bpref(make_list({1, 1, 0}, 2, 1)).value, 1.0);
  EXPECT_DOUBLE_EQ(bpref(make_list({0, 1}, 1, 1)).value, 0.0);
  // unjudged docs are skipped entirely
  EXPECT_DOUBLE_EQ(bpref(make_list({-1, 1, -1, 0, 1}, 2, 2)).value, 0.75);
  // no judged negatives: every retrieved positive counts fully
  EXPECT_DOUBLE_EQ(bpref(make_list({1, -1}, 2, 0)).value, 0.5);
  EXPECT_TRUE(bpref(make_list({0}, 0, 1)).degenerate);
}

TEST(FMeasures, Examples) {
  // p = r = 0.5
  const ConfusionCounts half{1, 1, 1, 0};
  EXPECT_DOUBLE_EQ(f1(half).value, 0.5);
  EXPECT_DOUBLE_EQ(g_measure(half).value, 0.5);
  // tp = 0
  const ConfusionCounts miss{0, 5, 0, 0};
  EXPECT_EQ(f1(miss).value, 0.0);
  EXPECT_EQ(g_measure(miss).value, 0.0);
  EXPECT_TRUE(f1(miss).degenerate);
  // p = 0.25, r = 1
  const ConfusionCounts low{1, 3, 0, 1};
  EXPECT_DOUBLE_EQ(g_measure(low).value, 0.5);
  EXPECT_DOUBLE_EQ(f1(low).value, 0.4);
  EXPECT_FALSE(f1(low).degenerate);
}

TEST(Ndcg, Examples) {
  const std::vector<double> ideal{4, 3};
  EXPECT_DOUBLE_EQ(ndcg(ideal, Gain::linear, 5).value, 1.0);
  const std::vector<double> swapped{1, 4};
  EXPECT_NEAR(ndcg(swapped, Gain::linear, 5).value, 0.7609096232928763, 1e-12);
  EXPECT_NEAR(ndcg(swapped, Gain::exponential, 5).value, 0.669438508683784, 1e-12);
  const std::vector<double> late{0, 0, 4};
  EXPECT_DOUBLE_EQ(ndcg(late, Gain::linear, 5).value, 0.5);
  const std::vector<double> zero{0, 0};
  EXPECT_EQ(ndcg(zero, Gain::linear, 5).value, 1.0);
  EXPECT_TRUE(ndcg(zero, Gain::linear, 5).degenerate);
  // cutoff truncates both DCG and ideal DCG
  const std::vector<double> deep{1, 4, 4};
  EXPECT_NEAR(ndcg(deep, Gain::linear, 1).value, 0.25, 1e-15);
  EXPECT_THROW(ndcg(deep, Gain::linear, 0), ArgumentError);
}

TEST(Ndcg, IdealFromExhaustiveSearch) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& seq : testing::all_sequences(n, 0, 3)) {
      std::vector<double> grades(seq.begin(), seq.end());
      double dcg = 0.0;
      for (std::size_t i = 0; i < n; ++i) dcg += grades[i] / std::log2(i + 2.0);
      const double best = testing::brute::max_discounted_sum(grades, n);
      const auto v = ndcg(grades, Gain::linear, n);
      if (best == 0.0) {
        EXPECT_TRUE(v.degenerate);
      } else {
        EXPECT_NEAR(v.value, dcg / best, 1e-12);
      }
    }
  }
}

// Every binary list up to length 8 (positives, negatives, unjudged), each
// against a direct re-derivation of the definition.
TEST(BinaryMeasures, MatchBruteForceEnumeration) {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (const auto& seq : testing::all_sequences(n, -1, 1)) {
      std::size_t pos = 0, neg = 0;
      for (int b : seq) {
        pos += b == 1;
        neg += b == 0;
      }
      for (std::size_t extra = 0; extra <= 1; ++extra) {
        const std::size_t r_total = pos + extra;  // extra = unretrieved positive in the pool
        const auto l = make_list(seq, r_total, neg);
        for (std::size_t k = 1; k <= n; ++k) {
          ASSERT_NEAR(precision_at_k(l, k), testing::brute::precision_at(seq, k), 1e-12);
          ASSERT_NEAR(recall_at_k(l, k).value, testing::brute::recall_at(seq, k, r_total), 1e-12);
        }
        ASSERT_NEAR(average_precision(l).value, testing::brute::average_precision(seq, r_total),
                    1e-12);
        ASSERT_NEAR(mrr(l), testing::brute::reciprocal_rank(seq), 1e-12);
        ASSERT_NEAR(bpref(l).value, testing::brute::bpref(seq, r_total, neg), 1e-12);
        for (double v : {average_precision(l).value, bpref(l).value, mrr(l)}) {
          ASSERT_GE(v, 0.0);
          ASSERT_LE(v, 1.0);
        }
      }
    }
  }
}

TEST(UnitViews, BinaryListAndConfusionCounts) {
  JudgmentSet judgments{{"q", "a", "d1", Grade(4), Grade(1)},
                        {"q", "a", "d2", Grade(2), Grade(3)},
                        {"q", "a", "d3", Grade(3), Grade(4)}};  // judged, not ranked
  const auto unit = validate_unit({"q", "a", {"d1", "x", "d2"}}, judgments);

  const auto rel = binary_judged_list(unit, Dimension::relevance, 3);
  EXPECT_EQ(rel.labels, (std::vector<Label>{Label::positive, Label::unjudged, Label::negative}));
  EXPECT_EQ(rel.judged_positive_total, 2u);
  EXPECT_EQ(rel.judged_negative_total, 1u);

  const auto c = confusion_counts(unit, Dimension::credibility, 3, 3);
  EXPECT_EQ(c.true_positives, 1u);   // d2
  EXPECT_EQ(c.false_positives, 2u);  // d1, x
  EXPECT_EQ(c.false_negatives, 1u);  // d3
  EXPECT_EQ(c.true_negatives, 0u);

  const auto top1 = confusion_counts(unit, Dimension::credibility, 3, 1);
  EXPECT_EQ(top1.true_positives, 0u);
  EXPECT_EQ(top1.false_positives, 1u);
  EXPECT_EQ(top1.false_negatives, 2u);
  EXPECT_EQ(top1.true_negatives, 0u);
}

}  // namespace
}  // namespace credeval
