#pragma once

// Single-dimension measures (binary and graded) the joint measures are
// compared against, and which CAM / WHAM consume.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "credeval/core.hpp"
#include "credeval/rank_errors.hpp"

namespace credeval {

/// A measure value plus a flag raised when a denominator was zero and the
/// value was fixed by convention.
struct MeasureValue {
  double value = 0.0;
  bool degenerate = false;
};

enum class Label : std::uint8_t { negative, positive, unjudged };

struct BinaryJudgedList {
  std::vector<Label> labels;  // rank order
  std::size_t judged_positive_total = 0;
  std::size_t judged_negative_total = 0;

  std::size_t size() const noexcept { return labels.size(); }
};

struct ConfusionCounts {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::size_t true_negatives = 0;
};

constexpr int binarize(int grade, int threshold = 3) noexcept {
  return grade >= threshold ? 1 : 0;
}

/// Builds the binary view of one dimension of a unit. Totals count the
/// whole judgment pool of the unit, not only the ranked docs.
inline BinaryJudgedList binary_judged_list(const EvalUnit& unit, Dimension d, int threshold) {
  BinaryJudgedList out;
  out.labels.reserve(unit.size());
  for (const auto& e : unit.entries()) {
    if (!e.judged) {
      out.labels.push_back(Label::unjudged);
    } else {
      out.labels.push_back(binarize(e.grade(d), threshold) ? Label::positive : Label::negative);
    }
  }
  for (const auto& j : unit.pool()) {
    const int g = d == Dimension::relevance ? j.relevance.value() : j.credibility.value();
    if (binarize(g, threshold)) {
      ++out.judged_positive_total;
    } else {
      ++out.judged_negative_total;
    }
  }
  return out;
}

/// Predicted positive = ranked in the top k; actual positive = binarized
/// grade, over the unit's judgment pool.
inline ConfusionCounts confusion_counts(const EvalUnit& unit, Dimension d, int threshold,
                                        std::size_t k) {
  ConfusionCounts c;
  const std::size_t retrieved = std::min(k, unit.size());
  std::size_t retrieved_judged_positive = 0;
  std::size_t retrieved_judged_negative = 0;
  for (std::size_t i = 0; i < retrieved; ++i) {
    const auto& e = unit.entries()[i];
    // unjudged docs count as non-relevant here, like AP
    if (e.judged && binarize(e.grade(d), threshold)) {
      ++c.true_positives;
      ++retrieved_judged_positive;
    } else {
      ++c.false_positives;
      if (e.judged) ++retrieved_judged_negative;
    }
  }
  std::size_t pool_positive = 0;
  std::size_t pool_negative = 0;
  for (const auto& j : unit.pool()) {
    const int g = d == Dimension::relevance ? j.relevance.value() : j.credibility.value();
    (binarize(g, threshold) ? pool_positive : pool_negative) += 1;
  }
  c.false_negatives = pool_positive - retrieved_judged_positive;
  c.true_negatives = pool_negative - retrieved_judged_negative;
  return c;
}

namespace detail {

inline std::size_t positives_in_prefix(const BinaryJudgedList& l, std::size_t k) {
  return static_cast<std::size_t>(
      std::count(l.labels.begin(), l.labels.begin() + static_cast<std::ptrdiff_t>(k),
                 Label::positive));
}

}  // namespace detail

inline double precision_at_k(const BinaryJudgedList& l, std::size_t k) {
  if (k < 1 || k > l.size()) {
    throw ArgumentError("precision cutoff " + std::to_string(k) + " outside [1, " +
                        std::to_string(l.size()) + "]");
  }
  return static_cast<double>(detail::positives_in_prefix(l, k)) / static_cast<double>(k);
}

/// Cutoffs beyond the list length count the whole list.
inline MeasureValue recall_at_k(const BinaryJudgedList& l, std::size_t k) {
  if (k < 1) throw ArgumentError("recall cutoff must be positive");
  if (l.judged_positive_total == 0) return {0.0, true};
  const auto found = detail::positives_in_prefix(l, std::min(k, l.size()));
  return {static_cast<double>(found) / static_cast<double>(l.judged_positive_total), false};
}

inline MeasureValue average_precision(const BinaryJudgedList& l) {
  if (l.judged_positive_total == 0) return {0.0, true};
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l.labels[i] == Label::positive) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return {sum / static_cast<double>(l.judged_positive_total), false};
}

inline double mrr(const BinaryJudgedList& l) {
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l.labels[i] == Label::positive) return 1.0 / static_cast<double>(i + 1);
  }
  return 0.0;
}

/// Unjudged positions are skipped; each retrieved positive is penalized by
/// the judged negatives above it, capped at min(R, N).
inline MeasureValue bpref(const BinaryJudgedList& l) {
  const std::size_t r = l.judged_positive_total;
  const std::size_t n = l.judged_negative_total;
  if (r == 0) return {0.0, true};
  const double cap = static_cast<double>(std::min(r, n));
  double sum = 0.0;
  std::size_t negatives_above = 0;
  for (const auto label : l.labels) {
    if (label == Label::negative) {
      ++negatives_above;
    } else if (label == Label::positive) {
      sum += n == 0 ? 1.0
                    : 1.0 - std::min(static_cast<double>(negatives_above), cap) / cap;
    }
  }
  return {sum / static_cast<double>(r), false};
}

namespace detail {

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  bool degenerate = false;
};

inline PrecisionRecall precision_recall(const ConfusionCounts& c) {
  PrecisionRecall pr;
  const auto predicted = c.true_positives + c.false_positives;
  const auto actual = c.true_positives + c.false_negatives;
  if (predicted == 0 || actual == 0) {
    pr.degenerate = true;
  }
  if (predicted > 0) {
    pr.precision = static_cast<double>(c.true_positives) / static_cast<double>(predicted);
  }
  if (actual > 0) {
    pr.recall = static_cast<double>(c.true_positives) / static_cast<double>(actual);
  }
  return pr;
}

}  // namespace detail

inline MeasureValue f1(const ConfusionCounts& c) {
  const auto pr = detail::precision_recall(c);
  const double denom = pr.precision + pr.recall;
  if (denom == 0.0) return {0.0, true};
  return {2.0 * pr.precision * pr.recall / denom, pr.degenerate};
}

inline MeasureValue g_measure(const ConfusionCounts& c) {
  const auto pr = detail::precision_recall(c);
  if (pr.precision + pr.recall == 0.0) return {0.0, true};
  return {std::sqrt(pr.precision * pr.recall), pr.degenerate};
}

inline double gain_of(double grade, Gain gain) {
  return gain == Gain::linear ? grade : std::exp2(grade) - 1.0;
}

/// NDCG over the first k grades, normalized by the same grades sorted
/// descending. All-zero gains are vacuously ideal (1, flagged).
inline MeasureValue ndcg(std::span<const double> grades, Gain gain, std::size_t k) {
  if (k < 1) throw ArgumentError("ndcg cutoff must be positive");
  const std::size_t depth = std::min(k, grades.size());
  std::vector<double> ideal(grades.begin(), grades.end());
  std::stable_sort(ideal.begin(), ideal.end(), std::greater<>{});
  double dcg = 0.0;
  double idcg = 0.0;
  for (std::size_t i = 0; i < depth; ++i) {
    dcg += gain_of(grades[i], gain) * rank_discount(i + 1);
    idcg += gain_of(ideal[i], gain) * rank_discount(i + 1);
  }
  if (idcg == 0.0) return {1.0, true};
  return {dcg / idcg, false};
}

}  // namespace credeval
