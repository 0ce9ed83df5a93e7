#pragma once

// Document-score measures: NWCS, and the CAM / WHAM aggregators over a
// relevance-only and a credibility-only measure.

#include <algorithm>
#include <span>
#include <vector>

#include "credeval/core.hpp"
#include "credeval/rank_errors.hpp"

namespace credeval {

struct ScorePair {
  double relevance = 0.0;
  double credibility = 0.0;

  bool operator==(const ScorePair&) const = default;
};

using ScoredRanking = std::vector<ScorePair>;

struct NwcsResult {
  double value = 1.0;
  double wcs = 0.0;
  double ideal = 0.0;
  bool degenerate = false;  // ideal WCS is zero; value set to 1
};

/// Relevance-only and credibility-only measure values to aggregate.
struct AggregationInput {
  double relevance = 0.0;
  double credibility = 0.0;
};

namespace detail {

inline void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ArgumentError("lambda must lie in [0,1]");
}

inline double combined(const ScorePair& p, double lambda) {
  return lambda * p.relevance + (1.0 - lambda) * p.credibility;
}

}  // namespace detail

/// Scores taken directly from the unit's grades.
inline ScoredRanking scored_ranking(const EvalUnit& unit) {
  ScoredRanking out;
  out.reserve(unit.size());
  for (const auto& e : unit.entries()) {
    out.push_back({static_cast<double>(e.relevance), static_cast<double>(e.credibility)});
  }
  return out;
}

inline double wcs(std::span<const ScorePair> ranking, double lambda) {
  detail::check_lambda(lambda);
  double sum = 0.0;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    sum += detail::combined(ranking[i], lambda) * rank_discount(i + 1);
  }
  return sum;
}

/// WCS of the same documents reordered by combined score, descending. The
/// discount is strictly decreasing, so this order maximizes WCS.
inline double iwcs(std::span<const ScorePair> ranking, double lambda) {
  detail::check_lambda(lambda);
  ScoredRanking ideal(ranking.begin(), ranking.end());
  std::stable_sort(ideal.begin(), ideal.end(), [lambda](const ScorePair& a, const ScorePair& b) {
    return detail::combined(a, lambda) > detail::combined(b, lambda);
  });
  return wcs(ideal, lambda);
}

inline NwcsResult nwcs(std::span<const ScorePair> ranking, double lambda) {
  NwcsResult r;
  r.wcs = wcs(ranking, lambda);
  r.ideal = iwcs(ranking, lambda);
  if (r.ideal == 0.0) {
    r.value = 1.0;
    r.degenerate = true;
  } else {
    r.value = r.wcs / r.ideal;
  }
  return r;
}

inline NwcsResult nwcs(const EvalUnit& unit, const MeasureConfig& config) {
  return nwcs(scored_ranking(unit), config.lambda);
}

inline double cam(AggregationInput m, double lambda) {
  detail::check_lambda(lambda);
  return lambda * m.relevance + (1.0 - lambda) * m.credibility;
}

/// Weighted harmonic mean; zero when either input is zero.
inline double wham(AggregationInput m, double lambda) {
  detail::check_lambda(lambda);
  if (m.relevance == 0.0 || m.credibility == 0.0) return 0.0;
  return 1.0 / (lambda / m.relevance + (1.0 - lambda) / m.credibility);
}

}  // namespace credeval
