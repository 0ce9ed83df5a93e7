#pragma once

// Spearman rank correlation (average ranks for ties) and report pairing.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "credeval/core.hpp"
#include "credeval/evaluate.hpp"
#include "credeval/io.hpp"

namespace credeval {

/// 1-based ranks, ascending; tied values share the mean of their ranks.
inline std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = mean_rank;
    i = j;
  }
  return ranks;
}

/// Pearson correlation of average ranks. Empty when lengths differ, fewer
/// than two points are given, or either side has no variance.
inline std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double cov = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    cov += (rx[i] - mx) * (ry[i] - my);
    vx += (rx[i] - mx) * (rx[i] - mx);
    vy += (ry[i] - my) * (ry[i] - my);
  }
  if (vx == 0.0 || vy == 0.0) return std::nullopt;
  return std::clamp(cov / std::sqrt(vx * vy), -1.0, 1.0);
}

/// Paired values of two measures taken from the unit rows of a report.
/// query_mean first averages each measure per query.
inline std::pair<std::vector<double>, std::vector<double>> paired_values(
    const EvalReport& report, const std::string& x, const std::string& y,
    Granularity granularity) {
  using Key = std::pair<std::string, std::string>;
  std::map<Key, double> xs;
  std::map<Key, double> ys;
  for (const auto& r : report.rows) {
    if (r.query == kAll || r.assessor == kAll) continue;
    if (r.measure == x) xs[{r.query, r.assessor}] = r.value;
    if (r.measure == y) ys[{r.query, r.assessor}] = r.value;
  }
  if (granularity == Granularity::query_mean) {
    std::map<Key, std::pair<double, double>> sums;  // keyed by (query, "")
    std::map<Key, std::size_t> counts;
    for (const auto& [key, vx] : xs) {
      auto it = ys.find(key);
      if (it == ys.end()) continue;
      auto& s = sums[{key.first, ""}];
      s.first += vx;
      s.second += it->second;
      ++counts[{key.first, ""}];
    }
    xs.clear();
    ys.clear();
    for (const auto& [key, s] : sums) {
      const double c = static_cast<double>(counts[key]);
      xs[key] = s.first / c;
      ys[key] = s.second / c;
    }
  }
  std::pair<std::vector<double>, std::vector<double>> out;
  for (const auto& [key, vx] : xs) {
    auto it = ys.find(key);
    if (it == ys.end()) continue;
    out.first.push_back(vx);
    out.second.push_back(it->second);
  }
  return out;
}

inline std::optional<double> correlate(const EvalReport& report, const std::string& x,
                                       const std::string& y,
                                       Granularity granularity = Granularity::query_mean) {
  const auto [xs, ys] = paired_values(report, x, y, granularity);
  return spearman(xs, ys);
}

}  // namespace credeval
