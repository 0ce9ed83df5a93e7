#pragma once

// Rank-position measures: Local Rank Error (NLRE) and Global Rank Error (NGRE).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "credeval/core.hpp"
#include "credeval/rank_errors.hpp"

namespace credeval {

struct TypeIResult {
  double raw_error = 0.0;   // LRE or GRE
  double normalizer = 1.0;  // C_LRE or C_GRE; left at 1 for single-doc lists
  double score = 1.0;       // NLRE or NGRE, in [0,1]
  bool clamped = false;     // score had to be pulled back into [0,1]
};

namespace detail {

inline void check_weights(double mu, double nu) {
  if (!(mu >= 0.0) || !(nu >= 0.0) || !(mu + nu > 0.0)) {
    throw ArgumentError("mu, nu must be non-negative with mu + nu > 0");
  }
}

inline void check_same_length(const ErrorVector& err_r, const ErrorVector& err_c) {
  if (err_r.size() != err_c.size()) {
    throw StructuralError("relevance and credibility error vectors differ in length (" +
                          std::to_string(err_r.size()) + " vs " +
                          std::to_string(err_c.size()) + ")");
  }
}

inline TypeIResult normalize(double raw, double normalizer) {
  TypeIResult r;
  r.raw_error = raw;
  r.normalizer = normalizer;
  const double score = 1.0 - raw / normalizer;
  r.score = std::clamp(score, 0.0, 1.0);
  r.clamped = r.score != score;
  return r;
}

/// sum_{j=0}^{floor(n/2 - 1)} f(n - 2j - 1) / (1 + log2(1 + j))
template <class F>
double alternating_sum(std::size_t n, F term) {
  double sum = 0.0;
  // floor(n/2 - 1) == n/2 - 1 in integer arithmetic for n >= 2
  const std::size_t upper = n / 2 - 1;
  for (std::size_t j = 0; j <= upper; ++j) {
    const double span = static_cast<double>(n - 2 * j - 1);
    sum += term(span) / (1.0 + std::log2(1.0 + static_cast<double>(j)));
  }
  return sum;
}

inline void check_normalizable(std::size_t n) {
  if (n < 2) throw ArgumentError("normalization constant needs n >= 2");
}

}  // namespace detail

/// Per-position LRE penalty before discounting.
inline double local_penalty(double err_r, double err_c, double mu, double nu) {
  return (mu + err_r) * (nu + err_c) - mu * nu;
}

inline double lre(const ErrorVector& err_r, const ErrorVector& err_c, double mu, double nu) {
  detail::check_weights(mu, nu);
  detail::check_same_length(err_r, err_c);
  double sum = 0.0;
  for (std::size_t i = 0; i < err_r.size(); ++i) {
    sum += rank_discount(i + 1) *
           local_penalty(static_cast<double>(err_r[i]), static_cast<double>(err_c[i]), mu, nu);
  }
  return sum;
}

inline double c_lre(std::size_t n, double mu, double nu) {
  detail::check_normalizable(n);
  return detail::alternating_sum(n, [&](double s) { return s * s + (mu + nu) * s; });
}

inline double gre(const ErrorVector& err_r, const ErrorVector& err_c, double mu, double nu) {
  detail::check_weights(mu, nu);
  detail::check_same_length(err_r, err_c);
  if (err_r.empty()) return 0.0;
  double rel = 0.0;
  double cred = 0.0;
  for (std::size_t i = 0; i < err_r.size(); ++i) {
    rel += rank_discount(i + 1) * static_cast<double>(err_r[i]);
    cred += rank_discount(i + 1) * static_cast<double>(err_c[i]);
  }
  return (1.0 + mu * rel) * (1.0 + nu * cred) - 1.0;
}

inline double c_gre(std::size_t n, double mu, double nu) {
  detail::check_normalizable(n);
  const double s = detail::alternating_sum(n, [](double v) { return v; });
  return mu * nu * s * s + (mu + nu) * s;
}

inline TypeIResult nlre(const ErrorVector& err_r, const ErrorVector& err_c, double mu,
                        double nu) {
  const double raw = lre(err_r, err_c, mu, nu);
  if (err_r.empty()) return TypeIResult{};
  return detail::normalize(raw, c_lre(err_r.size() + 1, mu, nu));
}

inline TypeIResult ngre(const ErrorVector& err_r, const ErrorVector& err_c, double mu,
                        double nu) {
  const double raw = gre(err_r, err_c, mu, nu);
  if (err_r.empty()) return TypeIResult{};
  return detail::normalize(raw, c_gre(err_r.size() + 1, mu, nu));
}

/// NLRE computed from per-document relevance and credibility scores.
inline TypeIResult nlre(std::span<const double> relevance, std::span<const double> credibility,
                        double mu, double nu) {
  return nlre(adjacent_errors(ideal_ranks(relevance)), adjacent_errors(ideal_ranks(credibility)),
              mu, nu);
}

inline TypeIResult ngre(std::span<const double> relevance, std::span<const double> credibility,
                        double mu, double nu) {
  return ngre(adjacent_errors(ideal_ranks(relevance)), adjacent_errors(ideal_ranks(credibility)),
              mu, nu);
}

inline TypeIResult nlre(const EvalUnit& unit, const MeasureConfig& config) {
  return nlre(pairwise_errors(unit, Dimension::relevance),
              pairwise_errors(unit, Dimension::credibility), config.mu, config.nu);
}

inline TypeIResult ngre(const EvalUnit& unit, const MeasureConfig& config) {
  return ngre(pairwise_errors(unit, Dimension::relevance),
              pairwise_errors(unit, Dimension::credibility), config.mu, config.nu);
}

}  // namespace credeval
