#pragma once

// Measure roster, per-unit evaluation and aggregation into a report.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "credeval/baseline.hpp"
#include "credeval/core.hpp"
#include "credeval/io.hpp"
#include "credeval/type_one.hpp"
#include "credeval/type_two.hpp"

namespace credeval {

enum class MeasureKind {
  nlre,
  ngre,
  nwcs,
  ndcg,
  ap,
  precision,
  mrr,
  bpref,
  recall,
  f1,
  g,
  cam,
  wham,
};

enum class Granularity { unit, query_mean };

/// A single-dimension measure bound to the dimension it reads.
struct BaseMeasure {
  MeasureKind kind = MeasureKind::ndcg;
  Dimension dimension = Dimension::relevance;
  std::optional<std::size_t> cutoff;  // p@N with an explicit N

  bool operator==(const BaseMeasure&) const = default;
};

struct MeasureSpec {
  std::string name;  // as written by the user; used as the report key
  MeasureKind kind = MeasureKind::nlre;
  BaseMeasure base;                  // single-dimension measures
  BaseMeasure relevance_part;        // cam / wham
  BaseMeasure credibility_part;      // cam / wham
};

namespace detail {

inline bool is_joint(MeasureKind k) {
  return k == MeasureKind::nlre || k == MeasureKind::ngre || k == MeasureKind::nwcs ||
         k == MeasureKind::cam || k == MeasureKind::wham;
}

inline Dimension default_dimension(MeasureKind k) {
  return k == MeasureKind::f1 || k == MeasureKind::g ? Dimension::credibility
                                                     : Dimension::relevance;
}

struct ParsedName {
  MeasureKind kind;
  std::optional<std::size_t> cutoff;
  std::optional<Dimension> dimension;
};

inline ParsedName parse_measure_name(std::string_view token) {
  std::string_view name = token;
  std::optional<Dimension> dim;
  if (name.ends_with(".rel")) {
    dim = Dimension::relevance;
    name.remove_suffix(4);
  } else if (name.ends_with(".cred")) {
    dim = Dimension::credibility;
    name.remove_suffix(5);
  }

  static const std::map<std::string_view, MeasureKind> kNames = {
      {"nlre", MeasureKind::nlre}, {"ngre", MeasureKind::ngre},     {"nwcs", MeasureKind::nwcs},
      {"ndcg", MeasureKind::ndcg}, {"ap", MeasureKind::ap},         {"mrr", MeasureKind::mrr},
      {"bpref", MeasureKind::bpref}, {"recall", MeasureKind::recall}, {"f1", MeasureKind::f1},
      {"g", MeasureKind::g},
  };
  if (auto it = kNames.find(name); it != kNames.end()) {
    if (dim && is_joint(it->second)) {
      throw ConfigError("measure '" + std::string(token) + "' already covers both dimensions");
    }
    return {it->second, std::nullopt, dim};
  }
  if (name.starts_with("p@")) {
    const auto k = name.substr(2);
    if (k == "k") return {MeasureKind::precision, std::nullopt, dim};
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(k.data(), k.data() + k.size(), value);
    if (ec == std::errc{} && ptr == k.data() + k.size() && value >= 1) {
      return {MeasureKind::precision, value, dim};
    }
  }
  throw ConfigError("unknown measure '" + std::string(token) + "'");
}

inline BaseMeasure constituent(std::string_view token, Dimension slot, std::string_view spec) {
  const auto parsed = parse_measure_name(token);
  if (is_joint(parsed.kind)) {
    throw ConfigError("'" + std::string(spec) + "': constituent '" + std::string(token) +
                      "' must be a relevance-only or credibility-only measure");
  }
  if (parsed.dimension && *parsed.dimension != slot) {
    throw ConfigError("'" + std::string(spec) + "': constituent '" + std::string(token) +
                      "' must be evaluated on " + to_string(slot));
  }
  return {parsed.kind, slot, parsed.cutoff};
}

}  // namespace detail

/// Parses one measure name: nlre, ngre, nwcs, ndcg, ap, p@k (or p@N), mrr,
/// bpref, recall, f1, g, cam:<rel>+<cred>, wham:<rel>+<cred>. Single-dimension
/// measures accept a ".rel" / ".cred" suffix.
inline MeasureSpec parse_measure_spec(std::string_view token) {
  MeasureSpec spec;
  spec.name = std::string(token);
  for (auto [prefix, kind] : {std::pair{std::string_view("cam:"), MeasureKind::cam},
                              std::pair{std::string_view("wham:"), MeasureKind::wham}}) {
    if (!token.starts_with(prefix)) continue;
    const auto body = token.substr(prefix.size());
    const auto plus = body.find('+');
    if (plus == std::string_view::npos || body.find('+', plus + 1) != std::string_view::npos) {
      throw ConfigError("'" + std::string(token) + "' must have the form " +
                        std::string(prefix) + "<relevance measure>+<credibility measure>");
    }
    spec.kind = kind;
    spec.relevance_part = detail::constituent(body.substr(0, plus), Dimension::relevance, token);
    spec.credibility_part =
        detail::constituent(body.substr(plus + 1), Dimension::credibility, token);
    return spec;
  }
  const auto parsed = detail::parse_measure_name(token);
  spec.kind = parsed.kind;
  spec.base = {parsed.kind, parsed.dimension.value_or(detail::default_dimension(parsed.kind)),
               parsed.cutoff};
  return spec;
}

/// Comma-separated list; the whole list is validated before returning.
inline std::vector<MeasureSpec> parse_measure_list(std::string_view list) {
  std::vector<MeasureSpec> specs;
  std::set<std::string> seen;
  while (true) {
    const auto comma = list.find(',');
    const auto token = list.substr(0, comma);
    if (token.empty()) throw ConfigError("empty measure name in list");
    auto spec = parse_measure_spec(token);
    if (seen.insert(spec.name).second) specs.push_back(std::move(spec));
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return specs;
}

inline MeasureValue evaluate_base(const EvalUnit& unit, const BaseMeasure& m,
                                  const MeasureConfig& config) {
  const std::size_t k = m.cutoff.value_or(config.cutoff_k);
  switch (m.kind) {
    case MeasureKind::ndcg:
      return ndcg(unit.grades(m.dimension), config.gain, k);
    case MeasureKind::ap:
      return average_precision(binary_judged_list(unit, m.dimension, config.binary_threshold));
    case MeasureKind::precision: {
      const auto l = binary_judged_list(unit, m.dimension, config.binary_threshold);
      return {precision_at_k(l, std::min(k, l.size())), false};
    }
    case MeasureKind::mrr:
      return {mrr(binary_judged_list(unit, m.dimension, config.binary_threshold)), false};
    case MeasureKind::bpref:
      return bpref(binary_judged_list(unit, m.dimension, config.binary_threshold));
    case MeasureKind::recall:
      return recall_at_k(binary_judged_list(unit, m.dimension, config.binary_threshold), k);
    case MeasureKind::f1:
      return f1(confusion_counts(unit, m.dimension, config.binary_threshold, k));
    case MeasureKind::g:
      return g_measure(confusion_counts(unit, m.dimension, config.binary_threshold, k));
    default:
      throw ConfigError("not a single-dimension measure");
  }
}

/// Value of one measure on one unit, with a flag for degenerate or clamped cases.
inline MeasureValue evaluate_measure(const EvalUnit& unit, const MeasureSpec& spec,
                                     const MeasureConfig& config) {
  switch (spec.kind) {
    case MeasureKind::nlre: {
      const auto r = nlre(unit, config);
      return {r.score, r.clamped};
    }
    case MeasureKind::ngre: {
      const auto r = ngre(unit, config);
      return {r.score, r.clamped};
    }
    case MeasureKind::nwcs: {
      const auto r = nwcs(unit, config);
      return {r.value, r.degenerate};
    }
    case MeasureKind::cam:
    case MeasureKind::wham: {
      const auto rel = evaluate_base(unit, spec.relevance_part, config);
      const auto cred = evaluate_base(unit, spec.credibility_part, config);
      const AggregationInput in{rel.value, cred.value};
      const double v =
          spec.kind == MeasureKind::cam ? cam(in, config.lambda) : wham(in, config.lambda);
      return {v, rel.degenerate || cred.degenerate};
    }
    default:
      return evaluate_base(unit, spec.base, config);
  }
}

/// Evaluates every measure on every unit, then appends one mean row per
/// measure ("all", "all"). With query_mean granularity, per-query means over
/// assessors ("<query>", "all") are appended as well.
inline EvalReport evaluate(std::span<const EvalUnit> units, std::span<const MeasureSpec> specs,
                           const MeasureConfig& config,
                           Granularity granularity = Granularity::unit) {
  config.validate();
  for (const auto& unit : units) {
    if (unit.query_id() == kAll || unit.assessor_id() == kAll) {
      throw ConfigError("'all' is reserved for aggregate rows and cannot be a query or assessor id");
    }
  }
  EvalReport report;
  for (const auto& spec : specs) {
    std::vector<ReportRow> unit_rows;
    unit_rows.reserve(units.size());
    for (const auto& unit : units) {
      const auto v = evaluate_measure(unit, spec, config);
      if (v.degenerate) {
        report.warnings.push_back(spec.name + ": degenerate value for query '" +
                                  unit.query_id() + "', assessor '" + unit.assessor_id() + "'");
      }
      unit_rows.push_back({spec.name, unit.query_id(), unit.assessor_id(), v.value});
    }
    sort_rows(unit_rows);
    if (!unit_rows.empty()) {
      double sum = 0.0;
      for (const auto& r : unit_rows) sum += r.value;
      report.rows.push_back({spec.name, std::string(kAll), std::string(kAll),
                             sum / static_cast<double>(unit_rows.size())});
    }
    if (granularity == Granularity::query_mean) {
      std::map<std::string, std::pair<double, std::size_t>> by_query;
      for (const auto& r : unit_rows) {
        auto& [sum, count] = by_query[r.query];
        sum += r.value;
        ++count;
      }
      for (const auto& [query, acc] : by_query) {
        report.rows.push_back(
            {spec.name, query, std::string(kAll), acc.first / static_cast<double>(acc.second)});
      }
    }
    report.rows.insert(report.rows.end(), unit_rows.begin(), unit_rows.end());
  }
  sort_rows(report.rows);
  return report;
}

}  // namespace credeval
