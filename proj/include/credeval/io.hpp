#pragma once

// Text formats: assessed-ranking files, TREC-style run + qrels, and
// evaluation reports (TSV / JSON).
//
// Assessed rankings, one judged ranked document per line:
//   query_id assessor_id rank doc_id relevance credibility
// Run lines:   query_id Q0 doc_id rank score tag
// Qrels lines: query_id assessor_id doc_id relevance credibility
// Fields are separated by any run of spaces/tabs; '#' starts a comment line.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "credeval/core.hpp"

namespace credeval {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ParsedUnits {
  std::vector<EvalUnit> units;  // ordered by (query, assessor)
  std::vector<std::string> warnings;
};

struct ReportRow {
  std::string measure;
  std::string query;     // or "all"
  std::string assessor;  // or "all"
  double value = 0.0;

  bool operator==(const ReportRow&) const = default;
};

struct EvalReport {
  std::vector<ReportRow> rows;
  std::vector<std::string> warnings;
};

enum class ReportFormat { tsv, json };

inline constexpr std::string_view kAll = "all";
inline constexpr std::string_view kReportHeader = "measure\tquery\tassessor\tvalue";

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string_view> fields;
};

/// Splits text into non-blank, non-comment lines of whitespace-separated
/// fields. Accepts LF and CRLF.
inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    Line out{number, {}};
    std::size_t pos = 0;
    while (pos < line.size()) {
      pos = line.find_first_not_of(" \t", pos);
      if (pos == std::string_view::npos) break;
      auto end = line.find_first_of(" \t", pos);
      if (end == std::string_view::npos) end = line.size();
      out.fields.push_back(line.substr(pos, end - pos));
      pos = end;
    }
    if (out.fields.empty() || out.fields.front().front() == '#') continue;
    lines.push_back(std::move(out));
  }
  return lines;
}

template <class T>
T parse_number(std::string_view field, std::size_t line, const char* what) {
  T value{};
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, std::string(what) + " '" + std::string(field) + "' is not a number");
  }
  return value;
}

inline Grade parse_grade(std::string_view field, std::size_t line, const char* what) {
  const int value = parse_number<int>(field, line, what);
  if (value < Grade::kMin || value > Grade::kMax) {
    throw ParseError(line, std::string(what) + " " + std::to_string(value) +
                               " outside the 1..4 scale");
  }
  return Grade(value);
}

inline void expect_fields(const Line& l, std::size_t n, const char* format) {
  if (l.fields.size() != n) {
    throw ParseError(l.number, std::string("expected ") + std::to_string(n) + " fields (" +
                                   format + "), found " + std::to_string(l.fields.size()));
  }
}

using GroupKey = std::pair<std::string, std::string>;

}  // namespace detail

inline std::vector<EvalUnit> parse_assessed_rankings(std::string_view text) {
  struct Row {
    std::size_t rank;
    std::size_t line;
    std::string doc;
  };
  std::map<detail::GroupKey, std::vector<Row>> groups;
  JudgmentSet judgments;

  for (const auto& l : detail::tokenize(text)) {
    detail::expect_fields(l, 6, "query assessor rank doc relevance credibility");
    std::string query(l.fields[0]);
    std::string assessor(l.fields[1]);
    const auto rank = detail::parse_number<std::size_t>(l.fields[2], l.number, "rank");
    if (rank < 1) throw ParseError(l.number, "rank must be at least 1");
    std::string doc(l.fields[3]);
    const Grade rel = detail::parse_grade(l.fields[4], l.number, "relevance grade");
    const Grade cred = detail::parse_grade(l.fields[5], l.number, "credibility grade");
    if (judgments.find(query, assessor, doc) != nullptr) {
      throw ParseError(l.number, "doc '" + doc + "' appears twice for query '" + query +
                                     "', assessor '" + assessor + "'");
    }
    judgments.add({query, assessor, doc, rel, cred});
    groups[{query, assessor}].push_back({rank, l.number, std::move(doc)});
  }

  std::vector<EvalUnit> units;
  units.reserve(groups.size());
  for (auto& [key, rows] : groups) {
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      return std::tie(a.rank, a.line) < std::tie(b.rank, b.line);
    });
    RankedList list{key.first, key.second, {}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0 && rows[i].rank == rows[i - 1].rank) {
        throw ParseError(rows[i].line, "duplicate rank " + std::to_string(rows[i].rank) +
                                           " for query '" + key.first + "', assessor '" +
                                           key.second + "'");
      }
      if (rows[i].rank != i + 1) {
        throw ParseError(rows[i].line, "ranks for query '" + key.first + "', assessor '" +
                                           key.second + "' are not contiguous: expected " +
                                           std::to_string(i + 1) + ", found " +
                                           std::to_string(rows[i].rank));
      }
      list.docs.push_back(std::move(rows[i].doc));
    }
    units.push_back(validate_unit(list, judgments));
  }
  return units;
}

/// Joins each run ranking with every assessor that judged its query. Run
/// docs without a judgment take `unjudged_grade` and raise a warning.
inline ParsedUnits parse_run_and_qrels(std::string_view run_text, std::string_view qrels_text,
                                       int unjudged_grade = 0) {
  struct RunRow {
    std::size_t rank;
    double score;
    std::string doc;
    std::size_t line;
  };
  std::map<std::string, std::vector<RunRow>> runs;
  for (const auto& l : detail::tokenize(run_text)) {
    detail::expect_fields(l, 6, "query Q0 doc rank score tag");
    const auto rank = detail::parse_number<std::size_t>(l.fields[3], l.number, "rank");
    const auto score = detail::parse_number<double>(l.fields[4], l.number, "score");
    runs[std::string(l.fields[0])].push_back({rank, score, std::string(l.fields[2]), l.number});
  }

  JudgmentSet judgments;
  std::map<std::string, std::set<std::string>> assessors_of;
  for (const auto& l : detail::tokenize(qrels_text)) {
    detail::expect_fields(l, 5, "query assessor doc relevance credibility");
    Judgment j{std::string(l.fields[0]), std::string(l.fields[1]), std::string(l.fields[2]),
               detail::parse_grade(l.fields[3], l.number, "relevance grade"),
               detail::parse_grade(l.fields[4], l.number, "credibility grade")};
    if (judgments.find(j.query_id, j.assessor_id, j.doc_id) != nullptr) {
      throw ParseError(l.number, "duplicate judgment for doc '" + j.doc_id + "'");
    }
    assessors_of[j.query_id].insert(j.assessor_id);
    judgments.add(std::move(j));
  }

  ParsedUnits out;
  for (auto& [query, rows] : runs) {
    std::sort(rows.begin(), rows.end(), [](const RunRow& a, const RunRow& b) {
      if (a.rank != b.rank) return a.rank < b.rank;
      if (a.score != b.score) return a.score > b.score;
      return a.doc < b.doc;
    });
    std::set<std::string> seen;
    for (const auto& r : rows) {
      if (!seen.insert(r.doc).second) {
        throw ParseError(r.line, "doc '" + r.doc + "' retrieved twice for query '" + query + "'");
      }
    }
    auto it = assessors_of.find(query);
    if (it == assessors_of.end()) {
      out.warnings.push_back("query '" + query + "' has no judgments; skipped");
      continue;
    }
    for (const auto& assessor : it->second) {
      RankedList list{query, assessor, {}};
      for (const auto& r : rows) {
        if (judgments.find(query, assessor, r.doc) == nullptr) {
          out.warnings.push_back("doc '" + r.doc + "' for query '" + query + "' unjudged by '" +
                                 assessor + "'; using grade " + std::to_string(unjudged_grade));
        }
        list.docs.push_back(r.doc);
      }
      out.units.push_back(validate_unit(list, judgments, unjudged_grade));
    }
  }
  return out;
}

/// Fixed 4-decimal rendering; exact ties round half to even.
inline std::string format_value(double value) {
  if (!std::isfinite(value)) return value != value ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 4);
  std::string s(buf, ptr);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

inline void sort_rows(std::vector<ReportRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.measure, a.query, a.assessor) < std::tie(b.measure, b.query, b.assessor);
  });
}

inline std::string write_report(const EvalReport& report, ReportFormat format) {
  auto rows = report.rows;
  sort_rows(rows);
  if (format == ReportFormat::tsv) {
    std::string out(kReportHeader);
    out += '\n';
    for (const auto& r : rows) {
      out += r.measure + '\t' + r.query + '\t' + r.assessor + '\t' + format_value(r.value) + '\n';
    }
    return out;
  }
  auto json_rows = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    const auto text = format_value(r.value);
    nlohmann::ordered_json value;
    if (std::isfinite(r.value)) {
      value = std::stod(text);
    }
    json_rows.push_back({{"measure", r.measure},
                         {"query", r.query},
                         {"assessor", r.assessor},
                         {"value", value}});
  }
  nlohmann::ordered_json doc;
  doc["rows"] = std::move(json_rows);
  return doc.dump(2) + '\n';
}

/// Reads a report produced by write_report, in either format.
inline EvalReport parse_report(std::string_view text) {
  EvalReport report;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
      for (const auto& row : doc.at("rows")) {
        const auto& v = row.at("value");
        report.rows.push_back({row.at("measure").get<std::string>(),
                               row.at("query").get<std::string>(),
                               row.at("assessor").get<std::string>(),
                               v.is_null() ? std::nan("") : v.get<double>()});
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(1, std::string("malformed JSON report: ") + e.what());
    }
    return report;
  }
  bool header_seen = false;
  for (const auto& l : detail::tokenize(text)) {
    if (!header_seen) {
      header_seen = true;
      if (l.fields.size() == 4 && l.fields[0] == "measure" && l.fields[3] == "value") continue;
    }
    detail::expect_fields(l, 4, "measure query assessor value");
    report.rows.push_back({std::string(l.fields[0]), std::string(l.fields[1]),
                           std::string(l.fields[2]),
                           detail::parse_number<double>(l.fields[3], l.number, "value")});
  }
  return report;
}

}  // namespace credeval
