#pragma once

// Judged-ranking data model shared by every measure.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace credeval {

/// Input violates a structural invariant (duplicate doc, empty list, length mismatch).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested key does not exist.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Argument outside a function's domain (cutoff out of range, n too large, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid measure configuration or measure name.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Dimension { relevance, credibility };

enum class Gain { linear, exponential };

inline const char* to_string(Dimension d) {
  return d == Dimension::relevance ? "relevance" : "credibility";
}

/// A graded assessment on the 1..4 scale.
class Grade {
 public:
  static constexpr int kMin = 1;
  static constexpr int kMax = 4;

  constexpr explicit Grade(int value) : value_(value) {
    if (value < kMin || value > kMax) {
      throw std::out_of_range("grade " + std::to_string(value) +
                              " outside the 1..4 scale");
    }
  }

  constexpr int value() const noexcept { return value_; }

  friend constexpr bool operator==(Grade, Grade) = default;
  friend constexpr auto operator<=>(Grade, Grade) = default;

 private:
  int value_;
};

struct Judgment {
  std::string query_id;
  std::string assessor_id;
  std::string doc_id;
  Grade relevance{Grade::kMin};
  Grade credibility{Grade::kMin};

  bool operator==(const Judgment&) const = default;
};

struct RankedList {
  std::string query_id;
  std::string assessor_id;
  std::vector<std::string> docs;  // docs[0] is rank 1

  bool operator==(const RankedList&) const = default;
};

/// Judgments keyed by (query, assessor, doc); the key is unique.
class JudgmentSet {
 public:
  JudgmentSet() = default;

  template <class Range>
  explicit JudgmentSet(const Range& judgments) {
    for (const auto& j : judgments) add(j);
  }

  JudgmentSet(std::initializer_list<Judgment> judgments) {
    for (const auto& j : judgments) add(j);
  }

  void add(Judgment j) {
    auto key = std::make_tuple(j.query_id, j.assessor_id, j.doc_id);
    if (judgments_.contains(key)) {
      throw StructuralError("duplicate judgment for query '" + j.query_id +
                            "', assessor '" + j.assessor_id + "', doc '" +
                            j.doc_id + "'");
    }
    judgments_.emplace(std::move(key), std::move(j));
  }

  const Judgment* find(const std::string& query, const std::string& assessor,
                       const std::string& doc) const {
    auto it = judgments_.find(std::make_tuple(query, assessor, doc));
    return it == judgments_.end() ? nullptr : &it->second;
  }

  /// All judgments of one (query, assessor) pair, ordered by doc id.
  std::vector<Judgment> pool(const std::string& query,
                             const std::string& assessor) const {
    std::vector<Judgment> out;
    auto it = judgments_.lower_bound(std::make_tuple(query, assessor, std::string{}));
    for (; it != judgments_.end(); ++it) {
      const auto& [q, a, d] = it->first;
      if (q != query || a != assessor) break;
      out.push_back(it->second);
    }
    return out;
  }

  std::size_t size() const noexcept { return judgments_.size(); }

  bool operator==(const JudgmentSet&) const = default;

 private:
  std::map<std::tuple<std::string, std::string, std::string>, Judgment> judgments_;
};

/// Parameters shared by all measures. Defaults follow the published setup.
struct MeasureConfig {
  double mu = 0.5;
  double nu = 0.5;
  double lambda = 0.5;
  std::size_t cutoff_k = 5;
  int binary_threshold = 3;
  int unjudged_grade = 0;  // 0 or a value on the grade scale
  Gain gain = Gain::linear;

  void validate() const {
    if (!(mu >= 0.0) || !(nu >= 0.0)) throw ConfigError("mu and nu must be non-negative");
    if (!(mu + nu > 0.0)) throw ConfigError("mu + nu must be positive");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in [0,1]");
    if (cutoff_k < 1) throw ConfigError("cutoff k must be positive");
    if (unjudged_grade < 0 || unjudged_grade > Grade::kMax) {
      throw ConfigError("unjudged grade must be 0 or on the 1..4 scale");
    }
  }
};

/// One ranked document with its resolved grades. Unjudged documents carry the
/// unit's unjudged grade (0 by default).
struct UnitEntry {
  std::string doc_id;
  int relevance = 0;
  int credibility = 0;
  bool judged = false;

  int grade(Dimension d) const noexcept {
    return d == Dimension::relevance ? relevance : credibility;
  }

  bool operator==(const UnitEntry&) const = default;
};

/// A (query, assessor) ranked list joined with its judgments.
class EvalUnit {
 public:
  const std::string& query_id() const noexcept { return query_id_; }
  const std::string& assessor_id() const noexcept { return assessor_id_; }
  const std::vector<UnitEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  int unjudged_grade() const noexcept { return unjudged_grade_; }

  /// Every judgment of this (query, assessor), including docs not in the list.
  const std::vector<Judgment>& pool() const noexcept { return pool_; }

  RankedList ranked_list() const {
    RankedList list{query_id_, assessor_id_, {}};
    list.docs.reserve(entries_.size());
    for (const auto& e : entries_) list.docs.push_back(e.doc_id);
    return list;
  }

  JudgmentSet judgments() const { return JudgmentSet(pool_); }

  /// Grades of the ranked docs along one dimension, in rank order.
  std::vector<double> grades(Dimension d) const {
    std::vector<double> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(static_cast<double>(e.grade(d)));
    return out;
  }

  bool operator==(const EvalUnit&) const = default;

 private:
  friend EvalUnit validate_unit(const RankedList&, const JudgmentSet&, int);

  std::string query_id_;
  std::string assessor_id_;
  std::vector<UnitEntry> entries_;
  std::vector<Judgment> pool_;
  int unjudged_grade_ = 0;
};

/// Joins a ranked list with its judgments. Unjudged docs receive
/// `unjudged_grade` in both dimensions.
inline EvalUnit validate_unit(const RankedList& list, const JudgmentSet& judgments,
                              int unjudged_grade = 0) {
  if (list.docs.empty()) {
    throw StructuralError("empty ranked list for query '" + list.query_id +
                          "', assessor '" + list.assessor_id + "'");
  }
  if (unjudged_grade < 0 || unjudged_grade > Grade::kMax) {
    throw ConfigError("unjudged grade must be 0 or on the 1..4 scale");
  }
  std::set<std::string> seen;
  EvalUnit unit;
  unit.query_id_ = list.query_id;
  unit.assessor_id_ = list.assessor_id;
  unit.unjudged_grade_ = unjudged_grade;
  unit.entries_.reserve(list.docs.size());
  for (const auto& doc : list.docs) {
    if (!seen.insert(doc).second) {
      throw StructuralError("duplicate doc '" + doc + "' in ranked list for query '" +
                            list.query_id + "', assessor '" + list.assessor_id + "'");
    }
    const Judgment* j = judgments.find(list.query_id, list.assessor_id, doc);
    if (j != nullptr) {
      unit.entries_.push_back({doc, j->relevance.value(), j->credibility.value(), true});
    } else {
      unit.entries_.push_back({doc, unjudged_grade, unjudged_grade, false});
    }
  }
  unit.pool_ = judgments.pool(list.query_id, list.assessor_id);
  return unit;
}

inline EvalUnit validate_unit(const EvalUnit& unit) {
  return validate_unit(unit.ranked_list(), unit.judgments(), unit.unjudged_grade());
}

inline int grade_of(const EvalUnit& unit, const std::string& doc_id, Dimension d) {
  const auto& entries = unit.entries();
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const UnitEntry& e) { return e.doc_id == doc_id; });
  if (it == entries.end()) {
    throw LookupError("doc '" + doc_id + "' is not in the unit for query '" +
                      unit.query_id() + "'");
  }
  return it->grade(d);
}

}  // namespace credeval
