#pragma once

// Ideal rank positions and the adjacent-pair rank errors behind NLRE/NGRE.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <map>
#include <numeric>
#include <ranges>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "credeval/core.hpp"

namespace credeval {

/// Truncated subtraction: a - b when a > b, otherwise 0.
template <class T>
  requires std::is_arithmetic_v<T>
constexpr T monus(T a, T b) noexcept {
  return a > b ? static_cast<T>(a - b) : T{0};
}

/// 1 / log2(1 + rank) for a 1-based rank.
inline double rank_discount(std::size_t rank) {
  return 1.0 / std::log2(1.0 + static_cast<double>(rank));
}

/// Per-position rank errors; entry i covers input ranks (i+1, i+2).
struct ErrorVector {
  std::vector<std::size_t> values;

  std::size_t size() const noexcept { return values.size(); }
  bool empty() const noexcept { return values.empty(); }
  bool all_zero() const noexcept {
    return std::all_of(values.begin(), values.end(), [](std::size_t v) { return v == 0; });
  }
  std::size_t operator[](std::size_t i) const { return values[i]; }

  bool operator==(const ErrorVector&) const = default;
};

/// 1-based position of every input item in the stable descending order of
/// `scores`. Equal scores keep their input order.
template <std::ranges::random_access_range R>
  requires std::is_arithmetic_v<std::ranges::range_value_t<R>>
std::vector<std::size_t> ideal_ranks(const R& scores) {
  const auto n = static_cast<std::size_t>(std::ranges::size(scores));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  std::vector<std::size_t> position(n);
  for (std::size_t rank = 0; rank < n; ++rank) position[order[rank]] = rank + 1;
  return position;
}

/// Errors between adjacent input ranks given each item's ideal position.
inline ErrorVector adjacent_errors(std::span<const std::size_t> positions) {
  ErrorVector err;
  if (positions.size() < 2) return err;
  err.values.reserve(positions.size() - 1);
  for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
    err.values.push_back(monus(positions[i], positions[i + 1]));
  }
  return err;
}

/// Ideal ordering of a unit's docs along one dimension.
class IdealPositions {
 public:
  IdealPositions(Dimension dimension, std::map<std::string, std::size_t> position_of)
      : dimension_(dimension), position_of_(std::move(position_of)) {}

  Dimension dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return position_of_.size(); }

  std::size_t position_of(const std::string& doc_id) const {
    auto it = position_of_.find(doc_id);
    if (it == position_of_.end()) {
      throw LookupError("doc '" + doc_id + "' has no ideal position");
    }
    return it->second;
  }

  bool contains(const std::string& doc_id) const { return position_of_.contains(doc_id); }

  bool operator==(const IdealPositions&) const = default;

 private:
  Dimension dimension_;
  std::map<std::string, std::size_t> position_of_;
};

inline IdealPositions ideal_positions(const EvalUnit& unit, Dimension d) {
  const auto positions = ideal_ranks(unit.grades(d));
  std::map<std::string, std::size_t> position_of;
  for (std::size_t i = 0; i < unit.size(); ++i) {
    position_of.emplace(unit.entries()[i].doc_id, positions[i]);
  }
  return IdealPositions(d, std::move(position_of));
}

inline ErrorVector pairwise_errors(const IdealPositions& ideal, const RankedList& list) {
  if (ideal.size() != list.docs.size()) {
    throw StructuralError("ideal ranking covers " + std::to_string(ideal.size()) +
                          " docs but the list has " + std::to_string(list.docs.size()));
  }
  std::vector<std::size_t> positions;
  positions.reserve(list.docs.size());
  for (const auto& doc : list.docs) {
    if (!ideal.contains(doc)) {
      throw StructuralError("doc '" + doc + "' is missing from the ideal ranking");
    }
    positions.push_back(ideal.position_of(doc));
  }
  return adjacent_errors(positions);
}

inline ErrorVector pairwise_errors(const EvalUnit& unit, Dimension d) {
  return adjacent_errors(ideal_ranks(unit.grades(d)));
}

}  // namespace credeval
