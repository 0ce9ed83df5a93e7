#pragma once

// Exhaustive search for the largest LRE / GRE over every pair of ideal
// relevance and credibility orderings of a fixed input ranking. Used to
// check the closed-form normalization constants.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "credeval/core.hpp"
#include "credeval/rank_errors.hpp"
#include "credeval/type_one.hpp"

namespace credeval {

struct OracleWitness {
  std::vector<std::size_t> relevance_positions;    // ideal position of input rank i+1
  std::vector<std::size_t> credibility_positions;
};

struct OracleResult {
  std::size_t n = 0;
  double max_lre = 0.0;
  OracleWitness lre_witness;
  double max_gre = 0.0;
  OracleWitness gre_witness;
};

inline constexpr std::size_t kOracleMaxN = 7;

inline OracleResult oracle_max_error(std::size_t n, double mu, double nu) {
  if (n < 2 || n > kOracleMaxN) {
    throw ArgumentError("oracle supports 2 <= n <= " + std::to_string(kOracleMaxN) + ", got " +
                        std::to_string(n));
  }
  std::vector<std::vector<std::size_t>> perms;
  std::vector<ErrorVector> errors;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{1});
  do {
    perms.push_back(p);
    errors.push_back(adjacent_errors(p));
  } while (std::next_permutation(p.begin(), p.end()));

  OracleResult best;
  best.n = n;
  best.max_lre = -1.0;
  best.max_gre = -1.0;
  for (std::size_t r = 0; r < perms.size(); ++r) {
    for (std::size_t c = 0; c < perms.size(); ++c) {
      const double l = lre(errors[r], errors[c], mu, nu);
      if (l > best.max_lre) {
        best.max_lre = l;
        best.lre_witness = {perms[r], perms[c]};
      }
      const double g = gre(errors[r], errors[c], mu, nu);
      if (g > best.max_gre) {
        best.max_gre = g;
        best.gre_witness = {perms[r], perms[c]};
      }
    }
  }
  return best;
}

}  // namespace credeval
