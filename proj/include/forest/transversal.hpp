#pragma once

#include <optional>
#include <vector>

#include "forest/random.hpp"

namespace forest {

// Parts partition a set of candidates 0..k-1; `conflicts` is a symmetric
// adjacency list over candidates. A transversal picks one candidate per part
// with no two picks adjacent.
struct TransversalProblem {
  std::vector<std::vector<int>> parts;
  std::vector<std::vector<int>> conflicts;
};

int max_conflict_degree(const TransversalProblem& p);

// Resampling local search (pick, then repeatedly redraw one endpoint of a
// violated conflict), with exhaustive backtracking when there are at most
// 20 parts. Returns the chosen candidate per part.
std::optional<std::vector<int>> find_independent_transversal(const TransversalProblem& p, Rng& rng,
                                                             long maxSteps = 2'000'000);

bool is_independent_transversal(const TransversalProblem& p, const std::vector<int>& pick);

}  // namespace forest
