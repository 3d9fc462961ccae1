#include "forest/transversal.hpp"

#include <algorithm>

namespace forest {

int max_conflict_degree(const TransversalProblem& p) {
  std::size_t best = 0;
  for (const auto& a : p.conflicts) best = std::max(best, a.size());
  return static_cast<int>(best);
}

bool is_independent_transversal(const TransversalProblem& p, const std::vector<int>& pick) {
  if (pick.size() != p.parts.size()) return false;
  std::vector<char> chosen(p.conflicts.size(), 0);
  for (std::size_t i = 0; i < pick.size(); ++i) {
    if (std::find(p.parts[i].begin(), p.parts[i].end(), pick[i]) == p.parts[i].end()) return false;
    chosen[static_cast<std::size_t>(pick[i])] = 1;
  }
  for (int x : pick)
    for (int y : p.conflicts[static_cast<std::size_t>(x)])
      if (chosen[static_cast<std::size_t>(y)]) return false;
  return true;
}

namespace {

bool backtrack(const TransversalProblem& p, std::size_t part, std::vector<int>& pick,
               std::vector<int>& blockedBy, long& budget) {
  if (part == p.parts.size()) return true;
  for (int cand : p.parts[part]) {
    if (--budget < 0) return false;
    if (blockedBy[static_cast<std::size_t>(cand)] > 0) continue;
    pick[part] = cand;
    for (int y : p.conflicts[static_cast<std::size_t>(cand)]) ++blockedBy[static_cast<std::size_t>(y)];
    if (backtrack(p, part + 1, pick, blockedBy, budget)) return true;
    for (int y : p.conflicts[static_cast<std::size_t>(cand)]) --blockedBy[static_cast<std::size_t>(y)];
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_independent_transversal(const TransversalProblem& p, Rng& rng,
                                                             long maxSteps) {
  const std::size_t k = p.parts.size();
  for (const auto& part : p.parts)
    if (part.empty()) return std::nullopt;
  std::vector<int> partOf(p.conflicts.size(), -1);
  for (std::size_t i = 0; i < k; ++i)
    for (int c : p.parts[i]) partOf[static_cast<std::size_t>(c)] = static_cast<int>(i);

  if (k <= 20) {
    std::vector<int> pick(k, -1);
    std::vector<int> blockedBy(p.conflicts.size(), 0);
    long budget = maxSteps;
    if (backtrack(p, 0, pick, blockedBy, budget)) return pick;
    if (budget >= 0) return std::nullopt;  // search was exhaustive
  }

  std::vector<int> pick(k);
  std::vector<char> chosen(p.conflicts.size(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    pick[i] = p.parts[i][below(rng, p.parts[i].size())];
    chosen[static_cast<std::size_t>(pick[i])] = 1;
  }
  // Parts whose pick currently conflicts; rescanned lazily.
  std::vector<std::size_t> dirty(k);
  for (std::size_t i = 0; i < k; ++i) dirty[i] = i;
  long steps = 0;
  while (!dirty.empty()) {
    std::size_t i = dirty.back();
    dirty.pop_back();
    int x = pick[i];
    int clash = -1;
    for (int y : p.conflicts[static_cast<std::size_t>(x)])
      if (chosen[static_cast<std::size_t>(y)]) {
        clash = y;
        break;
      }
    if (clash < 0) continue;
    if (++steps > maxSteps) return std::nullopt;
    // Redraw one side of the violated conflict.
    std::size_t j = coin(rng) ? i : static_cast<std::size_t>(partOf[static_cast<std::size_t>(clash)]);
    chosen[static_cast<std::size_t>(pick[j])] = 0;
    pick[j] = p.parts[j][below(rng, p.parts[j].size())];
    chosen[static_cast<std::size_t>(pick[j])] = 1;
    dirty.push_back(i);
    if (j != i) dirty.push_back(j);
    for (int y : p.conflicts[static_cast<std::size_t>(pick[j])])
      if (chosen[static_cast<std::size_t>(y)])
        dirty.push_back(static_cast<std::size_t>(partOf[static_cast<std::size_t>(y)]));
  }
  if (!is_independent_transversal(p, pick)) return std::nullopt;
  return pick;
}

}  // namespace forest
