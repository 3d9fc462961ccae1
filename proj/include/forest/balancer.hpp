#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "forest/colouring.hpp"
#include "forest/config.hpp"
#include "forest/gadget.hpp"
#include "forest/graph.hpp"

namespace forest {

// A stage could not reach its target; `stage` names it for diagnostics.
class BalanceError : public std::runtime_error {
 public:
  BalanceError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Surplus monochromatic paths of length >= threshold (those without a
// partner of the other colour and the same length) are cut by flipping one
// interior edge per segment. A flip merges the two opposite-colour paths at
// its ends, so it is only allowed when they are distinct and the merged path
// stays short; flips touching a common opposite path or sharing a vertex
// conflict, and an independent transversal picks one flip per segment.
struct SegmentPlan {
  std::vector<std::vector<EdgeId>> segments;
  std::vector<std::vector<EdgeId>> candidates;  // per segment
  std::vector<EdgeId> chosen;                   // per segment
  int maxConflictDegree = 0;
};

struct StageResult {
  Colouring chi;
  int edits = 0;
  std::vector<SegmentPlan> plans;  // one per colour cut (long-path stage only)
};

StageResult balance_long_paths(const Colouring& chi, const Config& cfg);

// Flips (x_r - x_b) / 2 interior edges of the colour in surplus. Throws
// BalanceError "odd total imbalance" when the difference is odd and when too
// few independent flip sites exist.
StageResult balance_edge_counts(const Colouring& chi, const Config& cfg);

// Descends from the longest path length to 3, making r(P_t) = b(P_t) with
// two-edge colour swaps that leave every longer level and the edge counts
// untouched. Surviving registry gadgets are tried first at their length.
struct LadderLevel {
  int length = 0;
  std::int64_t imbalance = 0;  // r - b on entry
  int moves = 0;
  int gadgetMoves = 0;
};
struct LadderResult {
  Colouring chi;
  std::vector<LadderLevel> levels;
  int edits = 0;
};
LadderResult gadget_ladder(const Colouring& chi, const std::vector<GadgetInstance>& registry,
                           const Config& cfg);

struct Certificate {
  bool success = false;
  bool isomorphic = false;
  std::string route;    // "pipeline" or "oracle"
  std::string failure;  // stage and reason when unsuccessful
  std::uint64_t seed = 0;
  int attempts = 0;
  int gadgets = 0;
  std::map<std::string, int> edits;  // per stage
  ComponentProfile profile;

  std::string to_text() const;
  static Certificate from_text(const std::string& text);
};

// Requires r(P_t) = b(P_t) for t >= 3 and equal edge counts (throws
// std::invalid_argument otherwise); measures P_1 and P_2 directly.
Certificate assert_final_balance(const Colouring& chi);

struct ExactRun {
  Colouring chi;
  Certificate certificate;
};

// The whole construction with retries. Hosts with at most 30 edges fall back
// to exhaustive search when the pipeline fails. Never throws for a valid
// connected cubic graph; the certificate carries the outcome.
ExactRun run_exact(const CubicGraph& g, const Config& cfg, std::uint64_t seed);

}  // namespace forest
