#pragma once

#include <string>
#include <vector>

#include "forest/colouring.hpp"
#include "forest/config.hpp"
#include "forest/graph.hpp"

namespace forest {

// Connected components of the coloured subgraph (both colours together).
struct ColouredComponent {
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;
};
std::vector<ColouredComponent> coloured_components(const Colouring& chi);

// Minimum host distance between two distinct coloured components; -1 when
// there are fewer than two. Optionally reports a closest pair.
int min_component_distance(const Graph& g, const std::vector<ColouredComponent>& comps,
                           Vertex* from = nullptr, Vertex* to = nullptr);

// Cycles using one colour plus uncoloured edges, at least one coloured edge,
// and no two consecutive uncoloured edges. Each cycle is listed once, as a
// vertex sequence starting at the lower end of its smallest coloured edge.
// Enumeration stops after `limit` cycles or `stepBudget` DFS steps.
std::vector<std::vector<Vertex>> single_colour_cycles(const Colouring& chi, std::size_t limit,
                                                      long stepBudget = 5'000'000);

struct ExtendabilityReport {
  bool e1Ok = true, e2Ok = true, e3Ok = true, e4Ok = true;
  Vertex e1Witness = kNoVertex;
  std::string e2Reason;
  std::vector<Vertex> e2Witness;
  std::vector<Vertex> e3Witness;
  std::string e4Reason;
  std::vector<Vertex> e4Witness;

  bool ok() const { return e1Ok && e2Ok && e3Ok && e4Ok; }
  std::string summary() const;
};

ExtendabilityReport check_extendable(const Graph& g, const Colouring& g0, const Config& cfg);

// E1 alone: every vertex with two or more coloured edges sees both colours.
bool satisfies_e1(const Colouring& chi, Vertex* witness = nullptr);

}  // namespace forest
