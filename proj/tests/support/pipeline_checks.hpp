#pragma once

// Stage invariants of the randomised pipeline, checked from scratch.

#include <set>
#include <string>
#include <vector>

#include "forest/colouring.hpp"

namespace forest::testing {

// Each vertex has two edges of one colour and one of the other.
inline bool two_plus_one(const Colouring& chi, std::string* why = nullptr) {
  for (Vertex v = 0; v < chi.graph().vertex_count(); ++v) {
    const int r = chi.degree(v, Colour::Red), b = chi.degree(v, Colour::Blue);
    if (!((r == 2 && b == 1) || (r == 1 && b == 2))) {
      if (why) *why = "vertex " + std::to_string(v) + " has " + std::to_string(r) + " red, " +
                      std::to_string(b) + " blue";
      return false;
    }
  }
  return true;
}

inline bool no_monochromatic_cycles(const Colouring& chi) {
  const auto p = profile(chi);
  return p.redCycles.empty() && p.blueCycles.empty();
}

// Components are paths and none holds two recoloured edges.
inline bool paths_with_one_recolouring(const Colouring& chi, const std::vector<EdgeId>& recoloured,
                                       std::string* why = nullptr) {
  const auto comps = monochromatic_components(chi);
  if (!comps.monochromaticVertices.empty()) {
    if (why) *why = "monochromatic vertex";
    return false;
  }
  std::set<int> hit;
  for (EdgeId e : recoloured) {
    const int c = comps.componentOfEdge[static_cast<std::size_t>(e)];
    if (!hit.insert(c).second) {
      if (why) *why = "component " + std::to_string(c) + " holds two recoloured edges";
      return false;
    }
  }
  for (const auto& c : comps.components)
    if (c.shape != MonoComponent::Shape::Path) {
      if (why) *why = "component is not a path";
      return false;
    }
  return true;
}

}  // namespace forest::testing
