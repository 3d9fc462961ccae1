#pragma once

#include <vector>

#include "forest/config.hpp"
#include "forest/graph.hpp"

namespace forest {

struct Geodesic {
  std::vector<Vertex> path;  // p_0 .. p_L
  int length() const { return static_cast<int>(path.size()) - 1; }
};

// Checks adjacency of consecutive vertices and dist(p_i, p_j) = j - i.
bool is_geodesic(const Graph& g, const std::vector<Vertex>& path);

// Length used for harvesting: cfg.geoLength, or min(asymptotic value, diam - 2)
// when cfg.geoLength is 0.
int effective_geo_length(const Graph& g, const Config& cfg);

// Greedy farthest-point centres, one geodesic of the effective length
// through (or next to) each centre, pairwise at distance >= geoSeparation.
// Empty when the diameter is too small.
std::vector<Geodesic> harvest_geodesics(const Graph& g, const Config& cfg);

}  // namespace forest
