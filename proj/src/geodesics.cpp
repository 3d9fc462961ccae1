#include "forest/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace forest {

namespace {

// BFS from one source recording the first-discovered parent.
struct BfsTree {
  std::vector<int> dist;
  std::vector<Vertex> parent;
};

BfsTree bfs_tree(const Graph& g, Vertex s) {
  BfsTree t;
  t.dist.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  t.parent.assign(static_cast<std::size_t>(g.vertex_count()), kNoVertex);
  std::vector<Vertex> queue{s};
  t.dist[static_cast<std::size_t>(s)] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    for (const auto& inc : g.incident(v)) {
      auto w = static_cast<std::size_t>(inc.nb);
      if (t.dist[w] < 0) {
        t.dist[w] = t.dist[static_cast<std::size_t>(v)] + 1;
        t.parent[w] = v;
        queue.push_back(inc.nb);
      }
    }
  }
  return t;
}

// Path from the BFS root to v, root first.
std::vector<Vertex> root_path(const BfsTree& t, Vertex v) {
  std::vector<Vertex> path;
  for (Vertex w = v; w != kNoVertex; w = t.parent[static_cast<std::size_t>(w)]) path.push_back(w);
  std::reverse(path.begin(), path.end());
  return path;
}

int diameter_estimate(const Graph& g) {
  if (g.vertex_count() <= 4096) return diameter(g);
  // Repeated double sweep: a lower bound that is tight on most sparse graphs.
  Vertex v = 0;
  int best = 0;
  for (int sweep = 0; sweep < 6; ++sweep) {
    auto dist = bfs_distances(g, std::span<const Vertex>(&v, 1));
    auto it = std::max_element(dist.begin(), dist.end());
    best = std::max(best, *it);
    v = static_cast<Vertex>(it - dist.begin());
  }
  return best;
}

// Geodesic of length len through c (c at position <= len/2), or empty.
std::vector<Vertex> geodesic_through(const Graph& g, Vertex c, int len) {
  BfsTree fromC = bfs_tree(g, c);
  int ecc = *std::max_element(fromC.dist.begin(), fromC.dist.end());
  for (int h = std::min(len / 2, ecc); h >= 0; --h) {
    int tried = 0;
    for (Vertex a = 0; a < g.vertex_count() && tried < 4; ++a) {
      if (fromC.dist[static_cast<std::size_t>(a)] != h) continue;
      ++tried;
      auto fromA = bfs_distances(g, std::span<const Vertex>(&a, 1));
      for (Vertex b = 0; b < g.vertex_count(); ++b) {
        if (fromA[static_cast<std::size_t>(b)] != len ||
            fromC.dist[static_cast<std::size_t>(b)] != len - h)
          continue;
        auto left = root_path(fromC, a);
        auto right = root_path(fromC, b);
        std::vector<Vertex> path(left.rbegin(), left.rend());
        path.insert(path.end(), right.begin() + 1, right.end());
        return path;
      }
    }
  }
  return {};
}

}  // namespace

bool is_geodesic(const Graph& g, const std::vector<Vertex>& path) {
  if (path.empty()) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!g.adjacent(path[i], path[i + 1])) return false;
  for (std::size_t i = 0; i < path.size(); ++i) {
    auto dist = bfs_distances(g, std::span<const Vertex>(&path[i], 1),
                              static_cast<int>(path.size()));
    for (std::size_t j = 0; j < path.size(); ++j) {
      int want = static_cast<int>(j > i ? j - i : i - j);
      if (dist[static_cast<std::size_t>(path[j])] != want) return false;
    }
  }
  return true;
}

int effective_geo_length(const Graph& g, const Config& cfg) {
  if (cfg.geoLength > 0)
    return static_cast<int>(std::min<std::int64_t>(cfg.geoLength, std::numeric_limits<int>::max()));
  const double asymptotic = 1e10 * std::sqrt(std::log(std::max(g.vertex_count(), 3)));
  return static_cast<int>(std::min<double>(asymptotic, diameter_estimate(g) - 2));
}

std::vector<Geodesic> harvest_geodesics(const Graph& g, const Config& cfg) {
  std::vector<Geodesic> out;
  const int len = effective_geo_length(g, cfg);
  if (len < 1 || g.vertex_count() == 0) return out;
  const int n = g.vertex_count();
  // Distance to the harvested set; -1 while nothing is harvested.
  std::vector<int> toChosen(static_cast<std::size_t>(n), -1);
  std::vector<char> blocked(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> chosenVertices;
  int failures = 0;
  while (failures < 64) {
    Vertex centre = kNoVertex;
    int best = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (blocked[static_cast<std::size_t>(v)]) continue;
      int d = toChosen[static_cast<std::size_t>(v)];
      int key = d < 0 ? std::numeric_limits<int>::max() : d;
      if (key > best) {
        best = key;
        centre = v;
      }
    }
    if (centre == kNoVertex || best < cfg.geoSeparation) break;
    blocked[static_cast<std::size_t>(centre)] = 1;
    auto path = geodesic_through(g, centre, len);
    ++failures;
    if (path.empty()) continue;
    if (!chosenVertices.empty()) {
      bool farEnough = std::all_of(path.begin(), path.end(), [&](Vertex v) {
        return toChosen[static_cast<std::size_t>(v)] >= cfg.geoSeparation;
      });
      if (!farEnough) continue;
    }
    failures = 0;
    chosenVertices.insert(chosenVertices.end(), path.begin(), path.end());
    out.push_back({std::move(path)});
    toChosen = bfs_distances(g, chosenVertices);
  }
  return out;
}

}  // namespace forest
