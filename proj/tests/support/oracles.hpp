#pragma once

// Reference implementations kept deliberately naive, so they share no code
// paths with the library they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "forest/colouring.hpp"
#include "forest/graph.hpp"

namespace forest::testing {

// Path-length multisets per colour, or nullopt when some class is not a
// linear forest. Union-find over vertices of each colour.
struct NaiveSplit {
  std::map<int, int> red, blue;
};

inline std::optional<NaiveSplit> naive_split(const Graph& g, const std::vector<int>& colourOf) {
  NaiveSplit out;
  for (int c = 0; c < 2; ++c) {
    std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
      return v;
    };
    std::vector<int> deg(parent.size(), 0), edges(parent.size(), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (colourOf[static_cast<std::size_t>(e)] != c) continue;
      const int a = find(g.edge(e).u), b = find(g.edge(e).v);
      if (a == b) return std::nullopt;  // cycle
      if (++deg[static_cast<std::size_t>(g.edge(e).u)] > 2 || ++deg[static_cast<std::size_t>(g.edge(e).v)] > 2)
        return std::nullopt;
      parent[static_cast<std::size_t>(a)] = b;
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (colourOf[static_cast<std::size_t>(e)] == c) ++edges[static_cast<std::size_t>(find(g.edge(e).u))];
    auto& m = c == 0 ? out.red : out.blue;
    for (std::size_t r = 0; r < edges.size(); ++r)
      if (edges[r] > 0) ++m[edges[r]];
  }
  return out;
}

inline std::vector<int> to_indices(const Colouring& chi) {
  std::vector<int> out(static_cast<std::size_t>(chi.size()));
  for (EdgeId e = 0; e < chi.size(); ++e)
    out[static_cast<std::size_t>(e)] = chi[e] == Colour::Red ? 0 : chi[e] == Colour::Blue ? 1 : -1;
  return out;
}

inline bool naive_isomorphic(const Graph& g, const std::vector<int>& colourOf) {
  const auto s = naive_split(g, colourOf);
  return s && s->red == s->blue;
}

// First decomposition in lexicographic order (edge 0 most significant, red
// before blue), by plain enumeration of all 2^m colourings.
inline std::optional<std::vector<int>> naive_decompose(const Graph& g) {
  const int m = g.edge_count();
  std::vector<int> colourOf(static_cast<std::size_t>(m));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    for (int i = 0; i < m; ++i) colourOf[static_cast<std::size_t>(i)] = static_cast<int>((mask >> (m - 1 - i)) & 1);
    if (naive_isomorphic(g, colourOf)) return colourOf;
  }
  return std::nullopt;
}

// Standard graph6 decoding written from the format description.
inline std::vector<std::pair<int, int>> decode_graph6(const std::string& s) {
  std::vector<int> bits;
  const int n = s[0] - 63;
  for (std::size_t i = 1; i < s.size(); ++i)
    for (int b = 5; b >= 0; --b) bits.push_back(((s[i] - 63) >> b) & 1);
  std::vector<std::pair<int, int>> edges;
  std::size_t k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (bits[k++]) edges.emplace_back(i, j);
  return edges;
}

inline std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> d(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int s = 0; s < n; ++s) {
    auto& row = d[static_cast<std::size_t>(s)];
    std::queue<int> q;
    q.push(s);
    row[static_cast<std::size_t>(s)] = 0;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (const auto& inc : g.incident(v))
        if (row[static_cast<std::size_t>(inc.nb)] < 0) {
          row[static_cast<std::size_t>(inc.nb)] = row[static_cast<std::size_t>(v)] + 1;
          q.push(inc.nb);
        }
    }
  }
  return d;
}

inline std::vector<int> distances_to_set(const Graph& g, const std::vector<Vertex>& sources) {
  std::vector<int> d(static_cast<std::size_t>(g.vertex_count()), -1);
  std::queue<int> q;
  for (Vertex s : sources) {
    d[static_cast<std::size_t>(s)] = 0;
    q.push(s);
  }
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const auto& inc : g.incident(v))
      if (d[static_cast<std::size_t>(inc.nb)] < 0) {
        d[static_cast<std::size_t>(inc.nb)] = d[static_cast<std::size_t>(v)] + 1;
        q.push(inc.nb);
      }
  }
  return d;
}

// Every coloured edge has an end within `radius` of the path, and every
// vertex with two coloured edges sees both colours.
inline bool local_and_bichromatic(const Graph& g, const std::vector<Vertex>& path, const Colouring& phi,
                                  int radius) {
  const auto d = distances_to_set(g, path);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (phi[e] != Colour::Uncoloured &&
        std::min(d[static_cast<std::size_t>(g.edge(e).u)], d[static_cast<std::size_t>(g.edge(e).v)]) > radius)
      return false;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    int r = 0, b = 0;
    for (const auto& inc : g.incident(v)) {
      r += phi[inc.edge] == Colour::Red;
      b += phi[inc.edge] == Colour::Blue;
    }
    if (r + b >= 2 && (r == 0 || b == 0)) return false;
  }
  return true;
}

// Colouring from a list of red edges (by endpoints); all others blue.
inline Colouring colour_with_red(const Graph& g, const std::vector<std::pair<Vertex, Vertex>>& red) {
  Colouring chi(g, Colour::Blue);
  for (auto [u, v] : red) chi.set(g.edge_between(u, v), Colour::Red);
  return chi;
}

}  // namespace forest::testing
