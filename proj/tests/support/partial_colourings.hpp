#pragma once

// Random partial colourings satisfying E1 and E3, with odd uncoloured cycles
// planted so that the E4 repair has work to do.

#include <algorithm>
#include <vector>

#include "forest/colouring.hpp"
#include "forest/extendability.hpp"
#include "forest/graph.hpp"
#include "forest/random.hpp"

namespace forest::testing {

// Shortest odd cycle through v, or empty. Built from a BFS edge joining two
// vertices at the same depth on disjoint branches.
inline std::vector<Vertex> short_odd_cycle(const Graph& g, Vertex root, int maxLen) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> dist(n, -1);
  std::vector<Vertex> parent(n, kNoVertex), queue{root};
  dist[static_cast<std::size_t>(root)] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const Vertex v = queue[h];
    for (const auto& inc : g.incident(v)) {
      const auto w = static_cast<std::size_t>(inc.nb);
      if (dist[w] < 0) {
        dist[w] = dist[static_cast<std::size_t>(v)] + 1;
        parent[w] = v;
        queue.push_back(inc.nb);
      } else if (dist[w] == dist[static_cast<std::size_t>(v)] && v < inc.nb &&
                 2 * dist[w] + 1 <= maxLen) {
        std::vector<Vertex> left, right;
        for (Vertex x = v; x != kNoVertex; x = parent[static_cast<std::size_t>(x)]) left.push_back(x);
        for (Vertex x = inc.nb; x != kNoVertex; x = parent[static_cast<std::size_t>(x)]) right.push_back(x);
        if (left.back() != root || right.back() != root) continue;
        // Both branches must meet only at the root.
        bool disjoint = true;
        for (std::size_t i = 0; i + 1 < left.size(); ++i)
          disjoint = disjoint && std::find(right.begin(), right.end(), left[i]) == right.end();
        if (!disjoint) continue;
        std::vector<Vertex> cyc(left.rbegin(), left.rend());
        for (std::size_t i = 0; i + 1 < right.size(); ++i) cyc.push_back(right[i]);
        return cyc;
      }
    }
  }
  return {};
}

struct PlantedColouring {
  Colouring chi;
  std::vector<std::vector<Vertex>> planted;
};

// Partial colouring of g with up to `cycles` planted odd uncoloured cycles
// (each with at most two spokes left uncoloured) and a random sprinkling of
// other coloured edges. E1 and E3 hold; retries until they do.
inline PlantedColouring planted_partial_colouring(const Graph& g, std::uint64_t seed, int cycles,
                                                  double density) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(sub_seed(seed, 0x7e4, attempt));
    PlantedColouring out{Colouring(g), {}};
    std::vector<char> reserved(static_cast<std::size_t>(g.edge_count()), 0), busy(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int tries = 0; tries < 200 && static_cast<int>(out.planted.size()) < cycles; ++tries) {
      const auto root = static_cast<Vertex>(below(rng, static_cast<std::uint64_t>(g.vertex_count())));
      auto cyc = short_odd_cycle(g, root, 9);
      if (cyc.empty()) continue;
      bool free = true;
      for (Vertex v : cyc) {
        free = free && !busy[static_cast<std::size_t>(v)];
        for (const auto& inc : g.incident(v)) free = free && !busy[static_cast<std::size_t>(inc.nb)];
      }
      if (!free) continue;
      const std::size_t k = cyc.size();
      std::vector<EdgeId> spokes;
      for (std::size_t i = 0; i < k; ++i) {
        reserved[static_cast<std::size_t>(g.edge_between(cyc[i], cyc[(i + 1) % k]))] = 1;
        busy[static_cast<std::size_t>(cyc[i])] = 1;
        for (const auto& inc : g.incident(cyc[i]))
          if (std::find(cyc.begin(), cyc.end(), inc.nb) == cyc.end()) spokes.push_back(inc.edge);
      }
      if (spokes.size() != k) continue;  // chord: skip this cycle
      const auto bare = below(rng, 3);  // spokes left uncoloured
      for (std::size_t i = 0; i < k; ++i) {
        const auto e = static_cast<std::size_t>(spokes[i]);
        reserved[e] = 1;
        if (i < bare) continue;
        out.chi.set(spokes[i], coin(rng) ? Colour::Red : Colour::Blue);
      }
      out.planted.push_back(cyc);
    }
    std::vector<EdgeId> order;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (!reserved[static_cast<std::size_t>(e)]) order.push_back(e);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(static_cast<std::size_t>(density * static_cast<double>(order.size())));
    auto e1At = [&](Vertex v) {
      return out.chi.coloured_degree(v) < 2 ||
             (out.chi.degree(v, Colour::Red) > 0 && out.chi.degree(v, Colour::Blue) > 0);
    };
    for (EdgeId e : order) {
      const Colour c = coin(rng) ? Colour::Red : Colour::Blue;
      out.chi.set(e, c);
      if (!e1At(g.edge(e).u) || !e1At(g.edge(e).v)) out.chi.set(e, opposite(c));
      if (!e1At(g.edge(e).u) || !e1At(g.edge(e).v)) out.chi.set(e, Colour::Uncoloured);
    }
    if (satisfies_e1(out.chi) && single_colour_cycles(out.chi, 1).empty()) return out;
  }
}

}  // namespace forest::testing
