#include "forest/extendable_completion.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "forest/extendability.hpp"
#include "forest/geodesic_colouring.hpp"
#include "forest/random.hpp"

namespace forest {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

int uncoloured_degree(const Colouring& chi, Vertex v) { return chi.degree(v, Colour::Uncoloured); }

struct Chain {
  std::vector<Vertex> verts;  // from one branch vertex to the other, inclusive
  int length() const { return static_cast<int>(verts.size()) - 1; }
};

// Follows uncoloured edges from `start` through `first` while the vertices
// have uncoloured degree 2. Marks the edges it uses.
std::vector<Vertex> walk_chain(const Colouring& chi, Vertex start, EdgeId first,
                               std::vector<char>& used) {
  const Graph& g = chi.graph();
  std::vector<Vertex> verts{start};
  EdgeId prev = first;
  Vertex cur = g.edge(first).other(start);
  used[idx(first)] = 1;
  verts.push_back(cur);
  while (cur != start && uncoloured_degree(chi, cur) == 2) {
    EdgeId next = kNoEdge;
    for (const auto& inc : g.incident(cur))
      if (inc.edge != prev && chi[inc.edge] == Colour::Uncoloured) next = inc.edge;
    used[idx(next)] = 1;
    prev = next;
    cur = g.edge(next).other(cur);
    verts.push_back(cur);
  }
  return verts;
}

BadCycle make_bad(const Colouring& chi, std::vector<Vertex> cycle) {
  BadCycle b;
  b.cycle = std::move(cycle);
  for (Vertex v : b.cycle)
    if (uncoloured_degree(chi, v) == 3) b.branch.push_back(v);
  return b;
}

Vertex outside_neighbour(const Graph& g, const std::vector<Vertex>& c, std::size_t i) {
  const std::size_t k = c.size();
  const Vertex prev = c[(i + k - 1) % k], next = c[(i + 1) % k];
  for (const auto& inc : g.incident(c[i]))
    if (inc.nb != prev && inc.nb != next) return inc.nb;
  return kNoVertex;
}

}  // namespace

bool is_e4_bad(const Colouring& chi, const std::vector<Vertex>& cycle) {
  const Graph& g = chi.graph();
  const std::size_t k = cycle.size();
  if (k < 3 || k % 2 == 0) return false;
  int branch = 0;
  for (std::size_t i = 0; i < k; ++i) {
    EdgeId e = g.edge_between(cycle[i], cycle[(i + 1) % k]);
    if (e == kNoEdge || chi[e] != Colour::Uncoloured) return false;
    branch += uncoloured_degree(chi, cycle[i]) == 3;
  }
  return branch <= 2;
}

std::vector<BadCycle> enumerate_E4_bad(const Colouring& chi) {
  const Graph& g = chi.graph();
  std::vector<char> used(idx(g.edge_count()), 0);
  std::vector<BadCycle> out;
  std::map<std::pair<Vertex, Vertex>, std::vector<Chain>> between;

  for (Vertex a = 0; a < g.vertex_count(); ++a) {
    if (uncoloured_degree(chi, a) != 3) continue;
    for (const auto& inc : g.incident(a)) {
      if (used[idx(inc.edge)]) continue;
      Chain c{walk_chain(chi, a, inc.edge, used)};
      const Vertex b = c.verts.back();
      if (uncoloured_degree(chi, b) != 3) continue;  // dead end
      if (b == a) {
        if (c.length() % 2 == 1) out.push_back(make_bad(chi, {c.verts.begin(), c.verts.end() - 1}));
        continue;
      }
      if (b < a) std::reverse(c.verts.begin(), c.verts.end());
      between[{std::min(a, b), std::max(a, b)}].push_back(std::move(c));
    }
  }
  for (const auto& [ends, chains] : between)
    for (std::size_t i = 0; i < chains.size(); ++i)
      for (std::size_t j = i + 1; j < chains.size(); ++j) {
        if ((chains[i].length() + chains[j].length()) % 2 == 0) continue;
        std::vector<Vertex> cyc = chains[i].verts;
        cyc.insert(cyc.end(), chains[j].verts.rbegin() + 1, chains[j].verts.rend() - 1);
        out.push_back(make_bad(chi, std::move(cyc)));
      }

  // Components of the uncoloured graph that are plain cycles.
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (uncoloured_degree(chi, v) != 2) continue;
    for (const auto& inc : g.incident(v)) {
      if (chi[inc.edge] != Colour::Uncoloured || used[idx(inc.edge)]) continue;
      auto verts = walk_chain(chi, v, inc.edge, used);
      if (verts.back() == v && (verts.size() - 1) % 2 == 1) {
        verts.pop_back();
        out.push_back(make_bad(chi, std::move(verts)));
      }
      break;
    }
  }
  return out;
}

Colouring fix_bad_cycle(const Colouring& chi, const BadCycle& bad) {
  const Graph& g = chi.graph();
  if (!is_e4_bad(chi, bad.cycle)) throw std::invalid_argument("fix_bad_cycle: cycle is not bad");
  if (Vertex w = kNoVertex; !satisfies_e1(chi, &w))
    throw std::invalid_argument("fix_bad_cycle: E1 fails at vertex " + std::to_string(w));

  Colouring out = chi;
  const auto& c = bad.cycle;
  const std::size_t k = c.size();
  auto edge = [&](const std::vector<Vertex>& seq, std::size_t i) {
    return g.edge_between(seq[i % seq.size()], seq[(i + 1) % seq.size()]);
  };
  auto pendantColour = [&](const std::vector<Vertex>& seq, std::size_t i) {
    return chi[g.edge_between(seq[i], outside_neighbour(g, seq, i))];
  };
  auto deg3 = [&](std::size_t i) { return uncoloured_degree(chi, c[i % k]) == 3; };

  bool red = false, blue = false;
  for (std::size_t i = 0; i < k; ++i) {
    red = red || pendantColour(c, i) == Colour::Red;
    blue = blue || pendantColour(c, i) == Colour::Blue;
  }
  std::size_t adjacent3 = k;
  for (std::size_t i = 0; i < k && adjacent3 == k; ++i)
    if (deg3(i) && deg3(i + 1)) adjacent3 = i;

  std::size_t consecutive = k;
  for (std::size_t i = 0; i < k && consecutive == k; ++i) {
    const Colour p = pendantColour(c, i);
    if (p != Colour::Uncoloured && pendantColour(c, (i + 1) % k) == p) consecutive = i;
  }

  if (adjacent3 < k && ((red && blue) || consecutive == k)) {
    // Rotate so that the two branch vertices are c_2, c_3 (indices 1, 2).
    std::vector<Vertex> s(k);
    for (std::size_t j = 0; j < k; ++j) s[j] = c[(adjacent3 + k - 1 + j) % k];
    const Colour x = pendantColour(s, 0), y = opposite(x);
    const Vertex c2 = s[1], c2p = outside_neighbour(g, s, 1);
    const EdgeId spoke = g.edge_between(c2, c2p);
    auto around = [&] {
      for (std::size_t i = 3; i < k; ++i) out.set(edge(s, i), opposite(pendantColour(s, i)));
    };
    if (uncoloured_degree(chi, c2p) == 3) {
      out.set(edge(s, 0), y);
      out.set(edge(s, 1), x);
      around();
    } else if (chi.degree(c2p, x) > 0) {
      out.set(edge(s, 0), y);
      out.set(spoke, y);
      out.set(edge(s, 1), x);
      around();
    } else {
      out.set(edge(s, 0), y);
      out.set(spoke, x);
    }
  } else if (red && blue) {
    for (std::size_t i = 0; i < k; ++i)
      if (const Colour p = pendantColour(c, i); p != Colour::Uncoloured) out.set(edge(c, i), opposite(p));
  } else if (consecutive < k) {
    out.set(edge(c, consecutive), opposite(pendantColour(c, consecutive)));
  } else {
    throw std::logic_error("fix_bad_cycle: no rule applies");
  }
  return out;
}

RepairResult destroy_all_bad_cycles(const Colouring& chi) {
  RepairResult r{chi, 0};
  for (const auto& b : enumerate_E4_bad(chi)) {
    if (!is_e4_bad(r.chi, b.cycle)) continue;
    r.chi = fix_bad_cycle(r.chi, b);
    ++r.fixes;
  }
  if (auto left = enumerate_E4_bad(r.chi); !left.empty())
    throw std::logic_error("destroy_all_bad_cycles: " + std::to_string(left.size()) + " bad cycles remain");
  return r;
}

// ------------------------------------------------------------- assembly

namespace {

constexpr int kPlacementGap = 10;
constexpr std::uint64_t kStageAssembly = 0x601;

std::vector<Vertex> bfs_path(const Graph& g, Vertex from, int length, const std::vector<int>& far) {
  std::vector<int> dist(idx(g.vertex_count()), -1);
  std::vector<Vertex> parent(idx(g.vertex_count()), kNoVertex), queue{from};
  dist[idx(from)] = 0;
  Vertex best = kNoVertex;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const Vertex v = queue[h];
    if (dist[idx(v)] == length) {
      if (best == kNoVertex || far[idx(v)] > far[idx(best)]) best = v;
      continue;
    }
    for (const auto& inc : g.incident(v))
      if (dist[idx(inc.nb)] < 0) {
        dist[idx(inc.nb)] = dist[idx(v)] + 1;
        parent[idx(inc.nb)] = v;
        queue.push_back(inc.nb);
      }
  }
  std::vector<Vertex> path;
  for (Vertex v = best; v != kNoVertex; v = parent[idx(v)]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

std::string achieved(const std::map<int, int>& perLength) {
  std::ostringstream os;
  for (const auto& [ell, count] : perLength) os << " ell=" << ell << ':' << count;
  return perLength.empty() ? " nothing" : os.str();
}

}  // namespace

G0Bundle assemble_G0(const Graph& g, const Config& cfg, bool requireAll) {
  const int n = g.vertex_count();
  G0Bundle b{Colouring(g), {}, {}, 0};
  // A gadget of length ell needs a shortest path of length ell + 4, and no
  // shortest path is longer than twice an eccentricity. This also keeps the
  // asymptotic ell range from being walked one length at a time.
  const int reach = 2 * eccentricity(g, 0) - 4;
  const int ellTop = std::min(cfg.ellMax, reach);
  if (requireAll && ellTop < cfg.ellMax)
    throw AssemblyError("assemble_G0: gadget length " + std::to_string(cfg.ellMax) +
                        " cannot fit, shortest paths are at most " + std::to_string(reach + 4) + " long");
  for (int ell = cfg.ellMin; ell <= ellTop; ++ell) b.perLength[ell] = 0;
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> far(idx(n), kInf);
  std::vector<char> tried(idx(n), 0);
  Rng rng(sub_seed(cfg.seed, kStageAssembly, 0));
  const Vertex first = static_cast<Vertex>(below(rng, static_cast<std::uint64_t>(n)));

  while (!b.perLength.empty()) {
    int ell = cfg.ellMin;
    for (const auto& [len, count] : b.perLength)
      if (count < b.perLength[ell]) ell = len;
    if (b.perLength[ell] >= cfg.gadgetsPerLength) break;

    Vertex a = kNoVertex;
    if (b.registry.empty() && !tried[idx(first)]) a = first;
    for (Vertex v = 0; v < n && a == kNoVertex; ++v)
      if (!tried[idx(v)] && far[idx(v)] == kInf) a = v;
    if (a == kNoVertex)
      for (Vertex v = 0; v < n; ++v)
        if (!tried[idx(v)] && (a == kNoVertex || far[idx(v)] > far[idx(a)])) a = v;
    if (a == kNoVertex || far[idx(a)] < kPlacementGap) break;
    tried[idx(a)] = 1;

    const auto path = bfs_path(g, a, ell + 4, far);
    if (path.empty()) continue;
    GeodesicColouring piece;
    try {
      piece = colour_around_geodesic(g, path, ell);
    } catch (const GeodesicError&) {
      continue;
    }
    const auto edges = piece.phi.coloured_edges();
    bool clear = true;
    for (EdgeId e : edges)
      clear = clear && far[idx(g.edge(e).u)] >= kPlacementGap && far[idx(g.edge(e).v)] >= kPlacementGap;
    if (!clear) continue;

    for (EdgeId e : edges) b.g0.set(e, piece.phi[e]);
    b.registry.push_back(std::move(piece.gadget));
    ++b.perLength[ell];
    std::vector<Vertex> sources;
    for (EdgeId e : b.g0.coloured_edges()) {
      sources.push_back(g.edge(e).u);
      sources.push_back(g.edge(e).v);
    }
    far = bfs_distances(g, sources);
    for (int& d : far)
      if (d < 0) d = kInf;
  }

  for (const auto& [ell, count] : b.perLength)
    if (requireAll && count < cfg.gadgetsPerLength)
      throw AssemblyError("assemble_G0: not enough room for " + std::to_string(cfg.gadgetsPerLength) +
                          " gadgets per length; achieved" + achieved(b.perLength));

  RepairResult repaired = destroy_all_bad_cycles(b.g0);
  b.g0 = std::move(repaired.chi);
  b.repairs = repaired.fixes;
  const ExtendabilityReport report = check_extendable(g, b.g0, cfg);
  if (!report.ok()) throw AssemblyError("assemble_G0: result is not extendable: " + report.summary());
  return b;
}

std::string bundle_to_text(const G0Bundle& b) {
  return to_text(b.g0) + "# registry\n" + registry_to_text(b.registry);
}

G0Bundle bundle_from_text(const Graph& g, const std::string& text) {
  const std::string marker = "# registry\n";
  const auto cut = text.find(marker);
  if (cut == std::string::npos) throw std::invalid_argument("bundle: missing registry marker");
  G0Bundle b{parse_colouring(g, text.substr(0, cut)), registry_from_text(text.substr(cut + marker.size())),
             {}, 0};
  for (const auto& inst : b.registry) ++b.perLength[inst.tmpl.ell];
  return b;
}

}  // namespace forest
