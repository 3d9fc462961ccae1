#include "forest/base_colouring.hpp"

#include <algorithm>
#include <map>

#include "forest/approx.hpp"
#include "forest/random.hpp"
#include "forest/transversal.hpp"

namespace forest {

// ---------------------------------------------------------------- Vizing

namespace {

class FanColourer {
 public:
  explicit FanColourer(const Graph& g) : g_(g), col_(static_cast<std::size_t>(g.edge_count()), -1) {}

  std::vector<int> run() {
    // Greedy pass first; the fan machinery only runs on stuck edges.
    std::vector<EdgeId> stuck;
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      const Edge& ed = g_.edge(e);
      int c = 0;
      while (c < 4 && !(is_free(ed.u, c) && is_free(ed.v, c))) ++c;
      if (c < 4)
        set(e, c);
      else
        stuck.push_back(e);
    }
    for (EdgeId e : stuck) colour(e);
    return std::move(col_);
  }

 private:
  int get(EdgeId e) const { return col_[static_cast<std::size_t>(e)]; }
  void set(EdgeId e, int c) { col_[static_cast<std::size_t>(e)] = c; }

  EdgeId at(Vertex v, int c) const {
    for (const auto& inc : g_.incident(v))
      if (get(inc.edge) == c) return inc.edge;
    return kNoEdge;
  }
  bool is_free(Vertex v, int c) const { return at(v, c) == kNoEdge; }
  int free_colour(Vertex v) const {
    for (int c = 0; c < 4; ++c)
      if (is_free(v, c)) return c;
    throw std::logic_error("vizing: no free colour");
  }

  // Misra-Gries step for the uncoloured edge e0 = x f.
  void colour(EdgeId e0) {
    const Vertex x = g_.edge(e0).u;
    std::vector<Vertex> fan{g_.edge(e0).v};
    for (bool grown = true; grown;) {
      grown = false;
      for (const auto& inc : g_.incident(x)) {
        if (std::find(fan.begin(), fan.end(), inc.nb) != fan.end()) continue;
        int c = get(inc.edge);
        if (c >= 0 && is_free(fan.back(), c)) {
          fan.push_back(inc.nb);
          grown = true;
          break;
        }
      }
    }
    const int c = free_colour(x);
    const int d = free_colour(fan.back());
    if (c != d) {
      std::vector<EdgeId> path;
      Vertex cur = x;
      int want = d;
      for (EdgeId e = at(cur, want); e != kNoEdge; e = at(cur, want)) {
        path.push_back(e);
        cur = g_.edge(e).other(cur);
        want = want == c ? d : c;
      }
      for (EdgeId e : path) set(e, get(e) == c ? d : c);
    }
    // Shortest fan prefix that is still a fan and ends at a vertex missing d.
    std::size_t w = 0;
    for (; w < fan.size(); ++w) {
      if (w > 0 && !is_free(fan[w - 1], get(g_.edge_between(x, fan[w])))) {
        w = fan.size();
        break;
      }
      if (is_free(fan[w], d)) break;
    }
    if (w == fan.size()) throw std::logic_error("vizing: fan rotation failed");
    for (std::size_t j = 0; j < w; ++j)
      set(g_.edge_between(x, fan[j]), get(g_.edge_between(x, fan[j + 1])));
    set(g_.edge_between(x, fan[w]), d);
  }

  const Graph& g_;
  std::vector<int> col_;
};

}  // namespace

std::vector<int> vizing_four_colour(const Graph& g) { return FanColourer(g).run(); }

bool is_proper_edge_colouring(const Graph& g, const std::vector<int>& colours) {
  if (static_cast<int>(colours.size()) != g.edge_count()) return false;
  for (int c : colours)
    if (c < 0 || c > 3) return false;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto inc = g.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j)
        if (colours[static_cast<std::size_t>(inc[i].edge)] ==
            colours[static_cast<std::size_t>(inc[j].edge)])
          return false;
  }
  return true;
}

Colouring merge_to_two(const Graph& g, const std::vector<int>& fourColouring) {
  if (!is_proper_edge_colouring(g, fourColouring))
    throw std::invalid_argument("merge_to_two: input is not a proper 4-edge-colouring");
  Colouring chi(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    chi.set(e, fourColouring[static_cast<std::size_t>(e)] < 2 ? Colour::Red : Colour::Blue);
  return chi;
}

// ------------------------------------------------------- weak Thomassen

namespace {

constexpr std::uint64_t kStageSplit = 0x5b1e;
constexpr std::uint64_t kStageCycles = 0xc7c1;

bool is_linear_forest(const ComponentSet& comps) {
  return std::all_of(comps.components.begin(), comps.components.end(), [](const MonoComponent& c) {
    return c.shape == MonoComponent::Shape::Path;
  });
}

// Cuts every path longer than 2c+1 into segments of length in [c/2, c] and
// flips one interior edge per segment. A flipped edge must join two distinct
// opposite-colour paths shorter than c, and no two flips may touch the same
// opposite-colour path. Returns false when the round cannot be completed.
bool split_long_paths(Colouring& chi, int c, Rng& rng) {
  const int limit = 2 * c + 1;
  ComponentSet comps = monochromatic_components(chi);
  if (!is_linear_forest(comps)) return false;

  auto opposite_component = [&](Vertex v, Colour col) -> int {
    EdgeId e = chi.other_edge(v, opposite(col), kNoEdge);
    return e == kNoEdge ? -1 : comps.componentOfEdge[static_cast<std::size_t>(e)];
  };
  auto short_path = [&](int id) {
    return id < 0 || comps.components[static_cast<std::size_t>(id)].length() < c;
  };

  TransversalProblem problem;
  std::vector<EdgeId> candidateEdge;
  std::vector<std::array<int, 2>> touches;
  for (const auto& comp : comps.components) {
    const int t = comp.length();
    if (t <= limit) continue;
    const int k = (t + c - 1) / c;
    int start = 0;
    for (int j = 0; j < k; ++j) {
      const int size = t / k + (j < t % k ? 1 : 0);
      std::vector<int> part;
      // Skip the first and last edge so flips in different segments never
      // share a vertex.
      for (int i = start + 1; i + 1 < start + size; ++i) {
        Vertex x = comp.vertices[static_cast<std::size_t>(i)];
        Vertex y = comp.vertices[static_cast<std::size_t>(i + 1)];
        int cx = opposite_component(x, comp.colour);
        int cy = opposite_component(y, comp.colour);
        if ((cx >= 0 && cx == cy) || !short_path(cx) || !short_path(cy)) continue;
        part.push_back(static_cast<int>(candidateEdge.size()));
        candidateEdge.push_back(comp.edges[static_cast<std::size_t>(i)]);
        touches.push_back({cx, cy});
      }
      if (part.empty()) return false;
      problem.parts.push_back(std::move(part));
      start += size;
    }
  }
  if (problem.parts.empty()) return true;

  std::vector<int> partOf(candidateEdge.size());
  for (std::size_t p = 0; p < problem.parts.size(); ++p)
    for (int cand : problem.parts[p]) partOf[static_cast<std::size_t>(cand)] = static_cast<int>(p);
  std::map<int, std::vector<int>> byComponent;
  for (std::size_t i = 0; i < candidateEdge.size(); ++i)
    for (int id : touches[i])
      if (id >= 0) byComponent[id].push_back(static_cast<int>(i));
  problem.conflicts.assign(candidateEdge.size(), {});
  for (auto& [id, list] : byComponent)
    for (int a : list)
      for (int b : list)
        if (a != b && partOf[static_cast<std::size_t>(a)] != partOf[static_cast<std::size_t>(b)])
          problem.conflicts[static_cast<std::size_t>(a)].push_back(b);
  for (auto& adj : problem.conflicts) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }

  auto pick = find_independent_transversal(problem, rng);
  if (!pick) return false;
  for (int cand : *pick) chi.flip(candidateEdge[static_cast<std::size_t>(cand)]);
  return true;
}

bool has_cycles(const Colouring& chi) {
  auto p = profile(chi);
  return !p.redCycles.empty() || !p.blueCycles.empty() || p.nonLinear > 0;
}

}  // namespace

Colouring weak_thomassen(const Graph& g, const Config& cfg) {
  const int c = cfg.weakThomassenBound;
  const Colouring start = merge_to_two(g, vizing_four_colour(g));
  for (int attempt = 0; attempt < std::max(1, cfg.attemptCap); ++attempt) {
    Colouring chi = start;
    const std::uint64_t seed = sub_seed(cfg.seed, kStageCycles, static_cast<std::uint64_t>(attempt));
    for (int round = 0; round < 4 && has_cycles(chi); ++round) {
      Chi2Result r2 = chi2(chi, sub_seed(seed, 2, static_cast<std::uint64_t>(round)));
      chi = chi3(r2, sub_seed(seed, 3, static_cast<std::uint64_t>(round))).chi;
    }
    if (has_cycles(chi)) continue;
    Rng rng(sub_seed(cfg.seed, kStageSplit, static_cast<std::uint64_t>(attempt)));
    if (!split_long_paths(chi, c, rng)) continue;
    auto p = profile(chi);
    if (p.nonLinear == 0 && p.redCycles.empty() && p.blueCycles.empty() && p.max_length() <= 2 * c + 1)
      return chi;
  }
  throw std::runtime_error("weak_thomassen: transversal search failed on every attempt");
}

// ------------------------------------------------------ H1/H2/H3 structure

namespace {

std::vector<int> uncoloured_degrees(const Graph& g, const std::vector<char>& mask) {
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (mask[static_cast<std::size_t>(e)]) {
      ++deg[static_cast<std::size_t>(g.edge(e).u)];
      ++deg[static_cast<std::size_t>(g.edge(e).v)];
    }
  return deg;
}

// The mask edge at v other than `prev`.
EdgeId next_mask_edge(const Graph& g, const std::vector<char>& mask, Vertex v, EdgeId prev) {
  for (const auto& inc : g.incident(v))
    if (inc.edge != prev && mask[static_cast<std::size_t>(inc.edge)]) return inc.edge;
  return kNoEdge;
}

H2Cycle cycle_from_chains(const Chain& a, const Chain* b) {
  H2Cycle cyc;
  cyc.vertices.assign(a.vertices.begin(), a.vertices.end() - 1);
  cyc.edges = a.edges;
  if (b) {
    // b runs between the same ends; walk it backwards from a's last vertex.
    bool sameDirection = b->front() == a.front();
    std::vector<Vertex> bv = b->vertices;
    std::vector<EdgeId> be = b->edges;
    if (sameDirection) {
      std::reverse(bv.begin(), bv.end());
      std::reverse(be.begin(), be.end());
    }
    cyc.vertices.insert(cyc.vertices.end(), bv.begin(), bv.end() - 1);
    cyc.edges.insert(cyc.edges.end(), be.begin(), be.end());
  }
  return cyc;
}

}  // namespace

UncolouredStructure analyse_uncoloured(const Graph& g, const std::vector<char>& mask) {
  if (static_cast<int>(mask.size()) != g.edge_count())
    throw std::invalid_argument("analyse_uncoloured: mask size mismatch");
  const auto deg = uncoloured_degrees(g, mask);
  std::vector<char> used(mask.size(), 0);
  std::vector<Chain> chains;
  auto walk = [&](Vertex v, EdgeId e) {
    Chain ch;
    ch.vertices.push_back(v);
    for (;;) {
      used[static_cast<std::size_t>(e)] = 1;
      ch.edges.push_back(e);
      Vertex w = g.edge(e).other(v);
      ch.vertices.push_back(w);
      if (deg[static_cast<std::size_t>(w)] != 2 || w == ch.vertices.front()) break;
      e = next_mask_edge(g, mask, w, e);
      v = w;
    }
    return ch;
  };

  UncolouredStructure out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (deg[static_cast<std::size_t>(v)] == 2 || deg[static_cast<std::size_t>(v)] == 0) continue;
    for (const auto& inc : g.incident(v))
      if (mask[static_cast<std::size_t>(inc.edge)] && !used[static_cast<std::size_t>(inc.edge)])
        chains.push_back(walk(v, inc.edge));
  }
  // Components made only of degree-2 vertices are bare cycles.
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!mask[static_cast<std::size_t>(e)] || used[static_cast<std::size_t>(e)]) continue;
    Chain ch = walk(g.edge(e).u, e);
    out.doubles.push_back(cycle_from_chains(ch, nullptr));
  }

  std::map<std::pair<Vertex, Vertex>, std::vector<int>> groups;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    Vertex a = chains[i].front(), b = chains[i].back();
    groups[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(i));
  }
  auto third_edge = [&](Vertex v, const H2Cycle& cyc) {
    for (const auto& inc : g.incident(v))
      if (mask[static_cast<std::size_t>(inc.edge)] &&
          std::find(cyc.edges.begin(), cyc.edges.end(), inc.edge) == cyc.edges.end())
        return inc.edge;
    return kNoEdge;
  };
  for (auto& [ends, ids] : groups) {
    const Chain& first = chains[static_cast<std::size_t>(ids[0])];
    if (ends.first == ends.second) {
      H2Cycle cyc = cycle_from_chains(first, nullptr);
      if (EdgeId t = third_edge(ends.first, cyc); t != kNoEdge) cyc.touching.push_back(t);
      out.doubles.push_back(std::move(cyc));
    } else if (ids.size() == 1) {
      out.singles.push_back(first);
    } else if (ids.size() == 2) {
      H2Cycle cyc = cycle_from_chains(first, &chains[static_cast<std::size_t>(ids[1])]);
      for (Vertex v : {ends.first, ends.second})
        if (EdgeId t = third_edge(v, cyc); t != kNoEdge) cyc.touching.push_back(t);
      out.doubles.push_back(std::move(cyc));
    } else {
      H3Theta th;
      th.a = ends.first;
      th.b = ends.second;
      for (int k = 0; k < 3; ++k) {
        Chain ch = chains[static_cast<std::size_t>(ids[static_cast<std::size_t>(k)])];
        if (ch.front() != th.a) {
          std::reverse(ch.vertices.begin(), ch.vertices.end());
          std::reverse(ch.edges.begin(), ch.edges.end());
        }
        th.paths[static_cast<std::size_t>(k)] = std::move(ch);
      }
      out.triples.push_back(std::move(th));
    }
  }
  return out;
}

H123Decomposition decompose_H123(const Graph& g, const std::vector<char>& mask) {
  UncolouredStructure s = analyse_uncoloured(g, mask);
  for (const auto& cyc : s.doubles)
    if (cyc.edges.size() % 2 == 1)
      throw E4Error("decompose_H123: odd cycle through at most two branch vertices", cyc.vertices);

  H123Decomposition d;
  std::map<Vertex, Vertex> fId;
  for (const auto& ch : s.singles)
    for (Vertex v : {ch.front(), ch.back()}) fId.emplace(v, 0);
  for (auto& [host, id] : fId) {
    id = static_cast<Vertex>(d.fToHost.size());
    d.fToHost.push_back(host);
  }
  std::vector<Edge> fEdges;
  for (const auto& ch : s.singles) {
    fEdges.push_back({fId.at(ch.front()), fId.at(ch.back())});
    d.fEdgeChain.push_back(ch.edges);
    d.h1.insert(d.h1.end(), ch.edges.begin(), ch.edges.end());
  }
  d.f = Graph(static_cast<int>(d.fToHost.size()), std::move(fEdges));
  d.h2 = std::move(s.doubles);
  d.h3 = std::move(s.triples);
  return d;
}

bool validate_decomposition(const Graph& g, const std::vector<char>& mask, const H123Decomposition& d,
                            std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::vector<int> owner(static_cast<std::size_t>(g.edge_count()), 0);
  auto claim = [&](EdgeId e) { return ++owner[static_cast<std::size_t>(e)] == 1; };
  for (EdgeId e : d.h1)
    if (!claim(e)) return fail("h1 edge listed twice");
  std::vector<char> inH2(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const auto& cyc : d.h2) {
    if (cyc.edges.size() % 2) return fail("odd h2 cycle");
    if (cyc.touching.size() > 2) return fail("h2 cycle touches more than two h1 edges");
    for (EdgeId e : cyc.edges)
      if (!claim(e)) return fail("h2 edge reused");
    for (Vertex v : cyc.vertices) inH2[static_cast<std::size_t>(v)] = 1;
  }
  for (const auto& th : d.h3) {
    std::vector<Vertex> interior;
    for (const auto& p : th.paths) {
      if (p.front() != th.a || p.back() != th.b) return fail("h3 path with wrong ends");
      for (EdgeId e : p.edges)
        if (!claim(e)) return fail("h3 edge reused");
      interior.insert(interior.end(), p.vertices.begin() + 1, p.vertices.end() - 1);
    }
    interior.push_back(th.a);
    interior.push_back(th.b);
    std::sort(interior.begin(), interior.end());
    if (std::adjacent_find(interior.begin(), interior.end()) != interior.end())
      return fail("h3 paths not internally disjoint");
    for (Vertex v : interior)
      if (inH2[static_cast<std::size_t>(v)]) return fail("h2 and h3 share a vertex");
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if ((owner[static_cast<std::size_t>(e)] == 1) != (mask[static_cast<std::size_t>(e)] != 0))
      return fail("parts do not partition the uncoloured edges (edge " + std::to_string(e) + ")");
  for (Vertex v = 0; v < d.f.vertex_count(); ++v)
    if (d.f.degree(v) != 1 && d.f.degree(v) != 3)
      return fail("contracted graph has a vertex of degree " + std::to_string(d.f.degree(v)));
  return true;
}

// ------------------------------------------------------ purple/green colouring

PurpleGreenColouring build_chi0(const Graph& g, const Colouring& g0, const H123Decomposition& d,
                                const Config& cfg) {
  (void)g0;
  PurpleGreenColouring pg;
  pg.shade.assign(static_cast<std::size_t>(g.edge_count()), Shade::Absent);
  auto paint = [&](const std::vector<EdgeId>& edges, Shade s) {
    for (EdgeId e : edges) pg.shade[static_cast<std::size_t>(e)] = s;
  };

  if (d.f.edge_count() > 0) {
    Colouring fc = weak_thomassen(d.f, cfg);
    for (EdgeId e = 0; e < d.f.edge_count(); ++e)
      paint(d.fEdgeChain[static_cast<std::size_t>(e)], fc[e] == Colour::Red ? Shade::Purple : Shade::Green);
  }

  for (const auto& cyc : d.h2) {
    if (cyc.touching.empty()) {
      paint(cyc.edges, Shade::Purple);
      continue;
    }
    const Shade s0 = pg[cyc.touching[0]];
    if (cyc.touching.size() == 1 || pg[cyc.touching[1]] == s0) {
      paint(cyc.edges, other_shade(s0));
      continue;
    }
    // Two touching edges of different shades: the arc from the first contact
    // to the second is purple, the other arc green.
    auto contact = [&](EdgeId t) {
      const Edge& e = g.edge(t);
      for (std::size_t i = 0; i < cyc.vertices.size(); ++i)
        if (e.has(cyc.vertices[i])) return i;
      throw std::logic_error("build_chi0: touching edge misses its cycle");
    };
    const std::size_t k = cyc.vertices.size();
    const std::size_t a = contact(cyc.touching[0]), b = contact(cyc.touching[1]);
    for (std::size_t i = a; i != b; i = (i + 1) % k)
      pg.shade[static_cast<std::size_t>(cyc.edges[i])] = Shade::Purple;
    for (std::size_t i = b; i != a; i = (i + 1) % k)
      pg.shade[static_cast<std::size_t>(cyc.edges[i])] = Shade::Green;
  }

  for (const auto& th : d.h3) {
    int odd = -1;  // the path whose parity differs from the other two
    for (int i = 0; i < 3; ++i) {
      int p = th.paths[static_cast<std::size_t>(i)].length() % 2;
      int q = th.paths[static_cast<std::size_t>((i + 1) % 3)].length() % 2;
      int r = th.paths[static_cast<std::size_t>((i + 2) % 3)].length() % 2;
      if (q == r && (p != q || odd < 0)) odd = i;
    }
    for (int i = 0; i < 3; ++i)
      paint(th.paths[static_cast<std::size_t>(i)].edges, i == odd ? Shade::Green : Shade::Purple);
  }

  std::string why;
  if (!validate_chi0(g, pg, &why)) throw std::logic_error("build_chi0: " + why);
  return pg;
}

bool validate_chi0(const Graph& g, const PurpleGreenColouring& pg, std::string* why) {
  Colouring asRb(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    asRb.set(e, pg[e] == Shade::Purple ? Colour::Red : pg[e] == Shade::Green ? Colour::Blue
                                                                             : Colour::Uncoloured);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    int p = asRb.degree(v, Colour::Red), q = asRb.degree(v, Colour::Blue);
    if (p + q >= 2 && p < 2 && q < 2) {
      if (why) *why = "vertex " + std::to_string(v) + " has no repeated shade";
      return false;
    }
  }
  for (const auto& comp : monochromatic_components(asRb).components) {
    if (comp.shape == MonoComponent::Shape::NonLinear ||
        (comp.shape == MonoComponent::Shape::Cycle && comp.length() % 2)) {
      if (why) *why = "shade component through vertex " + std::to_string(comp.vertices.front()) +
                      " is neither a path nor an even cycle";
      return false;
    }
  }
  return true;
}

}  // namespace forest
