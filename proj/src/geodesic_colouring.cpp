#include "forest/geodesic_colouring.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "forest/extendability.hpp"
#include "forest/geodesics.hpp"

namespace forest {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

// The neighbour of v other than a and b.
Vertex third_neighbour(const Graph& g, Vertex v, Vertex a, Vertex b) {
  for (const auto& inc : g.incident(v))
    if (inc.nb != a && inc.nb != b) return inc.nb;
  return kNoVertex;
}

std::vector<Vertex> neighbours_except(const Graph& g, Vertex v, Vertex skip) {
  std::vector<Vertex> out;
  for (const auto& inc : g.incident(v))
    if (inc.nb != skip) out.push_back(inc.nb);
  return out;
}

std::vector<Vertex> common_neighbours(const Graph& g, Vertex a, Vertex b) {
  std::vector<Vertex> out;
  for (const auto& x : g.incident(a))
    if (g.adjacent(x.nb, b)) out.push_back(x.nb);
  return out;
}

Verdict fail(std::string why) { return {false, std::move(why)}; }

// Host vertices for each template slot. Arms run outwards from Q0; a Type II
// arm ends back on q0[3].
GadgetInstance embed(GadgetKind kind, int ell, const std::vector<Vertex>& q0,
                     const std::vector<Vertex>& q1, const std::vector<Vertex>& q2,
                     const std::array<Vertex, 5>& eOuter, const std::array<Vertex, 4>& fOuter) {
  GadgetInstance inst;
  inst.tmpl = instantiate(kind, ell, static_cast<int>(q1.size()) - 1);
  const auto& t = inst.tmpl;
  inst.map.assign(idx(t.h.vertex_count()), kNoVertex);
  auto put = [&](const std::vector<Vertex>& slots, const std::vector<Vertex>& host) {
    if (slots.size() != host.size()) throw std::logic_error("embed: slot count mismatch");
    for (std::size_t i = 0; i < slots.size(); ++i) inst.map[idx(slots[i])] = host[i];
  };
  put(t.q0, q0);
  put(t.q1, q1);
  if (kind == GadgetKind::TypeI) put(t.q2, q2);
  for (std::size_t i = 0; i < 5; ++i) inst.map[idx(t.h.edge(t.e[i]).v)] = eOuter[i];
  if (kind == GadgetKind::TypeI)
    for (std::size_t i = 0; i < 4; ++i) inst.map[idx(t.h.edge(t.f[i]).v)] = fOuter[i];
  return inst;
}

void check_gadget(const Graph& g, const Colouring& phi, const GadgetInstance& inst,
                  const std::string& where) {
  std::string why;
  if (!is_valid_embedding(g, inst, &why)) throw GeodesicError(where + ": " + why);
  if (gadget_state(phi, inst) != 0)
    throw GeodesicError(where + ": colouring does not match the gadget");
}

// Endpoints of the f edges at the far end of an arm.
std::array<Vertex, 4> f_outers(const Graph& g, Vertex a, Vertex aFrom, Vertex b, Vertex bFrom) {
  auto ua = neighbours_except(g, a, aFrom), ub = neighbours_except(g, b, bFrom);
  return {ua[0], ua[1], ub[0], ub[1]};
}

std::vector<int> tree_distances(const std::vector<std::vector<Vertex>>& adj,
                                const std::vector<int>& local, Vertex s) {
  std::vector<int> d(adj.size(), -1);
  std::vector<int> queue{local[idx(s)]};
  d[idx(queue[0])] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (Vertex nb : adj[idx(queue[h])]) {
      int j = local[idx(nb)];
      if (d[idx(j)] < 0) {
        d[idx(j)] = d[idx(queue[h])] + 1;
        queue.push_back(j);
      }
    }
  return d;
}

}  // namespace

// ------------------------------------------------------------- context

GeodesicContext GeodesicContext::make(const Graph& g, std::vector<Vertex> path) {
  if (path.size() < 2 || !is_geodesic(g, path))
    throw std::invalid_argument("geodesic context: path is not a geodesic");
  GeodesicContext ctx;
  ctx.g = &g;
  ctx.indexOf.assign(idx(g.vertex_count()), -1);
  for (std::size_t i = 0; i < path.size(); ++i) ctx.indexOf[idx(path[i])] = static_cast<int>(i);
  ctx.pendant.assign(path.size(), kNoVertex);
  for (std::size_t i = 1; i + 1 < path.size(); ++i)
    ctx.pendant[i] = third_neighbour(g, path[i], path[i - 1], path[i + 1]);
  ctx.path = std::move(path);
  return ctx;
}

EdgeId GeodesicContext::path_edge(int i) const {
  return g->edge_between(path[idx(i)], path[idx(i + 1)]);
}

EdgeId GeodesicContext::pendant_edge(int i) const {
  return g->edge_between(path[idx(i)], pendant[idx(i)]);
}

std::string to_string(CombCase c) {
  switch (c) {
    case CombCase::I: return "I";
    case CombCase::II: return "II";
    case CombCase::III: return "III";
  }
  return "?";
}

std::string to_string(GadgetCase c) {
  switch (c) {
    case GadgetCase::I: return "I";
    case GadgetCase::II: return "II";
    case GadgetCase::III: return "III";
    case GadgetCase::Fallback: return "fallback";
  }
  return "?";
}

// ------------------------------------------------------------- comb

bool has_no_common_neighbours(const GeodesicContext& ctx) {
  for (Vertex v = 0; v < ctx.g->vertex_count(); ++v) {
    if (ctx.on_path(v)) continue;
    int hits = 0;
    for (const auto& inc : ctx.g->incident(v)) hits += ctx.on_path(inc.nb);
    if (hits >= 2) return false;
  }
  return true;
}

CombClassification classify_comb_case(const GeodesicContext& ctx, int ell) {
  const Graph& g = *ctx.g;
  const int L = ctx.length();
  if (L < ell + 36) throw GeodesicError("comb: path of length " + std::to_string(L) + " is too short");
  if (!has_no_common_neighbours(ctx)) throw GeodesicError("comb: path vertices share a neighbour");
  const auto& pp = ctx.pendant;

  for (int s = 10; s <= L - ell - 10; ++s)
    if (common_neighbours(g, pp[idx(s - 1)], pp[idx(s + 1)]).empty()) return {CombCase::I, s, kNoVertex};

  bool caseII = true;
  for (int i = 12; i <= L - ell - 12 && caseII; ++i) {
    bool found = false;
    for (Vertex w : common_neighbours(g, pp[idx(i - 1)], pp[idx(i + 1)]))
      found = found || w == pp[idx(i - 2)] || w == pp[idx(i)] || w == pp[idx(i + 2)];
    caseII = found;
  }
  if (caseII) {
    // The pendants in the window must induce a forest.
    std::vector<int> parent(idx(g.vertex_count()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[idx(x)] != x) x = parent[idx(x)] = parent[idx(parent[idx(x)])];
      return x;
    };
    std::vector<char> inWindow(idx(g.vertex_count()), 0);
    for (int j = 14; j <= L - ell - 14; ++j) inWindow[idx(pp[idx(j)])] = 1;
    for (const auto& e : g.edges()) {
      if (!inWindow[idx(e.u)] || !inWindow[idx(e.v)]) continue;
      int a = find(e.u), b = find(e.v);
      if (a == b) {
        caseII = false;
        break;
      }
      parent[idx(a)] = b;
    }
    if (caseII) return {CombCase::II, 18, kNoVertex};
  }

  std::vector<char> isPendant(idx(g.vertex_count()), 0);
  for (int i = 1; i < L; ++i) isPendant[idx(pp[idx(i)])] = 1;
  for (int s = 12; s <= L - ell - 10; ++s) {
    auto common = common_neighbours(g, pp[idx(s - 1)], pp[idx(s + 1)]);
    if (common.size() == 1 && !isPendant[idx(common[0])]) return {CombCase::III, s, common[0]};
  }
  throw GeodesicError("comb: no case applies");
}

namespace {

// Path and pendant pattern shared by comb Cases II and III and the short comb.
void paint_spine(const GeodesicContext& ctx, Colouring& phi, int s, int ell) {
  for (int i = s - 3; i <= s + ell; ++i) {
    const bool red = i == s - 3 || i == s - 1 || i == s + ell;
    phi.set(ctx.path_edge(i), red ? Colour::Red : Colour::Blue);
  }
  for (int i = s - 2; i <= s + ell; ++i) phi.set(ctx.pendant_edge(i), Colour::Red);
}

std::array<Vertex, 5> comb_e_outers(const GeodesicContext& ctx, int s, int ell) {
  const auto& p = ctx.path;
  const auto& pp = ctx.pendant;
  return {p[idx(s - 3)], pp[idx(s - 2)], pp[idx(s)], p[idx(s + ell + 1)], pp[idx(s + ell)]};
}

std::vector<Vertex> q0_of(const GeodesicContext& ctx, int s, int ell) {
  return {ctx.path.begin() + s - 2, ctx.path.begin() + s + ell + 1};
}

}  // namespace

GeodesicColouring comb_colour(const GeodesicContext& ctx, int ell, const CombClassification& c) {
  const Graph& g = *ctx.g;
  const auto& p = ctx.path;
  const auto& pp = ctx.pendant;
  const int s = c.s;
  GeodesicColouring out{Colouring(g), {}, "comb-" + to_string(c.kind)};
  Colouring& phi = out.phi;
  const Vertex a = pp[idx(s - 1)], b = pp[idx(s + 1)];

  if (c.kind == CombCase::I) {
    for (int i = s - 10; i < s + ell + 10; ++i) {
      const bool red = i == s - 3 || i == s - 1 || i == s + ell;
      phi.set(ctx.path_edge(i), red ? Colour::Red : Colour::Blue);
    }
    for (int i = s - 9; i <= s + ell + 9; ++i) {
      const bool blue = i == s - 3 || i == s + ell + 1;
      phi.set(ctx.pendant_edge(i), blue ? Colour::Blue : Colour::Red);
    }
    auto us = neighbours_except(g, a, p[idx(s - 1)]);
    auto ws = neighbours_except(g, b, p[idx(s + 1)]);
    for (Vertex u : us) phi.set(g.edge_between(a, u), Colour::Blue);
    for (Vertex w : ws) phi.set(g.edge_between(b, w), Colour::Blue);

    // Uncoloured edges inside {u, u', w, w'} go red, except one edge of any
    // cycle among them that crosses from the u side to the w side.
    std::vector<Vertex> group = us;
    group.insert(group.end(), ws.begin(), ws.end());
    std::vector<EdgeId> inner;
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        EdgeId e = g.edge_between(group[i], group[j]);
        if (e != kNoEdge && phi[e] == Colour::Uncoloured &&
            std::find(inner.begin(), inner.end(), e) == inner.end())
          inner.push_back(e);
      }
    std::vector<EdgeId> cyc = inner;
    for (bool pruned = true; pruned;) {
      pruned = false;
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        for (Vertex end : {g.edge(cyc[i]).u, g.edge(cyc[i]).v}) {
          int deg = 0;
          for (EdgeId f : cyc) deg += g.edge(f).has(end);
          if (deg < 2) {
            cyc.erase(cyc.begin() + static_cast<std::ptrdiff_t>(i));
            pruned = true;
            break;
          }
        }
        if (pruned) break;
      }
    }
    auto uSide = [&](Vertex v) { return std::find(us.begin(), us.end(), v) != us.end(); };
    EdgeId keepBlue = kNoEdge;
    for (EdgeId e : cyc)
      if (uSide(g.edge(e).u) != uSide(g.edge(e).v)) keepBlue = e;
    if (keepBlue == kNoEdge && !cyc.empty()) keepBlue = cyc.front();
    for (EdgeId e : inner) phi.set(e, e == keepBlue ? Colour::Blue : Colour::Red);

    out.gadget = embed(GadgetKind::TypeI, ell, q0_of(ctx, s, ell), {p[idx(s - 1)], a},
                       {p[idx(s + 1)], b}, comb_e_outers(ctx, s, ell),
                       f_outers(g, a, p[idx(s - 1)], b, p[idx(s + 1)]));
  } else if (c.kind == CombCase::II) {
    paint_spine(ctx, phi, s, ell);
    for (Vertex u : neighbours_except(g, a, p[idx(s - 1)])) phi.set(g.edge_between(a, u), Colour::Blue);
    for (Vertex w : neighbours_except(g, b, p[idx(s + 1)])) phi.set(g.edge_between(b, w), Colour::Blue);
    out.gadget = embed(GadgetKind::TypeI, ell, q0_of(ctx, s, ell), {p[idx(s - 1)], a},
                       {p[idx(s + 1)], b}, comb_e_outers(ctx, s, ell),
                       f_outers(g, a, p[idx(s - 1)], b, p[idx(s + 1)]));
  } else {
    paint_spine(ctx, phi, s, ell);
    phi.set(g.edge_between(a, c.w), Colour::Red);
    phi.set(g.edge_between(b, c.w), Colour::Red);
    for (bool changed = true; changed;) {
      changed = false;
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (phi.degree(v, Colour::Uncoloured) == 0) continue;
        Colour fill = Colour::Uncoloured;
        if (phi.degree(v, Colour::Red) == 2) fill = Colour::Blue;
        else if (phi.degree(v, Colour::Blue) == 2) fill = Colour::Red;
        if (fill == Colour::Uncoloured) continue;
        for (const auto& inc : g.incident(v))
          if (phi[inc.edge] == Colour::Uncoloured) phi.set(inc.edge, fill);
        changed = true;
      }
    }
    out.gadget = embed(GadgetKind::TypeII, ell, q0_of(ctx, s, ell),
                       {p[idx(s - 1)], a, c.w, b, p[idx(s + 1)]}, {}, comb_e_outers(ctx, s, ell), {});
  }
  check_gadget(g, phi, out.gadget, out.route);
  return out;
}

GeodesicColouring short_comb_colour(const GeodesicContext& ctx, int ell) {
  const Graph& g = *ctx.g;
  const auto& p = ctx.path;
  const int s = 3;
  if (ctx.length() < ell + 4)
    throw GeodesicError("short comb: path of length " + std::to_string(ctx.length()) + " is too short");
  GeodesicColouring out{Colouring(g), {}, "short-comb"};
  paint_spine(ctx, out.phi, s, ell);
  const Vertex a = ctx.pendant[idx(s - 1)], b = ctx.pendant[idx(s + 1)];
  if (a == b) throw GeodesicError("short comb: pendants coincide");
  for (Vertex u : neighbours_except(g, a, p[idx(s - 1)])) {
    EdgeId e = g.edge_between(a, u);
    if (out.phi[e] == Colour::Red) throw GeodesicError("short comb: f edge already red");
    out.phi.set(e, Colour::Blue);
  }
  for (Vertex w : neighbours_except(g, b, p[idx(s + 1)])) {
    EdgeId e = g.edge_between(b, w);
    if (out.phi[e] == Colour::Red) throw GeodesicError("short comb: f edge already red");
    out.phi.set(e, Colour::Blue);
  }
  out.gadget = embed(GadgetKind::TypeI, ell, q0_of(ctx, s, ell), {p[idx(s - 1)], a},
                     {p[idx(s + 1)], b}, comb_e_outers(ctx, s, ell),
                     f_outers(g, a, p[idx(s - 1)], b, p[idx(s + 1)]));
  check_gadget(g, out.phi, out.gadget, out.route);
  if (auto v = validate_comb_colouring(ctx, out.phi); !v) throw GeodesicError("short comb: " + v.why);
  return out;
}

Verdict validate_local_colouring(const GeodesicContext& ctx, const Colouring& phi, int radius) {
  const Graph& g = *ctx.g;
  auto dist = bfs_distances(g, ctx.path);
  for (EdgeId e : phi.coloured_edges()) {
    int du = dist[idx(g.edge(e).u)], dv = dist[idx(g.edge(e).v)];
    if (std::min(du, dv) > radius)
      return fail("edge " + std::to_string(e) + " is coloured beyond distance " + std::to_string(radius));
  }
  if (coloured_components(phi).size() > 1) return fail("coloured edges are not connected");
  if (Vertex w = kNoVertex; !satisfies_e1(phi, &w))
    return fail("vertex " + std::to_string(w) + " has two coloured edges of one colour");
  if (auto cycles = single_colour_cycles(phi, 1); !cycles.empty())
    return fail("single-colour cycle of length " + std::to_string(cycles.front().size()));
  return {};
}

// ------------------------------------------------------------- precolouring

std::array<EdgeId, 11> ExceptionalConfig::edges(const Graph& g) const {
  auto e = [&](Vertex a, Vertex b) { return g.edge_between(a, b); };
  return {e(x[0], x[1]), e(x[1], x[2]), e(x[2], x[3]), e(x[3], x[4]), e(y[0], y[1]), e(y[1], y[2]),
          e(x[0], y[0]), e(x[1], y[0]),  e(x[2], y[1]), e(x[3], y[2]), e(x[4], y[2])};
}

namespace {

// Colours of the canonical edges as precolouring leaves them, and after the
// repair.
constexpr char kExceptionalBefore[] = "RBBRRRBBRBB";
constexpr char kExceptionalAfter[] = "RBRBRBBBBBR";

Colour colour_of(char c) { return c == 'R' ? Colour::Red : Colour::Blue; }

std::optional<ExceptionalConfig> match_exceptional(const GeodesicContext& ctx, const Colouring& phi,
                                                   const OrientedOverlay& d, Vertex y2) {
  const Graph& g = *ctx.g;
  if (ctx.on_path(y2)) return std::nullopt;
  Vertex x3 = kNoVertex;
  std::vector<Vertex> ys;
  for (const auto& inc : g.incident(y2)) {
    if (phi[inc.edge] != Colour::Red || !d.into(inc.edge, y2)) return std::nullopt;
    if (ctx.on_path(inc.nb)) {
      if (x3 != kNoVertex) return std::nullopt;
      x3 = inc.nb;
    } else {
      ys.push_back(inc.nb);
    }
  }
  if (x3 == kNoVertex || ys.size() != 2) return std::nullopt;
  auto lowPair = [&](Vertex y) {
    std::vector<int> at;
    for (const auto& inc : g.incident(y))
      if (inc.nb != y2 && ctx.on_path(inc.nb)) at.push_back(ctx.indexOf[idx(inc.nb)]);
    if (at.size() != 2 || std::abs(at[0] - at[1]) != 1) return -100;
    return std::min(at[0], at[1]);
  };
  const int c = ctx.indexOf[idx(x3)];
  int a = lowPair(ys[0]), b = lowPair(ys[1]);
  if (b == c - 2 && a == c + 1) {
    std::swap(ys[0], ys[1]);
    std::swap(a, b);
  }
  if (a != c - 2 || b != c + 1) return std::nullopt;
  ExceptionalConfig cfg;
  for (int k = 0; k < 5; ++k) cfg.x[idx(k)] = ctx.path[idx(c - 2 + k)];
  cfg.y = {ys[0], y2, ys[1]};
  auto edges = cfg.edges(g);
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (edges[k] == kNoEdge || phi[edges[k]] != colour_of(kExceptionalBefore[k])) return std::nullopt;
  return cfg;
}

}  // namespace

Precolouring precolour(const GeodesicContext& ctx) {
  const Graph& g = *ctx.g;
  const auto& p = ctx.path;
  const int L = ctx.length();
  Precolouring pre{Colouring(g), {}, p, {}};
  Colouring& phi = pre.phi;
  OrientedOverlay& d = pre.overlay;
  d.head.assign(idx(g.edge_count()), kNoVertex);
  std::set<Vertex> heads;
  auto direct = [&](EdgeId e, Vertex head) {
    d.head[idx(e)] = head;
    d.order.push_back(e);
    heads.insert(head);
  };

  for (int i = 0; i < L; ++i) phi.set(ctx.path_edge(i), Colour::Blue);

  // Reroute interior edges through a shared off-path neighbour.
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 1; i + 1 <= L - 1; ++i) {
      const Vertex u = p[idx(i)], v = p[idx(i + 1)], w = ctx.pendant[idx(i)];
      const EdgeId uv = ctx.path_edge(i);
      if (phi[uv] != Colour::Blue || w != ctx.pendant[idx(i + 1)]) continue;
      const EdgeId uw = g.edge_between(u, w), wv = g.edge_between(w, v);
      if (phi[uw] != Colour::Uncoloured || phi[wv] != Colour::Uncoloured) continue;
      phi.set(uv, Colour::Red);
      phi.set(uw, Colour::Blue);
      phi.set(wv, Colour::Blue);
      direct(uw, w);
      direct(wv, w);
      auto at = std::find(pre.walk.begin(), pre.walk.end(), u);
      pre.walk.insert(at + 1, w);
      changed = true;
    }
  }

  // Pendants of interior vertices that still carry two blue path edges.
  for (int i = 1; i < L; ++i) {
    const EdgeId e = ctx.pendant_edge(i);
    if (phi[ctx.path_edge(i - 1)] == Colour::Blue && phi[ctx.path_edge(i)] == Colour::Blue &&
        phi[e] == Colour::Uncoloured) {
      phi.set(e, Colour::Red);
      direct(e, ctx.pendant[idx(i)]);
    }
  }

  // Two directed same-colour edges into v push the opposite colour out of
  // v. Blue pairs first, lowest edge id first.
  for (;;) {
    EdgeId pick = kNoEdge;
    Colour inColour = Colour::Blue;
    Vertex at = kNoVertex;
    for (Colour c : {Colour::Blue, Colour::Red}) {
      for (Vertex v : heads) {
        int in = 0, open = 0;
        EdgeId free = kNoEdge;
        for (const auto& inc : g.incident(v)) {
          if (phi[inc.edge] == c && d.into(inc.edge, v)) ++in;
          if (phi[inc.edge] == Colour::Uncoloured) {
            ++open;
            free = inc.edge;
          }
        }
        if (in == 2 && open == 1 && (pick == kNoEdge || free < pick)) {
          pick = free;
          at = v;
        }
      }
      if (pick != kNoEdge) {
        inColour = c;
        break;
      }
    }
    if (pick == kNoEdge) break;
    phi.set(pick, opposite(inColour));
    direct(pick, g.edge(pick).other(at));
  }

  // The two ends of the geodesic.
  auto drop = [&](Vertex v, Vertex u) {
    auto& w = pre.walk;
    if (w.size() >= 2 && w.front() == v && w[1] == u) w.erase(w.begin());
    else if (w.size() >= 2 && w.back() == v && w[w.size() - 2] == u) w.pop_back();
  };
  for (int end : {0, L}) {
    const Vertex v = p[idx(end)];
    const EdgeId uv = ctx.path_edge(end == 0 ? 0 : L - 1);
    const Vertex u = g.edge(uv).other(v);
    if (phi[uv] != Colour::Blue) continue;
    std::vector<EdgeId> blueIn, rest;
    for (const auto& inc : g.incident(v)) {
      if (inc.edge == uv) continue;
      (phi[inc.edge] == Colour::Blue && d.into(inc.edge, v) ? blueIn : rest).push_back(inc.edge);
    }
    if (blueIn.size() == 2) {
      phi.set(uv, Colour::Red);
      drop(v, u);
      continue;
    }
    if (blueIn.size() != 1 || phi[rest[0]] != Colour::Uncoloured) continue;
    const EdgeId vz = rest[0];
    const Vertex z = g.edge(vz).other(v);
    bool redIn = false, quiet = true;
    for (const auto& inc : g.incident(z)) {
      if (inc.edge == vz) continue;
      const Colour c = phi[inc.edge];
      redIn = redIn || (c == Colour::Red && d.into(inc.edge, z));
      quiet = quiet && (c == Colour::Uncoloured || (c == Colour::Blue && d.into(inc.edge, z)));
    }
    if (redIn) {
      phi.set(vz, Colour::Blue);
      phi.set(uv, Colour::Red);
      drop(v, u);
    } else if (quiet) {
      phi.set(vz, Colour::Red);
    }
  }

  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (phi.degree(v, Colour::Red) == 3)
      if (auto cfg = match_exceptional(ctx, phi, d, v)) pre.exceptional.push_back(*cfg);
  std::sort(pre.exceptional.begin(), pre.exceptional.end(),
            [&](const auto& a, const auto& b) { return ctx.indexOf[idx(a.x[0])] < ctx.indexOf[idx(b.x[0])]; });
  return pre;
}

Verdict validate_overlay(const GeodesicContext& ctx, const Precolouring& pre) {
  const Graph& g = *ctx.g;
  const auto& d = pre.overlay;
  std::vector<int> local(idx(g.vertex_count()), -1);
  std::vector<Vertex> verts;
  std::vector<int> outDeg, inDeg;
  std::vector<std::vector<Vertex>> adj;
  auto touch = [&](Vertex v) {
    if (local[idx(v)] < 0) {
      local[idx(v)] = static_cast<int>(verts.size());
      verts.push_back(v);
      outDeg.push_back(0);
      inDeg.push_back(0);
      adj.emplace_back();
    }
    return idx(local[idx(v)]);
  };
  std::vector<int> parent;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!d.directed(e)) continue;
    const Vertex head = d.head[idx(e)], tail = g.edge(e).other(head);
    std::size_t h = touch(head), t = touch(tail);
    ++inDeg[h];
    ++outDeg[t];
    adj[h].push_back(tail);
    adj[t].push_back(head);
  }
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (outDeg[i] > 1) return fail("vertex " + std::to_string(verts[i]) + " has out-degree " + std::to_string(outDeg[i]));

  std::vector<int> tree(verts.size(), -1);
  for (std::size_t s = 0; s < verts.size(); ++s) {
    if (tree[s] >= 0) continue;
    std::vector<std::size_t> comp{s};
    tree[s] = static_cast<int>(s);
    std::size_t edgeEnds = 0;
    for (std::size_t h = 0; h < comp.size(); ++h) {
      edgeEnds += adj[comp[h]].size();
      for (Vertex nb : adj[comp[h]]) {
        auto j = idx(local[idx(nb)]);
        if (tree[j] < 0) {
          tree[j] = static_cast<int>(s);
          comp.push_back(j);
        }
      }
    }
    const std::string at = " (tree at vertex " + std::to_string(verts[s]) + ")";
    if (edgeEnds / 2 != comp.size() - 1) return fail("directed edges contain a cycle" + at);
    int sinks = 0, leaves = 0;
    std::size_t root = comp[0];
    for (std::size_t i : comp)
      if (outDeg[i] == 0) {
        ++sinks;
        root = i;
      }
    if (sinks != 1) return fail(std::to_string(sinks) + " sinks in one tree" + at);
    for (std::size_t i : comp) {
      if (i == root) continue;
      if (inDeg[i] != 0 && inDeg[i] != 2)
        return fail("vertex " + std::to_string(verts[i]) + " has in-degree " + std::to_string(inDeg[i]));
      if (adj[i].size() == 1) {
        ++leaves;
        const int pos = ctx.indexOf[idx(verts[i])];
        if (pos < 1 || pos > ctx.length() - 1)
          return fail("leaf " + std::to_string(verts[i]) + " is not interior to the geodesic");
      }
    }
    auto d0 = tree_distances(adj, local, verts[comp[0]]);
    std::size_t far = comp[0];
    for (std::size_t i : comp)
      if (d0[i] > d0[far]) far = i;
    auto d1 = tree_distances(adj, local, verts[far]);
    int diam = 0;
    for (std::size_t i : comp) diam = std::max(diam, d1[i]);
    if (diam < leaves - 1)
      return fail("tree with " + std::to_string(leaves) + " leaves has diameter " + std::to_string(diam) + at);
    // Caterpillar: the vertices of degree at least two induce a path.
    int spine = 0, spineEnds = 0;
    for (std::size_t i : comp) {
      if (adj[i].size() < 2) continue;
      ++spine;
      int inner = 0;
      for (Vertex nb : adj[i]) inner += adj[idx(local[idx(nb)])].size() >= 2;
      if (inner > 2) return fail("tree is not a caterpillar" + at);
      spineEnds += inner <= 1;
    }
    if (spine > 1 && spineEnds != 2) return fail("tree is not a caterpillar" + at);
  }
  return {};
}

namespace {

// Checks shared by the precolouring validators. `walkEdges` marks the edges
// of P', whose blue component is exempt from the end condition.
Verdict common_checks(const GeodesicContext& ctx, const Colouring& phi, const std::vector<Vertex>& walk,
                      bool requireE1, const std::vector<Vertex>& allowedMono) {
  const Graph& g = *ctx.g;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const int r = phi.degree(v, Colour::Red), b = phi.degree(v, Colour::Blue);
    if (r + b == 2 && (r == 0 || b == 0))
      return fail("vertex " + std::to_string(v) + " has two coloured edges of one colour");
    if (requireE1 && r + b == 3 && (r == 0 || b == 0))
      return fail("vertex " + std::to_string(v) + " is monochromatic");
  }
  auto dist = bfs_distances(g, ctx.path);
  for (EdgeId e : phi.coloured_edges())
    if (std::min(dist[idx(g.edge(e).u)], dist[idx(g.edge(e).v)]) > 3)
      return fail("edge " + std::to_string(e) + " is coloured beyond distance 3");

  std::vector<char> onWalk(idx(g.edge_count()), 0);
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    EdgeId e = g.edge_between(walk[i], walk[i + 1]);
    if (e == kNoEdge) return fail("P' is not a path of the host");
    onWalk[idx(e)] = 1;
  }
  const ComponentSet comps = monochromatic_components(phi);
  for (Vertex v : comps.monochromaticVertices)
    if (std::find(allowedMono.begin(), allowedMono.end(), v) == allowedMono.end())
      return fail("vertex " + std::to_string(v) + " is monochromatic outside an exceptional copy");
  for (const auto& c : comps.components) {
    if (c.shape == MonoComponent::Shape::Cycle) return fail("monochromatic cycle of length " + std::to_string(c.length()));
    if (c.shape != MonoComponent::Shape::Path) continue;
    if (std::any_of(c.edges.begin(), c.edges.end(), [&](EdgeId e) { return onWalk[idx(e)] != 0; })) continue;
    const Colour other = opposite(c.colour);
    if (phi.degree(c.vertices.front(), other) != 2 && phi.degree(c.vertices.back(), other) != 2)
      return fail("path through edge " + std::to_string(c.edges.front()) +
                  " has no end meeting two opposite edges");
  }
  return {};
}

}  // namespace

Verdict validate_precolour(const GeodesicContext& ctx, const Precolouring& pre) {
  std::vector<Vertex> centres;
  for (const auto& cfg : pre.exceptional) centres.push_back(cfg.y[1]);
  return common_checks(ctx, pre.phi, pre.walk, false, centres);
}

FixedPrecolouring fix_exceptional(const GeodesicContext& ctx, const Precolouring& pre) {
  const Graph& g = *ctx.g;
  FixedPrecolouring out{pre.phi, pre.walk, pre.exceptional};
  for (const auto& cfg : pre.exceptional) {
    auto edges = cfg.edges(g);
    for (std::size_t k = 0; k < edges.size(); ++k) out.phi.set(edges[k], colour_of(kExceptionalAfter[k]));
    auto& w = out.walk;
    auto from = std::find(w.begin(), w.end(), cfg.x[2]);
    auto to = std::find(from, w.end(), cfg.x[4]);
    if (from == w.end() || to == w.end()) throw std::logic_error("fix: exceptional copy is not on P'");
    const std::array<Vertex, 3> detour{cfg.y[1], cfg.y[2], cfg.x[3]};
    w.insert(w.erase(from + 1, to), detour.begin(), detour.end());
  }
  return out;
}

Verdict validate_after_fix(const GeodesicContext& ctx, const FixedPrecolouring& fixed) {
  if (auto v = common_checks(ctx, fixed.phi, fixed.walk, true, {}); !v) return v;
  const Graph& g = *ctx.g;
  std::set<Vertex> seen(fixed.walk.begin(), fixed.walk.end());
  if (seen.size() != fixed.walk.size()) return fail("P' repeats a vertex");
  for (std::size_t i = 0; i + 1 < fixed.walk.size(); ++i)
    if (fixed.phi[g.edge_between(fixed.walk[i], fixed.walk[i + 1])] != Colour::Blue)
      return fail("P' edge at position " + std::to_string(i) + " is not blue");
  return {};
}

// ------------------------------------------------------------- gadgets on P'

GadgetSite detect_gadget_case(const GeodesicContext& ctx, const FixedPrecolouring& fixed, int ell) {
  const Graph& g = *ctx.g;
  const auto& w = fixed.walk;
  const int len = static_cast<int>(w.size()) - 1;
  if (len < 5 * ell + 200) throw GeodesicError("P' of length " + std::to_string(len) + " is too short");
  std::vector<int> pos(idx(g.vertex_count()), -1);
  for (std::size_t i = 0; i < w.size(); ++i) pos[idx(w[i])] = static_cast<int>(i);

  for (std::size_t k = 0; k < fixed.exceptional.size(); ++k) {
    const auto& cfg = fixed.exceptional[k];
    if (pos[idx(cfg.x[0])] >= ell + 20 && len - pos[idx(cfg.x[4])] >= ell + 20)
      return {GadgetCase::I, pos[idx(cfg.x[3])], kNoVertex, static_cast<int>(k)};
  }
  for (int s = 2 * ell + 40; s <= len - 2 * ell - 40; ++s)
    if (!ctx.on_path(w[idx(s)]) && g.adjacent(w[idx(s - 1)], w[idx(s + 1)]))
      return {GadgetCase::II, s, kNoVertex, -1};
  for (int s = 2 * ell + 100; s <= len - 2 * ell - 100; ++s)
    for (Vertex c : common_neighbours(g, w[idx(s - 1)], w[idx(s + 1)]))
      if (pos[idx(c)] < 0) return {GadgetCase::III, s, c, -1};
  return {GadgetCase::Fallback, 0, kNoVertex, -1};
}

GeodesicColouring create_gadget(const GeodesicContext& ctx, const FixedPrecolouring& fixed,
                                const GadgetSite& site, int ell) {
  if (site.kind == GadgetCase::Fallback) throw std::invalid_argument("create_gadget: fallback site");
  const Graph& g = *ctx.g;
  const auto& w = fixed.walk;
  const int s = site.s;
  GeodesicColouring out{fixed.phi, {}, "gadget-" + to_string(site.kind)};
  Colouring& phi = out.phi;
  auto at = [&](int k) { return w[idx(k)]; };
  auto walkEdge = [&](int k) { return g.edge_between(at(k), at(k + 1)); };
  auto pend = [&](int k) { return third_neighbour(g, at(k), at(k - 1), at(k + 1)); };
  auto blueIfEdge = [&](Vertex a, Vertex b) {
    EdgeId e = g.edge_between(a, b);
    if (e == kNoEdge) return;
    if (phi[e] == Colour::Red) throw GeodesicError(out.route + ": edge between pendants is red");
    phi.set(e, Colour::Blue);
  };
  const std::vector<Vertex> q0(w.begin() + s - 2, w.begin() + s + ell + 1);

  if (site.kind == GadgetCase::I) {
    for (int k : {s - 1, s - 3, s + ell}) phi.set(walkEdge(k), Colour::Red);
    blueIfEdge(pend(s + ell), pend(s + ell + 1));
    out.gadget = embed(GadgetKind::TypeII, ell, q0, {at(s - 1), at(s + 1)}, {},
                       {at(s - 5), at(s - 3), at(s - 3), at(s + ell + 1), pend(s + ell)}, {});
  } else {
    for (int k : {s - 3, s - 1, s + ell}) phi.set(walkEdge(k), Colour::Red);
    blueIfEdge(pend(s - 2), pend(s - 3));
    blueIfEdge(pend(s + ell), pend(s + ell + 1));
    std::vector<Vertex> arm{at(s - 1), at(s + 1)};
    if (site.kind == GadgetCase::III) arm = {at(s - 1), site.w, at(s + 1)};
    out.gadget = embed(GadgetKind::TypeII, ell, q0, arm, {},
                       {at(s - 3), pend(s - 2), pend(s), at(s + ell + 1), pend(s + ell)}, {});
  }
  check_gadget(g, phi, out.gadget, out.route);
  if (auto v = validate_partial_colouring(ctx, phi); !v) throw GeodesicError(out.route + ": " + v.why);
  return out;
}

GeodesicColouring colour_around_geodesic(const Graph& g, const std::vector<Vertex>& path, int ell) {
  const GeodesicContext ctx = GeodesicContext::make(g, path);
  const int L = ctx.length();
  if (L >= 5 * ell + 200) {
    const Precolouring pre = precolour(ctx);
    const FixedPrecolouring fixed = fix_exceptional(ctx, pre);
    if (static_cast<int>(fixed.walk.size()) - 1 >= 5 * ell + 200) {
      const GadgetSite site = detect_gadget_case(ctx, fixed, ell);
      if (site.kind != GadgetCase::Fallback) return create_gadget(ctx, fixed, site, ell);
    }
    const std::vector<Vertex> middle(path.begin() + 2 * ell + 80, path.end() - 2 * ell - 80);
    const GeodesicContext inner = GeodesicContext::make(g, middle);
    GeodesicColouring out = comb_colour(inner, ell, classify_comb_case(inner, ell));
    out.route += "-middle";
    return out;
  }
  if (L >= ell + 36) return comb_colour(ctx, ell, classify_comb_case(ctx, ell));
  return short_comb_colour(ctx, ell);
}

// ------------------------------------------------------------- fixtures

namespace {

class HostBuilder {
 public:
  Vertex add() { return n_++; }
  void join(Vertex u, Vertex v) { edges_.push_back({u, v}); }
  // Five-vertex cap hanging off v: K4 with one edge subdivided.
  void cap(Vertex v) {
    const Vertex x = add(), a = add(), b = add(), c = add(), d = add();
    join(v, x);
    join(x, a);
    join(x, b);
    join(a, c);
    join(a, d);
    join(b, c);
    join(b, d);
    join(c, d);
  }
  std::vector<Vertex> ring(int m) {
    std::vector<Vertex> r;
    for (int i = 0; i < m; ++i) r.push_back(add());
    for (int i = 0; i < m; ++i) join(r[idx(i)], r[idx((i + 1) % m)]);
    return r;
  }
  CubicGraph build() const { return CubicGraph(n_, edges_); }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

}  // namespace

GeodesicFixture comb_fixture(CombCase c, int ell) {
  const int L = ell + 36, m = 2 * L + 2;
  HostBuilder hb;
  GeodesicFixture f;
  f.name = "comb-" + to_string(c);
  const auto outer = hb.ring(m);
  if (c == CombCase::I) {
    for (Vertex v : outer) hb.cap(v);
  } else if (c == CombCase::II) {
    const auto inner = hb.ring(m);
    for (int i = 0; i < m; ++i) hb.join(outer[idx(i)], inner[idx(i)]);
  } else {
    // Pendants d_i, with a connector between d_{i-1} and d_{i+1} for every
    // i; connectors at even and odd positions are paired up.
    std::vector<Vertex> d, conn;
    for (int i = 0; i < m; ++i) d.push_back(hb.add());
    for (int i = 0; i < m; ++i) conn.push_back(hb.add());
    for (int i = 0; i < m; ++i) {
      hb.join(outer[idx(i)], d[idx(i)]);
      hb.join(conn[idx(i)], d[idx((i + m - 1) % m)]);
      hb.join(conn[idx(i)], d[idx((i + 1) % m)]);
    }
    for (int i = 0; i < m; i += 2) hb.join(conn[idx(i)], conn[idx(i + 1)]);
  }
  f.g = hb.build();
  f.path.assign(outer.begin(), outer.begin() + L + 1);
  return f;
}

GeodesicFixture gadget_fixture(GadgetCase c, int ell) {
  const int L = 5 * ell + 200, m = 2 * L + 2, k = L / 2;
  HostBuilder hb;
  GeodesicFixture f;
  f.name = "gadget-" + to_string(c);
  const auto ring = hb.ring(m);
  std::vector<char> capped(idx(m), 0);
  auto at = [&](int i) { return ring[idx(i)]; };
  if (c == GadgetCase::I) {
    const Vertex y1 = hb.add(), y2 = hb.add(), y3 = hb.add();
    hb.join(y1, at(k));
    hb.join(y1, at(k + 1));
    hb.join(y1, y2);
    hb.join(y3, at(k + 3));
    hb.join(y3, at(k + 4));
    hb.join(y3, y2);
    hb.join(y2, at(k + 2));
    for (int i = 0; i < 5; ++i) capped[idx(k + i)] = 1;
    for (int i = 0; i < 5; ++i) f.roles.emplace_back("x[" + std::to_string(i + 1) + "]", at(k + i));
    f.roles.emplace_back("y[1]", y1);
    f.roles.emplace_back("y[2]", y2);
    f.roles.emplace_back("y[3]", y3);
  } else if (c == GadgetCase::II) {
    const Vertex w = hb.add();
    hb.join(w, at(k));
    hb.join(w, at(k + 1));
    hb.cap(w);
    capped[idx(k)] = capped[idx(k + 1)] = 1;
    f.roles.emplace_back("w", w);
  } else if (c == GadgetCase::III) {
    const Vertex w = hb.add();
    hb.join(w, at(k - 1));
    hb.join(w, at(k + 1));
    hb.cap(w);
    capped[idx(k - 1)] = capped[idx(k + 1)] = 1;
    f.roles.emplace_back("w", w);
  }
  for (int i = 0; i < m; ++i)
    if (!capped[idx(i)]) hb.cap(at(i));
  f.g = hb.build();
  f.path.assign(ring.begin(), ring.begin() + L + 1);
  return f;
}

std::string fixture_to_text(const GeodesicFixture& f) {
  std::ostringstream os;
  os << "# fixture " << f.name << '\n' << to_edge_list(f.g);
  for (std::size_t i = 0; i < f.path.size(); ++i) os << "# role p[" << i << "] = " << f.path[i] << '\n';
  for (const auto& [name, v] : f.roles) os << "# role " << name << " = " << v << '\n';
  return os.str();
}

GeodesicFixture fixture_from_text(const std::string& text) {
  GeodesicFixture f;
  f.g = parse_edge_list(text);
  std::map<int, Vertex> path;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# fixture ", 0) == 0) {
      f.name = line.substr(10);
      continue;
    }
    if (line.rfind("# role ", 0) != 0) continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw std::invalid_argument("fixture: malformed role line: " + line);
    const std::string name = line.substr(7, eq - 7);
    const Vertex v = std::stoi(line.substr(eq + 3));
    if (v < 0 || v >= f.g.vertex_count()) throw std::invalid_argument("fixture: role vertex out of range");
    if (name.rfind("p[", 0) == 0 && name.back() == ']')
      path[std::stoi(name.substr(2, name.size() - 3))] = v;
    else
      f.roles.emplace_back(name, v);
  }
  for (const auto& [i, v] : path) {
    if (i != static_cast<int>(f.path.size())) throw std::invalid_argument("fixture: path roles have a gap");
    f.path.push_back(v);
  }
  return f;
}

}  // namespace forest
