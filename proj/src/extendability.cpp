#include "forest/extendability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "forest/base_colouring.hpp"

namespace forest {

std::vector<ColouredComponent> coloured_components(const Colouring& chi) {
  const Graph& g = chi.graph();
  std::vector<int> seen(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<ColouredComponent> out;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (seen[static_cast<std::size_t>(s)] >= 0 || chi.coloured_degree(s) == 0) continue;
    const int id = static_cast<int>(out.size());
    ColouredComponent comp;
    comp.vertices.push_back(s);
    seen[static_cast<std::size_t>(s)] = id;
    for (std::size_t head = 0; head < comp.vertices.size(); ++head) {
      Vertex v = comp.vertices[head];
      for (const auto& inc : g.incident(v)) {
        if (chi[inc.edge] == Colour::Uncoloured) continue;
        if (v < inc.nb) comp.edges.push_back(inc.edge);
        if (seen[static_cast<std::size_t>(inc.nb)] < 0) {
          seen[static_cast<std::size_t>(inc.nb)] = id;
          comp.vertices.push_back(inc.nb);
        }
      }
    }
    std::sort(comp.edges.begin(), comp.edges.end());
    out.push_back(std::move(comp));
  }
  return out;
}

int min_component_distance(const Graph& g, const std::vector<ColouredComponent>& comps, Vertex* from,
                           Vertex* to) {
  if (comps.size() < 2) return -1;
  // Multi-source BFS labelled by component; the closest pair crosses a
  // boundary between two Voronoi cells.
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> owner(n, -1), dist(n, -1);
  std::vector<Vertex> queue;
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (Vertex v : comps[c].vertices) {
      owner[static_cast<std::size_t>(v)] = static_cast<int>(c);
      dist[static_cast<std::size_t>(v)] = 0;
      queue.push_back(v);
    }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    for (const auto& inc : g.incident(v))
      if (dist[static_cast<std::size_t>(inc.nb)] < 0) {
        dist[static_cast<std::size_t>(inc.nb)] = dist[static_cast<std::size_t>(v)] + 1;
        owner[static_cast<std::size_t>(inc.nb)] = owner[static_cast<std::size_t>(v)];
        queue.push_back(inc.nb);
      }
  }
  int best = -1;
  for (const auto& e : g.edges()) {
    auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
    if (owner[u] < 0 || owner[v] < 0 || owner[u] == owner[v]) continue;
    int d = dist[u] + dist[v] + 1;
    if (best < 0 || d < best) {
      best = d;
      if (from) *from = e.u;
      if (to) *to = e.v;
    }
  }
  return best;
}

// ------------------------------------------------------------------- E3

namespace {

class CycleSearch {
 public:
  CycleSearch(const Colouring& chi, std::size_t limit, long budget)
      : chi_(chi), g_(chi.graph()), limit_(limit), budget_(budget),
        onPath_(static_cast<std::size_t>(g_.vertex_count()), 0) {}

  std::vector<std::vector<Vertex>> run() {
    for (Colour c : {Colour::Red, Colour::Blue}) {
      colour_ = c;
      for (EdgeId e0 = 0; e0 < g_.edge_count() && !done(); ++e0) {
        if (chi_[e0] != c) continue;
        root_ = e0;
        Vertex s = std::min(g_.edge(e0).u, g_.edge(e0).v);
        start_ = s;
        path_ = {s};
        onPath_[static_cast<std::size_t>(s)] = 1;
        Vertex t = g_.edge(e0).other(s);
        path_.push_back(t);
        onPath_[static_cast<std::size_t>(t)] = 1;
        extend(t, e0, false);
        onPath_[static_cast<std::size_t>(t)] = 0;
        onPath_[static_cast<std::size_t>(s)] = 0;
      }
    }
    return std::move(found_);
  }

 private:
  bool done() const { return found_.size() >= limit_ || budget_ <= 0; }

  bool usable(EdgeId e, bool lastUncoloured) const {
    Colour c = chi_[e];
    if (c == Colour::Uncoloured) return !lastUncoloured;
    return c == colour_ && e > root_;
  }

  void extend(Vertex v, EdgeId prev, bool lastUncoloured) {
    if (done()) return;
    --budget_;
    for (const auto& inc : g_.incident(v)) {
      if (inc.edge == prev || !usable(inc.edge, lastUncoloured)) continue;
      const bool unc = chi_[inc.edge] == Colour::Uncoloured;
      if (inc.nb == start_) {
        if (path_.size() >= 3) found_.push_back(path_);
        if (done()) return;
        continue;
      }
      if (onPath_[static_cast<std::size_t>(inc.nb)]) continue;
      // A vertex entered through an uncoloured edge must leave through a
      // coloured one, so it needs colour degree >= 1.
      if (unc && chi_.degree(inc.nb, colour_) == 0) continue;
      onPath_[static_cast<std::size_t>(inc.nb)] = 1;
      path_.push_back(inc.nb);
      extend(inc.nb, inc.edge, unc);
      path_.pop_back();
      onPath_[static_cast<std::size_t>(inc.nb)] = 0;
      if (done()) return;
    }
  }

  const Colouring& chi_;
  const Graph& g_;
  std::size_t limit_;
  long budget_;
  Colour colour_ = Colour::Red;
  EdgeId root_ = kNoEdge;
  Vertex start_ = kNoVertex;
  std::vector<Vertex> path_;
  std::vector<char> onPath_;
  std::vector<std::vector<Vertex>> found_;
};

}  // namespace

std::vector<std::vector<Vertex>> single_colour_cycles(const Colouring& chi, std::size_t limit,
                                                      long stepBudget) {
  return CycleSearch(chi, limit, stepBudget).run();
}

bool satisfies_e1(const Colouring& chi, Vertex* witness) {
  for (Vertex v = 0; v < chi.graph().vertex_count(); ++v) {
    if (chi.coloured_degree(v) >= 2 &&
        (chi.degree(v, Colour::Red) == 0 || chi.degree(v, Colour::Blue) == 0)) {
      if (witness) *witness = v;
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------------------ report

std::string ExtendabilityReport::summary() const {
  std::ostringstream os;
  os << "E1=" << (e1Ok ? "ok" : "fail");
  if (!e1Ok) os << "(vertex " << e1Witness << ')';
  os << " E2=" << (e2Ok ? "ok" : "fail");
  if (!e2Ok) os << '(' << e2Reason << ')';
  os << " E3=" << (e3Ok ? "ok" : "fail");
  if (!e3Ok) os << "(cycle of length " << e3Witness.size() << ')';
  os << " E4=" << (e4Ok ? "ok" : "fail");
  if (!e4Ok) os << '(' << e4Reason << ')';
  return os.str();
}

ExtendabilityReport check_extendable(const Graph& g, const Colouring& g0, const Config& cfg) {
  ExtendabilityReport r;
  r.e1Ok = satisfies_e1(g0, &r.e1Witness);

  auto comps = coloured_components(g0);
  for (const auto& c : comps) {
    if (static_cast<int>(c.edges.size()) > cfg.componentSizeCap) {
      r.e2Ok = false;
      r.e2Reason = "component with " + std::to_string(c.edges.size()) + " edges exceeds cap " +
                   std::to_string(cfg.componentSizeCap);
      r.e2Witness = c.vertices;
      break;
    }
  }
  if (r.e2Ok) {
    Vertex a = kNoVertex, b = kNoVertex;
    int d = min_component_distance(g, comps, &a, &b);
    if (d >= 0 && d < 10) {
      r.e2Ok = false;
      r.e2Reason = "components at distance " + std::to_string(d);
      r.e2Witness = {a, b};
    }
  }

  // With components at distance >= 10, a cycle lacking two consecutive
  // uncoloured edges stays inside one component's neighbourhood, so the
  // violating cycles are exactly the single-colour ones.
  auto cycles = single_colour_cycles(g0, 1);
  if (!cycles.empty()) {
    r.e3Ok = false;
    r.e3Witness = cycles.front();
  }

  std::vector<char> mask(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    mask[static_cast<std::size_t>(e)] = g0[e] == Colour::Uncoloured;
  try {
    auto d = decompose_H123(g, mask);
    std::string why;
    if (!validate_decomposition(g, mask, d, &why)) {
      r.e4Ok = false;
      r.e4Reason = why;
    }
  } catch (const E4Error& err) {
    r.e4Ok = false;
    r.e4Reason = err.what();
    r.e4Witness = err.cycle;
  }
  return r;
}

}  // namespace forest
