#include "forest/colouring.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace forest {

char colour_char(Colour c) {
  switch (c) {
    case Colour::Red: return 'R';
    case Colour::Blue: return 'B';
    default: return 'U';
  }
}

bool Colouring::is_total() const {
  return std::none_of(c_.begin(), c_.end(), [](Colour c) { return c == Colour::Uncoloured; });
}

int Colouring::count(Colour c) const {
  return static_cast<int>(std::count(c_.begin(), c_.end(), c));
}

int Colouring::degree(Vertex v, Colour c) const {
  int d = 0;
  for (const auto& inc : g_->incident(v)) d += (*this)[inc.edge] == c;
  return d;
}

EdgeId Colouring::other_edge(Vertex v, Colour c, EdgeId not_this) const {
  for (const auto& inc : g_->incident(v))
    if (inc.edge != not_this && (*this)[inc.edge] == c) return inc.edge;
  return kNoEdge;
}

std::vector<EdgeId> Colouring::coloured_edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < size(); ++e)
    if ((*this)[e] != Colour::Uncoloured) out.push_back(e);
  return out;
}

int edit_distance(const Colouring& a, const Colouring& b) {
  if (a.size() != b.size()) throw std::invalid_argument("edit_distance: different hosts");
  int d = 0;
  for (EdgeId e = 0; e < a.size(); ++e) d += a[e] != b[e];
  return d;
}

// ------------------------------------------------------------ components

ComponentSet monochromatic_components(const Colouring& chi) {
  const Graph& g = chi.graph();
  const int n = g.vertex_count();
  ComponentSet out;
  out.componentOfEdge.assign(static_cast<std::size_t>(g.edge_count()), -1);
  std::vector<std::uint8_t> deg(static_cast<std::size_t>(n));
  std::vector<int> mark(static_cast<std::size_t>(n), -1);
  for (Colour c : {Colour::Red, Colour::Blue}) {
    for (Vertex v = 0; v < n; ++v) {
      deg[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(chi.degree(v, c));
      if (deg[static_cast<std::size_t>(v)] == 3) out.monochromaticVertices.push_back(v);
    }
    for (EdgeId e0 = 0; e0 < g.edge_count(); ++e0) {
      if (chi[e0] != c || out.componentOfEdge[static_cast<std::size_t>(e0)] >= 0) continue;
      const int id = static_cast<int>(out.components.size());
      MonoComponent comp;
      comp.colour = c;
      // Label the component; mark[] holds the component id of queued vertices.
      std::vector<Vertex> verts = {g.edge(e0).u, g.edge(e0).v};
      std::vector<EdgeId> edges = {e0};
      out.componentOfEdge[static_cast<std::size_t>(e0)] = id;
      mark[static_cast<std::size_t>(verts[0])] = id;
      mark[static_cast<std::size_t>(verts[1])] = id;
      bool nonLinear = false;
      int ends = 0;
      for (std::size_t head = 0; head < verts.size(); ++head) {
        Vertex v = verts[head];
        for (const auto& inc : g.incident(v)) {
          if (chi[inc.edge] != c || out.componentOfEdge[static_cast<std::size_t>(inc.edge)] >= 0)
            continue;
          out.componentOfEdge[static_cast<std::size_t>(inc.edge)] = id;
          edges.push_back(inc.edge);
          if (mark[static_cast<std::size_t>(inc.nb)] != id) {
            mark[static_cast<std::size_t>(inc.nb)] = id;
            verts.push_back(inc.nb);
          }
        }
      }
      for (Vertex v : verts) {
        int d = deg[static_cast<std::size_t>(v)];
        if (d == 3) nonLinear = true;
        if (d == 1) ++ends;
      }
      if (nonLinear) {
        comp.shape = MonoComponent::Shape::NonLinear;
        comp.vertices = std::move(verts);
        comp.edges = std::move(edges);
      } else {
        comp.shape = ends == 0 ? MonoComponent::Shape::Cycle : MonoComponent::Shape::Path;
        Vertex start = ends == 0 ? *std::min_element(verts.begin(), verts.end())
                                 : *std::find_if(verts.begin(), verts.end(), [&](Vertex v) {
                                     return deg[static_cast<std::size_t>(v)] == 1;
                                   });
        Vertex v = start;
        EdgeId prev = kNoEdge;
        comp.vertices.push_back(v);
        for (;;) {
          EdgeId nx = chi.other_edge(v, c, prev);
          if (nx == kNoEdge) break;
          Vertex w = g.edge(nx).other(v);
          comp.edges.push_back(nx);
          if (w == start) break;
          comp.vertices.push_back(w);
          prev = nx;
          v = w;
        }
      }
      out.components.push_back(std::move(comp));
    }
  }
  std::sort(out.monochromaticVertices.begin(), out.monochromaticVertices.end());
  out.monochromaticVertices.erase(
      std::unique(out.monochromaticVertices.begin(), out.monochromaticVertices.end()),
      out.monochromaticVertices.end());
  return out;
}

// --------------------------------------------------------------- profile

std::int64_t ComponentProfile::count(Colour c, int t) const {
  const auto& m = paths(c);
  auto it = m.find(t);
  return it == m.end() ? 0 : it->second;
}

std::int64_t ComponentProfile::edges(Colour c) const {
  std::int64_t total = 0;
  for (auto [t, k] : paths(c)) total += t * k;
  for (auto [t, k] : c == Colour::Red ? redCycles : blueCycles) total += t * k;
  return total;
}

int ComponentProfile::max_length() const {
  int best = 0;
  for (const auto* m : {&redPaths, &bluePaths, &redCycles, &blueCycles})
    if (!m->empty()) best = std::max(best, m->rbegin()->first);
  return best;
}

std::int64_t ComponentProfile::max_imbalance() const {
  std::int64_t best = 0;
  for (auto [t, k] : redPaths) best = std::max<std::int64_t>(best, std::llabs(k - count(Colour::Blue, t)));
  for (auto [t, k] : bluePaths) best = std::max<std::int64_t>(best, std::llabs(k - count(Colour::Red, t)));
  return best;
}

ComponentProfile profile(const ComponentSet& comps) {
  ComponentProfile p;
  for (const auto& c : comps.components) {
    bool red = c.colour == Colour::Red;
    switch (c.shape) {
      case MonoComponent::Shape::Path: ++(red ? p.redPaths : p.bluePaths)[c.length()]; break;
      case MonoComponent::Shape::Cycle: ++(red ? p.redCycles : p.blueCycles)[c.length()]; break;
      case MonoComponent::Shape::NonLinear: ++p.nonLinear; break;
    }
  }
  return p;
}

ComponentProfile profile(const Colouring& chi) { return profile(monochromatic_components(chi)); }

ProfileDelta profile_delta(const ComponentProfile& before, const ComponentProfile& after) {
  ProfileDelta d;
  auto diff = [](const std::map<int, std::int64_t>& a, const std::map<int, std::int64_t>& b,
                 std::map<int, std::int64_t>& out) {
    for (auto [t, k] : b) out[t] += k;
    for (auto [t, k] : a) out[t] -= k;
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  };
  diff(before.redPaths, after.redPaths, d.red);
  diff(before.bluePaths, after.bluePaths, d.blue);
  return d;
}

namespace {

void write_map(std::ostringstream& os, const std::map<int, std::int64_t>& m) {
  bool first = true;
  os << '{';
  for (auto [t, k] : m) {
    os << (first ? "" : ",") << t << ':' << k;
    first = false;
  }
  os << '}';
}

}  // namespace

std::string to_string(const ProfileDelta& d) {
  std::ostringstream os;
  os << "dr=";
  write_map(os, d.red);
  os << " db=";
  write_map(os, d.blue);
  return os.str();
}

std::string to_string(const ComponentProfile& p) {
  std::ostringstream os;
  os << "r=";
  write_map(os, p.redPaths);
  os << " b=";
  write_map(os, p.bluePaths);
  if (!p.redCycles.empty() || !p.blueCycles.empty()) {
    os << " rc=";
    write_map(os, p.redCycles);
    os << " bc=";
    write_map(os, p.blueCycles);
  }
  if (p.nonLinear) os << " nonlinear=" << p.nonLinear;
  return os.str();
}

bool is_isomorphic_linear_forests(const Colouring& chi) {
  if (!chi.is_total()) throw std::invalid_argument("is_isomorphic_linear_forests: colouring not total");
  auto p = profile(chi);
  return p.nonLinear == 0 && p.redCycles.empty() && p.blueCycles.empty() &&
         p.redPaths == p.bluePaths;
}

// ------------------------------------------------------------- text form

std::string to_text(const Colouring& chi) {
  std::ostringstream os;
  const Graph& g = chi.graph();
  for (EdgeId e = 0; e < chi.size(); ++e)
    os << e << ' ' << g.edge(e).u << ' ' << g.edge(e).v << ' ' << colour_char(chi[e]) << '\n';
  return os.str();
}

Colouring parse_colouring(const Graph& g, std::string_view text) {
  Colouring chi(g);
  std::vector<char> seen(static_cast<std::size_t>(g.edge_count()), 0);
  std::istringstream is{std::string(text)};
  std::string line;
  int lineNo = 0;
  while (std::getline(is, line)) {
    ++lineNo;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    long long e, u, v;
    std::string col;
    if (!(ls >> e)) continue;
    if (!(ls >> u >> v >> col) || col.size() != 1)
      throw std::invalid_argument("colouring line " + std::to_string(lineNo) + ": malformed");
    if (e < 0 || e >= g.edge_count())
      throw std::invalid_argument("colouring line " + std::to_string(lineNo) + ": edge id out of range");
    const Edge& ed = g.edge(static_cast<EdgeId>(e));
    if (!((ed.u == u && ed.v == v) || (ed.u == v && ed.v == u)))
      throw std::invalid_argument("colouring line " + std::to_string(lineNo) +
                                  ": endpoints do not match the host edge");
    Colour c = col[0] == 'R' ? Colour::Red : col[0] == 'B' ? Colour::Blue : Colour::Uncoloured;
    if (col[0] != 'R' && col[0] != 'B' && col[0] != 'U')
      throw std::invalid_argument("colouring line " + std::to_string(lineNo) + ": bad colour");
    if (seen[static_cast<std::size_t>(e)]++)
      throw std::invalid_argument("colouring line " + std::to_string(lineNo) + ": duplicate edge");
    chi.set(static_cast<EdgeId>(e), c);
  }
  return chi;
}

}  // namespace forest
