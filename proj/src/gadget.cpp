#include "forest/gadget.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "forest/random.hpp"

namespace forest {

std::string to_string(GadgetKind k) { return k == GadgetKind::TypeI ? "I" : "II"; }
std::string to_string(Orientation o) { return o == Orientation::Blue ? "blue" : "red"; }

std::vector<Vertex> GadgetTemplate::core_vertices() const {
  std::vector<Vertex> core = q0;
  core.insert(core.end(), q1.begin(), q1.end());
  core.insert(core.end(), q2.begin(), q2.end());
  std::sort(core.begin(), core.end());
  core.erase(std::unique(core.begin(), core.end()), core.end());
  return core;
}

GadgetTemplate instantiate(GadgetKind kind, int ell, int armLength) {
  if (ell < 3) throw std::invalid_argument("instantiate: ell must be at least 3");
  if (armLength < 1) throw std::invalid_argument("instantiate: arm length must be at least 1");
  GadgetTemplate t;
  t.kind = kind;
  t.ell = ell;
  t.armLength = armLength;
  int next = 0;
  for (int i = 0; i <= ell + 2; ++i) t.q0.push_back(next++);

  std::vector<Edge> edges;
  std::vector<Colour> colour;
  auto add = [&](Vertex u, Vertex v, Colour c) {
    edges.push_back({u, v});
    colour.push_back(c);
    return static_cast<EdgeId>(edges.size() - 1);
  };
  for (int i = 0; i < ell + 2; ++i)
    add(t.q0[static_cast<std::size_t>(i)], t.q0[static_cast<std::size_t>(i + 1)],
        i == 1 ? Colour::Red : Colour::Blue);

  auto arm = [&](Vertex from, Vertex to, std::vector<Vertex>& out) {
    out.push_back(from);
    for (int i = 1; i < armLength; ++i) out.push_back(next++);
    out.push_back(to == kNoVertex ? next++ : to);
    for (std::size_t i = 0; i + 1 < out.size(); ++i) add(out[i], out[i + 1], Colour::Red);
  };
  if (kind == GadgetKind::TypeII) {
    arm(t.q0[1], t.q0[3], t.q1);
  } else {
    arm(t.q0[1], kNoVertex, t.q1);
    arm(t.q0[3], kNoVertex, t.q2);
  }

  const Vertex eEnds[5] = {t.q0[0], t.q0[0], t.q0[2], t.q0.back(), t.q0.back()};
  for (int i = 0; i < 5; ++i) t.e[static_cast<std::size_t>(i)] = add(eEnds[i], next++, Colour::Red);
  if (kind == GadgetKind::TypeI) {
    const Vertex fEnds[4] = {t.q1.back(), t.q1.back(), t.q2.back(), t.q2.back()};
    for (int i = 0; i < 4; ++i) t.f[static_cast<std::size_t>(i)] = add(fEnds[i], next++, Colour::Blue);
  }

  t.h = Graph(next, std::move(edges));
  t.colourA = colour;
  t.colourB = colour;
  std::swap(t.colourB[static_cast<std::size_t>(t.swap_first())],
            t.colourB[static_cast<std::size_t>(t.swap_second())]);
  return t;
}

// --------------------------------------------------------------- instances

EdgeId GadgetInstance::host_edge(const Graph& g, EdgeId te) const {
  const Edge& e = tmpl.h.edge(te);
  Vertex u = map[static_cast<std::size_t>(e.u)], v = map[static_cast<std::size_t>(e.v)];
  if (u == v || u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count()) return kNoEdge;
  return g.edge_between(u, v);
}

Colour GadgetInstance::expected(EdgeId te, bool swapped) const {
  Colour c = (swapped ? tmpl.colourB : tmpl.colourA)[static_cast<std::size_t>(te)];
  return orientation == Orientation::Blue ? c : opposite(c);
}

bool is_valid_embedding(const Graph& g, const GadgetInstance& inst, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const auto& t = inst.tmpl;
  if (static_cast<int>(inst.map.size()) != t.h.vertex_count()) return fail("map size mismatch");
  std::vector<Vertex> core;
  for (Vertex v : t.core_vertices()) core.push_back(inst.map[static_cast<std::size_t>(v)]);
  std::sort(core.begin(), core.end());
  if (std::adjacent_find(core.begin(), core.end()) != core.end()) return fail("core vertices collide");

  std::vector<EdgeId> host(static_cast<std::size_t>(t.h.edge_count()));
  for (EdgeId te = 0; te < t.h.edge_count(); ++te) {
    host[static_cast<std::size_t>(te)] = inst.host_edge(g, te);
    if (host[static_cast<std::size_t>(te)] == kNoEdge)
      return fail("template edge " + std::to_string(te) + " has no host edge");
  }
  for (EdgeId a = 0; a < t.h.edge_count(); ++a)
    for (EdgeId b = a + 1; b < t.h.edge_count(); ++b)
      if (host[static_cast<std::size_t>(a)] == host[static_cast<std::size_t>(b)] &&
          (t.colourA[static_cast<std::size_t>(a)] != t.colourA[static_cast<std::size_t>(b)] ||
           t.colourB[static_cast<std::size_t>(a)] != t.colourB[static_cast<std::size_t>(b)]))
        return fail("aliased edges disagree on colour");
  auto distinct = [&](EdgeId a, EdgeId b) {
    return a == kNoEdge || host[static_cast<std::size_t>(a)] != host[static_cast<std::size_t>(b)];
  };
  if (!distinct(t.e[0], t.e[1]) || !distinct(t.e[3], t.e[4])) return fail("e1/e2 or e4/e5 coincide");
  if (t.kind == GadgetKind::TypeI && (!distinct(t.f[0], t.f[1]) || !distinct(t.f[2], t.f[3])))
    return fail("f edges coincide");
  return true;
}

int gadget_state(const Colouring& chi, const GadgetInstance& inst) {
  const Graph& g = chi.graph();
  for (int state = 0; state < 2; ++state) {
    bool ok = true;
    for (EdgeId te = 0; te < inst.tmpl.h.edge_count() && ok; ++te) {
      EdgeId he = inst.host_edge(g, te);
      ok = he != kNoEdge && chi[he] == inst.expected(te, state == 1);
    }
    if (ok) return state;
  }
  return -1;
}

Colouring apply_swap(const Colouring& chi, const GadgetInstance& inst) {
  int state = gadget_state(chi, inst);
  if (state < 0) throw std::invalid_argument("apply_swap: host colouring does not match the gadget");
  Colouring out = chi;
  for (EdgeId te : {inst.tmpl.swap_first(), inst.tmpl.swap_second()})
    out.set(inst.host_edge(chi.graph(), te), inst.expected(te, state == 0));
  return out;
}

ProfileDelta measure_delta(const Colouring& chi, const GadgetInstance& inst) {
  auto before = profile(chi);
  if (before.nonLinear || !before.redCycles.empty() || !before.blueCycles.empty())
    throw std::invalid_argument("measure_delta: host components are not all paths");
  return profile_delta(before, profile(apply_swap(chi, inst)));
}

ProfileDelta contract_delta(int ell, Orientation o) {
  std::map<int, std::int64_t> m;
  --m[ell];
  ++m[ell - 1];
  ++m[2];
  --m[1];
  std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
  ProfileDelta d;
  (o == Orientation::Blue ? d.blue : d.red) = m;
  return d;
}

std::vector<GadgetInstance> find_surviving(const Colouring& chi,
                                           const std::vector<GadgetInstance>& registry) {
  std::vector<GadgetInstance> out;
  for (const auto& inst : registry)
    if (gadget_state(chi, inst) == 0) out.push_back(inst);
  return out;
}

std::string registry_to_text(const std::vector<GadgetInstance>& registry) {
  std::ostringstream os;
  for (const auto& inst : registry) {
    os << to_string(inst.tmpl.kind) << ' ' << inst.tmpl.ell << ' ' << inst.tmpl.armLength << ' '
       << to_string(inst.orientation);
    for (Vertex v : inst.map) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

std::vector<GadgetInstance> registry_from_text(const std::string& text) {
  std::vector<GadgetInstance> out;
  std::istringstream is(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(is, line)) {
    ++lineNo;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind, orient;
    int ell = 0, arm = 0;
    if (!(ls >> kind >> ell >> arm >> orient) || (kind != "I" && kind != "II") ||
        (orient != "blue" && orient != "red"))
      throw std::invalid_argument("registry line " + std::to_string(lineNo) + ": malformed header");
    GadgetInstance inst;
    inst.tmpl = instantiate(kind == "I" ? GadgetKind::TypeI : GadgetKind::TypeII, ell, arm);
    inst.orientation = orient == "blue" ? Orientation::Blue : Orientation::Red;
    for (Vertex v; ls >> v;) inst.map.push_back(v);
    if (static_cast<int>(inst.map.size()) != inst.tmpl.h.vertex_count())
      throw std::invalid_argument("registry line " + std::to_string(lineNo) + ": wrong vertex count");
    out.push_back(std::move(inst));
  }
  return out;
}

// --------------------------------------------------------------- hosts

GadgetHost embed_in_random_host(const GadgetTemplate& t, int extra, std::uint64_t seed) {
  Rng rng(seed);
  const int base = t.h.vertex_count();
  int stubsFromTemplate = 0;
  for (Vertex v = 0; v < base; ++v) stubsFromTemplate += 3 - t.h.degree(v);
  int m = std::max(extra, 0);
  if ((stubsFromTemplate + 3 * m) % 2) ++m;
  for (int attempt = 0; attempt < 20000; ++attempt) {
    if (attempt > 0 && attempt % 2000 == 0) m += 2;
    const int n = base + m;
    std::vector<Vertex> stubs;
    for (Vertex v = 0; v < n; ++v)
      for (int k = v < base ? t.h.degree(v) : 0; k < 3; ++k) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const auto& e : t.h.edges()) seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
    std::vector<Edge> edges = t.h.edges();
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      Vertex u = stubs[i], v = stubs[i + 1];
      ok = u != v && seen.insert({std::min(u, v), std::max(u, v)}).second;
      edges.push_back({u, v});
    }
    if (!ok) continue;
    GadgetHost out;
    out.g = CubicGraph(n, std::move(edges));
    out.inst.tmpl = t;
    out.inst.map.resize(static_cast<std::size_t>(base));
    std::iota(out.inst.map.begin(), out.inst.map.end(), 0);
    return out;
  }
  throw std::runtime_error("embed_in_random_host: no simple completion found");
}

std::optional<Colouring> complete_to_paths(const Colouring& partial, std::uint64_t seed, long maxSteps) {
  const Graph& g = partial.graph();
  Rng rng(seed);
  std::vector<char> fixed(static_cast<std::size_t>(g.edge_count()));
  Colouring chi = partial;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    fixed[static_cast<std::size_t>(e)] = partial[e] != Colour::Uncoloured;
    if (!fixed[static_cast<std::size_t>(e)]) chi.set(e, coin(rng) ? Colour::Red : Colour::Blue);
  }
  auto flip_random = [&](const std::vector<EdgeId>& pool) {
    std::vector<EdgeId> free;
    for (EdgeId e : pool)
      if (!fixed[static_cast<std::size_t>(e)]) free.push_back(e);
    if (free.empty()) return false;
    chi.flip(free[below(rng, free.size())]);
    return true;
  };
  for (long step = 0; step < maxSteps; ++step) {
    ComponentSet comps = monochromatic_components(chi);
    std::vector<const MonoComponent*> bad;
    for (const auto& c : comps.components)
      if (c.shape != MonoComponent::Shape::Path) bad.push_back(&c);
    if (bad.empty()) return chi;
    const MonoComponent& c = *bad[below(rng, bad.size())];
    std::vector<EdgeId> pool;
    if (c.shape == MonoComponent::Shape::NonLinear) {
      // Flip at a vertex of degree three in this component.
      for (Vertex v : c.vertices)
        if (chi.degree(v, c.colour) == 3) {
          for (const auto& inc : g.incident(v)) pool.push_back(inc.edge);
          break;
        }
    } else {
      pool = c.edges;
    }
    if (c.shape == MonoComponent::Shape::Cycle &&
        std::all_of(c.edges.begin(), c.edges.end(),
                    [&](EdgeId e) { return fixed[static_cast<std::size_t>(e)] != 0; }))
      return std::nullopt;  // the partial colouring already closes this cycle
    if (!flip_random(pool)) {
      // Stuck on fixed edges; perturb a random free edge nearby instead.
      std::vector<EdgeId> around;
      for (Vertex v : c.vertices)
        for (const auto& inc : g.incident(v)) around.push_back(inc.edge);
      if (!flip_random(around)) return std::nullopt;
    }
  }
  return std::nullopt;
}

Colouring colour_instance(const Graph& g, const GadgetInstance& inst) {
  Colouring partial(g);
  for (EdgeId te = 0; te < inst.tmpl.h.edge_count(); ++te)
    partial.set(inst.host_edge(g, te), inst.expected(te, false));
  for (std::uint64_t s = 1; s <= 32; ++s)
    if (auto chi = complete_to_paths(partial, s)) return *chi;
  throw std::runtime_error("colour_instance: no linear-forest completion found");
}

// ------------------------------------------------------------ swaps

SwapEvaluator::SwapEvaluator(const Colouring& chi) : chi_(&chi) { refresh(); }

void SwapEvaluator::refresh() {
  comps_ = monochromatic_components(*chi_);
  pos_.assign(static_cast<std::size_t>(chi_->size()), -1);
  for (const auto& c : comps_.components)
    for (std::size_t i = 0; i < c.edges.size(); ++i) pos_[static_cast<std::size_t>(c.edges[i])] = static_cast<int>(i);
}

namespace {

// Colour-X side of a swap: `lose` (colour X, containing pivot) leaves X and
// `gain` (pivot..far) joins it.
bool swap_side(const Colouring& chi, const ComponentSet& comps, const std::vector<int>& pos, EdgeId lose,
               EdgeId gain, Vertex pivot, Vertex far, std::map<int, std::int64_t>& delta) {
  const Colour x = chi[lose];
  const int cid = comps.componentOfEdge[static_cast<std::size_t>(lose)];
  const MonoComponent& k = comps.components[static_cast<std::size_t>(cid)];
  if (k.shape != MonoComponent::Shape::Path) return false;
  const int len = k.length();
  const int i = pos[static_cast<std::size_t>(lose)];
  const bool pivotLeft = k.vertices[static_cast<std::size_t>(i)] == pivot;
  const int leftLen = i, rightLen = len - 1 - i;
  const int pivotLen = pivotLeft ? leftLen : rightLen;
  const int otherLen = pivotLeft ? rightLen : leftLen;
  --delta[len];
  const EdgeId farEdge = chi.other_edge(far, x, gain);
  if (farEdge == kNoEdge) {
    if (otherLen > 0) ++delta[otherLen];
    ++delta[pivotLen + 1];
    return true;
  }
  const int cid2 = comps.componentOfEdge[static_cast<std::size_t>(farEdge)];
  if (cid2 != cid) {
    const MonoComponent& k2 = comps.components[static_cast<std::size_t>(cid2)];
    if (k2.shape != MonoComponent::Shape::Path) return false;
    --delta[k2.length()];
    if (otherLen > 0) ++delta[otherLen];
    ++delta[pivotLen + 1 + k2.length()];
    return true;
  }
  // `far` is an end of the same path: fine only if it lies on the far side.
  const bool farLeft = k.vertices.front() == far;
  if (farLeft == pivotLeft) return false;
  ++delta[len];
  return true;
}

}  // namespace

std::optional<ProfileDelta> SwapEvaluator::evaluate(EdgeId a, EdgeId b) const {
  const Colouring& chi = *chi_;
  const Graph& g = chi.graph();
  const Colour x = chi[a], y = chi[b];
  if (x == y || x == Colour::Uncoloured || y == Colour::Uncoloured) return std::nullopt;
  const Edge& ea = g.edge(a);
  const Edge& eb = g.edge(b);
  const Vertex pivot = ea.has(eb.u) ? eb.u : ea.has(eb.v) ? eb.v : kNoVertex;
  if (pivot == kNoVertex) return std::nullopt;
  const Vertex qa = ea.other(pivot), qb = eb.other(pivot);
  // qa gains colour y, qb gains colour x.
  if (chi.degree(qa, y) > 1 || chi.degree(qb, x) > 1) return std::nullopt;
  std::map<int, std::int64_t> dx, dy;
  if (!swap_side(chi, comps_, pos_, a, b, pivot, qb, dx)) return std::nullopt;
  if (!swap_side(chi, comps_, pos_, b, a, pivot, qa, dy)) return std::nullopt;
  std::erase_if(dx, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(dy, [](const auto& kv) { return kv.second == 0; });
  ProfileDelta d;
  (x == Colour::Red ? d.red : d.blue) = std::move(dx);
  (y == Colour::Red ? d.red : d.blue) = std::move(dy);
  return d;
}

}  // namespace forest
