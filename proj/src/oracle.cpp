#include "forest/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "forest/random.hpp"

namespace forest {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

class Search {
 public:
  explicit Search(const Graph& g)
      : g_(g), chi_(g), deg_(idx(g.vertex_count()), {0, 0}), half_(g.edge_count() / 2) {}

  bool run() { return step(0); }
  const Colouring& result() const { return chi_; }

 private:
  static int slot(Colour c) { return c == Colour::Red ? 0 : 1; }

  // True when colour c already joins u to v: walk from u along c.
  bool closes_cycle(Vertex u, Vertex v, Colour c) const {
    Vertex prev = kNoVertex, cur = u;
    for (;;) {
      Vertex next = kNoVertex;
      for (const auto& inc : g_.incident(cur))
        if (chi_[inc.edge] == c && inc.nb != prev) {
          next = inc.nb;
          break;
        }
      if (next == kNoVertex) return false;
      if (next == v) return true;
      prev = cur;
      cur = next;
    }
  }

  bool step(EdgeId e) {
    if (e == g_.edge_count()) return is_isomorphic_linear_forests(chi_);
    const Edge& ed = g_.edge(e);
    for (Colour c : {Colour::Red, Colour::Blue}) {
      // The two colours are interchangeable; fixing the first edge halves
      // the tree without losing solutions.
      if (e == 0 && c == Colour::Blue) break;
      const int s = slot(c);
      if (used_[s] == half_) continue;
      if (deg_[idx(ed.u)][s] == 2 || deg_[idx(ed.v)][s] == 2) continue;
      if (closes_cycle(ed.u, ed.v, c)) continue;
      chi_.set(e, c);
      ++deg_[idx(ed.u)][s];
      ++deg_[idx(ed.v)][s];
      ++used_[s];
      if (step(e + 1)) return true;
      --used_[s];
      --deg_[idx(ed.u)][s];
      --deg_[idx(ed.v)][s];
      chi_.set(e, Colour::Uncoloured);
    }
    return false;
  }

  const Graph& g_;
  Colouring chi_;
  std::vector<std::array<int, 2>> deg_;
  int used_[2] = {0, 0};
  int half_;
};

// ------------------------------------------------------------- canonical form

using Cells = std::vector<int>;  // vertex -> cell index, cells ordered canonically

std::vector<std::vector<Vertex>> neighbours(const Graph& g) {
  std::vector<std::vector<Vertex>> out(idx(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (const auto& inc : g.incident(v)) out[idx(v)].push_back(inc.nb);
  return out;
}

int cell_count(const Cells& c) { return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1; }

// Equitable refinement: split cells by the multiset of neighbour cells.
Cells refine(const std::vector<std::vector<Vertex>>& adj, Cells cells) {
  const int n = static_cast<int>(cells.size());
  for (;;) {
    std::vector<std::pair<std::vector<int>, Vertex>> sig(idx(n));
    for (Vertex v = 0; v < n; ++v) {
      std::vector<int> s{cells[idx(v)]};
      std::vector<int> nb;
      for (Vertex w : adj[idx(v)]) nb.push_back(cells[idx(w)]);
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      sig[idx(v)] = {std::move(s), v};
    }
    std::vector<std::vector<int>> keys;
    for (const auto& [s, v] : sig) keys.push_back(s);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    Cells next(idx(n));
    for (Vertex v = 0; v < n; ++v)
      next[idx(v)] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), sig[idx(v)].first) -
                                      keys.begin());
    if (cell_count(next) == cell_count(cells)) return next;
    cells = std::move(next);
  }
}

std::string relabelled_graph6(const Graph& g, const Cells& label) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({label[idx(e.u)], label[idx(e.v)]});
  return to_graph6(Graph(g.vertex_count(), std::move(edges)));
}

void canon_search(const Graph& g, const std::vector<std::vector<Vertex>>& adj, const Cells& cells,
                  std::string& best) {
  const int n = static_cast<int>(cells.size());
  if (cell_count(cells) == n) {
    std::string s = relabelled_graph6(g, cells);
    if (best.empty() || s < best) best = std::move(s);
    return;
  }
  // First smallest non-singleton cell.
  std::vector<int> size(idx(n), 0);
  for (int c : cells) ++size[idx(c)];
  int target = -1;
  for (int c = 0; c < n; ++c)
    if (size[idx(c)] > 1 && (target < 0 || size[idx(c)] < size[idx(target)])) target = c;
  for (Vertex v = 0; v < n; ++v) {
    if (cells[idx(v)] != target) continue;
    // Individualise v: it keeps index `target`, every later index shifts.
    Cells split(cells);
    for (Vertex w = 0; w < n; ++w)
      if (cells[idx(w)] > target || (cells[idx(w)] == target && w != v)) ++split[idx(w)];
    canon_search(g, adj, refine(adj, std::move(split)), best);
  }
}

// Labelled cubic graphs on n vertices: the lowest vertex still short of
// degree 3 takes a higher neighbour, and among untouched vertices only the
// first may be chosen, which removes most relabelled duplicates early.
class LabelledCubics {
 public:
  LabelledCubics(int n, std::function<void(const std::vector<Edge>&)> emit)
      : n_(n), deg_(idx(n), 0), emit_(std::move(emit)) {}
  void run() { extend(); }

 private:
  bool adjacent(Vertex a, Vertex b) const {
    return std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.has(a) && e.has(b); });
  }

  void extend() {
    Vertex v = 0;
    while (v < n_ && deg_[idx(v)] == 3) ++v;
    if (v == n_) {
      emit_(edges_);
      return;
    }
    bool untouchedTried = false;
    for (Vertex w = v + 1; w < n_; ++w) {
      if (deg_[idx(w)] == 3 || adjacent(v, w)) continue;
      if (deg_[idx(w)] == 0) {
        if (untouchedTried) continue;
        untouchedTried = true;
      }
      edges_.push_back({v, w});
      ++deg_[idx(v)];
      ++deg_[idx(w)];
      extend();
      --deg_[idx(v)];
      --deg_[idx(w)];
      edges_.pop_back();
    }
  }

  int n_;
  std::vector<int> deg_;
  std::vector<Edge> edges_;
  std::function<void(const std::vector<Edge>&)> emit_;
};

std::string verdict_profile(const Colouring& chi) {
  // The red class alone describes both: "P3x2" style, ascending lengths.
  const auto p = profile(chi);
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, count] : p.redPaths) {
    os << (first ? "" : ",") << 'P' << t << 'x' << count;
    first = false;
  }
  return os.str();
}

OracleLine check_one(const CubicGraph& g) {
  OracleLine line;
  line.graph6 = to_graph6(g);
  if (auto chi = exhaustive_decompose(g)) {
    line.decomposable = true;
    line.profile = verdict_profile(*chi);
  }
  return line;
}

}  // namespace

std::optional<Colouring> exhaustive_decompose(const Graph& g) {
  if (g.edge_count() > kOracleEdgeCap)
    throw OracleError("exhaustive search is capped at " + std::to_string(kOracleEdgeCap) +
                      " edges, got " + std::to_string(g.edge_count()));
  if (g.edge_count() % 2 != 0) return std::nullopt;
  Search s(g);
  if (!s.run()) return std::nullopt;
  return s.result();
}

std::string canonical_form(const Graph& g) {
  const auto adj = neighbours(g);
  std::string best;
  canon_search(g, adj, refine(adj, Cells(idx(g.vertex_count()), 0)), best);
  return best;
}

std::vector<CubicGraph> cubic_catalogue(int n) {
  if (n < 4 || n % 2 != 0 || n > 10)
    throw OracleError("catalogue covers even n in [4, 10], got " + std::to_string(n));
  std::map<std::string, CubicGraph> seen;
  LabelledCubics gen(n, [&](const std::vector<Edge>& edges) {
    CubicGraph g(n, edges);
    if (!is_connected(g)) return;
    std::string key = canonical_form(g);
    if (!seen.count(key)) seen.emplace(std::move(key), std::move(g));
  });
  gen.run();
  std::vector<CubicGraph> out;
  for (auto& [key, g] : seen) out.push_back(std::move(g));
  return out;
}

int OracleReport::failures() const {
  return static_cast<int>(std::count_if(lines.begin(), lines.end(),
                                        [](const OracleLine& l) { return !l.decomposable; }));
}

std::string OracleReport::to_text() const {
  std::ostringstream os;
  for (const auto& l : lines) {
    os << l.graph6 << ' ' << (l.decomposable ? "decomposable" : "NOT-DECOMPOSABLE");
    if (!l.profile.empty()) os << ' ' << l.profile;
    os << '\n';
  }
  return os.str();
}

OracleReport verify_small_range(int nMax, int samples, std::uint64_t seed) {
  if (nMax > 12) throw OracleError("oracle sweep is capped at n = 12, got " + std::to_string(nMax));
  OracleReport report;
  for (int n = 4; n <= std::min(nMax, 10); n += 2) {
    if (n % 4 != 0) {
      report.excluded.push_back(n);
      continue;
    }
    report.sizes.push_back(n);
    for (const auto& g : cubic_catalogue(n)) report.lines.push_back(check_one(g));
  }
  if (nMax >= 12) {
    report.sizes.push_back(12);
    for (int i = 0; report.sampled < samples; ++i) {
      CubicGraph g = random_cubic(12, sub_seed(seed, 0x801, static_cast<std::uint64_t>(i)));
      if (!is_connected(g)) continue;
      report.lines.push_back(check_one(g));
      ++report.sampled;
    }
  }
  return report;
}

GadgetSemanticsReport verify_gadget_semantics(GadgetKind kind, int ell, int trials,
                                              std::uint64_t seed) {
  if (ell < 3 || ell > 8) throw OracleError("gadget length must lie in [3, 8]");
  GadgetSemanticsReport rep;
  rep.kind = kind;
  rep.ell = ell;
  rep.trials = trials;
  const GadgetTemplate t = instantiate(kind, ell);
  for (int i = 0; i < trials; ++i) {
    // Some random wirings admit no linear-forest completion; redraw those.
    GadgetHost host;
    std::optional<Colouring> coloured;
    for (std::uint64_t draw = 0; !coloured; ++draw) {
      const std::uint64_t s = sub_seed(seed, 0x802, static_cast<std::uint64_t>(i) << 16 | draw);
      host = embed_in_random_host(t, 8 + static_cast<int>(s % 24), s);
      Colouring partial(host.g);
      for (EdgeId te = 0; te < t.h.edge_count(); ++te)
        partial.set(host.inst.host_edge(host.g, te), host.inst.expected(te, false));
      for (std::uint64_t k = 0; k < 4 && !coloured; ++k)
        coloured = complete_to_paths(partial, s + k, 4000);
      if (!coloured && draw == 256) throw std::runtime_error("no colourable host for the gadget");
    }
    const Colouring& chi = *coloured;
    const ProfileDelta got = measure_delta(chi, host.inst);
    const ProfileDelta want = contract_delta(ell, host.inst.orientation);
    if (got == want) {
      ++rep.exact;
      continue;
    }
    std::ostringstream os;
    os << "# host\n" << to_edge_list(host.g) << "# instance\n" << registry_to_text({host.inst})
       << "# colouring\n" << to_text(chi) << "# measured " << to_string(got) << "\n# expected "
       << to_string(want) << '\n';
    rep.counterexamples.push_back(os.str());
  }
  return rep;
}

}  // namespace forest
