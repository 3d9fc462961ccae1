#include "forest/balancer.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "forest/approx.hpp"
#include "forest/extendable_completion.hpp"
#include "forest/oracle.hpp"
#include "forest/random.hpp"
#include "forest/transversal.hpp"

namespace forest {

namespace {

constexpr std::uint64_t kStageLong = 0x701;
constexpr std::uint64_t kStageEdges = 0x702;
constexpr std::uint64_t kStageLadder = 0x703;
constexpr std::uint64_t kStageAttempt = 0x704;

const Colour kColours[] = {Colour::Red, Colour::Blue};

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// Component of the single colour-c edge at v, or -1.
int component_at(const Colouring& chi, const ComponentSet& comps, Vertex v, Colour c) {
  for (const auto& inc : chi.graph().incident(v))
    if (chi[inc.edge] == c) return comps.componentOfEdge[idx(inc.edge)];
  return -1;
}

// A flip of edge i of path k: both ends interior, the opposite paths at the
// ends distinct and short enough that their union with the edge stays below
// `limit`. Returns the two opposite component ids.
std::optional<std::pair<int, int>> flip_site(const Colouring& chi, const ComponentSet& comps,
                                             const MonoComponent& k, int i, std::int64_t limit) {
  if (i < 1 || i > k.length() - 2) return std::nullopt;
  const Colour y = opposite(k.colour);
  const Vertex x = k.vertices[idx(i)], z = k.vertices[idx(i + 1)];
  const int a = component_at(chi, comps, x, y), b = component_at(chi, comps, z, y);
  if (a < 0 || b < 0 || a == b) return std::nullopt;
  const auto& ka = comps.components[idx(a)];
  const auto& kb = comps.components[idx(b)];
  if (ka.shape != MonoComponent::Shape::Path || kb.shape != MonoComponent::Shape::Path)
    return std::nullopt;
  if (ka.length() + kb.length() + 1 >= limit) return std::nullopt;
  return std::make_pair(a, b);
}

// Flips e and checks the local conditions the stages promise.
void checked_flip(Colouring& chi, EdgeId e, const char* stage) {
  const Edge& ed = chi.graph().edge(e);
  const Colour before = chi[e];
  if (chi.degree(ed.u, before) != 2 || chi.degree(ed.v, before) != 2)
    throw std::logic_error(std::string(stage) + ": flip off the interior of a path");
  chi.flip(e);
  if (chi.degree(ed.u, chi[e]) > 2 || chi.degree(ed.v, chi[e]) > 2)
    throw std::logic_error(std::string(stage) + ": flip created a monochromatic vertex");
}

void require_linear(const Colouring& chi, const char* stage) {
  const auto comps = monochromatic_components(chi);
  if (!comps.monochromaticVertices.empty())
    throw std::logic_error(std::string(stage) + ": monochromatic vertex");
  for (const auto& k : comps.components)
    if (k.shape != MonoComponent::Shape::Path)
      throw std::logic_error(std::string(stage) + ": monochromatic cycle");
}

SegmentPlan cut_colour(Colouring& chi, Colour x, const Config& cfg, Rng& rng, int& edits) {
  const auto comps = monochromatic_components(chi);
  const std::int64_t threshold = cfg.longPathThreshold;
  const std::int64_t segMax = std::max<std::int64_t>(2, std::min(cfg.segmentMax, threshold / 2));
  SegmentPlan plan;

  struct Candidate {
    EdgeId e;
    Vertex u, v;
    int a, b;
  };
  std::vector<Candidate> cands;
  TransversalProblem tp;
  // Only the surplus at each long length is cut; matched pairs stay.
  const ComponentProfile prof = profile(comps);
  std::map<int, std::int64_t> surplus;
  for (const auto& [t, count] : prof.paths(x))
    if (t >= threshold) surplus[t] = count - prof.count(opposite(x), t);
  for (const auto& k : comps.components) {
    if (k.colour != x || k.length() < threshold || k.shape != MonoComponent::Shape::Path) continue;
    if (surplus[k.length()]-- <= 0) continue;
    const int len = k.length();
    const int parts = static_cast<int>((len + segMax - 1) / segMax);
    int start = 0;
    for (int s = 0; s < parts; ++s) {
      const int size = len / parts + (s < len % parts ? 1 : 0);
      std::vector<EdgeId> seg(k.edges.begin() + start, k.edges.begin() + start + size);
      std::vector<EdgeId> segCands;
      std::vector<int> part;
      for (int i = start; i < start + size; ++i) {
        const auto site = flip_site(chi, comps, k, i, threshold);
        if (!site) continue;
        part.push_back(static_cast<int>(cands.size()));
        cands.push_back({k.edges[idx(i)], k.vertices[idx(i)], k.vertices[idx(i + 1)], site->first,
                         site->second});
        segCands.push_back(k.edges[idx(i)]);
      }
      if (part.empty())
        throw BalanceError("long-paths", std::string("segment without a flip site on a ") + colour_char(x) +
                                             std::string(" path of length ") + std::to_string(len));
      plan.segments.push_back(std::move(seg));
      plan.candidates.push_back(std::move(segCands));
      tp.parts.push_back(std::move(part));
      start += size;
    }
  }
  if (tp.parts.empty()) return plan;

  // Conflicts: shared vertex or shared opposite path.
  tp.conflicts.assign(cands.size(), {});
  std::map<std::int64_t, std::vector<int>> byKey;
  for (int c = 0; c < static_cast<int>(cands.size()); ++c) {
    const auto& cd = cands[idx(c)];
    for (std::int64_t key : {std::int64_t{cd.u}, std::int64_t{cd.v}, -1 - std::int64_t{cd.a},
                             -1 - std::int64_t{cd.b}})
      byKey[key].push_back(c);
  }
  for (auto& [key, list] : byKey)
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        tp.conflicts[idx(list[i])].push_back(list[j]);
        tp.conflicts[idx(list[j])].push_back(list[i]);
      }
  for (auto& adj : tp.conflicts) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  plan.maxConflictDegree = max_conflict_degree(tp);
  const auto pick = find_independent_transversal(tp, rng);
  if (!pick) throw BalanceError("long-paths", "no independent transversal of flip sites");
  for (int c : *pick) {
    plan.chosen.push_back(cands[idx(c)].e);
    checked_flip(chi, cands[idx(c)].e, "long-paths");
    ++edits;
  }
  return plan;
}

std::int64_t level_gap(const ComponentProfile& p, int t) {
  return p.count(Colour::Red, t) - p.count(Colour::Blue, t);
}

}  // namespace

StageResult balance_long_paths(const Colouring& chi, const Config& cfg) {
  StageResult out{chi, 0, {}};
  Rng rng(sub_seed(cfg.seed, kStageLong, 0));
  for (Colour x : kColours) out.plans.push_back(cut_colour(out.chi, x, cfg, rng, out.edits));
  require_linear(out.chi, "long-paths");
  const ComponentProfile p = profile(out.chi);
  for (int t = static_cast<int>(cfg.longPathThreshold); t <= p.max_length(); ++t)
    if (p.count(Colour::Red, t) != p.count(Colour::Blue, t))
      throw std::logic_error("long-paths: length " + std::to_string(t) + " still unbalanced");
  return out;
}

StageResult balance_edge_counts(const Colouring& chi, const Config& cfg) {
  StageResult out{chi, 0, {}};
  const int red = chi.count(Colour::Red), blue = chi.count(Colour::Blue);
  if ((red - blue) % 2 != 0) throw BalanceError("edge-counts", "odd total imbalance");
  if (red == blue) return out;
  const Colour x = red > blue ? Colour::Red : Colour::Blue;
  int needed = std::abs(red - blue) / 2;

  const auto comps = monochromatic_components(chi);
  std::vector<int> order;
  for (int k = 0; k < static_cast<int>(comps.components.size()); ++k)
    if (comps.components[idx(k)].colour == x && comps.components[idx(k)].length() >= 3)
      order.push_back(k);
  Rng rng(sub_seed(cfg.seed, kStageEdges, 0));
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<char> usedVertex(idx(chi.graph().vertex_count()), 0);
  std::vector<char> usedComp(comps.components.size(), 0);
  // At most one flip per path, middle edges first.
  for (int k : order) {
    if (needed == 0) break;
    const auto& path = comps.components[idx(k)];
    std::vector<int> positions(idx(path.length()));
    std::iota(positions.begin(), positions.end(), 0);
    const int mid = path.length() / 2;
    std::stable_sort(positions.begin(), positions.end(),
                     [mid](int a, int b) { return std::abs(a - mid) < std::abs(b - mid); });
    for (int i : positions) {
      const auto site = flip_site(chi, comps, path, i, cfg.longPathThreshold);
      if (!site || usedComp[idx(site->first)] || usedComp[idx(site->second)]) continue;
      const Vertex u = path.vertices[idx(i)], v = path.vertices[idx(i + 1)];
      if (usedVertex[idx(u)] || usedVertex[idx(v)]) continue;
      usedComp[idx(site->first)] = usedComp[idx(site->second)] = 1;
      usedVertex[idx(u)] = usedVertex[idx(v)] = 1;
      checked_flip(out.chi, path.edges[idx(i)], "edge-counts");
      ++out.edits;
      --needed;
      break;
    }
  }
  if (needed > 0)
    throw BalanceError("edge-counts", "insufficient flip sites, " + std::to_string(needed) +
                                          " flips short");
  require_linear(out.chi, "edge-counts");
  return out;
}

LadderResult gadget_ladder(const Colouring& chi, const std::vector<GadgetInstance>& registry,
                           const Config& cfg) {
  LadderResult out{chi, {}, 0};
  Colouring& psi = out.chi;
  const Graph& g = psi.graph();
  const int red = psi.count(Colour::Red), blue = psi.count(Colour::Blue);
  SwapEvaluator ev(psi);
  ComponentProfile prof = profile(ev.components());
  const int n = g.vertex_count();
  const auto offset = static_cast<Vertex>(keyed_below(cfg.seed, kStageLadder, 0, static_cast<std::uint64_t>(n)));

  for (int t = prof.max_length(); t >= 3; --t) {
    LadderLevel level{t, level_gap(prof, t), 0, 0};
    std::int64_t gap = level.imbalance;
    while (gap != 0) {
      // A swap is accepted when it leaves longer levels alone and moves the
      // gap at t towards zero without overshooting.
      auto acceptable = [&](EdgeId a, EdgeId b) {
        const auto d = ev.evaluate(a, b);
        if (!d) return false;
        for (const auto* side : {&d->red, &d->blue})
          for (auto it = side->upper_bound(t); it != side->end(); ++it)
            if (it->second != 0) return false;
        auto at = [t](const std::map<int, std::int64_t>& m) {
          const auto it = m.find(t);
          return it == m.end() ? std::int64_t{0} : it->second;
        };
        const std::int64_t next = gap + at(d->red) - at(d->blue);
        return std::abs(next) < std::abs(gap) && (next == 0 || (next > 0) == (gap > 0));
      };
      auto try_pivot = [&](Vertex v, EdgeId& a, EdgeId& b) {
        const auto inc = g.incident(v);
        for (std::size_t i = 0; i < inc.size(); ++i)
          for (std::size_t j = i + 1; j < inc.size(); ++j)
            if (psi[inc[i].edge] != psi[inc[j].edge] && acceptable(inc[i].edge, inc[j].edge)) {
              a = inc[i].edge;
              b = inc[j].edge;
              return true;
            }
        return false;
      };

      EdgeId a = kNoEdge, b = kNoEdge;
      bool viaGadget = false;
      for (const auto& inst : registry) {
        if (inst.tmpl.ell != t) continue;
        const EdgeId e1 = inst.host_edge(g, inst.tmpl.swap_first());
        const EdgeId e2 = inst.host_edge(g, inst.tmpl.swap_second());
        if (e1 == kNoEdge || e2 == kNoEdge || psi[e1] == psi[e2]) continue;
        if (acceptable(e1, e2)) {
          a = e1;
          b = e2;
          viaGadget = true;
          break;
        }
      }
      // Pivots on the surplus paths of length t, then everywhere.
      if (a == kNoEdge) {
        const Colour surplus = gap > 0 ? Colour::Red : Colour::Blue;
        for (const auto& k : ev.components().components) {
          if (k.colour != surplus || k.length() != t) continue;
          for (Vertex v : k.vertices)
            if (try_pivot(v, a, b)) break;
          if (a != kNoEdge) break;
        }
      }
      for (Vertex i = 0; a == kNoEdge && i < n; ++i) try_pivot((i + offset) % n, a, b);
      if (a == kNoEdge)
        throw BalanceError("ladder", "no balancing swap at length " + std::to_string(t) +
                                         ", residual imbalance " + std::to_string(gap));

      const Colour ca = psi[a];
      psi.set(a, psi[b]);
      psi.set(b, ca);
      ev.refresh();
      prof = profile(ev.components());
      gap = level_gap(prof, t);
      ++level.moves;
      level.gadgetMoves += viaGadget ? 1 : 0;
      out.edits += 2;
    }
    for (int s = t; s <= std::max(t, prof.max_length()); ++s)
      if (level_gap(prof, s) != 0)
        throw std::logic_error("ladder: level " + std::to_string(s) + " unbalanced after level " +
                               std::to_string(t));
    out.levels.push_back(level);
  }
  if (psi.count(Colour::Red) != red || psi.count(Colour::Blue) != blue)
    throw std::logic_error("ladder: edge counts changed");
  require_linear(psi, "ladder");
  return out;
}

Certificate assert_final_balance(const Colouring& chi) {
  if (!chi.is_total()) throw std::invalid_argument("final balance: colouring is not total");
  const ComponentProfile p = profile(chi);
  if (p.edges(Colour::Red) != p.edges(Colour::Blue))
    throw std::invalid_argument("final balance: unequal edge counts");
  for (int t = 3; t <= p.max_length(); ++t)
    if (level_gap(p, t) != 0)
      throw std::invalid_argument("final balance: unbalanced at length " + std::to_string(t));
  Certificate c;
  c.profile = p;
  c.isomorphic = is_isomorphic_linear_forests(chi);
  c.success = c.isomorphic;
  if (!c.success) c.failure = "final balance: short paths or cycles differ";
  return c;
}

std::string Certificate::to_text() const {
  std::ostringstream os;
  os << "success " << (success ? 1 : 0) << '\n'
     << "isomorphic " << (isomorphic ? 1 : 0) << '\n'
     << "route " << (route.empty() ? "-" : route) << '\n'
     << "seed " << seed << '\n'
     << "attempts " << attempts << '\n'
     << "gadgets " << gadgets << '\n';
  for (const auto& [stage, count] : edits) os << "edits " << stage << ' ' << count << '\n';
  auto dump = [&os](const char* what, Colour c, const std::map<int, std::int64_t>& m) {
    for (const auto& [t, count] : m) os << what << ' ' << colour_char(c) << ' ' << t << ' ' << count << '\n';
  };
  dump("paths", Colour::Red, profile.redPaths);
  dump("paths", Colour::Blue, profile.bluePaths);
  dump("cycles", Colour::Red, profile.redCycles);
  dump("cycles", Colour::Blue, profile.blueCycles);
  if (profile.nonLinear != 0) os << "nonlinear " << profile.nonLinear << '\n';
  if (!failure.empty()) os << "failure " << failure << '\n';
  return os.str();
}

Certificate Certificate::from_text(const std::string& text) {
  Certificate c;
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    auto bad = [&] {
      return std::invalid_argument("certificate line " + std::to_string(lineNo) + ": " + line);
    };
    if (key == "failure") {
      std::getline(ls >> std::ws, c.failure);
      continue;
    }
    if (key == "success" || key == "isomorphic") {
      int v = 0;
      if (!(ls >> v)) throw bad();
      (key == "success" ? c.success : c.isomorphic) = v != 0;
    } else if (key == "route") {
      if (!(ls >> c.route)) throw bad();
      if (c.route == "-") c.route.clear();
    } else if (key == "seed") {
      if (!(ls >> c.seed)) throw bad();
    } else if (key == "attempts") {
      if (!(ls >> c.attempts)) throw bad();
    } else if (key == "gadgets") {
      if (!(ls >> c.gadgets)) throw bad();
    } else if (key == "edits") {
      std::string stage;
      int count = 0;
      if (!(ls >> stage >> count)) throw bad();
      c.edits[stage] = count;
    } else if (key == "paths" || key == "cycles") {
      char col = 0;
      int t = 0;
      std::int64_t count = 0;
      if (!(ls >> col >> t >> count) || (col != 'R' && col != 'B')) throw bad();
      auto& p = c.profile;
      auto& m = key == "paths" ? (col == 'R' ? p.redPaths : p.bluePaths)
                               : (col == 'R' ? p.redCycles : p.blueCycles);
      m[t] = count;
    } else if (key == "nonlinear") {
      if (!(ls >> c.profile.nonLinear)) throw bad();
    } else {
      throw bad();
    }
  }
  return c;
}

ExactRun run_exact(const CubicGraph& g, const Config& cfg, std::uint64_t seed) {
  ExactRun out{Colouring(g), {}};
  Certificate& cert = out.certificate;
  cert.seed = seed;
  if (g.vertex_count() % 4 != 0) {
    cert.failure = "parity: n = " + std::to_string(g.vertex_count()) +
                   " is 2 mod 4, the edge count is odd and no equal split exists";
    return out;
  }

  Config base = cfg;
  base.seed = seed;
  G0Bundle bundle{Colouring(g), {}, {}, 0};
  std::string setup;
  try {
    bundle = assemble_G0(g, base, /*requireAll=*/false);
  } catch (const std::exception& e) {
    setup = std::string("gadget setup skipped (") + e.what() + "); ";
  }
  cert.gadgets = static_cast<int>(bundle.registry.size());

  std::vector<std::string> failures;
  bool haveBest = false;
  for (int attempt = 0; attempt < cfg.attemptCap; ++attempt) {
    Config c = base;
    c.seed = sub_seed(seed, kStageAttempt, static_cast<std::uint64_t>(attempt));
    cert.attempts = attempt + 1;
    std::string stage = "approx";
    try {
      ApproxRun approx = run_approx(g, bundle.g0, c, bundle.registry);
      out.chi = approx.chi;
      haveBest = true;
      stage = "long-paths";
      StageResult a = balance_long_paths(approx.chi, c);
      stage = "edge-counts";
      StageResult b = balance_edge_counts(a.chi, c);
      out.chi = b.chi;
      stage = "ladder";
      LadderResult l = gadget_ladder(b.chi, bundle.registry, c);
      out.chi = l.chi;
      stage = "final";
      Certificate fin = assert_final_balance(l.chi);
      fin.route = "pipeline";
      fin.seed = seed;
      fin.attempts = attempt + 1;
      fin.gadgets = cert.gadgets;
      fin.edits = {{"long-paths", a.edits}, {"edge-counts", b.edits}, {"ladder", l.edits}};
      if (fin.success) {
        cert = std::move(fin);
        return out;
      }
      failures.push_back(fin.failure);
    } catch (const BalanceError& e) {
      failures.push_back(e.what());
    } catch (const std::exception& e) {
      failures.push_back(stage + ": " + e.what());
    }
  }

  if (g.edge_count() <= kOracleEdgeCap) {
    if (auto found = exhaustive_decompose(g)) {
      out.chi = *found;
      cert.success = cert.isomorphic = true;
      cert.route = "oracle";
      cert.profile = profile(out.chi);
      cert.failure.clear();
      return out;
    }
  }

  cert.route = haveBest ? "pipeline" : "";
  cert.profile = profile(out.chi);
  cert.isomorphic = out.chi.is_total() && is_isomorphic_linear_forests(out.chi);
  cert.success = false;
  std::ostringstream why;
  why << setup << failures.size() << " attempts failed; last: "
      << (failures.empty() ? std::string("none") : failures.back());
  cert.failure = why.str();
  return out;
}

}  // namespace forest
