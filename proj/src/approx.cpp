#include "forest/approx.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "forest/extendability.hpp"
#include "forest/random.hpp"

namespace forest {

namespace {

constexpr std::uint64_t kStageG0 = 0x101;
constexpr std::uint64_t kStageShade = 0x102;
constexpr std::uint64_t kStageCycle = 0x201;
constexpr std::uint64_t kStagePetal = 0x301;
constexpr std::uint64_t kStageNeighbour = 0x302;
constexpr std::uint64_t kStageElect = 0x401;
constexpr std::uint64_t kStageCoin = 0x402;
constexpr std::uint64_t kStageAttempt = 0x501;

std::uint64_t key_of(const std::vector<EdgeId>& edges) {
  return static_cast<std::uint64_t>(*std::min_element(edges.begin(), edges.end()));
}

}  // namespace

Colouring chi1(const Graph& g, const Colouring& g0, const PurpleGreenColouring& pg,
               std::uint64_t seed) {
  Colouring out(g);
  for (const auto& comp : coloured_components(g0)) {
    const bool swap = keyed_below(seed, kStageG0, key_of(comp.edges), 2) == 1;
    for (EdgeId e : comp.edges) out.set(e, swap ? opposite(g0[e]) : g0[e]);
  }

  Colouring shades(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (pg[e] == Shade::Absent) continue;
    if (g0[e] != Colour::Uncoloured) throw std::invalid_argument("chi1: shaded edge lies in G0");
    shades.set(e, pg[e] == Shade::Purple ? Colour::Red : Colour::Blue);
  }
  for (const auto& comp : monochromatic_components(shades).components) {
    if (comp.shape == MonoComponent::Shape::NonLinear ||
        (comp.shape == MonoComponent::Shape::Cycle && comp.length() % 2 == 1))
      throw std::invalid_argument("chi1: shade component is not a path or an even cycle");
    const bool redFirst = keyed_below(seed, kStageShade, key_of(comp.edges), 2) == 0;
    for (std::size_t i = 0; i < comp.edges.size(); ++i) {
      const bool red = (i % 2 == 0) == redFirst;
      out.set(comp.edges[i], red ? Colour::Red : Colour::Blue);
    }
  }
  if (!out.is_total()) throw std::invalid_argument("chi1: G0 and the shades do not cover every edge");
  return out;
}

Chi2Result chi2(const Colouring& chi1, std::uint64_t seed) {
  Chi2Result r{chi1, {}};
  for (const auto& comp : monochromatic_components(chi1).components) {
    if (comp.shape != MonoComponent::Shape::Cycle) continue;
    const auto k = static_cast<std::uint64_t>(comp.edges.size());
    EdgeId e = comp.edges[keyed_below(seed, kStageCycle, key_of(comp.edges), k)];
    r.chi.flip(e);
    r.log.push_back({comp.edges, e});
  }
  return r;
}

Chi3Result chi3(const Chi2Result& r, std::uint64_t seed) {
  Chi3Result out{r.chi, {}};
  const Graph& g = r.chi.graph();
  std::map<EdgeId, int> logOf;
  for (std::size_t i = 0; i < r.log.size(); ++i) logOf[r.log[i].flipped] = static_cast<int>(i);

  std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);
  auto claim = [&](const std::vector<EdgeId>& edges) {
    for (EdgeId e : edges)
      for (Vertex v : {g.edge(e).u, g.edge(e).v}) {
        // Within one configuration the core and its petals share vertices.
        if (used[static_cast<std::size_t>(v)] == 1)
          throw std::logic_error("chi3: cycle-petal configurations overlap at vertex " +
                                 std::to_string(v));
        used[static_cast<std::size_t>(v)] = 2;
      }
  };

  for (const auto& comp : monochromatic_components(r.chi).components) {
    if (comp.shape != MonoComponent::Shape::Cycle) continue;
    CyclePetalConfiguration cfg;
    cfg.core = comp.edges;
    for (EdgeId e : comp.edges)
      if (auto it = logOf.find(e); it != logOf.end()) {
        cfg.petals.push_back(it->second);
        cfg.petalEdges.push_back(e);
      }
    if (cfg.petals.empty())
      throw std::logic_error("chi3: monochromatic cycle without a flipped edge");
    const std::uint64_t key = key_of(comp.edges);
    cfg.chosen = static_cast<int>(
        keyed_below(seed, kStagePetal, key, static_cast<std::uint64_t>(cfg.petals.size())));
    const CycleFlip& petal = r.log[static_cast<std::size_t>(cfg.petals[static_cast<std::size_t>(cfg.chosen)])];
    const auto k = petal.cycle.size();
    const auto pos = static_cast<std::size_t>(
        std::find(petal.cycle.begin(), petal.cycle.end(), petal.flipped) - petal.cycle.begin());
    const bool forward = keyed_below(seed, kStageNeighbour, key, 2) == 1;
    cfg.neighbour = petal.cycle[forward ? (pos + 1) % k : (pos + k - 1) % k];

    claim(cfg.core);
    for (int p : cfg.petals) claim(r.log[static_cast<std::size_t>(p)].cycle);
    for (auto& u : used)
      if (u == 2) u = 1;

    out.chi.flip(petal.flipped);
    out.chi.flip(cfg.neighbour);
    out.configurations.push_back(std::move(cfg));
  }
  return out;
}

Chi4Result chi4(const Colouring& chi3, std::uint64_t seed) {
  Chi4Result out{chi3, {}};
  const Graph& g = chi3.graph();
  const ComponentSet comps = monochromatic_components(chi3);
  std::map<EdgeId, std::vector<int>> electors;
  for (std::size_t id = 0; id < comps.components.size(); ++id) {
    const auto& comp = comps.components[id];
    if (comp.shape != MonoComponent::Shape::Path) continue;
    std::vector<EdgeId> choices;
    for (Vertex end : {comp.vertices.front(), comp.vertices.back()})
      for (const auto& inc : g.incident(end))
        if (chi3[inc.edge] == opposite(comp.colour) &&
            std::find(choices.begin(), choices.end(), inc.edge) == choices.end())
          choices.push_back(inc.edge);
    if (choices.empty()) continue;
    const auto pick = keyed_below(seed, kStageElect, key_of(comp.edges), choices.size());
    electors[choices[pick]].push_back(static_cast<int>(id));
  }
  for (const auto& [e, who] : electors) {
    if (who.size() < 2) continue;
    if (keyed_below(seed, kStageCoin, static_cast<std::uint64_t>(e), 2) == 0) continue;
    out.chi.flip(e);
    out.recoloured.push_back(e);
  }
  return out;
}

// ------------------------------------------------------------- diagnostics

std::string PipelineDiagnostics::to_key_values() const {
  std::ostringstream os;
  os << "q1MaxLength=" << q1MaxLength << '\n'
     << "q2Violations=" << q2Violations << '\n'
     << "q3MaxImbalance=" << q3MaxImbalance << '\n'
     << "q4Survivors=" << q4Survivors << '\n'
     << "q4Registered=" << q4Registered << '\n'
     << "attempts=" << attempts << '\n'
     << "seedUsed=" << seedUsed << '\n';
  return os.str();
}

PipelineDiagnostics PipelineDiagnostics::from_key_values(const std::string& text) {
  PipelineDiagnostics d;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "q1MaxLength") d.q1MaxLength = std::stoi(value);
    else if (key == "q2Violations") d.q2Violations = std::stoll(value);
    else if (key == "q3MaxImbalance") d.q3MaxImbalance = std::stoll(value);
    else if (key == "q4Survivors") d.q4Survivors = std::stoll(value);
    else if (key == "q4Registered") d.q4Registered = std::stoll(value);
    else if (key == "attempts") d.attempts = std::stoi(value);
    else if (key == "seedUsed") d.seedUsed = std::stoull(value);
  }
  return d;
}

std::int64_t spider_violations(const Colouring& chi, const Config& cfg) {
  const ComponentSet comps = monochromatic_components(chi);
  const Graph& g = chi.graph();
  std::int64_t violations = 0;
  std::set<int> met;
  for (const auto& comp : comps.components) {
    if (comp.shape != MonoComponent::Shape::Path || comp.length() > cfg.spiderShort) continue;
    met.clear();
    for (Vertex v : comp.vertices)
      for (const auto& inc : g.incident(v)) {
        if (chi[inc.edge] != opposite(comp.colour)) continue;
        const int id = comps.componentOfEdge[static_cast<std::size_t>(inc.edge)];
        if (comps.components[static_cast<std::size_t>(id)].length() >= cfg.spiderLong) met.insert(id);
      }
    if (static_cast<int>(met.size()) >= cfg.spiderCount) ++violations;
  }
  return violations;
}

int approx_length_bound(const Graph& g, const Config& cfg) {
  const double base = cfg.breakLength > 0
                          ? static_cast<double>(cfg.breakLength)
                          : 1000.0 * std::log(std::max(g.vertex_count(), 3));
  return std::max(static_cast<int>(std::ceil(base)), 2 * cfg.weakThomassenBound + 1);
}

ApproxRun run_approx(const Graph& g, const Colouring& g0, const Config& cfg,
                     const std::vector<GadgetInstance>& registry) {
  std::vector<char> mask(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    mask[static_cast<std::size_t>(e)] = g0[e] == Colour::Uncoloured;
  const H123Decomposition d = decompose_H123(g, mask);
  const PurpleGreenColouring pg = build_chi0(g, g0, d, cfg);
  const int bound = approx_length_bound(g, cfg);

  for (int attempt = 0; attempt < cfg.attemptCap; ++attempt) {
    const std::uint64_t seed = sub_seed(cfg.seed, kStageAttempt, static_cast<std::uint64_t>(attempt));
    Colouring c1 = chi1(g, g0, pg, sub_seed(seed, 1, 0));
    Chi3Result r3 = chi3(chi2(c1, sub_seed(seed, 2, 0)), sub_seed(seed, 3, 0));
    Chi4Result r4 = chi4(r3.chi, sub_seed(seed, 4, 0));

    const ComponentProfile p = profile(r4.chi);
    if (p.nonLinear > 0 || !p.redCycles.empty() || !p.blueCycles.empty() || p.max_length() > bound)
      continue;

    ApproxRun run{std::move(r4.chi), {}, std::move(c1), std::move(r3.chi), std::move(r4.recoloured)};
    auto& diag = run.diagnostics;
    diag.q1MaxLength = p.max_length();
    diag.q2Violations = spider_violations(run.chi, cfg);
    diag.q3MaxImbalance = p.max_imbalance();
    diag.q4Registered = static_cast<std::int64_t>(registry.size());
    diag.q4Survivors = static_cast<std::int64_t>(find_surviving(run.chi, registry).size());
    diag.attempts = attempt + 1;
    diag.seedUsed = seed;
    return run;
  }
  throw std::runtime_error("run_approx: no attempt produced a linear forest within length " +
                           std::to_string(bound));
}

}  // namespace forest
