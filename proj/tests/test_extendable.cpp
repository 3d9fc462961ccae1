#include <set>

#include "doctest.h"
#include "forest/base_colouring.hpp"
#include "forest/extendability.hpp"
#include "forest/extendable_completion.hpp"
#include "support/oracles.hpp"
#include "support/partial_colourings.hpp"

using namespace forest;

namespace {

// K4 with 03 red and 13 blue: the triangle 012 is uncoloured, odd, and has
// a single vertex of uncoloured degree 3.
Colouring k4_with_bad_triangle(const Graph& g) {
  Colouring chi(g);
  chi.set(g.edge_between(0, 3), Colour::Red);
  chi.set(g.edge_between(1, 3), Colour::Blue);
  return chi;
}

std::vector<char> uncoloured_mask(const Colouring& chi) {
  std::vector<char> m(static_cast<std::size_t>(chi.size()));
  for (EdgeId e = 0; e < chi.size(); ++e) m[static_cast<std::size_t>(e)] = chi[e] == Colour::Uncoloured;
  return m;
}

}  // namespace

TEST_SUITE("extendable_completion") {

TEST_CASE("a bad triangle in K4 is found once and fixed locally") {
  const CubicGraph g = k4();
  const Colouring chi = k4_with_bad_triangle(g);
  CHECK(is_e4_bad(chi, {0, 1, 2}));
  CHECK_FALSE(is_e4_bad(Colouring(g), {0, 1, 2}));
  const auto bad = enumerate_E4_bad(chi);
  REQUIRE(bad.size() == 1);
  const std::set<Vertex> cyc(bad[0].cycle.begin(), bad[0].cycle.end());
  CHECK(cyc == std::set<Vertex>{0, 1, 2});
  CHECK(bad[0].branch == std::vector<Vertex>{2});

  const Colouring fixed = fix_bad_cycle(chi, bad[0]);
  CHECK(enumerate_E4_bad(fixed).empty());
  CHECK(satisfies_e1(fixed));
  CHECK(single_colour_cycles(fixed, 1).empty());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (chi[e] != Colour::Uncoloured) CHECK(fixed[e] == chi[e]);
    if (fixed[e] != chi[e]) CHECK((cyc.count(g.edge(e).u) + cyc.count(g.edge(e).v)) > 0);
  }
  CHECK_NOTHROW(decompose_H123(g, uncoloured_mask(fixed)));
  CHECK_THROWS_AS(fix_bad_cycle(fixed, bad[0]), std::invalid_argument);
}

TEST_CASE("fix_bad_cycle refuses inputs that break E1") {
  const CubicGraph g = k4();
  Colouring chi = k4_with_bad_triangle(g);
  chi.set(g.edge_between(1, 3), Colour::Red);
  CHECK_THROWS_AS(fix_bad_cycle(chi, BadCycle{BadCycle::Kind::E4, {0, 1, 2}, {2}}), std::invalid_argument);
}

TEST_CASE("enumeration agrees with the decomposition on planted colourings") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const CubicGraph g = random_cubic(200, s);
    const auto planted = testing::planted_partial_colouring(g, s, 4, 0.3);
    const auto bad = enumerate_E4_bad(planted.chi);
    for (const auto& b : bad) CHECK(is_e4_bad(planted.chi, b.cycle));
    bool threw = false;
    try {
      decompose_H123(g, uncoloured_mask(planted.chi));
    } catch (const E4Error&) {
      threw = true;
    }
    CHECK(threw == !bad.empty());
  }
}

TEST_CASE("destroy_all_bad_cycles repairs, preserves E1 and E3, stays local") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const CubicGraph g = random_cubic(200, 1000 + s);
    const auto planted = testing::planted_partial_colouring(g, s, 5, 0.25);
    const auto bad = enumerate_E4_bad(planted.chi);
    const RepairResult r = destroy_all_bad_cycles(planted.chi);
    CHECK(enumerate_E4_bad(r.chi).empty());
    CHECK(satisfies_e1(r.chi));
    CHECK(single_colour_cycles(r.chi, 1).empty());
    CHECK(r.fixes <= static_cast<int>(bad.size()));
    std::vector<Vertex> near;
    for (const auto& b : bad) near.insert(near.end(), b.cycle.begin(), b.cycle.end());
    std::vector<Vertex> prior;
    for (EdgeId e : planted.chi.coloured_edges()) {
      prior.push_back(g.edge(e).u);
      prior.push_back(g.edge(e).v);
    }
    const auto d = testing::distances_to_set(g, near), dPrior = testing::distances_to_set(g, prior);
    auto gap = [&](const std::vector<int>& dist, EdgeId e) {
      return std::min(dist[static_cast<std::size_t>(g.edge(e).u)], dist[static_cast<std::size_t>(g.edge(e).v)]);
    };
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (planted.chi[e] != Colour::Uncoloured) {
        CHECK(r.chi[e] == planted.chi[e]);
      } else if (r.chi[e] != Colour::Uncoloured) {
        REQUIRE(!near.empty());
        CHECK(gap(d, e) <= 2);
        CHECK(gap(dPrior, e) <= 2);
      }
    }
    CHECK_NOTHROW(decompose_H123(g, uncoloured_mask(r.chi)));
  }
}

TEST_CASE("check_extendable reports each property") {
  const CubicGraph g = k4();
  CHECK(check_extendable(g, Colouring(g), Config::desk(4)).e1Ok);
  Colouring mono(g);
  mono.set(g.edge_between(0, 1), Colour::Red);
  mono.set(g.edge_between(0, 2), Colour::Red);
  Vertex w = kNoVertex;
  CHECK_FALSE(satisfies_e1(mono, &w));
  CHECK(w == 0);
  const auto rep = check_extendable(g, mono, Config::desk(4));
  CHECK_FALSE(rep.e1Ok);
  CHECK_FALSE(rep.ok());
  CHECK(!rep.summary().empty());
  CHECK_FALSE(check_extendable(g, k4_with_bad_triangle(g), Config::desk(4)).e4Ok);
}

TEST_CASE("assemble_G0 is infeasible at desk scale but best effort succeeds") {
  const CubicGraph g = random_cubic(4096, 5);
  Config cfg = Config::desk(4096);
  cfg.gadgetsPerLength = 2;
  CHECK_THROWS_AS(assemble_G0(g, cfg), AssemblyError);

  const G0Bundle b = assemble_G0(g, cfg, false);
  CHECK(check_extendable(g, b.g0, cfg).ok());
  int placed = 0;
  for (const auto& [ell, k] : b.perLength) placed += k;
  CHECK(placed == static_cast<int>(b.registry.size()));
  CHECK(placed >= 1);
  for (const auto& inst : b.registry) {
    CHECK(is_valid_embedding(g, inst));
    CHECK(gadget_state(b.g0, inst) == 0);
  }
  // Coloured components keep their distance.
  const auto comps = coloured_components(b.g0);
  if (comps.size() >= 2) CHECK(min_component_distance(g, comps) >= 3);

  const G0Bundle back = bundle_from_text(g, bundle_to_text(b));
  CHECK(back.g0 == b.g0);
  auto placedOnly = b.perLength;
  std::erase_if(placedOnly, [](const auto& kv) { return kv.second == 0; });
  CHECK(back.perLength == placedOnly);
  CHECK_THROWS_AS(bundle_from_text(g, to_text(b.g0)), std::invalid_argument);
}

TEST_CASE("assemble_G0 clamps an unreachable gadget range") {
  const CubicGraph g = random_cubic(512, 2);
  const Config cfg = Config::paper(512);
  REQUIRE(cfg.ellMax > 1000);
  CHECK_THROWS_AS(assemble_G0(g, cfg), AssemblyError);
  const G0Bundle b = assemble_G0(g, cfg, false);
  for (const auto& [ell, k] : b.perLength) CHECK(ell < 2 * eccentricity(g, 0));
}

}  // TEST_SUITE
