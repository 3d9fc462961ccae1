#include "doctest.h"
#include "forest/config.hpp"
#include "forest/geodesic_colouring.hpp"
#include "forest/geodesics.hpp"
#include "support/oracles.hpp"

using namespace forest;

namespace {

// The gadget carried by a geodesic colouring sits in the host exactly as
// registered.
void check_gadget(const Graph& g, const GeodesicColouring& r) {
  std::string why;
  CHECK_MESSAGE(is_valid_embedding(g, r.gadget, &why), why);
  CHECK(gadget_state(r.phi, r.gadget) == 0);
}

}  // namespace

TEST_SUITE("geodesic_colouring") {

TEST_CASE("contexts reject non-geodesic paths") {
  const CubicGraph g = cube3();
  CHECK_NOTHROW(GeodesicContext::make(g, {0, 1, 3, 7}));
  CHECK_THROWS_AS(GeodesicContext::make(g, {0, 1, 3, 2}), std::invalid_argument);
  const auto ctx = GeodesicContext::make(g, {0, 1, 3, 7});
  CHECK(ctx.length() == 3);
  CHECK(ctx.pendant.front() == kNoVertex);
  CHECK(ctx.pendant[1] != kNoVertex);
  CHECK(g.adjacent(ctx.pendant[1], 1));
}

TEST_CASE("comb fixtures classify as built and colour validly") {
  for (int ell = 3; ell <= 8; ++ell)
    for (CombCase c : {CombCase::I, CombCase::II, CombCase::III}) {
      const GeodesicFixture f = comb_fixture(c, ell);
      CAPTURE(f.name);
      CAPTURE(ell);
      const auto ctx = GeodesicContext::make(f.g, f.path);
      REQUIRE(ctx.length() == ell + 36);
      const CombClassification cl = classify_comb_case(ctx, ell);
      CHECK(cl.kind == c);
      const GeodesicColouring r = comb_colour(ctx, ell, cl);
      const Verdict v = validate_comb_colouring(ctx, r.phi);
      CHECK_MESSAGE(v.ok, v.why);
      CHECK(testing::local_and_bichromatic(f.g, f.path, r.phi, 3));
      CHECK(r.gadget.tmpl.ell == ell);
      check_gadget(f.g, r);
    }
}

TEST_CASE("comb classification refuses short paths") {
  const GeodesicFixture f = comb_fixture(CombCase::I, 3);
  const std::vector<Vertex> part(f.path.begin(), f.path.begin() + 20);
  const auto ctx = GeodesicContext::make(f.g, part);
  CHECK_THROWS_AS(classify_comb_case(ctx, 3), GeodesicError);
}

TEST_CASE("gadget fixtures: precolouring, repair and gadget creation") {
  for (int ell = 3; ell <= 8; ++ell)
    for (GadgetCase c : {GadgetCase::I, GadgetCase::II, GadgetCase::III}) {
      const GeodesicFixture f = gadget_fixture(c, ell);
      CAPTURE(f.name);
      CAPTURE(ell);
      const auto ctx = GeodesicContext::make(f.g, f.path);
      const Precolouring pre = precolour(ctx);
      Verdict v = validate_overlay(ctx, pre);
      CHECK_MESSAGE(v.ok, v.why);
      v = validate_precolour(ctx, pre);
      CHECK_MESSAGE(v.ok, v.why);
      CHECK(pre.exceptional.size() == (c == GadgetCase::I ? 1u : 0u));
      const FixedPrecolouring fixed = fix_exceptional(ctx, pre);
      v = validate_after_fix(ctx, fixed);
      CHECK_MESSAGE(v.ok, v.why);
      const GadgetSite site = detect_gadget_case(ctx, fixed, ell);
      CHECK(site.kind == c);
      const GeodesicColouring r = create_gadget(ctx, fixed, site, ell);
      v = validate_partial_colouring(ctx, r.phi);
      CHECK_MESSAGE(v.ok, v.why);
      CHECK(testing::local_and_bichromatic(f.g, f.path, r.phi, 4));
      check_gadget(f.g, r);
      CHECK(colour_around_geodesic(f.g, f.path, ell).route == r.route);
    }
}

TEST_CASE("fallback fixture goes to the comb on the middle subpath") {
  const GeodesicFixture f = gadget_fixture(GadgetCase::Fallback, 4);
  const GeodesicColouring r = colour_around_geodesic(f.g, f.path, 4);
  CHECK(r.route.find("middle") != std::string::npos);
  const auto ctx = GeodesicContext::make(f.g, f.path);
  CHECK(validate_partial_colouring(ctx, r.phi).ok);
  check_gadget(f.g, r);
}

TEST_CASE("validators reject a tampered colouring") {
  const GeodesicFixture f = comb_fixture(CombCase::II, 4);
  const auto ctx = GeodesicContext::make(f.g, f.path);
  const GeodesicColouring r = comb_colour(ctx, 4, classify_comb_case(ctx, 4));
  // Recolour one edge at some vertex with two coloured edges to match the other.
  Colouring bad = r.phi;
  bool tampered = false;
  for (Vertex v = 0; v < f.g.vertex_count() && !tampered; ++v) {
    if (bad.coloured_degree(v) != 2) continue;
    for (const auto& inc : f.g.incident(v))
      if (bad[inc.edge] == Colour::Red) {
        bad.set(inc.edge, Colour::Blue);
        tampered = true;
        break;
      }
  }
  REQUIRE(tampered);
  CHECK_FALSE(validate_comb_colouring(ctx, bad).ok);

  // A coloured edge far from the path breaks locality.
  Colouring far = r.phi;
  const auto d = testing::distances_to_set(f.g, f.path);
  for (EdgeId e = 0; e < f.g.edge_count(); ++e)
    if (d[static_cast<std::size_t>(f.g.edge(e).u)] > 5 && d[static_cast<std::size_t>(f.g.edge(e).v)] > 5) {
      far.set(e, Colour::Red);
      break;
    }
  CHECK_FALSE(validate_comb_colouring(ctx, far).ok);
}

TEST_CASE("fixture text round trip") {
  const GeodesicFixture f = gadget_fixture(GadgetCase::I, 5);
  const GeodesicFixture back = fixture_from_text(fixture_to_text(f));
  CHECK(back.path == f.path);
  CHECK(back.roles == f.roles);
  CHECK(to_graph6(back.g) == to_graph6(f.g));
}

TEST_CASE("random hosts: precolouring validators and the short comb") {
  for (std::uint64_t s = 0; s < 4; ++s) {
    const CubicGraph g = random_cubic(4096, s);
    Config cfg = Config::desk(4096);
    cfg.seed = s;
    for (const auto& geo : harvest_geodesics(g, cfg)) {
      const auto ctx = GeodesicContext::make(g, geo.path);
      const Precolouring pre = precolour(ctx);
      CHECK(validate_overlay(ctx, pre).ok);
      CHECK(validate_precolour(ctx, pre).ok);
      CHECK(validate_after_fix(ctx, fix_exceptional(ctx, pre)).ok);
      const GeodesicColouring r = short_comb_colour(ctx, 3);
      CHECK(validate_comb_colouring(ctx, r.phi).ok);
      CHECK(testing::local_and_bichromatic(g, geo.path, r.phi, 3));
      check_gadget(g, r);
    }
  }
}

}  // TEST_SUITE
