#include "doctest.h"
#include "forest/colouring.hpp"
#include "forest/graph.hpp"
#include "forest/random.hpp"
#include "support/oracles.hpp"

using namespace forest;

namespace {

Graph cycle_graph(int k) {
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) edges.push_back({i, (i + 1) % k});
  return Graph(k, std::move(edges));
}

Colouring random_total(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  Colouring chi(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e) chi.set(e, coin(rng) ? Colour::Red : Colour::Blue);
  return chi;
}

}  // namespace

TEST_SUITE("colouring_core") {

TEST_CASE("alternating 4-cycle splits into four single edges") {
  const Graph c4 = cycle_graph(4);
  Colouring chi(c4);
  for (EdgeId e = 0; e < 4; ++e) chi.set(e, e % 2 ? Colour::Blue : Colour::Red);
  const auto p = profile(chi);
  CHECK(p.count(Colour::Red, 1) == 2);
  CHECK(p.count(Colour::Blue, 1) == 2);
  CHECK(is_isomorphic_linear_forests(chi));

  Colouring mono(c4, Colour::Red);
  const auto q = profile(mono);
  CHECK(q.redCycles.at(4) == 1);
  CHECK(q.redPaths.empty());
  CHECK_FALSE(is_isomorphic_linear_forests(mono));
}

TEST_CASE("triangle with one blue edge") {
  const Graph c3 = cycle_graph(3);
  Colouring chi(c3, Colour::Red);
  chi.set(1, Colour::Blue);
  const auto comps = monochromatic_components(chi);
  const auto p = profile(comps);
  CHECK(p.count(Colour::Red, 2) == 1);
  CHECK(p.count(Colour::Blue, 1) == 1);
  CHECK(p.max_length() == 2);
  CHECK(p.max_imbalance() == 1);
  CHECK_FALSE(is_isomorphic_linear_forests(chi));
}

TEST_CASE("K4 splits into two Hamiltonian paths") {
  const CubicGraph g = k4();
  const Colouring chi = testing::colour_with_red(g, {{0, 1}, {1, 2}, {2, 3}});
  const auto comps = monochromatic_components(chi);
  REQUIRE(comps.components.size() == 2);
  for (const auto& c : comps.components) {
    CHECK(c.shape == MonoComponent::Shape::Path);
    CHECK(c.length() == 3);
  }
  CHECK(comps.monochromaticVertices.empty());
  CHECK(is_isomorphic_linear_forests(chi));
  CHECK(profile(chi).edges(Colour::Red) == 3);

  Colouring star = testing::colour_with_red(g, {{0, 1}, {0, 2}, {0, 3}});
  const auto sc = monochromatic_components(star);
  REQUIRE(sc.monochromaticVertices.size() == 1);
  CHECK(sc.monochromaticVertices[0] == 0);
  CHECK(profile(sc).nonLinear == 1);
}

TEST_CASE("partial colourings are rejected by the isomorphism check") {
  const CubicGraph g = k4();
  Colouring chi(g, Colour::Red);
  chi.set(0, Colour::Uncoloured);
  CHECK_FALSE(chi.is_total());
  CHECK_THROWS_AS(is_isomorphic_linear_forests(chi), std::invalid_argument);
}

TEST_CASE("text round trip and parse errors") {
  const CubicGraph g = petersen();
  Colouring chi = random_total(g, 7);
  chi.set(3, Colour::Uncoloured);
  CHECK(parse_colouring(g, to_text(chi)) == chi);
  CHECK_THROWS_AS(parse_colouring(g, "0 0 1 X\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_colouring(g, "99 0 1 R\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_colouring(g, "0 0 1 R\n0 0 1 B\n"), std::invalid_argument);
}

TEST_CASE("profile_delta and edit_distance") {
  const CubicGraph g = k4();
  const Colouring a = testing::colour_with_red(g, {{0, 1}, {1, 2}, {2, 3}});
  Colouring b = a;
  b.flip(g.edge_between(1, 2));
  CHECK(edit_distance(a, b) == 1);
  const ProfileDelta d = profile_delta(profile(a), profile(b));
  CHECK(d.red.at(3) == -1);
  CHECK(d.red.at(1) == 2);
  CHECK(to_string(profile_delta(profile(a), profile(a))) == to_string(ProfileDelta{}));
}

TEST_CASE("fuzz: components agree with a union-find reference") {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const CubicGraph g = random_cubic(8 + 2 * static_cast<int>(s % 20), s);
    const Colouring chi = random_total(g, s * 31 + 5);
    const auto ref = testing::naive_split(g, testing::to_indices(chi));
    const auto p = profile(chi);
    const bool linear = p.nonLinear == 0 && p.redCycles.empty() && p.blueCycles.empty();
    REQUIRE(linear == ref.has_value());
    CHECK(is_isomorphic_linear_forests(chi) == testing::naive_isomorphic(g, testing::to_indices(chi)));
    if (!ref) continue;
    std::map<int, int> red(p.redPaths.begin(), p.redPaths.end()), blue(p.bluePaths.begin(), p.bluePaths.end());
    CHECK(red == ref->red);
    CHECK(blue == ref->blue);
    // Sum of path lengths equals the edge count of each colour.
    CHECK(p.edges(Colour::Red) == chi.count(Colour::Red));
    CHECK(p.edges(Colour::Blue) == chi.count(Colour::Blue));
  }
}

}  // TEST_SUITE
