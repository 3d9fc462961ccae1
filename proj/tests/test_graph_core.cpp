#include <algorithm>
#include <set>

#include "doctest.h"
#include "forest/config.hpp"
#include "forest/geodesics.hpp"
#include "forest/graph.hpp"
#include "support/oracles.hpp"

using namespace forest;

TEST_SUITE("graph_core") {

TEST_CASE("graph6 decodes K4 and agrees with an independent decoder") {
  const CubicGraph g = parse_graph6("C~");
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 6);
  const auto ref = testing::decode_graph6("C~");
  CHECK(ref.size() == 6);
  for (auto [u, v] : ref) CHECK(g.adjacent(u, v));

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const CubicGraph h = random_cubic(2 * static_cast<int>(seed) + 10, seed);
    const std::string s = to_graph6(h);
    const auto edges = testing::decode_graph6(s);
    REQUIRE(static_cast<int>(edges.size()) == h.edge_count());
    for (auto [u, v] : edges) CHECK(h.adjacent(u, v));
    CHECK(to_graph6(parse_graph6(s)) == s);
  }
}

TEST_CASE("graph6 rejects empty input and non-cubic graphs") {
  CHECK_THROWS_AS(parse_graph6(""), GraphError);
  const Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  try {
    parse_graph6(to_graph6(c4));
    FAIL("a 4-cycle must not parse as cubic");
  } catch (const GraphError& e) {
    CHECK(std::string(e.what()).find("degree 2") != std::string::npos);
  }
}

TEST_CASE("edge lists round-trip and honour comments") {
  const CubicGraph g = petersen();
  const CubicGraph back = parse_edge_list("# petersen\n" + to_edge_list(g));
  CHECK(back.edges().size() == g.edges().size());
  for (const auto& e : g.edges()) CHECK(back.adjacent(e.u, e.v));
  CHECK_THROWS_AS(parse_edge_list("0 1\n1 2\n"), GraphError);
}

TEST_CASE("random_cubic: K4 at n=4, parity errors, determinism") {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const CubicGraph g = random_cubic(4, s);
    CHECK(g.edge_count() == 6);
  }
  CHECK_THROWS_AS(random_cubic(5, 1), GraphError);
  CHECK_THROWS_AS(random_cubic(2, 1), GraphError);
  const CubicGraph g = random_cubic(10, 1);
  CHECK(g.edge_count() == 15);
  for (Vertex v = 0; v < 10; ++v) CHECK(g.degree(v) == 3);

  for (std::uint64_t s = 0; s < 1000; ++s) {
    const CubicGraph a = random_cubic(10, s);
    const CubicGraph b = random_cubic(10, s);
    REQUIRE(a.edges().size() == 15);
    for (std::size_t i = 0; i < 15; ++i) {
      REQUIRE(a.edges()[i].u == b.edges()[i].u);
      REQUIRE(a.edges()[i].v == b.edges()[i].v);
    }
  }
}

TEST_CASE("distances") {
  const CubicGraph cube = cube3();
  const Vertex a[] = {0}, b[] = {7}, c[] = {1};
  CHECK(distance(cube, a, a) == 0);
  CHECK(distance(cube, a, c) == 1);
  CHECK(distance(cube, a, b) == 3);
  CHECK(diameter(cube) == 3);
  CHECK(diameter(k4()) == 1);
  CHECK(diameter(petersen()) == 2);
}

TEST_CASE("harvest_geodesics: empty on K4, present on the cube") {
  Config cfg = Config::desk(4);
  cfg.geoLength = 2;
  CHECK(harvest_geodesics(k4(), cfg).empty());

  cfg = Config::desk(8);
  cfg.geoLength = 3;
  cfg.geoSeparation = 1;
  const auto geos = harvest_geodesics(cube3(), cfg);
  REQUIRE(!geos.empty());
  CHECK(geos.front().length() == 3);
  CHECK(is_geodesic(cube3(), geos.front().path));
}

TEST_CASE("harvest_geodesics at n=4096: separated, every subpath geodesic") {
  const CubicGraph g = random_cubic(4096, 11);
  Config cfg = Config::desk(4096);
  cfg.geoLength = 8;
  cfg.geoSeparation = 10;
  const auto geos = harvest_geodesics(g, cfg);
  REQUIRE(geos.size() >= 2);
  for (const auto& p : geos) {
    CHECK(p.length() == 8);
    // dist(p_i, p_j) = j - i from each vertex's own BFS.
    for (std::size_t i = 0; i < p.path.size(); ++i) {
      const Vertex src[] = {p.path[i]};
      const auto d = bfs_distances(g, src);
      for (std::size_t j = i; j < p.path.size(); ++j)
        CHECK(d[static_cast<std::size_t>(p.path[j])] == static_cast<int>(j - i));
    }
  }
  for (std::size_t i = 0; i < geos.size(); ++i)
    for (std::size_t j = i + 1; j < geos.size(); ++j)
      CHECK(distance(g, geos[i].path, geos[j].path) >= 10);
}

TEST_CASE("config validation") {
  Config c = Config::desk(1000);
  CHECK_NOTHROW(c.validate());
  c.ellMin = 2;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = Config::desk(1000);
  c.segmentMin = c.segmentMax + 1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK(Config::paper(1000).epsilon == doctest::Approx(0.5));
}

}  // TEST_SUITE
