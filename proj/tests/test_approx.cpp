#include "doctest.h"
#include "forest/approx.hpp"
#include "forest/base_colouring.hpp"
#include "forest/graph.hpp"
#include "support/pipeline_checks.hpp"

using namespace forest;

namespace {

struct Stages {
  Colouring c1;
  Chi2Result r2;
  Chi3Result r3;
  Chi4Result r4;
};

PurpleGreenColouring shades_for_empty_g0(const Graph& g, const Config& cfg) {
  const std::vector<char> mask(static_cast<std::size_t>(g.edge_count()), 1);
  return build_chi0(g, Colouring(g), decompose_H123(g, mask), cfg);
}

Stages run_stages(const Graph& g, const PurpleGreenColouring& pg, std::uint64_t seed) {
  Colouring c1 = chi1(g, Colouring(g), pg, seed);
  Chi2Result r2 = chi2(c1, seed + 1);
  Chi3Result r3 = chi3(r2, seed + 2);
  Chi4Result r4 = chi4(r3.chi, seed + 3);
  return {std::move(c1), std::move(r2), std::move(r3), std::move(r4)};
}

}  // namespace

TEST_SUITE("approx_pipeline") {

TEST_CASE("stage invariants with an empty G0") {
  const CubicGraph g = random_cubic(2000, 3);
  const Config cfg = Config::desk(2000);
  const auto pg = shades_for_empty_g0(g, cfg);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Stages st = run_stages(g, pg, s * 100);
    std::string why;
    CHECK_MESSAGE(testing::two_plus_one(st.c1, &why), why);
    // chi2 flips exactly one edge on each chi1 cycle.
    const auto p1 = profile(st.c1);
    std::int64_t cycles = 0;
    for (const auto& m : {p1.redCycles, p1.blueCycles})
      for (const auto& [len, k] : m) cycles += k;
    CHECK(static_cast<std::int64_t>(st.r2.log.size()) == cycles);
    CHECK(edit_distance(st.c1, st.r2.chi) == static_cast<int>(st.r2.log.size()));
    for (const auto& f : st.r2.log)
      CHECK(std::find(f.cycle.begin(), f.cycle.end(), f.flipped) != f.cycle.end());
    CHECK(testing::no_monochromatic_cycles(st.r3.chi));
    CHECK(edit_distance(st.r2.chi, st.r3.chi) == 2 * static_cast<int>(st.r3.configurations.size()));
    CHECK_MESSAGE(testing::paths_with_one_recolouring(st.r4.chi, st.r4.recoloured, &why), why);
  }
}

TEST_CASE("stages are pure functions of their seeds") {
  const CubicGraph g = random_cubic(1000, 8);
  const auto pg = shades_for_empty_g0(g, Config::desk(1000));
  const Stages a = run_stages(g, pg, 42), b = run_stages(g, pg, 42);
  CHECK(a.c1 == b.c1);
  CHECK(a.r3.chi == b.r3.chi);
  CHECK(a.r4.chi == b.r4.chi);
  CHECK(a.r4.recoloured == b.r4.recoloured);
}

TEST_CASE("chi1 rejects shades on G0 edges") {
  const CubicGraph g = random_cubic(100, 1);
  const auto pg = shades_for_empty_g0(g, Config::desk(100));
  Colouring g0(g);
  g0.set(0, Colour::Red);
  CHECK_THROWS_AS(chi1(g, g0, pg, 1), std::invalid_argument);
}

TEST_CASE("run_approx returns a bounded linear forest with diagnostics") {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const CubicGraph g = random_cubic(4000, s);
    Config cfg = Config::desk(4000);
    cfg.seed = s;
    const ApproxRun run = run_approx(g, Colouring(g), cfg);
    const auto p = profile(run.chi);
    CHECK(p.nonLinear == 0);
    CHECK(testing::no_monochromatic_cycles(run.chi));
    CHECK(p.max_length() <= approx_length_bound(g, cfg));
    CHECK(run.diagnostics.q1MaxLength == p.max_length());
    CHECK(run.diagnostics.q3MaxImbalance == p.max_imbalance());
    CHECK(run.diagnostics.attempts >= 1);
    CHECK(testing::two_plus_one(run.stage1));
    CHECK(PipelineDiagnostics::from_key_values(run.diagnostics.to_key_values()) == run.diagnostics);
  }
}

TEST_CASE("length bound never drops below the base colouring bound") {
  const Config cfg = Config::desk(16);
  CHECK(approx_length_bound(k4(), cfg) >= 2 * cfg.weakThomassenBound + 1);
}

TEST_CASE("spider violations count short paths met by many long ones") {
  // Two Hamiltonian paths of length 3: nothing is long, nothing counts.
  const CubicGraph g = k4();
  Colouring chi(g, Colour::Red);
  chi.set(g.edge_between(0, 2), Colour::Blue);
  chi.set(g.edge_between(0, 3), Colour::Blue);
  chi.set(g.edge_between(1, 3), Colour::Blue);
  CHECK(spider_violations(chi, Config::desk(4)) == 0);
  Config loose = Config::desk(4);
  loose.spiderShort = 3;
  loose.spiderLong = 3;
  loose.spiderCount = 1;
  CHECK(spider_violations(chi, loose) == 2);
  loose.spiderCount = 2;  // each path meets a single opposite component
  CHECK(spider_violations(chi, loose) == 0);
}

}  // TEST_SUITE
