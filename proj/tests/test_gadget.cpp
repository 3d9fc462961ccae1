#include "doctest.h"
#include "forest/gadget.hpp"
#include "support/gadget_hosts.hpp"

using namespace forest;

namespace {

std::map<int, int> as_int_map(const std::map<int, std::int64_t>& m) {
  return {m.begin(), m.end()};
}

}  // namespace

TEST_SUITE("gadget_engine") {

TEST_CASE("instantiate checks its arguments and builds the swap path") {
  CHECK_THROWS_AS(instantiate(GadgetKind::TypeII, 2), std::invalid_argument);
  CHECK_THROWS_AS(instantiate(GadgetKind::TypeI, 4, 0), std::invalid_argument);
  for (GadgetKind k : {GadgetKind::TypeI, GadgetKind::TypeII})
    for (int ell = 3; ell <= 8; ++ell) {
      const GadgetTemplate t = instantiate(k, ell);
      CHECK(t.q0.size() == static_cast<std::size_t>(ell + 3));
      CHECK(t.swap_first() != kNoEdge);
      CHECK(t.swap_second() != kNoEdge);
      CHECK(t.colourA.size() == static_cast<std::size_t>(t.h.edge_count()));
      // The two swap edges carry different colours.
      CHECK(t.colourA[static_cast<std::size_t>(t.swap_first())] !=
            t.colourA[static_cast<std::size_t>(t.swap_second())]);
    }
}

TEST_CASE("contract delta for ell = 3 and ell = 5") {
  const ProfileDelta d3 = contract_delta(3, Orientation::Blue);
  CHECK(d3.red.empty());
  CHECK(as_int_map(d3.blue) == std::map<int, int>{{1, -1}, {2, 2}, {3, -1}});
  const ProfileDelta d5 = contract_delta(5, Orientation::Red);
  CHECK(d5.blue.empty());
  CHECK(as_int_map(d5.red) == std::map<int, int>{{1, -1}, {2, 1}, {4, 1}, {5, -1}});
}

TEST_CASE("measured deltas match the contract in random hosts") {
  for (GadgetKind k : {GadgetKind::TypeI, GadgetKind::TypeII})
    for (int ell = 3; ell <= 6; ++ell)
      for (Orientation o : {Orientation::Blue, Orientation::Red})
        for (std::uint64_t s = 0; s < 5; ++s) {
          const auto ch = testing::coloured_gadget_host(k, ell, s * 13 + static_cast<std::uint64_t>(ell), o);
          const GadgetInstance& inst = ch.host.inst;
          const Colouring chi = ch.colouring();
          REQUIRE(is_valid_embedding(ch.host.g, inst));
          REQUIRE(gadget_state(chi, inst) == 0);
          const Colouring swapped = apply_swap(chi, inst);
          const ProfileDelta want = contract_delta(ell, o);
          CHECK(measure_delta(chi, inst) == want);
          const Colour lose = o == Orientation::Blue ? Colour::Blue : Colour::Red;
          CHECK(testing::naive_delta(ch.host.g, chi, swapped, lose) ==
                as_int_map(lose == Colour::Blue ? want.blue : want.red));
          CHECK(testing::naive_delta(ch.host.g, chi, swapped, opposite(lose)).empty());
        }
}

TEST_CASE("swap is an involution and leaves survivors out of the registry") {
  const auto ch = testing::coloured_gadget_host(GadgetKind::TypeII, 4, 77);
  const GadgetInstance& inst = ch.host.inst;
  const Colouring chi = ch.colouring();
  const Colouring once = apply_swap(chi, inst);
  CHECK(gadget_state(once, inst) == 1);
  CHECK(edit_distance(chi, once) == 2);
  CHECK(apply_swap(once, inst) == chi);
  CHECK(find_surviving(chi, {inst}).size() == 1);
  CHECK(find_surviving(once, {inst}).empty());

  Colouring broken = chi;
  broken.flip(inst.host_edge(ch.host.g, inst.tmpl.swap_first()));
  broken.flip(inst.host_edge(ch.host.g, 0) == inst.host_edge(ch.host.g, inst.tmpl.swap_first())
                  ? inst.host_edge(ch.host.g, 1)
                  : inst.host_edge(ch.host.g, 0));
  if (gadget_state(broken, inst) < 0) CHECK_THROWS_AS(apply_swap(broken, inst), std::invalid_argument);
}

TEST_CASE("registry text round trip") {
  std::vector<GadgetInstance> reg;
  for (GadgetKind k : {GadgetKind::TypeI, GadgetKind::TypeII}) {
    auto ch = testing::coloured_gadget_host(k, 5, 3);
    ch.host.inst.orientation = k == GadgetKind::TypeI ? Orientation::Red : Orientation::Blue;
    reg.push_back(ch.host.inst);
  }
  const auto back = registry_from_text(registry_to_text(reg));
  REQUIRE(back.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back[i].tmpl.kind == reg[i].tmpl.kind);
    CHECK(back[i].tmpl.ell == reg[i].tmpl.ell);
    CHECK(back[i].orientation == reg[i].orientation);
    CHECK(back[i].map == reg[i].map);
  }
  CHECK(registry_to_text(back) == registry_to_text(reg));
  CHECK_THROWS_AS(registry_from_text("TypeII 5 2 blue 1 2\n"), std::invalid_argument);
}

TEST_CASE("SwapEvaluator agrees with a full recount") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto ch = testing::coloured_gadget_host(GadgetKind::TypeI, 3 + static_cast<int>(s % 5), s);
    const Graph& g = ch.host.g;
    const Colouring chi = ch.colouring();
    const SwapEvaluator ev(chi);
    const auto before = profile(chi);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      const auto inc = g.incident(v);
      for (std::size_t i = 0; i < inc.size(); ++i)
        for (std::size_t j = i + 1; j < inc.size(); ++j) {
          const EdgeId a = inc[i].edge, b = inc[j].edge;
          if (chi[a] == chi[b]) continue;
          Colouring after = chi;
          after.flip(a);
          after.flip(b);
          const auto p = profile(after);
          const bool linear = p.nonLinear == 0 && p.redCycles.empty() && p.blueCycles.empty();
          const auto d = ev.evaluate(a, b);
          REQUIRE(d.has_value() == linear);
          if (d) CHECK(*d == profile_delta(before, p));
        }
    }
  }
}

}  // TEST_SUITE
