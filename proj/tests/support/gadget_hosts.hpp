#pragma once

#include <optional>

#include "forest/gadget.hpp"
#include "forest/random.hpp"
#include "support/oracles.hpp"

namespace forest::testing {

// Holds raw colours rather than a Colouring, which would point into `host`
// and dangle once the struct moves.
struct ColouredHost {
  GadgetHost host;
  std::vector<Colour> colours;
  Colouring colouring() const {
    Colouring chi(host.g);
    for (EdgeId e = 0; e < host.g.edge_count(); ++e) chi.set(e, colours[static_cast<std::size_t>(e)]);
    return chi;
  }
};

// A random cubic host around the gadget, coloured to agree with it and with
// every monochromatic component a path. Hosts that admit no such colouring
// are redrawn.
inline ColouredHost coloured_gadget_host(GadgetKind kind, int ell, std::uint64_t seed,
                                         Orientation o = Orientation::Blue) {
  const GadgetTemplate t = instantiate(kind, ell);
  for (std::uint64_t draw = 0;; ++draw) {
    const std::uint64_t s = sub_seed(seed, 0x6e57, draw);
    GadgetHost host = embed_in_random_host(t, 8 + static_cast<int>(s % 24), s);
    host.inst.orientation = o;
    Colouring partial(host.g);
    for (EdgeId te = 0; te < t.h.edge_count(); ++te)
      partial.set(host.inst.host_edge(host.g, te), host.inst.expected(te, false));
    for (std::uint64_t k = 0; k < 4; ++k)
      if (auto chi = complete_to_paths(partial, s + k, 4000)) return {std::move(host), chi->raw()};
  }
}

// Per-length path-count change of one colour, from the union-find reference.
inline std::map<int, int> naive_delta(const Graph& g, const Colouring& before, const Colouring& after,
                                      Colour c) {
  const auto a = naive_split(g, to_indices(before));
  const auto b = naive_split(g, to_indices(after));
  std::map<int, int> out;
  if (!a || !b) return {{0, 1 << 20}};  // marks a non-linear side
  const auto& ma = c == Colour::Red ? a->red : a->blue;
  const auto& mb = c == Colour::Red ? b->red : b->blue;
  for (const auto& [t, k] : mb) out[t] += k;
  for (const auto& [t, k] : ma) out[t] -= k;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace forest::testing
