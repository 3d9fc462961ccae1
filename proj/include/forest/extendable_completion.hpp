#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "forest/colouring.hpp"
#include "forest/config.hpp"
#include "forest/gadget.hpp"
#include "forest/graph.hpp"

namespace forest {

// A cycle blocking the uncoloured decomposition (odd, uncoloured, at most
// two vertices of uncoloured degree 3) or one breaking the cycle condition
// (one colour, no two consecutive uncoloured edges).
struct BadCycle {
  enum class Kind { E4, E3 } kind = Kind::E4;
  std::vector<Vertex> cycle;
  std::vector<Vertex> branch;  // vertices of uncoloured degree 3 on the cycle
};

bool is_e4_bad(const Colouring& chi, const std::vector<Vertex>& cycle);

// Every E4-bad cycle exactly once. Walks the chains of uncoloured degree-2
// vertices between branch vertices and pairs them up.
std::vector<BadCycle> enumerate_E4_bad(const Colouring& chi);

// Extends chi so that `c` is no longer bad, colouring only edges that touch
// it. Throws std::invalid_argument when `c` is not bad or chi breaks E1.
Colouring fix_bad_cycle(const Colouring& chi, const BadCycle& c);

struct RepairResult {
  Colouring chi;
  int fixes = 0;
};
// Snapshot the bad cycles, fix each one still bad, in order.
RepairResult destroy_all_bad_cycles(const Colouring& chi);

class AssemblyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct G0Bundle {
  Colouring g0;
  std::vector<GadgetInstance> registry;
  std::map<int, int> perLength;  // gadgets placed for each ell
  int repairs = 0;
};

// Places one gadget-carrying geodesic colouring at a time at far points of
// the host, keeping coloured components at distance >= 10 after the E4
// repair. Throws AssemblyError when some ell in [ellMin, ellMax] gets fewer
// than cfg.gadgetsPerLength gadgets; the message lists what was achieved.
// With requireAll false the shortfall is accepted and perLength tells.
G0Bundle assemble_G0(const Graph& g, const Config& cfg, bool requireAll = true);

// Colouring lines, a "# registry" line, then registry lines.
std::string bundle_to_text(const G0Bundle& b);
G0Bundle bundle_from_text(const Graph& g, const std::string& text);

}  // namespace forest
