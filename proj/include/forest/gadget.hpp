#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forest/colouring.hpp"
#include "forest/graph.hpp"

namespace forest {

enum class GadgetKind : std::uint8_t { TypeI, TypeII };
enum class Orientation : std::uint8_t { Blue, Red };  // which colour loses a path of length ell

std::string to_string(GadgetKind k);
std::string to_string(Orientation o);

// A gadget drawn on its own vertex set. Boundary edges e1..e5 and f1..f4 end
// at private stub vertices; an embedding may identify stubs with other
// vertices (the aliasing the definition allows).
struct GadgetTemplate {
  GadgetKind kind = GadgetKind::TypeII;
  int ell = 3;
  int armLength = 1;  // length of Q1 (and Q2)
  Graph h;
  std::vector<Vertex> q0;      // q_0 .. q_{ell+2}
  std::vector<Vertex> q1, q2;  // from the end on Q0 outwards (Type II: q1 ... q3)
  std::array<EdgeId, 5> e{kNoEdge, kNoEdge, kNoEdge, kNoEdge, kNoEdge};
  std::array<EdgeId, 4> f{kNoEdge, kNoEdge, kNoEdge, kNoEdge};
  std::vector<Colour> colourA, colourB;  // blue orientation, per template edge

  EdgeId swap_first() const { return h.edge_between(q0[1], q0[2]); }
  EdgeId swap_second() const { return h.edge_between(q0[2], q0[3]); }
  // Vertices that must stay distinct under an embedding (Q0, Q1, Q2).
  std::vector<Vertex> core_vertices() const;
};

// Throws std::invalid_argument for ell < 3 or armLength < 1 (Type II needs
// armLength >= 2 unless the chord q1q3 is acceptable; 1 is allowed).
GadgetTemplate instantiate(GadgetKind kind, int ell, int armLength = 2);

struct GadgetInstance {
  GadgetTemplate tmpl;
  std::vector<Vertex> map;  // template vertex -> host vertex
  Orientation orientation = Orientation::Blue;

  // Host edge of a template edge, or kNoEdge when the embedding is broken.
  EdgeId host_edge(const Graph& g, EdgeId templateEdge) const;
  Colour expected(EdgeId templateEdge, bool swapped) const;
};

// Embedding respects adjacency, keeps core vertices distinct and maps
// aliased template edges consistently.
bool is_valid_embedding(const Graph& g, const GadgetInstance& inst, std::string* why = nullptr);

// 0: host matches the registered colouring, 1: matches the swapped one,
// -1: neither.
int gadget_state(const Colouring& chi, const GadgetInstance& inst);

// Toggles the instance between its two colourings. Throws std::invalid_argument
// when the host matches neither.
Colouring apply_swap(const Colouring& chi, const GadgetInstance& inst);

// Recount of the profile before and after apply_swap.
ProfileDelta measure_delta(const Colouring& chi, const GadgetInstance& inst);

// The delta promised by the definition: a blue instance loses a blue P_ell
// and a blue P_1 and gains a blue P_{ell-1} and a blue P_2.
ProfileDelta contract_delta(int ell, Orientation o);

std::vector<GadgetInstance> find_surviving(const Colouring& chi,
                                           const std::vector<GadgetInstance>& registry);

// One line per instance: "kind ell armLength orientation v0 v1 ...".
std::string registry_to_text(const std::vector<GadgetInstance>& registry);
std::vector<GadgetInstance> registry_from_text(const std::string& text);

// ------------------------------------------------------ test hosts

// A cubic host containing the template with its stubs kept distinct, plus
// `extra` fresh vertices (rounded up for parity), wired by a random stub
// pairing. Returns the host and the blue-oriented instance.
struct GadgetHost {
  CubicGraph g;
  GadgetInstance inst;
};
GadgetHost embed_in_random_host(const GadgetTemplate& t, int extra, std::uint64_t seed);

// Completes a partial colouring to a total one whose monochromatic
// components are all paths, recolouring only uncoloured edges. Randomised
// local search; nullopt when the step budget runs out.
std::optional<Colouring> complete_to_paths(const Colouring& partial, std::uint64_t seed,
                                           long maxSteps = 200'000);

// Host colouring that agrees with the instance's registered colouring.
Colouring colour_instance(const Graph& g, const GadgetInstance& inst);

// ------------------------------------------------------ local swaps

// Exact profile change of swapping the colours of two edges that share a
// vertex and have different colours, computed from the component
// structure alone. nullopt if the result would not be a linear forest.
class SwapEvaluator {
 public:
  explicit SwapEvaluator(const Colouring& chi);
  void refresh();  // recompute after the colouring changed
  std::optional<ProfileDelta> evaluate(EdgeId a, EdgeId b) const;
  const ComponentSet& components() const { return comps_; }

 private:
  const Colouring* chi_;
  ComponentSet comps_;
  std::vector<int> pos_;  // position of an edge within its component
};

}  // namespace forest
