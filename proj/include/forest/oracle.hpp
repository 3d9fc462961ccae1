#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "forest/colouring.hpp"
#include "forest/gadget.hpp"
#include "forest/graph.hpp"

namespace forest {

inline constexpr int kOracleEdgeCap = 30;

class OracleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Depth-first search over edge colours in id order, red first. Branches die
// as soon as a vertex gets three edges of one colour or a colour closes a
// cycle; profiles are compared at the leaves. Deterministic. Throws
// OracleError above kOracleEdgeCap edges.
std::optional<Colouring> exhaustive_decompose(const Graph& g);

// Connected cubic graphs on n vertices, one per isomorphism class, ordered
// by canonical form: labelled generation with symmetry breaking, deduplicated
// by canonical_form. n <= 10.
std::vector<CubicGraph> cubic_catalogue(int n);

// Canonical graph6 string (lexicographically least over all relabellings
// that the refinement leaves open).
std::string canonical_form(const Graph& g);

struct OracleLine {
  std::string graph6;
  bool decomposable = false;
  std::string profile;  // empty when not decomposable
};

struct OracleReport {
  std::vector<OracleLine> lines;
  std::vector<int> sizes;         // n values swept
  std::vector<int> excluded;      // n values skipped by the mod-4 rule
  int sampled = 0;                // graphs drawn at n = 12
  int failures() const;
  // One "graph6 verdict [profile]" line per graph.
  std::string to_text() const;
};

// Exhaustive over the catalogue for n <= 10, `samples` seeded random hosts at
// n = 12. Only n divisible by 4 are swept. Throws OracleError for nMax > 12.
OracleReport verify_small_range(int nMax, int samples = 200, std::uint64_t seed = 1);

struct GadgetSemanticsReport {
  GadgetKind kind = GadgetKind::TypeII;
  int ell = 3;
  int trials = 0;
  int exact = 0;
  std::vector<std::string> counterexamples;  // host edge list, instance, colouring, deltas
  bool ok() const { return exact == trials; }
};

// Embeds the gadget in `trials` random hosts, colours them to match and
// compares measure_delta with contract_delta. ell in [3, 8].
GadgetSemanticsReport verify_gadget_semantics(GadgetKind kind, int ell, int trials,
                                              std::uint64_t seed = 1);

}  // namespace forest
