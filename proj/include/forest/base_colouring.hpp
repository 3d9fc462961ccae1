#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "forest/colouring.hpp"
#include "forest/config.hpp"
#include "forest/graph.hpp"

namespace forest {

// ---------------------------------------------------------------- Vizing

// Proper edge colouring with colours 0..3 (Misra-Gries fan rotation).
std::vector<int> vizing_four_colour(const Graph& g);
bool is_proper_edge_colouring(const Graph& g, const std::vector<int>& colours);

// Colours {0,1} become red and {2,3} blue. Throws on an improper input.
Colouring merge_to_two(const Graph& g, const std::vector<int>& fourColouring);

// Linear-forest colouring whose components have length <= 2c+1, where c is
// cfg.weakThomassenBound. Accepts any graph of maximum degree 3.
Colouring weak_thomassen(const Graph& g, const Config& cfg);

// ------------------------------------------------ H1 / H2 / H3 structure

// Maximal run of edges through vertices of uncoloured degree 2.
struct Chain {
  std::vector<Vertex> vertices;  // end to end; closed chains repeat no vertex
  std::vector<EdgeId> edges;
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
  int length() const { return static_cast<int>(edges.size()); }
};

struct H2Cycle {
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;     // edges[i] joins vertices[i] and vertices[i+1 mod k]
  std::vector<EdgeId> touching;  // H1 edges with exactly one end on the cycle
};

struct H3Theta {
  Vertex a = kNoVertex, b = kNoVertex;
  std::array<Chain, 3> paths;
};

struct H123Decomposition {
  std::vector<EdgeId> h1;
  Graph f;                                 // contracted graph, degrees 1 or 3
  std::vector<Vertex> fToHost;             // F vertex -> host vertex
  std::vector<std::vector<EdgeId>> fEdgeChain;  // F edge -> host edge chain
  std::vector<H2Cycle> h2;
  std::vector<H3Theta> h3;
};

// Raw contraction result: every chain grouped by its end pair. Odd cycles
// spanned by at most two branch vertices are the E4-bad ones.
struct UncolouredStructure {
  std::vector<Chain> singles;    // multiplicity-one chains between distinct ends
  std::vector<H2Cycle> doubles;  // cycles from loops, double chains and bare cycles
  std::vector<H3Theta> triples;
};
UncolouredStructure analyse_uncoloured(const Graph& g, const std::vector<char>& uncolouredMask);

class E4Error : public std::runtime_error {
 public:
  E4Error(const std::string& what, std::vector<Vertex> cycle)
      : std::runtime_error(what), cycle(std::move(cycle)) {}
  std::vector<Vertex> cycle;
};

// Throws E4Error carrying an odd double-chain cycle when one exists.
H123Decomposition decompose_H123(const Graph& g, const std::vector<char>& uncolouredMask);

// Checks the structural contract of a decomposition against the mask.
bool validate_decomposition(const Graph& g, const std::vector<char>& uncolouredMask,
                            const H123Decomposition& d, std::string* why = nullptr);

// -------------------------------------------------- purple/green colouring

enum class Shade : std::uint8_t { Absent = 0, Purple = 1, Green = 2 };
constexpr Shade other_shade(Shade s) {
  return s == Shade::Purple ? Shade::Green : s == Shade::Green ? Shade::Purple : Shade::Absent;
}

struct PurpleGreenColouring {
  std::vector<Shade> shade;  // indexed by host edge id
  Shade operator[](EdgeId e) const { return shade[static_cast<std::size_t>(e)]; }
};

// Uncoloured edges of G0 are the edges of G1 = G \ G0.
PurpleGreenColouring build_chi0(const Graph& g, const Colouring& g0, const H123Decomposition& d,
                                const Config& cfg);

// Every vertex with >= 2 shaded edges has two of one shade, and every
// single-shade component is a path or an even cycle.
bool validate_chi0(const Graph& g, const PurpleGreenColouring& pg, std::string* why = nullptr);

}  // namespace forest
