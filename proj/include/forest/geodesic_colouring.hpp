#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "forest/colouring.hpp"
#include "forest/gadget.hpp"
#include "forest/graph.hpp"

namespace forest {

// A geodesic p_0..p_L with its pendant neighbours. The geodesic is never
// modified; the evolving path P' lives in the stage results below.
struct GeodesicContext {
  const Graph* g = nullptr;
  std::vector<Vertex> path;
  std::vector<Vertex> pendant;  // p_i' for interior i, kNoVertex at the ends
  std::vector<int> indexOf;     // host vertex -> index on the path, or -1

  // Throws std::invalid_argument when `path` is not a geodesic of g.
  static GeodesicContext make(const Graph& g, std::vector<Vertex> path);
  int length() const { return static_cast<int>(path.size()) - 1; }
  bool on_path(Vertex v) const { return indexOf[static_cast<std::size_t>(v)] >= 0; }
  EdgeId path_edge(int i) const;  // p_i p_{i+1}
  EdgeId pendant_edge(int i) const;
};

// Problems a caller can recover from by picking another geodesic.
class GeodesicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Verdict {
  bool ok = true;
  std::string why;
  explicit operator bool() const { return ok; }
};

struct GeodesicColouring {
  Colouring phi;
  GadgetInstance gadget;
  std::string route;  // which construction produced it, for diagnostics
};

// ------------------------------------------------------------- comb (no common neighbours)

enum class CombCase { I, II, III };
std::string to_string(CombCase c);

struct CombClassification {
  CombCase kind = CombCase::I;
  int s = 0;
  Vertex w = kNoVertex;  // Case III common neighbour
};

// True when no vertex off the path has two neighbours on it.
bool has_no_common_neighbours(const GeodesicContext& ctx);

// Throws GeodesicError when the path is shorter than ell + 36 or two of its
// vertices share a neighbour off the path.
CombClassification classify_comb_case(const GeodesicContext& ctx, int ell);
GeodesicColouring comb_colour(const GeodesicContext& ctx, int ell, const CombClassification& c);

// The Case II pattern placed at the start of a short geodesic (length at
// least ell + 4). Used where long geodesics do not exist; the result is
// checked with validate_comb_colouring and throws GeodesicError if it fails.
GeodesicColouring short_comb_colour(const GeodesicContext& ctx, int ell);

// Coloured edges within distance `radius` of the path and connected, every
// vertex with two coloured edges sees both colours, and every cycle using
// one colour has two consecutive uncoloured edges.
Verdict validate_local_colouring(const GeodesicContext& ctx, const Colouring& phi, int radius);
inline Verdict validate_comb_colouring(const GeodesicContext& ctx, const Colouring& phi) {
  return validate_local_colouring(ctx, phi, 3);
}
inline Verdict validate_partial_colouring(const GeodesicContext& ctx, const Colouring& phi) {
  return validate_local_colouring(ctx, phi, 4);
}

// ------------------------------------------------------------- precolouring

// Directed edges recorded while precolouring: head[e] is the vertex the
// edge points into, kNoVertex for undirected edges.
struct OrientedOverlay {
  std::vector<Vertex> head;
  std::vector<EdgeId> order;  // edges in the order they were directed
  bool directed(EdgeId e) const { return head[static_cast<std::size_t>(e)] != kNoVertex; }
  bool into(EdgeId e, Vertex v) const { return head[static_cast<std::size_t>(e)] == v; }
};

// x_1..x_5 consecutive on the geodesic (increasing index), y_1..y_3 off it.
struct ExceptionalConfig {
  std::array<Vertex, 5> x{};
  std::array<Vertex, 3> y{};
  std::array<EdgeId, 11> edges(const Graph& g) const;  // in the canonical order
};

struct Precolouring {
  Colouring phi;
  OrientedOverlay overlay;
  std::vector<Vertex> walk;  // P'
  std::vector<ExceptionalConfig> exceptional;
};
Precolouring precolour(const GeodesicContext& ctx);

// Directed overlay structure: out-degree <= 1, forest, one sink per tree,
// non-root in-degree 0 or 2, non-root leaves interior to the path, every
// tree good (diameter >= leaves - 1), good 3-binary trees are caterpillars.
Verdict validate_overlay(const GeodesicContext& ctx, const Precolouring& pre);

// Bichromatic vertices of coloured degree 2, maximal paths other than the
// one through P' end at a vertex with two opposite edges, no monochromatic
// cycles, distance <= 3, and monochromatic degree 3 only at y_2 of a
// parallel exceptional copy.
Verdict validate_precolour(const GeodesicContext& ctx, const Precolouring& pre);

struct FixedPrecolouring {
  Colouring phi;
  std::vector<Vertex> walk;
  std::vector<ExceptionalConfig> exceptional;
};
FixedPrecolouring fix_exceptional(const GeodesicContext& ctx, const Precolouring& pre);

// Same checks as validate_precolour with E1 at every vertex, P' a blue
// path, and no monochromatic degree-3 vertex left.
Verdict validate_after_fix(const GeodesicContext& ctx, const FixedPrecolouring& fixed);

// ------------------------------------------------------------- gadgets on P'

enum class GadgetCase { I, II, III, Fallback };
std::string to_string(GadgetCase c);

struct GadgetSite {
  GadgetCase kind = GadgetCase::Fallback;
  int s = 0;              // index on P'
  Vertex w = kNoVertex;   // Case III common neighbour
  int exceptional = -1;   // Case I copy
};

// Throws GeodesicError when P' is shorter than 5 ell + 200.
GadgetSite detect_gadget_case(const GeodesicContext& ctx, const FixedPrecolouring& fixed, int ell);
GeodesicColouring create_gadget(const GeodesicContext& ctx, const FixedPrecolouring& fixed,
                                const GadgetSite& site, int ell);

// Full dispatcher: the precolouring pipeline on long geodesics (falling back
// to the comb on the middle subpath), the comb on shorter ones.
GeodesicColouring colour_around_geodesic(const Graph& g, const std::vector<Vertex>& path, int ell);

// ------------------------------------------------------------- fixtures

struct GeodesicFixture {
  std::string name;
  CubicGraph g;
  std::vector<Vertex> path;
  std::vector<std::pair<std::string, Vertex>> roles;  // e.g. {"y[2]", 17}
};

// Hosts built around a ring whose unused third edges lead to private
// five-vertex caps. The comb fixtures carry a path of length ell + 36, the
// gadget fixtures one of length 5 ell + 200.
GeodesicFixture comb_fixture(CombCase c, int ell);
GeodesicFixture gadget_fixture(GadgetCase c, int ell);

// Edge list followed by "# role name = vertex" lines, with the path listed
// as roles p[0], p[1], ...
std::string fixture_to_text(const GeodesicFixture& f);
GeodesicFixture fixture_from_text(const std::string& text);

}  // namespace forest
