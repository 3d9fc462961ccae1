#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "forest/graph.hpp"

namespace forest {

enum class Colour : std::uint8_t { Uncoloured = 0, Red = 1, Blue = 2 };

constexpr Colour opposite(Colour c) {
  return c == Colour::Red ? Colour::Blue : c == Colour::Blue ? Colour::Red : Colour::Uncoloured;
}
char colour_char(Colour c);

// Total or partial red/blue assignment over the edges of a host graph. The
// host must outlive the colouring.
class Colouring {
 public:
  Colouring() = default;
  explicit Colouring(const Graph& g, Colour fill = Colour::Uncoloured)
      : g_(&g), c_(static_cast<std::size_t>(g.edge_count()), fill) {}

  const Graph& graph() const { return *g_; }
  Colour operator[](EdgeId e) const { return c_[static_cast<std::size_t>(e)]; }
  void set(EdgeId e, Colour c) { c_[static_cast<std::size_t>(e)] = c; }
  void flip(EdgeId e) { set(e, opposite((*this)[e])); }
  int size() const { return static_cast<int>(c_.size()); }

  bool is_total() const;
  int count(Colour c) const;
  int degree(Vertex v, Colour c) const;
  int coloured_degree(Vertex v) const { return g_->degree(v) - degree(v, Colour::Uncoloured); }
  // The other edge of colour c at v, skipping `not_this`; kNoEdge if none.
  EdgeId other_edge(Vertex v, Colour c, EdgeId not_this) const;
  std::vector<EdgeId> coloured_edges() const;
  const std::vector<Colour>& raw() const { return c_; }

  bool operator==(const Colouring& o) const { return g_ == o.g_ && c_ == o.c_; }

 private:
  const Graph* g_ = nullptr;
  std::vector<Colour> c_;
};

// Number of edges on which two colourings of the same host differ.
int edit_distance(const Colouring& a, const Colouring& b);

struct MonoComponent {
  Colour colour = Colour::Red;
  enum class Shape : std::uint8_t { Path, Cycle, NonLinear } shape = Shape::Path;
  // For paths: end to end. For cycles: cyclic order starting at the
  // smallest id. For non-linear components: BFS order.
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;  // edges[i] joins vertices[i], vertices[i+1] (mod k on cycles)
  int length() const { return static_cast<int>(edges.size()); }
};

struct ComponentSet {
  std::vector<MonoComponent> components;
  std::vector<int> componentOfEdge;  // -1 for uncoloured edges
  std::vector<Vertex> monochromaticVertices;  // vertices with three edges of one colour
};

ComponentSet monochromatic_components(const Colouring& chi);

struct ComponentProfile {
  std::map<int, std::int64_t> redPaths, bluePaths, redCycles, blueCycles;
  std::int64_t nonLinear = 0;

  std::map<int, std::int64_t>& paths(Colour c) { return c == Colour::Red ? redPaths : bluePaths; }
  const std::map<int, std::int64_t>& paths(Colour c) const {
    return c == Colour::Red ? redPaths : bluePaths;
  }
  std::int64_t count(Colour c, int t) const;
  std::int64_t edges(Colour c) const;  // path and cycle edges of colour c
  int max_length() const;
  std::int64_t max_imbalance() const;  // max_t |r(P_t) - b(P_t)|
  bool operator==(const ComponentProfile&) const = default;
};

ComponentProfile profile(const Colouring& chi);
ComponentProfile profile(const ComponentSet& comps);

// Signed per-length difference after - before, zero entries dropped.
struct ProfileDelta {
  std::map<int, std::int64_t> red, blue;
  bool operator==(const ProfileDelta&) const = default;
};
ProfileDelta profile_delta(const ComponentProfile& before, const ComponentProfile& after);
std::string to_string(const ProfileDelta& d);
std::string to_string(const ComponentProfile& p);

// Throws std::invalid_argument when chi is not total.
bool is_isomorphic_linear_forests(const Colouring& chi);

// "edgeId u v {R|B|U}" per line.
std::string to_text(const Colouring& chi);
Colouring parse_colouring(const Graph& g, std::string_view text);

}  // namespace forest
