#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace forest {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;
inline constexpr Vertex kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;

struct Incidence {
  Vertex nb = kNoVertex;
  EdgeId edge = kNoEdge;
};

struct Edge {
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;
  Vertex other(Vertex w) const { return w == u ? v : u; }
  bool has(Vertex w) const { return w == u || w == v; }
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simple graph of maximum degree 3 with stable edge ids. Partial structures
// (the contracted graph F, test stars) use this directly; cubic hosts use
// CubicGraph, which adds the 3-regularity check.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges);

  int vertex_count() const { return static_cast<int>(degree_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<Edge>& edges() const { return edges_; }
  int degree(Vertex v) const { return degree_[static_cast<std::size_t>(v)]; }
  std::span<const Incidence> incident(Vertex v) const {
    return {adj_[static_cast<std::size_t>(v)].data(),
            static_cast<std::size_t>(degree_[static_cast<std::size_t>(v)])};
  }
  // Edge id joining u and v, or kNoEdge.
  EdgeId edge_between(Vertex u, Vertex v) const;
  bool adjacent(Vertex u, Vertex v) const { return edge_between(u, v) != kNoEdge; }

 private:
  std::vector<Edge> edges_;
  std::vector<std::array<Incidence, 3>> adj_;
  std::vector<std::uint8_t> degree_;
};

class CubicGraph : public Graph {
 public:
  CubicGraph() = default;
  explicit CubicGraph(Graph g);
  CubicGraph(int n, std::vector<Edge> edges) : CubicGraph(Graph(n, std::move(edges))) {}
};

// graph6, header-less, undirected.
std::string to_graph6(const Graph& g);
Graph parse_graph6_any(std::string_view text);
CubicGraph parse_graph6(std::string_view text);

// "u v" per line, 0-based, '#' starts a comment. The vertex count is
// 1 + the largest id unless a "# n=<count>" comment says otherwise.
std::string to_edge_list(const Graph& g);
Graph parse_edge_list_any(std::string_view text);
CubicGraph parse_edge_list(std::string_view text);

// Configuration model; restarts from scratch on any loop or parallel edge.
CubicGraph random_cubic(int n, std::uint64_t seed);

// Multi-source BFS. Unreachable vertices get -1.
std::vector<int> bfs_distances(const Graph& g, std::span<const Vertex> sources, int limit = -1);
int distance(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b);
bool is_connected(const Graph& g);
int eccentricity(const Graph& g, Vertex v);
int diameter(const Graph& g);

// Named small graphs used across tests and the oracle.
CubicGraph k4();
CubicGraph cube3();
CubicGraph petersen();
CubicGraph k33();

}  // namespace forest
