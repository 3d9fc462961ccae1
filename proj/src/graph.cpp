#include "forest/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>
#include <sstream>

#include "forest/random.hpp"

namespace forest {

Graph::Graph(int n, std::vector<Edge> edges) : edges_(std::move(edges)) {
  if (n < 0) throw GraphError("negative vertex count");
  adj_.assign(static_cast<std::size_t>(n), {});
  degree_.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto [u, v] = edges_[i];
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw GraphError("edge " + std::to_string(i) + " has an endpoint out of range");
    if (u == v) throw GraphError("loop at vertex " + std::to_string(u));
    for (Vertex w : {u, v}) {
      auto& d = degree_[static_cast<std::size_t>(w)];
      if (d == 3) throw GraphError("vertex " + std::to_string(w) + " has degree > 3");
      Vertex other = w == u ? v : u;
      for (int k = 0; k < d; ++k)
        if (adj_[static_cast<std::size_t>(w)][static_cast<std::size_t>(k)].nb == other)
          throw GraphError("parallel edge " + std::to_string(u) + "-" + std::to_string(v));
      adj_[static_cast<std::size_t>(w)][d] = {other, static_cast<EdgeId>(i)};
      ++d;
    }
  }
}

EdgeId Graph::edge_between(Vertex u, Vertex v) const {
  for (const auto& inc : incident(u))
    if (inc.nb == v) return inc.edge;
  return kNoEdge;
}

CubicGraph::CubicGraph(Graph g) : Graph(std::move(g)) {
  const int n = vertex_count();
  if (n < 4) throw GraphError("cubic graph needs at least 4 vertices, got " + std::to_string(n));
  for (Vertex v = 0; v < n; ++v)
    if (degree(v) != 3)
      throw GraphError("vertex " + std::to_string(v) + " has degree " + std::to_string(degree(v)) +
                       ", expected 3");
}

// ---------------------------------------------------------------- graph6

namespace {

void append_size(std::string& out, std::uint64_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  }
}

}  // namespace

std::string to_graph6(const Graph& g) {
  const std::uint64_t n = static_cast<std::uint64_t>(g.vertex_count());
  std::string out;
  append_size(out, n);
  const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  std::vector<std::uint8_t> packed((bits + 5) / 6, 0);
  for (const auto& e : g.edges()) {
    auto i = static_cast<std::uint64_t>(std::min(e.u, e.v));
    auto j = static_cast<std::uint64_t>(std::max(e.u, e.v));
    std::uint64_t k = j * (j - 1) / 2 + i;  // column-wise upper triangle
    packed[k / 6] |= static_cast<std::uint8_t>(1u << (5 - k % 6));
  }
  for (auto b : packed) out.push_back(static_cast<char>(b + 63));
  return out;
}

Graph parse_graph6_any(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
    text.remove_suffix(1);
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  if (text.empty()) throw GraphError("graph6: empty input");
  for (char c : text)
    if (c < 63 || c > 126) throw GraphError("graph6: byte out of range");
  std::size_t pos = 0;
  auto next = [&]() -> std::uint64_t {
    if (pos >= text.size()) throw GraphError("graph6: truncated size field");
    return static_cast<std::uint64_t>(text[pos++] - 63);
  };
  std::uint64_t n = next();
  if (n == 63) {
    n = next();
    if (n == 63) {
      n = 0;
      for (int k = 0; k < 6; ++k) n = (n << 6) | next();
    } else {
      n = (n << 12) | (next() << 6);
      n |= next();
    }
  }
  if (n > (1u << 24)) throw GraphError("graph6: vertex count too large");
  const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  if (text.size() - pos != (bits + 5) / 6)
    throw GraphError("graph6: expected " + std::to_string((bits + 5) / 6) + " data bytes, got " +
                     std::to_string(text.size() - pos));
  std::vector<Edge> edges;
  std::uint64_t k = 0;
  for (std::uint64_t j = 1; j < n; ++j)
    for (std::uint64_t i = 0; i < j; ++i, ++k) {
      auto byte = static_cast<std::uint64_t>(text[pos + k / 6] - 63);
      if ((byte >> (5 - k % 6)) & 1) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
    }
  std::vector<int> deg(n, 0);
  for (auto& e : edges) {
    if (++deg[static_cast<std::size_t>(e.u)] > 3 || ++deg[static_cast<std::size_t>(e.v)] > 3) {
      Vertex bad = deg[static_cast<std::size_t>(e.u)] > 3 ? e.u : e.v;
      throw GraphError("vertex " + std::to_string(bad) + " has degree > 3, expected 3");
    }
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

CubicGraph parse_graph6(std::string_view text) { return CubicGraph(parse_graph6_any(text)); }

// ------------------------------------------------------------- edge list

std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  os << "# n=" << g.vertex_count() << "\n";
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

Graph parse_edge_list_any(std::string_view text) {
  std::vector<Edge> edges;
  int declared = -1;
  int maxId = -1;
  std::size_t lineNo = 0;
  while (!text.empty()) {
    ++lineNo;
    auto cut = text.find('\n');
    std::string_view line = text.substr(0, cut);
    text = cut == std::string_view::npos ? std::string_view{} : text.substr(cut + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      std::string_view comment = line.substr(hash + 1);
      while (!comment.empty() && comment.front() == ' ') comment.remove_prefix(1);
      if (comment.starts_with("n=")) {
        int n = 0;
        auto [p, ec] = std::from_chars(comment.data() + 2, comment.data() + comment.size(), n);
        if (ec == std::errc{}) declared = n;
      }
      line = line.substr(0, hash);
    }
    int vals[2];
    int got = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p == end) break;
      if (got == 2) throw GraphError("edge list line " + std::to_string(lineNo) + ": extra tokens");
      auto [q, ec] = std::from_chars(p, end, vals[got]);
      if (ec != std::errc{} || vals[got] < 0)
        throw GraphError("edge list line " + std::to_string(lineNo) + ": bad vertex id");
      ++got;
      p = q;
    }
    if (got == 0) continue;
    if (got != 2) throw GraphError("edge list line " + std::to_string(lineNo) + ": need two ids");
    edges.push_back({vals[0], vals[1]});
    maxId = std::max({maxId, vals[0], vals[1]});
  }
  int n = declared >= 0 ? declared : maxId + 1;
  if (maxId >= n) throw GraphError("edge list: vertex id exceeds declared n");
  return Graph(n, std::move(edges));
}

CubicGraph parse_edge_list(std::string_view text) { return CubicGraph(parse_edge_list_any(text)); }

// ---------------------------------------------------------- random cubic

CubicGraph random_cubic(int n, std::uint64_t seed) {
  if (n % 2 != 0) throw GraphError("random_cubic: n must be even (3n odd)");
  if (n < 4) throw GraphError("random_cubic: n must be at least 4");
  Rng rng(seed);
  std::vector<Vertex> points(static_cast<std::size_t>(3 * n));
  std::vector<std::uint64_t> seen;
  for (;;) {
    for (int i = 0; i < 3 * n; ++i) points[static_cast<std::size_t>(i)] = i / 3;
    std::shuffle(points.begin(), points.end(), rng);
    std::vector<Edge> edges;
    edges.reserve(points.size() / 2);
    seen.clear();
    bool ok = true;
    for (std::size_t i = 0; i < points.size(); i += 2) {
      Vertex u = points[i], v = points[i + 1];
      if (u == v) { ok = false; break; }
      edges.push_back({std::min(u, v), std::max(u, v)});
      seen.push_back(static_cast<std::uint64_t>(edges.back().u) << 32 |
                     static_cast<std::uint32_t>(edges.back().v));
    }
    if (!ok) continue;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) continue;
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    return CubicGraph(n, std::move(edges));
  }
}

// ------------------------------------------------------------- distances

std::vector<int> bfs_distances(const Graph& g, std::span<const Vertex> sources, int limit) {
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<Vertex> queue;
  queue.reserve(dist.size());
  for (Vertex s : sources) {
    if (dist[static_cast<std::size_t>(s)] != 0) {
      dist[static_cast<std::size_t>(s)] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    int d = dist[static_cast<std::size_t>(v)];
    if (limit >= 0 && d >= limit) continue;
    for (const auto& inc : g.incident(v)) {
      auto& dn = dist[static_cast<std::size_t>(inc.nb)];
      if (dn < 0) {
        dn = d + 1;
        queue.push_back(inc.nb);
      }
    }
  }
  return dist;
}

int distance(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b) {
  if (a.empty() || b.empty()) throw GraphError("distance: empty vertex set");
  auto dist = bfs_distances(g, a);
  int best = -1;
  for (Vertex v : b) {
    int d = dist[static_cast<std::size_t>(v)];
    if (d >= 0 && (best < 0 || d < best)) best = d;
  }
  return best;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  Vertex s = 0;
  auto dist = bfs_distances(g, std::span<const Vertex>(&s, 1));
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

int eccentricity(const Graph& g, Vertex v) {
  auto dist = bfs_distances(g, std::span<const Vertex>(&v, 1));
  return *std::max_element(dist.begin(), dist.end());
}

int diameter(const Graph& g) {
  int best = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) best = std::max(best, eccentricity(g, v));
  return best;
}

// ------------------------------------------------------------ named graphs

CubicGraph k4() { return CubicGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

CubicGraph cube3() {
  std::vector<Edge> e;
  for (Vertex v = 0; v < 8; ++v)
    for (int b = 0; b < 3; ++b) {
      Vertex w = v ^ (1 << b);
      if (v < w) e.push_back({v, w});
    }
  return CubicGraph(8, std::move(e));
}

CubicGraph petersen() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.push_back({i, (i + 1) % 5});
    e.push_back({i, i + 5});
    e.push_back({i + 5, (i + 2) % 5 + 5});
  }
  return CubicGraph(10, std::move(e));
}

CubicGraph k33() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 3; ++i)
    for (Vertex j = 3; j < 6; ++j) e.push_back({i, j});
  return CubicGraph(6, std::move(e));
}

}  // namespace forest
