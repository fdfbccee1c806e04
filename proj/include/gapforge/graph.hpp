#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gapforge/error.hpp"

namespace gapforge {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 1..n.
///
/// Immutable once built; adjacency lists are sorted so adjacency queries are
/// a binary search and edge listings come out in ascending order.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Duplicate edges collapse; loops and
  /// out-of-range endpoints throw InputError.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g;
    g.adj_.resize(n);
    for (const auto& [u, v] : edges) {
      if (u == v) throw InputError("loop edge at vertex " + std::to_string(u));
      if (u < 1 || v < 1 || u > n || v > n) {
        throw InputError("edge {" + std::to_string(u) + "," + std::to_string(v) +
                         "} has an endpoint outside [1," + std::to_string(n) + "]");
      }
      g.adj_[u - 1].push_back(v);
      g.adj_[v - 1].push_back(u);
    }
    for (auto& row : g.adj_) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      g.num_edges_ += row.size();
    }
    g.num_edges_ /= 2;
    return g;
  }

  std::size_t num_vertices() const noexcept { return adj_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v - 1); }

  std::size_t degree(Vertex v) const { return adj_.at(v - 1).size(); }

  bool contains(Vertex v) const noexcept { return v >= 1 && v <= adj_.size(); }

  bool adjacent(Vertex u, Vertex v) const {
    if (!contains(u) || !contains(v)) return false;
    const auto& row = adj_[u - 1];
    return std::binary_search(row.begin(), row.end(), v);
  }

  /// All edges {u,v} with u < v, ascending.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (Vertex u = 1; u <= adj_.size(); ++u) {
      for (Vertex v : adj_[u - 1]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t num_edges_ = 0;
};

/// Accumulates edges for a graph of known order, then freezes it.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n) : n_(n) {}

  void add_edge(Vertex u, Vertex v) { edges_.emplace_back(u, v); }

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t pending_edges() const noexcept { return edges_.size(); }

  Graph build() const { return Graph::from_edges(n_, edges_); }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

/// Result of a dominating-set computation. `vertices` is sorted ascending.
struct DominatingSetResult {
  std::vector<Vertex> vertices;
  // Proven lower bound on the domination number; equals size() when optimal.
  std::size_t gamma_lower_bound = 0;
  bool optimal = false;

  std::size_t size() const noexcept { return vertices.size(); }
};

inline bool is_dominating(const Graph& g, std::span<const Vertex> dominators) {
  std::vector<char> covered(g.num_vertices() + 1, 0);
  for (Vertex d : dominators) {
    if (!g.contains(d)) {
      throw InputError("vertex " + std::to_string(d) + " is not in [1," +
                       std::to_string(g.num_vertices()) + "]");
    }
    covered[d] = 1;
    for (Vertex u : g.neighbors(d)) covered[u] = 1;
  }
  for (Vertex v = 1; v <= g.num_vertices(); ++v) {
    if (!covered[v]) return false;
  }
  return true;
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Int>
bool parse_uint(std::string_view tok, Int& out) {
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace detail

/// Parses DIMACS edge format: "p edge <n> <m>", "e <u> <v>", "c ..." comments.
inline Graph parse_graph(std::string_view text) {
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    auto tok = detail::split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate problem line");
      std::size_t m = 0;
      if (tok.size() != 4 || tok[1] != "edge" || !detail::parse_uint(tok[2], n) ||
          !detail::parse_uint(tok[3], m)) {
        throw ParseError(line_no, "malformed header, expected \"p edge <n> <m>\"");
      }
      edges.reserve(m);
      have_header = true;
    } else if (tok[0] == "e") {
      if (!have_header) throw ParseError(line_no, "edge line before problem line");
      Vertex u = 0, v = 0;
      if (tok.size() != 3 || !detail::parse_uint(tok[1], u) || !detail::parse_uint(tok[2], v)) {
        throw ParseError(line_no, "malformed edge line, expected \"e <u> <v>\"");
      }
      if (u == v) throw ParseError(line_no, "loop edge at vertex " + std::to_string(u));
      if (u < 1 || v < 1 || u > n || v > n) {
        throw ParseError(line_no, "endpoint outside [1," + std::to_string(n) + "]");
      }
      edges.emplace_back(u, v);
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing problem line");
  return Graph::from_edges(n, edges);
}

inline std::string write_graph(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

inline Graph read_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

}  // namespace gapforge
