#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gapforge/error.hpp"
#include "gapforge/graph.hpp"

namespace gapforge {

/// Bipartite graph with left part A = 1..a_size and right part B = 1..b_size.
/// Edges are (a, b) pairs; each side keeps sorted adjacency.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  static BipartiteGraph from_edges(std::size_t a_size, std::size_t b_size,
                                   std::span<const Edge> edges) {
    BipartiteGraph h;
    h.left_.resize(a_size);
    h.right_.resize(b_size);
    for (const auto& [a, b] : edges) {
      if (a < 1 || a > a_size || b < 1 || b > b_size) {
        throw InputError("bipartite edge (" + std::to_string(a) + "," + std::to_string(b) +
                         ") outside [1," + std::to_string(a_size) + "]x[1," +
                         std::to_string(b_size) + "]");
      }
      h.left_[a - 1].push_back(b);
      h.right_[b - 1].push_back(a);
    }
    for (auto* side : {&h.left_, &h.right_}) {
      for (auto& row : *side) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
      }
    }
    for (const auto& row : h.left_) h.num_edges_ += row.size();
    return h;
  }

  std::size_t a_size() const noexcept { return left_.size(); }
  std::size_t b_size() const noexcept { return right_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }

  // Right-side neighbours of left vertex a.
  std::span<const Vertex> left_neighbors(Vertex a) const { return left_.at(a - 1); }
  // Left-side neighbours of right vertex b.
  std::span<const Vertex> right_neighbors(Vertex b) const { return right_.at(b - 1); }

  bool has_edge(Vertex a, Vertex b) const {
    if (a < 1 || a > left_.size()) return false;
    const auto& row = left_[a - 1];
    return std::binary_search(row.begin(), row.end(), b);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (Vertex a = 1; a <= left_.size(); ++a) {
      for (Vertex b : left_[a - 1]) out.emplace_back(a, b);
    }
    return out;
  }

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  std::vector<std::vector<Vertex>> left_;
  std::vector<std::vector<Vertex>> right_;
  std::size_t num_edges_ = 0;
};

/// Bipartite graph plus colourings alpha: A -> [a_colors], beta: B -> [b_colors].
/// Colours are 1-based; alpha[a-1] is the colour of left vertex a.
struct ColoredBipartiteGraph {
  BipartiteGraph graph;
  int a_colors = 1;
  int b_colors = 1;
  std::vector<int> alpha;
  std::vector<int> beta;

  ColoredBipartiteGraph() = default;
  ColoredBipartiteGraph(BipartiteGraph h, int a_colors_, int b_colors_, std::vector<int> alpha_,
                        std::vector<int> beta_)
      : graph(std::move(h)),
        a_colors(a_colors_),
        b_colors(b_colors_),
        alpha(std::move(alpha_)),
        beta(std::move(beta_)) {
    validate();
  }

  std::size_t a_size() const noexcept { return graph.a_size(); }
  std::size_t b_size() const noexcept { return graph.b_size(); }
  int alpha_of(Vertex a) const { return alpha.at(a - 1); }
  int beta_of(Vertex b) const { return beta.at(b - 1); }

  // Right vertices of colour c, ascending.
  std::vector<Vertex> beta_class(int c) const {
    std::vector<Vertex> out;
    for (Vertex b = 1; b <= beta.size(); ++b) {
      if (beta[b - 1] == c) out.push_back(b);
    }
    return out;
  }

  bool every_beta_class_nonempty() const {
    std::vector<char> seen(static_cast<std::size_t>(b_colors) + 1, 0);
    for (int c : beta) seen[static_cast<std::size_t>(c)] = 1;
    return std::all_of(seen.begin() + 1, seen.end(), [](char x) { return x != 0; });
  }

  void validate() const {
    if (a_colors < 1 || b_colors < 1) throw InputError("colour counts must be positive");
    if (alpha.size() != graph.a_size()) throw InputError("alpha must cover every left vertex");
    if (beta.size() != graph.b_size()) throw InputError("beta must cover every right vertex");
    for (int c : alpha) {
      if (c < 1 || c > a_colors) throw InputError("alpha colour " + std::to_string(c) + " out of range");
    }
    for (int c : beta) {
      if (c < 1 || c > b_colors) throw InputError("beta colour " + std::to_string(c) + " out of range");
    }
  }

  friend bool operator==(const ColoredBipartiteGraph&, const ColoredBipartiteGraph&) = default;
};

inline nlohmann::json edges_to_json(const BipartiteGraph& h) {
  auto arr = nlohmann::json::array();
  for (const auto& [a, b] : h.edges()) arr.push_back({a, b});
  return arr;
}

inline std::vector<Edge> edges_from_json(const nlohmann::json& arr) {
  std::vector<Edge> edges;
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2) throw InputError("edge entries must be [a,b] pairs");
    edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
  }
  return edges;
}

inline nlohmann::json to_json(const ColoredBipartiteGraph& h) {
  return {{"a_size", h.a_size()}, {"b_size", h.b_size()}, {"a_colors", h.a_colors},
          {"b_colors", h.b_colors}, {"alpha", h.alpha},   {"beta", h.beta},
          {"edges", edges_to_json(h.graph)}};
}

inline ColoredBipartiteGraph colored_from_json(const nlohmann::json& j) {
  try {
    auto a = j.at("a_size").get<std::size_t>();
    auto b = j.at("b_size").get<std::size_t>();
    auto edges = edges_from_json(j.at("edges"));
    return ColoredBipartiteGraph(BipartiteGraph::from_edges(a, b, edges), j.at("a_colors").get<int>(),
                                 j.at("b_colors").get<int>(), j.at("alpha").get<std::vector<int>>(),
                                 j.at("beta").get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("coloured bipartite JSON: ") + e.what());
  }
}

}  // namespace gapforge
