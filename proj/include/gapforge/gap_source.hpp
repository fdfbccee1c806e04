#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "json.hpp"

#include "gapforge/bipartite.hpp"
#include "gapforge/color_coding.hpp"
#include "gapforge/combinatorics.hpp"
#include "gapforge/error.hpp"
#include "gapforge/graph.hpp"
#include "gapforge/rng.hpp"

namespace gapforge {

enum class Promise { Yes, No, Unknown };

inline std::string to_string(Promise p) {
  switch (p) {
    case Promise::Yes: return "YES";
    case Promise::No: return "NO";
    default: return "UNKNOWN";
  }
}

inline Promise promise_from_string(const std::string& s) {
  if (s == "YES") return Promise::Yes;
  if (s == "NO") return Promise::No;
  if (s == "UNKNOWN") return Promise::Unknown;
  throw InputError("promise must be YES, NO or UNKNOWN (got '" + s + "')");
}

/// A left/right vertex pair of sets forming a complete bipartite subgraph.
struct Biclique {
  std::vector<Vertex> left;
  std::vector<Vertex> right;

  friend bool operator==(const Biclique&, const Biclique&) = default;
};

/// Bipartite gap instance as produced by a biclique gap reduction.
///
/// YES: some s-subset of A has >= d common neighbours in B.
/// NO:  every `no_subset`-subset of A has <= no_threshold common neighbours.
/// `no_subset` equals s until duplicate_side rescales it.
struct GapBicliqueInstance {
  BipartiteGraph graph;
  std::size_t s = 1;
  std::size_t d = 1;
  std::size_t no_threshold = 0;
  std::size_t no_subset = 1;
  Promise promise = Promise::Unknown;
  std::uint64_t seed = 0;
  std::optional<Biclique> planted;
};

struct CommonNeighborhood {
  std::size_t count = 0;
  std::vector<Vertex> witness;
};

namespace detail {

inline std::vector<boost::dynamic_bitset<std::uint64_t>> right_rows(const BipartiteGraph& h) {
  std::vector<boost::dynamic_bitset<std::uint64_t>> rows(h.a_size(),
                                                         boost::dynamic_bitset<std::uint64_t>(h.b_size()));
  for (Vertex a = 1; a <= h.a_size(); ++a) {
    for (Vertex b : h.left_neighbors(a)) rows[a - 1].set(b - 1);
  }
  return rows;
}

}  // namespace detail

/// Maximum over all s-subsets S of A of |common neighbourhood of S|, with the
/// lexicographically least attaining subset.
inline CommonNeighborhood max_common_neighbors(const BipartiteGraph& h, std::size_t s,
                                               std::uint64_t max_subsets = kMaxVerifySubsets) {
  if (s < 1 || s > h.a_size()) {
    throw InputError("subset size " + std::to_string(s) + " outside [1," + std::to_string(h.a_size()) + "]");
  }
  if (binomial_capped(h.a_size(), s, max_subsets) > max_subsets) {
    throw CapExceeded("C(" + std::to_string(h.a_size()) + "," + std::to_string(s) +
                      ") left subsets exceed the enumeration cap");
  }
  const auto rows = detail::right_rows(h);
  CommonNeighborhood best;
  bool have = false;
  // Depth-first over lexicographic subsets with running intersections.
  std::vector<boost::dynamic_bitset<std::uint64_t>> stack(s + 1);
  stack[0] = boost::dynamic_bitset<std::uint64_t>(h.b_size());
  stack[0].set();
  std::vector<Vertex> cur;
  const std::size_t n = h.a_size();
  auto dfs = [&](auto&& self, Vertex next) -> void {
    const std::size_t depth = cur.size();
    if (depth == s) {
      const std::size_t count = stack[depth].count();
      if (!have || count > best.count) {
        best.count = count;
        best.witness = cur;
        have = true;
      }
      return;
    }
    for (Vertex a = next; a + (s - depth - 1) <= n; ++a) {
      stack[depth + 1] = stack[depth] & rows[a - 1];
      // Cannot beat the incumbent once the running intersection is too small.
      if (have && stack[depth + 1].count() <= best.count) continue;
      cur.push_back(a);
      self(self, a + 1);
      cur.pop_back();
    }
  };
  dfs(dfs, 1);
  if (!have) {
    best.count = 0;
    best.witness.resize(s);
    std::iota(best.witness.begin(), best.witness.end(), Vertex{1});
  }
  return best;
}

inline bool is_biclique(const BipartiteGraph& h, const Biclique& k) {
  for (Vertex a : k.left) {
    for (Vertex b : k.right) {
      if (!h.has_edge(a, b)) return false;
    }
  }
  return true;
}

struct PromiseCheck {
  bool ok = false;
  std::string detail;
  std::optional<CommonNeighborhood> extremal;
};

/// Brute-force check of an instance's promise. YES instances past the
/// enumeration cap are certified by their planted biclique instead.
inline PromiseCheck verify_promise(const GapBicliqueInstance& inst,
                                   std::uint64_t max_subsets = kMaxVerifySubsets) {
  PromiseCheck check;
  if (inst.promise == Promise::Unknown) {
    check.ok = true;
    check.detail = "no promise to verify";
    return check;
  }
  if (inst.promise == Promise::Yes) {
    if (binomial_capped(inst.graph.a_size(), inst.s, max_subsets) <= max_subsets) {
      auto best = max_common_neighbors(inst.graph, inst.s, max_subsets);
      check.ok = best.count >= inst.d;
      check.detail = "max common neighbours over " + std::to_string(inst.s) + "-subsets is " +
                     std::to_string(best.count) + ", need >= " + std::to_string(inst.d);
      check.extremal = std::move(best);
      return check;
    }
    if (!inst.planted) throw CapExceeded("YES instance too large to enumerate and has no planted witness");
    const auto& k = *inst.planted;
    check.ok = k.left.size() >= inst.s && k.right.size() >= inst.d && is_biclique(inst.graph, k);
    check.detail = "planted biclique check";
    return check;
  }
  auto best = max_common_neighbors(inst.graph, inst.no_subset, max_subsets);
  check.ok = best.count <= inst.no_threshold;
  check.detail = "max common neighbours over " + std::to_string(inst.no_subset) + "-subsets is " +
                 std::to_string(best.count) + ", allowed <= " + std::to_string(inst.no_threshold);
  check.extremal = std::move(best);
  return check;
}

// ---------------------------------------------------------------------------
// Preprocessing gadget

struct PreprocessResult {
  Graph graph;
  int k = 0;
  std::vector<Vertex> added;
};

/// Pads k up to the least k' >= k with 6 | k'+1 by adding k'-k universal
/// vertices that form a clique with each other and touch every original vertex.
inline PreprocessResult preprocess(const Graph& g, int k) {
  if (k < 1) throw InputError("preprocess requires k >= 1");
  int k_out = k;
  while ((k_out + 1) % 6 != 0) ++k_out;
  const std::size_t n = g.num_vertices();
  const std::size_t extra = static_cast<std::size_t>(k_out - k);
  PreprocessResult result;
  result.k = k_out;
  GraphBuilder builder(n + extra);
  for (const auto& [u, v] : g.edges()) builder.add_edge(u, v);
  for (std::size_t i = 1; i <= extra; ++i) {
    const auto u = static_cast<Vertex>(n + i);
    result.added.push_back(u);
    for (Vertex v = 1; v < u; ++v) builder.add_edge(v, u);
  }
  result.graph = builder.build();
  return result;
}

// ---------------------------------------------------------------------------
// Synthetic gap instances

inline constexpr int kNoInstanceRetries = 64;

/// YES instance with a planted K_{s,d} at seeded positions; other pairs get an
/// edge with probability pad_edge_prob (extra edges only enlarge common
/// neighbourhoods, so the planted witness survives).
inline GapBicliqueInstance synth_yes_instance(std::size_t s, std::size_t d, std::size_t left_pad,
                                              std::size_t right_pad, std::uint64_t seed,
                                              double pad_edge_prob = 0.3) {
  if (s < 1 || d < 1) throw InputError("synth_yes_instance requires s >= 1 and d >= 1");
  if (pad_edge_prob < 0.0 || pad_edge_prob > 1.0) throw InputError("pad_edge_prob must lie in [0,1]");
  const std::size_t a = s + left_pad;
  const std::size_t b = d + right_pad;
  Rng rng(seed);
  auto pick = [&](std::size_t n, std::size_t k) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{1});
    rng.shuffle(all.begin(), all.end());
    all.resize(k);
    std::sort(all.begin(), all.end());
    return all;
  };
  Biclique planted{pick(a, s), pick(b, d)};
  std::vector<char> in_left(a + 1, 0), in_right(b + 1, 0);
  for (Vertex u : planted.left) in_left[u] = 1;
  for (Vertex v : planted.right) in_right[v] = 1;
  std::vector<Edge> edges;
  for (Vertex u = 1; u <= a; ++u) {
    for (Vertex v = 1; v <= b; ++v) {
      if ((in_left[u] && in_right[v]) || rng.bernoulli(pad_edge_prob)) edges.emplace_back(u, v);
    }
  }
  GapBicliqueInstance inst;
  inst.graph = BipartiteGraph::from_edges(a, b, edges);
  inst.s = s;
  inst.d = d;
  inst.no_threshold = 0;
  inst.no_subset = s;
  inst.promise = Promise::Yes;
  inst.seed = seed;
  inst.planted = std::move(planted);
  if (auto check = verify_promise(inst); !check.ok) {
    throw VerificationError("synthetic YES instance failed verification: " + check.detail);
  }
  return inst;
}

/// NO instance: random bipartite graph G(a, b, edge_prob) in which every
/// s-subset of A has at most no_threshold common neighbours. Regenerates
/// with seed+1, seed+2, ... up to kNoInstanceRetries times.
inline GapBicliqueInstance synth_no_instance(std::size_t s, std::size_t no_threshold, std::size_t a_size,
                                             std::size_t b_size, double edge_prob, std::uint64_t seed) {
  if (s < 1 || s > a_size) throw InputError("synth_no_instance requires 1 <= s <= a_size");
  if (edge_prob < 0.0 || edge_prob > 1.0) throw InputError("edge_prob must lie in [0,1]");
  for (int attempt = 0; attempt < kNoInstanceRetries; ++attempt) {
    const std::uint64_t cur = seed + static_cast<std::uint64_t>(attempt);
    Rng rng(cur);
    std::vector<Edge> edges;
    for (Vertex u = 1; u <= a_size; ++u) {
      for (Vertex v = 1; v <= b_size; ++v) {
        if (rng.bernoulli(edge_prob)) edges.emplace_back(u, v);
      }
    }
    GapBicliqueInstance inst;
    inst.graph = BipartiteGraph::from_edges(a_size, b_size, edges);
    inst.s = s;
    inst.d = no_threshold + 1;
    inst.no_threshold = no_threshold;
    inst.no_subset = s;
    inst.promise = Promise::No;
    inst.seed = cur;
    if (verify_promise(inst).ok) return inst;
  }
  throw GenerationError("no verified NO instance within " + std::to_string(kNoInstanceRetries) +
                        " seeds; try a lower edge_prob");
}

// ---------------------------------------------------------------------------
// Duplication and colourings

/// Replaces A by A x [delta]; copy (u, i) keeps u's neighbourhood and gets id
/// (u-1)*delta + i. YES size scales to delta*s; the NO bound now covers every
/// delta*(no_subset-1)+1 left vertices.
inline GapBicliqueInstance duplicate_side(const GapBicliqueInstance& inst, std::size_t delta,
                                          bool verify = true) {
  if (delta < 1) throw InputError("duplication factor must be positive");
  const auto copy_id = [delta](Vertex u, std::size_t i) {
    return static_cast<Vertex>((u - 1) * delta + i);
  };
  std::vector<Edge> edges;
  edges.reserve(inst.graph.num_edges() * delta);
  for (const auto& [u, v] : inst.graph.edges()) {
    for (std::size_t i = 1; i <= delta; ++i) edges.emplace_back(copy_id(u, i), v);
  }
  GapBicliqueInstance out = inst;
  out.graph = BipartiteGraph::from_edges(inst.graph.a_size() * delta, inst.graph.b_size(), edges);
  out.s = inst.s * delta;
  out.no_subset = delta * (inst.no_subset - 1) + 1;
  if (inst.planted) {
    Biclique k;
    for (Vertex u : inst.planted->left) {
      for (std::size_t i = 1; i <= delta; ++i) k.left.push_back(copy_id(u, i));
    }
    k.right = inst.planted->right;
    out.planted = std::move(k);
  }
  if (verify) {
    if (auto check = verify_promise(out); !check.ok) {
      throw VerificationError("duplicated instance failed verification: " + check.detail);
    }
  }
  return out;
}

/// Coloured instance H = (A x LA x LB, B x LA x LB) with edges only inside
/// matching (h1, h2) blocks. Block (h1, h2) has index h1*|LB| + h2 (0-based)
/// and vertex (u, h1, h2) has id block*|A| + u.
struct ColoredInstance {
  ColoredBipartiteGraph colored;
  std::size_t base_a = 0;
  std::size_t base_b = 0;
  HashFamily family_a;
  HashFamily family_b;

  std::size_t num_blocks() const noexcept { return family_a.size() * family_b.size(); }

  Vertex left_id(Vertex u, std::size_t h1, std::size_t h2) const {
    return static_cast<Vertex>((h1 * family_b.size() + h2) * base_a + u);
  }
  Vertex right_id(Vertex v, std::size_t h1, std::size_t h2) const {
    return static_cast<Vertex>((h1 * family_b.size() + h2) * base_b + v);
  }

  /// First block (lexicographic in (h1, h2)) where `k` is rainbow on both
  /// sides, lifted into that block.
  std::optional<Biclique> rainbow_lift(const Biclique& k) const {
    for (std::size_t h1 = 0; h1 < family_a.size(); ++h1) {
      if (!family_a.injective_on(h1, k.left)) continue;
      for (std::size_t h2 = 0; h2 < family_b.size(); ++h2) {
        if (!family_b.injective_on(h2, k.right)) continue;
        Biclique lifted;
        for (Vertex u : k.left) lifted.left.push_back(left_id(u, h1, h2));
        for (Vertex v : k.right) lifted.right.push_back(right_id(v, h1, h2));
        return lifted;
      }
    }
    return std::nullopt;
  }
};

inline constexpr std::size_t kMaxColoredPart = 1'000'000;

inline ColoredInstance attach_colorings(const GapBicliqueInstance& inst, HashFamily family_a,
                                        HashFamily family_b) {
  const std::size_t a = inst.graph.a_size();
  const std::size_t b = inst.graph.b_size();
  if (family_a.n != a || family_b.n != b) throw InputError("family domains must match the part sizes");
  if (family_a.size() == 0 || family_b.size() == 0) throw InputError("colour families must be nonempty");
  const std::size_t blocks = family_a.size() * family_b.size();
  if (blocks * std::max(a, b) > kMaxColoredPart) {
    throw CapExceeded("coloured instance would have " + std::to_string(blocks * std::max(a, b)) +
                      " vertices on one side (cap " + std::to_string(kMaxColoredPart) + ")");
  }
  ColoredInstance out;
  out.base_a = a;
  out.base_b = b;
  out.family_a = std::move(family_a);
  out.family_b = std::move(family_b);
  std::vector<int> alpha(blocks * a), beta(blocks * b);
  std::vector<Edge> edges;
  edges.reserve(blocks * inst.graph.num_edges());
  const auto base_edges = inst.graph.edges();
  for (std::size_t h1 = 0; h1 < out.family_a.size(); ++h1) {
    for (std::size_t h2 = 0; h2 < out.family_b.size(); ++h2) {
      for (Vertex u = 1; u <= a; ++u) alpha[out.left_id(u, h1, h2) - 1] = out.family_a.apply(h1, u);
      for (Vertex v = 1; v <= b; ++v) beta[out.right_id(v, h1, h2) - 1] = out.family_b.apply(h2, v);
      for (const auto& [u, v] : base_edges) edges.emplace_back(out.left_id(u, h1, h2), out.right_id(v, h1, h2));
    }
  }
  out.colored = ColoredBipartiteGraph(BipartiteGraph::from_edges(blocks * a, blocks * b, edges),
                                      out.family_a.k, out.family_b.k, std::move(alpha), std::move(beta));
  return out;
}

/// Colour-coding wrapper: LA = Lambda_{|A|, a_colors}, LB = Lambda_{|B|, b_colors}.
inline ColoredInstance attach_colorings(const GapBicliqueInstance& inst, int a_colors, int b_colors) {
  if (a_colors < 1 || b_colors < 1) throw InputError("colour counts must be positive");
  if (static_cast<std::size_t>(a_colors) > inst.graph.a_size() ||
      static_cast<std::size_t>(b_colors) > inst.graph.b_size()) {
    throw InputError("colour counts must not exceed the part sizes");
  }
  return attach_colorings(inst, build_family(inst.graph.a_size(), a_colors),
                          build_family(inst.graph.b_size(), b_colors));
}

/// One-block colouring: a single seeded surjective map per side, bijective on
/// the planted biclique when its sides have exactly a_colors / b_colors vertices.
inline ColoredInstance color_single_block(const GapBicliqueInstance& inst, int a_colors, int b_colors,
                                          std::uint64_t seed) {
  const std::size_t a = inst.graph.a_size();
  const std::size_t b = inst.graph.b_size();
  if (a_colors < 1 || b_colors < 1 || static_cast<std::size_t>(a_colors) > a ||
      static_cast<std::size_t>(b_colors) > b) {
    throw InputError("colour counts must lie in [1, part size]");
  }
  Rng rng(seed);
  auto make = [&](std::size_t n, int k, const std::vector<Vertex>* rainbow) {
    std::vector<std::uint8_t> fn(n, 0);
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{1});
    if (rainbow && rainbow->size() == static_cast<std::size_t>(k)) {
      for (std::size_t i = 0; i < rainbow->size(); ++i) fn[(*rainbow)[i] - 1] = static_cast<std::uint8_t>(i + 1);
    } else {
      rng.shuffle(order.begin(), order.end());
      for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) fn[order[i] - 1] = static_cast<std::uint8_t>(i + 1);
    }
    for (auto& c : fn) {
      if (c == 0) c = static_cast<std::uint8_t>(rng.below(static_cast<std::uint64_t>(k)) + 1);
    }
    return HashFamily{n, k, {std::move(fn)}, false};
  };
  const auto* left = inst.planted ? &inst.planted->left : nullptr;
  const auto* right = inst.planted ? &inst.planted->right : nullptr;
  auto fa = make(a, a_colors, left);
  auto fb = make(b, b_colors, right);
  return attach_colorings(inst, std::move(fa), std::move(fb));
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const GapBicliqueInstance& inst) {
  nlohmann::json j = {{"a_size", inst.graph.a_size()},
                      {"b_size", inst.graph.b_size()},
                      {"edges", edges_to_json(inst.graph)},
                      {"s", inst.s},
                      {"d", inst.d},
                      {"no_threshold", inst.no_threshold},
                      {"no_subset", inst.no_subset},
                      {"promise", to_string(inst.promise)},
                      {"seed", inst.seed}};
  if (inst.planted) j["planted"] = {{"left", inst.planted->left}, {"right", inst.planted->right}};
  return j;
}

inline GapBicliqueInstance instance_from_json(const nlohmann::json& j) {
  try {
    GapBicliqueInstance inst;
    const auto a = j.at("a_size").get<std::size_t>();
    const auto b = j.at("b_size").get<std::size_t>();
    const auto edges = edges_from_json(j.at("edges"));
    inst.graph = BipartiteGraph::from_edges(a, b, edges);
    inst.s = j.at("s").get<std::size_t>();
    inst.d = j.at("d").get<std::size_t>();
    inst.no_threshold = j.at("no_threshold").get<std::size_t>();
    inst.no_subset = j.value("no_subset", inst.s);
    inst.promise = promise_from_string(j.at("promise").get<std::string>());
    inst.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("planted")) {
      inst.planted = Biclique{j["planted"].at("left").get<std::vector<Vertex>>(),
                              j["planted"].at("right").get<std::vector<Vertex>>()};
    }
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("gap instance JSON: ") + e.what());
  }
}

}  // namespace gapforge
