#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "gapforge/error.hpp"
#include "gapforge/graph.hpp"

namespace gapforge {

enum class SolverMode { ExactBranchAndBound, ExactEnumeration, Greedy };

inline std::string to_string(SolverMode m) {
  switch (m) {
    case SolverMode::ExactBranchAndBound: return "exact_bb";
    case SolverMode::ExactEnumeration: return "exact_enum";
    default: return "greedy";
  }
}

inline SolverMode solver_mode_from_string(const std::string& s) {
  if (s == "exact" || s == "exact_bb") return SolverMode::ExactBranchAndBound;
  if (s == "exact_enum") return SolverMode::ExactEnumeration;
  if (s == "greedy") return SolverMode::Greedy;
  throw InputError("unknown solver mode '" + s + "' (expected exact, exact_bb, exact_enum or greedy)");
}

struct SolverBudget {
  std::uint64_t max_nodes = 200'000'000;
  std::chrono::milliseconds time_cap{std::chrono::minutes(5)};
  SolverMode mode = SolverMode::ExactBranchAndBound;
};

using VertexBits = boost::dynamic_bitset<std::uint64_t>;

namespace detail {

// Closed neighbourhoods as bitsets over 0-based positions.
inline std::vector<VertexBits> closed_neighborhoods(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<VertexBits> rows(n, VertexBits(n));
  for (Vertex v = 1; v <= n; ++v) {
    rows[v - 1].set(v - 1);
    for (Vertex u : g.neighbors(v)) rows[v - 1].set(u - 1);
  }
  return rows;
}

struct BudgetExhausted {};

class DominationSearch {
 public:
  DominationSearch(const Graph& g, const SolverBudget& budget)
      : n_(g.num_vertices()),
        closed_(closed_neighborhoods(g)),
        budget_(budget),
        deadline_(std::chrono::steady_clock::now() + budget.time_cap) {}

  std::size_t n() const noexcept { return n_; }
  const VertexBits& closed(std::size_t v) const { return closed_[v]; }

  /// Disjoint-candidate packing: undominated vertices whose admissible
  /// dominator sets are pairwise disjoint each need their own dominator.
  /// Returns nullopt if some undominated vertex has no admissible dominator.
  /// `branch` receives the undominated vertex with the fewest candidates.
  std::optional<std::size_t> packing_bound(const VertexBits& undominated, const VertexBits& allowed,
                                           std::size_t* branch = nullptr) const {
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (auto u = undominated.find_first(); u != VertexBits::npos; u = undominated.find_next(u)) {
      const std::size_t cnt = (closed_[u] & allowed).count();
      if (cnt == 0) return std::nullopt;
      order.emplace_back(cnt, u);
    }
    std::sort(order.begin(), order.end());
    if (branch && !order.empty()) *branch = order.front().second;
    VertexBits used(n_);
    std::size_t bound = 0;
    for (const auto& [cnt, u] : order) {
      VertexBits cand = closed_[u] & allowed;
      if (cand.intersects(used)) continue;
      used |= cand;
      ++bound;
    }
    return bound;
  }

  /// Can `undominated` be dominated by at most k vertices from `allowed`?
  /// On success the chosen vertices (0-based) are appended to `chosen`.
  bool feasible(const VertexBits& undominated, VertexBits allowed, std::size_t k, std::vector<std::size_t>& chosen) {
    tick();
    if (undominated.none()) return true;
    if (k == 0) return false;
    std::size_t branch = 0;
    const auto bound = packing_bound(undominated, allowed, &branch);
    if (!bound || *bound > k) return false;
    std::vector<std::pair<std::size_t, std::size_t>> cands;
    const VertexBits cand_set = closed_[branch] & allowed;
    std::size_t best_cover = 0;
    for (auto v = cand_set.find_first(); v != VertexBits::npos; v = cand_set.find_next(v)) {
      const std::size_t cover = (closed_[v] & undominated).count();
      cands.emplace_back(cover, v);
    }
    for (auto v = allowed.find_first(); v != VertexBits::npos; v = allowed.find_next(v)) {
      best_cover = std::max(best_cover, (closed_[v] & undominated).count());
    }
    if (best_cover * k < undominated.count()) return false;
    std::sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    for (const auto& [cover, v] : cands) {
      chosen.push_back(v);
      if (feasible(undominated - closed_[v], allowed, k - 1, chosen)) return true;
      chosen.pop_back();
      allowed.reset(v);
    }
    return false;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  void tick() {
    ++nodes_;
    if (nodes_ > budget_.max_nodes) throw BudgetExhausted{};
    if ((nodes_ & 0x3FF) == 0 && std::chrono::steady_clock::now() > deadline_) throw BudgetExhausted{};
  }

  std::size_t n_;
  std::vector<VertexBits> closed_;
  SolverBudget budget_;
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t nodes_ = 0;
};

inline std::vector<Vertex> to_vertices(std::vector<std::size_t> zero_based) {
  std::sort(zero_based.begin(), zero_based.end());
  std::vector<Vertex> out;
  out.reserve(zero_based.size());
  for (auto v : zero_based) out.push_back(static_cast<Vertex>(v + 1));
  return out;
}

}  // namespace detail

/// Repeatedly takes the vertex whose closed neighbourhood covers the most
/// undominated vertices (ties to the smaller id).
inline DominatingSetResult greedy_dominating_set(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const auto closed = detail::closed_neighborhoods(g);
  VertexBits undominated(n);
  undominated.set();
  DominatingSetResult result;
  while (undominated.any()) {
    std::size_t best = 0, best_cover = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t cover = (closed[v] & undominated).count();
      if (cover > best_cover) {
        best_cover = cover;
        best = v;
      }
    }
    result.vertices.push_back(static_cast<Vertex>(best + 1));
    undominated -= closed[best];
  }
  std::sort(result.vertices.begin(), result.vertices.end());
  VertexBits all(n);
  all.set();
  const SolverBudget unused;
  detail::DominationSearch search(g, unused);
  result.gamma_lower_bound = search.packing_bound(all, all).value_or(0);
  result.optimal = result.gamma_lower_bound == result.size();
  return result;
}

namespace detail {

// Subsets in order of size, lexicographic within a size; first hit is the
// lexicographically least minimum dominating set. Requires n <= 64.
inline DominatingSetResult enumerate_min_dominating_set(const Graph& g, const SolverBudget& budget) {
  const std::size_t n = g.num_vertices();
  if (n > 64) throw InputError("exact_enum supports at most 64 vertices");
  DominatingSetResult result;
  if (n == 0) {
    result.optimal = true;
    return result;
  }
  std::vector<std::uint64_t> closed(n, 0);
  for (Vertex v = 1; v <= n; ++v) {
    closed[v - 1] |= std::uint64_t{1} << (v - 1);
    for (Vertex u : g.neighbors(v)) closed[v - 1] |= std::uint64_t{1} << (u - 1);
  }
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::uint64_t nodes = 0;
  const auto deadline = std::chrono::steady_clock::now() + budget.time_cap;
  std::vector<std::size_t> pick;
  auto search = [&](auto&& self, std::size_t next, std::size_t left, std::uint64_t covered) -> bool {
    if (++nodes > budget.max_nodes) throw BudgetExhausted{};
    if ((nodes & 0xFFFF) == 0 && std::chrono::steady_clock::now() > deadline) throw BudgetExhausted{};
    if (left == 0) return covered == full;
    for (std::size_t v = next; v + left <= n; ++v) {
      pick.push_back(v);
      if (self(self, v + 1, left - 1, covered | closed[v])) return true;
      pick.pop_back();
    }
    return false;
  };
  std::size_t size = 0;
  try {
    for (size = 1; size <= n; ++size) {
      pick.clear();
      if (search(search, 0, size, 0)) break;
    }
  } catch (const BudgetExhausted&) {
    auto fallback = greedy_dominating_set(g);
    fallback.gamma_lower_bound = std::max(fallback.gamma_lower_bound, size);
    fallback.optimal = false;
    return fallback;
  }
  result.vertices = to_vertices(pick);
  result.gamma_lower_bound = result.size();
  result.optimal = true;
  return result;
}

inline DominatingSetResult branch_and_bound_min_dominating_set(const Graph& g, const SolverBudget& budget) {
  const std::size_t n = g.num_vertices();
  DominatingSetResult upper = greedy_dominating_set(g);
  if (n == 0) {
    upper.optimal = true;
    return upper;
  }
  DominationSearch search(g, budget);
  VertexBits all(n);
  all.set();
  std::size_t proven_lower = upper.gamma_lower_bound;
  std::size_t gamma = upper.size();
  std::vector<std::size_t> found;
  try {
    for (std::size_t k = proven_lower; k < upper.size(); ++k) {
      std::vector<std::size_t> chosen;
      if (search.feasible(all, all, k, chosen)) {
        gamma = k;
        found = chosen;
        break;
      }
      proven_lower = k + 1;
    }
    proven_lower = gamma;
    if (found.empty()) {
      for (Vertex v : upper.vertices) found.push_back(v - 1);
    }
    // Lexicographically least set of size gamma: fix members one at a time,
    // keeping only choices that still extend to a solution using larger ids.
    std::vector<std::size_t> prefix;
    VertexBits undominated = all;
    std::size_t next = 0;
    while (prefix.size() < gamma) {
      bool placed = false;
      for (std::size_t v = next; v < n; ++v) {
        VertexBits later(n);
        for (std::size_t w = v + 1; w < n; ++w) later.set(w);
        std::vector<std::size_t> scratch;
        if (search.feasible(undominated - search.closed(v), later, gamma - prefix.size() - 1, scratch)) {
          prefix.push_back(v);
          undominated -= search.closed(v);
          next = v + 1;
          placed = true;
          break;
        }
      }
      if (!placed) throw InternalFault("lexicographic reconstruction lost feasibility");
    }
    DominatingSetResult result;
    result.vertices = to_vertices(prefix);
    result.gamma_lower_bound = gamma;
    result.optimal = true;
    return result;
  } catch (const BudgetExhausted&) {
    DominatingSetResult partial;
    partial.vertices = found.empty() ? upper.vertices : to_vertices(found);
    partial.gamma_lower_bound = proven_lower;
    partial.optimal = false;
    return partial;
  }
}

}  // namespace detail

/// Minimum dominating set, lexicographically least among optima. On budget
/// exhaustion returns the best known set with a proven lower bound and
/// optimal = false.
inline DominatingSetResult exact_min_dominating_set(const Graph& g, const SolverBudget& budget = {}) {
  switch (budget.mode) {
    case SolverMode::ExactEnumeration: return detail::enumerate_min_dominating_set(g, budget);
    case SolverMode::Greedy: return greedy_dominating_set(g);
    default: return detail::branch_and_bound_min_dominating_set(g, budget);
  }
}

/// Lexicographically first clique of size k, if any.
inline std::optional<std::vector<Vertex>> has_k_clique(const Graph& g, int k,
                                                       std::uint64_t max_nodes = 500'000'000) {
  if (k < 0) throw InputError("clique size must be nonnegative");
  const std::size_t n = g.num_vertices();
  const auto want = static_cast<std::size_t>(k);
  if (want == 0) return std::vector<Vertex>{};
  if (want > n) return std::nullopt;
  std::vector<VertexBits> later_neighbors(n, VertexBits(n));
  for (Vertex v = 1; v <= n; ++v) {
    for (Vertex u : g.neighbors(v)) {
      if (u > v) later_neighbors[v - 1].set(u - 1);
    }
  }
  std::vector<std::size_t> cur;
  std::uint64_t nodes = 0;
  auto dfs = [&](auto&& self, const VertexBits& cand) -> bool {
    if (++nodes > max_nodes) throw CapExceeded("clique search exceeded its node budget");
    if (cur.size() == want) return true;
    if (cur.size() + cand.count() < want) return false;
    for (auto v = cand.find_first(); v != VertexBits::npos; v = cand.find_next(v)) {
      cur.push_back(v);
      if (self(self, cand & later_neighbors[v])) return true;
      cur.pop_back();
    }
    return false;
  };
  VertexBits all(n);
  all.set();
  if (!dfs(dfs, all)) return std::nullopt;
  return detail::to_vertices(cur);
}

}  // namespace gapforge
