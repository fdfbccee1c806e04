#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "gapforge/graph.hpp"

namespace gapforge {

/// C(n, k), saturating at `ceiling` (returns ceiling + 1 once exceeded).
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k,
                                     std::uint64_t ceiling = UINT64_MAX - 1) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;  // exact: acc = C(n-k+i, i)
    if (acc > ceiling) return ceiling + 1;
  }
  return static_cast<std::uint64_t>(acc);
}

/// Visits every k-subset of {1..n} in lexicographic order. `visit` receives a
/// sorted span and returns false to stop early. Returns false iff stopped.
template <typename Visit>
bool for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return true;
  std::vector<Vertex> cur(k);
  std::iota(cur.begin(), cur.end(), Vertex{1});
  while (true) {
    if (!visit(std::span<const Vertex>(cur))) return false;
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i) --i;
    if (i == 0) return true;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

inline bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

inline std::uint64_t next_prime(std::uint64_t x) {
  while (!is_prime(x)) ++x;
  return x;
}

}  // namespace gapforge
