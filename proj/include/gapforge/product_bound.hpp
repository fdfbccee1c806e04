#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "gapforge/error.hpp"

namespace gapforge {

using IntTuple = std::vector<int>;

struct ProductBoundVerdict {
  bool hypothesis_holds = false;
  std::optional<std::size_t> failing_coordinate;  // first i with too many values
  std::size_t size = 0;                           // |V|
  std::uint64_t bound = 0;                        // t^c - delta^c
  std::optional<std::uint64_t> slack;             // bound - |V| when the hypothesis holds
};

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (base != 0 && r > UINT64_MAX / base) throw CapExceeded("t^c overflows 64 bits");
    r *= base;
  }
  return r;
}

}  // namespace detail

/// For V in [t]^c and theta: V -> [c], checks whether for every coordinate i
/// at most t - delta distinct values v(i) occur among {v : theta(v) = i}.
/// When that holds, |V| <= t^c - delta^c must follow; a violation raises
/// InternalFault.
inline ProductBoundVerdict product_bound_check(std::span<const IntTuple> tuples,
                                               const std::map<IntTuple, int>& theta, std::size_t c,
                                               std::size_t t, std::size_t delta) {
  if (c < 1 || t < 1 || delta < 1) throw InputError("c, t and delta must be positive");
  if (delta >= t) throw InputError("product bound requires delta < t");
  std::set<IntTuple> seen;
  std::vector<std::set<int>> values(c + 1);
  for (const auto& v : tuples) {
    if (v.size() != c) throw InputError("tuple has dimension " + std::to_string(v.size()) + ", expected " + std::to_string(c));
    for (int x : v) {
      if (x < 1 || static_cast<std::size_t>(x) > t) throw InputError("tuple coordinate outside [t]");
    }
    if (!seen.insert(v).second) throw InputError("V contains a repeated tuple");
    auto it = theta.find(v);
    if (it == theta.end()) throw InputError("theta not total on V");
    if (it->second < 1 || static_cast<std::size_t>(it->second) > c) throw InputError("theta value outside [c]");
    const auto i = static_cast<std::size_t>(it->second);
    values[i].insert(v[i - 1]);
  }
  ProductBoundVerdict verdict;
  verdict.size = tuples.size();
  verdict.bound = detail::checked_pow(t, c) - detail::checked_pow(delta, c);
  verdict.hypothesis_holds = true;
  for (std::size_t i = 1; i <= c; ++i) {
    if (values[i].size() > t - delta) {
      verdict.hypothesis_holds = false;
      verdict.failing_coordinate = i;
      return verdict;
    }
  }
  if (verdict.size > verdict.bound) {
    throw InternalFault("product bound violated: |V| = " + std::to_string(verdict.size) + " > " +
                        std::to_string(verdict.bound));
  }
  verdict.slack = verdict.bound - verdict.size;
  return verdict;
}

struct ProductBoundExhaustion {
  std::uint64_t cases = 0;
  std::uint64_t hypothesis_cases = 0;
  std::size_t max_size = 0;  // largest |V| among cases where the hypothesis holds
  std::vector<IntTuple> tight_set;
  std::map<IntTuple, int> tight_theta;
};

inline constexpr std::uint64_t kMaxProductCases = 20'000'000;

/// Runs product_bound_check over every subset V of [t]^c and every theta.
inline ProductBoundExhaustion exhaust_product_bound(std::size_t t, std::size_t c, std::size_t delta) {
  const std::uint64_t cells = detail::checked_pow(t, c);
  // sum_V c^|V| = (1 + c)^(t^c)
  if (cells > 30 || detail::checked_pow(c + 1, static_cast<std::size_t>(cells)) > kMaxProductCases) {
    throw CapExceeded("exhaustive product-bound search too large");
  }
  std::vector<IntTuple> all(cells);
  for (std::uint64_t x = 0; x < cells; ++x) {
    IntTuple v(c);
    std::uint64_t rest = x;
    for (std::size_t l = c; l-- > 0;) {
      v[l] = static_cast<int>(rest % t + 1);
      rest /= t;
    }
    all[x] = v;
  }
  ProductBoundExhaustion result;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
    std::vector<IntTuple> chosen;
    for (std::uint64_t x = 0; x < cells; ++x) {
      if (mask >> x & 1U) chosen.push_back(all[x]);
    }
    const std::uint64_t assignments = detail::checked_pow(c, chosen.size());
    for (std::uint64_t code = 0; code < assignments; ++code) {
      std::map<IntTuple, int> theta;
      std::uint64_t rest = code;
      for (const auto& v : chosen) {
        theta[v] = static_cast<int>(rest % c + 1);
        rest /= c;
      }
      ++result.cases;
      const auto verdict = product_bound_check(chosen, theta, c, t, delta);
      if (!verdict.hypothesis_holds) continue;
      ++result.hypothesis_cases;
      if (chosen.size() > result.max_size || result.tight_set.empty()) {
        result.max_size = chosen.size();
        result.tight_set = chosen;
        result.tight_theta = theta;
      }
    }
  }
  return result;
}

}  // namespace gapforge
