#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "gapforge/combinatorics.hpp"
#include "gapforge/error.hpp"
#include "gapforge/rng.hpp"

namespace gapforge {

inline constexpr std::size_t kMaxFamilyDomain = std::size_t{1} << 20;
inline constexpr int kMaxFamilyRange = 12;
inline constexpr std::uint64_t kMaxVerifySubsets = 10'000'000;
// Upper limit on n * |family| stored entries.
inline constexpr std::uint64_t kMaxFamilyEntries = std::uint64_t{1} << 26;

/// Explicit list of total maps [n] -> [k]; functions[f][x-1] is f(x), 1-based.
struct HashFamily {
  std::size_t n = 0;
  int k = 0;
  std::vector<std::vector<std::uint8_t>> functions;
  // True when every k-subset was checked during construction.
  bool verified = false;

  std::size_t size() const noexcept { return functions.size(); }

  int apply(std::size_t f, Vertex x) const { return functions[f][x - 1]; }

  bool injective_on(std::size_t f, std::span<const Vertex> subset) const {
    const auto& fn = functions[f];
    std::uint32_t seen = 0;
    for (Vertex x : subset) {
      const std::uint32_t bit = std::uint32_t{1} << fn[x - 1];
      if (seen & bit) return false;
      seen |= bit;
    }
    return true;
  }

  bool covers(std::span<const Vertex> subset) const {
    for (std::size_t f = 0; f < functions.size(); ++f) {
      if (injective_on(f, subset)) return true;
    }
    return false;
  }

  friend bool operator==(const HashFamily& x, const HashFamily& y) {
    return x.n == y.n && x.k == y.k && x.functions == y.functions;
  }
};

struct FamilyVerdict {
  bool ok = true;
  std::vector<Vertex> counterexample;  // empty when ok
  std::uint64_t subsets_checked = 0;
};

/// Exhaustive coverage check: every k-subset of [n] must be rainbow under
/// some member. Returns the lexicographically first uncovered subset on failure.
inline FamilyVerdict verify_family(const HashFamily& family,
                                   std::uint64_t max_subsets = kMaxVerifySubsets) {
  if (family.k < 1 || static_cast<std::size_t>(family.k) > family.n) {
    throw InputError("family range k must satisfy 1 <= k <= n");
  }
  const auto count = binomial_capped(family.n, family.k, max_subsets);
  if (count > max_subsets) {
    throw CapExceeded("C(" + std::to_string(family.n) + "," + std::to_string(family.k) +
                      ") exceeds the exhaustive verification cap of " + std::to_string(max_subsets) +
                      " subsets; use verify_family_sampled instead");
  }
  FamilyVerdict verdict;
  for_each_subset(family.n, family.k, [&](std::span<const Vertex> subset) {
    ++verdict.subsets_checked;
    if (family.covers(subset)) return true;
    verdict.ok = false;
    verdict.counterexample.assign(subset.begin(), subset.end());
    return false;
  });
  return verdict;
}

/// Random-subset coverage check for families too large to enumerate.
inline FamilyVerdict verify_family_sampled(const HashFamily& family, std::uint64_t samples,
                                           std::uint64_t seed) {
  if (family.k < 1 || static_cast<std::size_t>(family.k) > family.n) {
    throw InputError("family range k must satisfy 1 <= k <= n");
  }
  Rng rng(seed);
  FamilyVerdict verdict;
  std::vector<Vertex> subset;
  for (std::uint64_t s = 0; s < samples; ++s) {
    // Floyd's sampling of k distinct elements.
    subset.clear();
    for (std::size_t j = family.n - family.k + 1; j <= family.n; ++j) {
      auto x = static_cast<Vertex>(rng.below(j) + 1);
      if (std::find(subset.begin(), subset.end(), x) != subset.end()) x = static_cast<Vertex>(j);
      subset.push_back(x);
    }
    std::sort(subset.begin(), subset.end());
    ++verdict.subsets_checked;
    if (!family.covers(subset)) {
      verdict.ok = false;
      verdict.counterexample = subset;
      break;
    }
  }
  return verdict;
}

namespace detail {

inline std::uint64_t family_seed(std::size_t n, int k) {
  return 0x9E3779B97F4A7C15ULL ^ (static_cast<std::uint64_t>(n) << 8) ^ static_cast<std::uint64_t>(k);
}

// Seeded map [domain] -> [k] that is injective on `subset` and random elsewhere.
inline std::vector<std::uint8_t> random_map_rainbow_on(std::size_t domain, int k,
                                                        std::span<const Vertex> subset, Rng& rng) {
  std::vector<std::uint8_t> fn(domain);
  for (auto& v : fn) v = static_cast<std::uint8_t>(rng.below(static_cast<std::uint64_t>(k)) + 1);
  std::vector<std::uint8_t> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), std::uint8_t{1});
  rng.shuffle(perm.begin(), perm.end());
  for (std::size_t i = 0; i < subset.size(); ++i) fn[subset[i] - 1] = perm[i];
  return fn;
}

// First-fit cover of all k-subsets of [domain]: keep the selected maps, and for
// each uncovered subset take the first candidate injective on it, falling back
// to a seeded rainbow-forced random map.
template <typename CandidateCount, typename CandidateInjective, typename Materialize>
std::vector<std::vector<std::uint8_t>> first_fit_cover(std::size_t domain, int k,
                                                       CandidateCount num_candidates,
                                                       CandidateInjective candidate_injective,
                                                       Materialize materialize, Rng& rng) {
  HashFamily selected{domain, k, {}, false};
  std::vector<char> taken(num_candidates, 0);
  for_each_subset(domain, static_cast<std::size_t>(k), [&](std::span<const Vertex> subset) {
    // Most recently added maps are the likeliest to be injective on nearby subsets.
    for (std::size_t f = selected.size(); f-- > 0;) {
      if (selected.injective_on(f, subset)) return true;
    }
    for (std::size_t c = 0; c < num_candidates; ++c) {
      if (!taken[c] && candidate_injective(c, subset)) {
        taken[c] = 1;
        selected.functions.push_back(materialize(c));
        return true;
      }
    }
    selected.functions.push_back(random_map_rainbow_on(domain, k, subset, rng));
    return true;
  });
  return std::move(selected.functions);
}

// Maps [m] -> [k] covering every k-subset of [m], for m <= k^2.
inline std::vector<std::vector<std::uint8_t>> splitter_set(std::size_t m, int k) {
  if (m == static_cast<std::size_t>(k)) {
    std::vector<std::uint8_t> id(m);
    std::iota(id.begin(), id.end(), std::uint8_t{1});
    return {id};
  }
  if (binomial_capped(m, k, 2'000'000) > 2'000'000) {
    throw CapExceeded("second-level splitter for [" + std::to_string(m) + "] -> [" +
                      std::to_string(k) + "] is too large to construct");
  }
  Rng rng(family_seed(m, k) ^ 0x5157ULL);
  return first_fit_cover(
      m, k, std::size_t{0}, [](std::size_t, std::span<const Vertex>) { return false; },
      [](std::size_t) { return std::vector<std::uint8_t>{}; }, rng);
}

}  // namespace detail

/// Builds a family Lambda_{n,k}: for every k-subset X of [n] some member is
/// injective on X.
///
/// Candidates are compositions g o h_a with h_a(x) = ((a*x) mod p) mod k^2 + 1
/// for the least prime p >= n and a = 1..p-1, and g from a verified splitter
/// set [k^2] -> [k]. When n <= k^2 the first level is the identity. When C(n,k)
/// is enumerable, the family is the first-fit subset of candidates covering
/// every k-subset (so it is verified by construction). Larger domains are first
/// reduced by x -> x mod q over enough primes q that one is injective on any
/// given k-subset, and the family for [q] is built recursively.
inline HashFamily build_family(std::size_t n, int k) {
  if (k < 1 || n < 1 || static_cast<std::size_t>(k) > n) {
    throw InputError("build_family requires 1 <= k <= n (got n=" + std::to_string(n) +
                     ", k=" + std::to_string(k) + ")");
  }
  if (n > kMaxFamilyDomain || k > kMaxFamilyRange) {
    throw CapExceeded("build_family supports n <= 2^20 and k <= 12");
  }
  HashFamily family{n, k, {}, false};
  if (k == 1) {
    family.functions.emplace_back(n, std::uint8_t{1});
    family.verified = true;
    return family;
  }

  const std::size_t kk = static_cast<std::size_t>(k) * static_cast<std::size_t>(k);
  const bool direct = n <= kk;
  const std::size_t m = direct ? n : kk;
  // Residue reduction: the C(k,2) pairwise differences of a k-subset multiply
  // to less than n^C(k,2), so among L primes >= Q at least one divides none of
  // them, and x -> x mod q is injective on the subset for that q.
  if (!direct && binomial_capped(n, k, kMaxVerifySubsets) > kMaxVerifySubsets) {
    const std::uint64_t q_min = std::max<std::uint64_t>(kk, 3);
    const double pairs = static_cast<double>(k) * (k - 1) / 2.0;
    const auto count = static_cast<std::size_t>(std::floor(pairs * std::log(static_cast<double>(n)) /
                                                            std::log(static_cast<double>(q_min)) + 1e-9)) + 1;
    std::vector<std::uint64_t> primes;
    for (std::uint64_t q = next_prime(q_min); primes.size() < count; q = next_prime(q + 1)) primes.push_back(q);
    if (primes.back() < n) {
      std::set<std::vector<std::uint8_t>> seen;
      for (std::uint64_t q : primes) {
        const auto inner = build_family(static_cast<std::size_t>(q), k);
        for (const auto& g : inner.functions) {
          std::vector<std::uint8_t> fn(n);
          for (Vertex x = 1; x <= n; ++x) fn[x - 1] = g[x % q];
          if (seen.insert(fn).second) {
            if (static_cast<std::uint64_t>(family.functions.size() + 1) * n > kMaxFamilyEntries) {
              throw CapExceeded("family for n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                                " exceeds " + std::to_string(kMaxFamilyEntries) + " stored entries");
            }
            family.functions.push_back(std::move(fn));
          }
        }
      }
      return family;
    }
  }

  const std::uint64_t p = direct ? 0 : next_prime(n);
  const std::size_t multipliers = direct ? 1 : static_cast<std::size_t>(p - 1);
  const auto splitters = detail::splitter_set(m, k);

  auto first_level = [&](std::size_t a_index, Vertex x) -> std::size_t {
    if (direct) return x - 1;
    const std::uint64_t a = a_index + 1;
    return static_cast<std::size_t>(((a * x) % p) % kk);
  };
  const std::size_t num_candidates = multipliers * splitters.size();
  auto candidate_value = [&](std::size_t c, Vertex x) {
    return splitters[c % splitters.size()][first_level(c / splitters.size(), x)];
  };
  auto materialize = [&](std::size_t c) {
    std::vector<std::uint8_t> fn(n);
    for (Vertex x = 1; x <= n; ++x) fn[x - 1] = candidate_value(c, x);
    return fn;
  };

  if (binomial_capped(n, k, kMaxVerifySubsets) <= kMaxVerifySubsets) {
    auto injective = [&](std::size_t c, std::span<const Vertex> subset) {
      std::uint32_t seen = 0;
      for (Vertex x : subset) {
        const std::uint32_t bit = std::uint32_t{1} << candidate_value(c, x);
        if (seen & bit) return false;
        seen |= bit;
      }
      return true;
    };
    Rng rng(detail::family_seed(n, k));
    family.functions = detail::first_fit_cover(n, k, num_candidates, injective, materialize, rng);
    family.verified = true;
    return family;
  }

  if (static_cast<std::uint64_t>(num_candidates) * n > kMaxFamilyEntries) {
    throw CapExceeded("family for n=" + std::to_string(n) + ", k=" + std::to_string(k) + " would store " +
                      std::to_string(static_cast<std::uint64_t>(num_candidates) * n) + " entries");
  }
  family.functions.reserve(num_candidates);
  for (std::size_t c = 0; c < num_candidates; ++c) family.functions.push_back(materialize(c));
  return family;
}

inline nlohmann::json to_json(const HashFamily& family) {
  auto fns = nlohmann::json::array();
  for (const auto& fn : family.functions) {
    auto row = nlohmann::json::array();
    for (auto v : fn) row.push_back(static_cast<int>(v));
    fns.push_back(std::move(row));
  }
  return {{"n", family.n}, {"k", family.k}, {"functions", std::move(fns)}};
}

inline HashFamily family_from_json(const nlohmann::json& j) {
  try {
    HashFamily family;
    family.n = j.at("n").get<std::size_t>();
    family.k = j.at("k").get<int>();
    if (family.k < 1 || family.k > kMaxFamilyRange) throw InputError("family k out of supported range");
    for (const auto& row : j.at("functions")) {
      auto values = row.get<std::vector<int>>();
      if (values.size() != family.n) throw InputError("family function length differs from n");
      std::vector<std::uint8_t> fn(values.size());
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 1 || values[i] > family.k) {
          throw InputError("family value " + std::to_string(values[i]) + " outside [1,k]");
        }
        fn[i] = static_cast<std::uint8_t>(values[i]);
      }
      family.functions.push_back(std::move(fn));
    }
    return family;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("family JSON: ") + e.what());
  }
}

}  // namespace gapforge
