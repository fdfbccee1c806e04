#include <gtest/gtest.h>

#include "oracles.hpp"

namespace gapforge {
namespace {

// Independent coverage check by bitmask enumeration.
bool covers_everything(const HashFamily& f) {
  const std::size_t n = f.n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (__builtin_popcountll(mask) != f.k) continue;
    const auto set = oracle::mask_to_set(mask);
    bool hit = false;
    for (const auto& fn : f.functions) {
      std::set<int> colors;
      for (Vertex x : set) colors.insert(fn[x - 1]);
      if (colors.size() == set.size()) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

TEST(BuildFamily, SingleColourIsConstant) {
  const auto f = build_family(5, 1);
  ASSERT_EQ(f.size(), 1u);
  for (auto c : f.functions[0]) EXPECT_EQ(c, 1);
  EXPECT_TRUE(verify_family(f).ok);
}

TEST(BuildFamily, FullDomainHasBijection) {
  for (int k = 1; k <= 6; ++k) {
    const auto f = build_family(static_cast<std::size_t>(k), k);
    std::vector<Vertex> all(static_cast<std::size_t>(k));
    std::iota(all.begin(), all.end(), Vertex{1});
    EXPECT_TRUE(f.covers(all)) << "k=" << k;
  }
}

TEST(BuildFamily, ValuesInRangeAndCoverOnSmallDomains) {
  for (std::size_t n = 1; n <= 14; ++n) {
    for (int k = 1; k <= 4 && static_cast<std::size_t>(k) <= n; ++k) {
      const auto f = build_family(n, k);
      for (const auto& fn : f.functions) {
        ASSERT_EQ(fn.size(), n);
        for (auto c : fn) {
          EXPECT_GE(c, 1);
          EXPECT_LE(c, k);
        }
      }
      EXPECT_TRUE(covers_everything(f)) << "n=" << n << " k=" << k;
      EXPECT_TRUE(verify_family(f).ok);
    }
  }
}

TEST(BuildFamily, SixChooseTwo) {
  const auto f = build_family(6, 2);
  const auto v = verify_family(f);
  EXPECT_TRUE(v.ok);
  EXPECT_EQ(v.subsets_checked, 15u);
}

TEST(BuildFamily, Deterministic) {
  EXPECT_EQ(build_family(20, 3).functions, build_family(20, 3).functions);
  EXPECT_EQ(build_family(300, 4).functions, build_family(300, 4).functions);
}

TEST(BuildFamily, RejectsBadArguments) {
  EXPECT_THROW(build_family(3, 4), InputError);
  EXPECT_THROW(build_family(5, 0), InputError);
  EXPECT_THROW(build_family(5, kMaxFamilyRange + 1), InputError);
}

TEST(VerifyFamily, FindsFirstUncoveredSubset) {
  HashFamily constant{3, 2, {{1, 1, 1}}, false};
  const auto v = verify_family(constant);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.counterexample, (std::vector<Vertex>{1, 2}));
  HashFamily split{4, 2, {{1, 1, 2, 2}}, false};
  const auto w = verify_family(split);
  EXPECT_FALSE(w.ok);
  EXPECT_EQ(w.counterexample, (std::vector<Vertex>{1, 2}));
}

TEST(VerifyFamily, AllFunctionsFamilyIsOk) {
  HashFamily all{3, 2, {}, false};
  for (int x = 0; x < 8; ++x) {
    all.functions.push_back({static_cast<std::uint8_t>(1 + (x & 1)), static_cast<std::uint8_t>(1 + (x >> 1 & 1)),
                             static_cast<std::uint8_t>(1 + (x >> 2 & 1))});
  }
  EXPECT_TRUE(verify_family(all).ok);
}

TEST(VerifyFamily, CapAdvisesSampling) {
  const auto f = build_family(200, 4);
  EXPECT_THROW(verify_family(f, 1000), CapExceeded);
  const auto sampled = verify_family_sampled(f, 5000, 3);
  EXPECT_TRUE(sampled.ok);
  EXPECT_EQ(sampled.subsets_checked, 5000u);
}

TEST(BuildFamily, LargeDomainSampledCoverage) {
  const auto f = build_family(2000, 3);
  EXPECT_GT(f.size(), 0u);
  EXPECT_TRUE(verify_family_sampled(f, 20000, 9).ok);
}

TEST(HashFamilyJson, RoundTrip) {
  const auto f = build_family(9, 3);
  const auto g = family_from_json(to_json(f));
  EXPECT_EQ(g.n, f.n);
  EXPECT_EQ(g.k, f.k);
  EXPECT_EQ(g.functions, f.functions);
}

}  // namespace
}  // namespace gapforge
