#include <gtest/gtest.h>

#include "oracles.hpp"

namespace gapforge {
namespace {

ColoredBipartiteGraph colored_complete(std::size_t s, std::size_t d) {
  std::vector<Edge> e;
  for (Vertex u = 1; u <= s; ++u) {
    for (Vertex v = 1; v <= d; ++v) e.emplace_back(u, v);
  }
  std::vector<int> alpha(s), beta(d);
  std::iota(alpha.begin(), alpha.end(), 1);
  std::iota(beta.begin(), beta.end(), 1);
  return ColoredBipartiteGraph(BipartiteGraph::from_edges(s, d, e), static_cast<int>(s), static_cast<int>(d), alpha, beta);
}

Biclique full_biclique(std::size_t s, std::size_t d) {
  Biclique k;
  for (Vertex u = 1; u <= s; ++u) k.left.push_back(u);
  for (Vertex v = 1; v <= d; ++v) k.right.push_back(v);
  return k;
}

// Every B_c = beta^{-1}(c) + {x_c, y_c}.
bool hits_every_class(const ReductionOutput& out, const std::vector<Vertex>& set, std::size_t d) {
  std::vector<char> hit(d + 1, 0);
  for (Vertex v : set) {
    const auto& r = out.role(v);
    if (r.kind == RoleKind::BaseRight || r.kind == RoleKind::XGuard || r.kind == RoleKind::YGuard) hit[r.color] = 1;
  }
  return std::all_of(hit.begin() + 1, hit.end(), [](char c) { return c != 0; });
}

TEST(Params32, FrozenExample) {
  const auto p = derive_params32(3, std::nullopt, parse_rational("0.9"), parse_rational("0.4"));
  EXPECT_EQ(p.s, 3u);
  EXPECT_EQ(p.d_root, 4);
  EXPECT_EQ(p.d, 4096);
  EXPECT_EQ(p.t, 103);
  EXPECT_EQ(p.ratio_ceiling, Rational(11, 19));
  EXPECT_TRUE(p.admits_ratio(Rational(1, 2)));
  EXPECT_FALSE(p.admits_ratio(Rational(11, 19)));
  EXPECT_TRUE(p.small_copies);
  EXPECT_TRUE(p.choose_bound);
  EXPECT_TRUE(p.factorial_bound);
  EXPECT_FALSE(p.d_fits_source.has_value());
  const auto j = to_json(p);
  EXPECT_EQ(j.at("d").get<std::string>(), "4096");
}

TEST(Params32, DecreasingEpsilonNeverDecreasesD) {
  BigInt last = 0;
  for (int tenths = 19; tenths >= 1; --tenths) {
    const auto p = derive_params32(3, std::nullopt, Rational(tenths, 20), parse_rational("0.4"));
    EXPECT_GE(p.d, last);
    last = p.d;
  }
}

TEST(Params32, RejectsBadRationals) {
  EXPECT_THROW(derive_params32(3, std::nullopt, Rational(0), Rational(1, 4)), InputError);
  EXPECT_THROW(derive_params32(3, std::nullopt, Rational(1, 2), Rational(1, 2)), InputError);
  EXPECT_THROW(parse_rational("abc"), InputError);
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
}

TEST(BuildGPrime, LayoutAndCounts) {
  const auto inst = synth_yes_instance(2, 3, 1, 2, 4);
  const auto ci = color_single_block(inst, 2, 3, 4);
  const std::size_t t = 2;
  const auto out = build_g_prime(ci.colored, t);
  const std::size_t a = inst.graph.a_size(), b = inst.graph.b_size();
  EXPECT_EQ(out.graph.num_vertices(), b + 2 * 3 + a * t + b * 2 * t);
  EXPECT_EQ(out.count(RoleKind::BaseRight), b);
  EXPECT_EQ(out.count(RoleKind::XGuard), 3u);
  EXPECT_EQ(out.count(RoleKind::YGuard), 3u);
  EXPECT_EQ(out.count(RoleKind::Copy), a * t);
  EXPECT_EQ(out.count(RoleKind::Witness), b * 2 * t);
  EXPECT_EQ(out.manifest.at("construction"), "g_prime");
  const auto layout = layout32_of(out);
  EXPECT_EQ(layout.num_vertices(), out.graph.num_vertices());
  EXPECT_EQ(out.role(layout.x(1)).kind, RoleKind::XGuard);
  EXPECT_EQ(out.role(layout.copy(1, 1)).kind, RoleKind::Copy);
}

TEST(BuildGPrime, EdgeRulesMatchIndependentDerivation) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t s = 2 + seed % 2, d = 2 + seed % 3, t = 1 + seed % 2;
    const auto inst = synth_yes_instance(s, d, seed % 3, seed % 4, seed);
    const auto ci = seed % 3 == 0 ? attach_colorings(inst, static_cast<int>(s), static_cast<int>(d))
                                  : color_single_block(inst, static_cast<int>(s), static_cast<int>(d), seed);
    const auto out = build_g_prime(ci.colored, t);
    EXPECT_EQ(oracle::edge_set(out.graph), oracle::g_prime_edges(out)) << "seed " << seed;
  }
}

TEST(BuildGPrime, GuardsTouchOnlyTheirClass) {
  const auto h = colored_complete(2, 3);
  const auto out = build_g_prime(h, 1);
  for (Vertex v = 1; v <= out.graph.num_vertices(); ++v) {
    const auto& r = out.role(v);
    if (r.kind != RoleKind::XGuard && r.kind != RoleKind::YGuard) continue;
    for (Vertex u : out.graph.neighbors(v)) {
      EXPECT_EQ(out.role(u).kind, RoleKind::BaseRight);
      EXPECT_EQ(out.role(u).color, r.color);
    }
  }
}

TEST(BuildGPrime, EmptyBipartiteGraphHasNoCopyWitnessEdges) {
  const auto h = ColoredBipartiteGraph(BipartiteGraph::from_edges(2, 2, {}), 2, 2, {1, 2}, {1, 2});
  const auto out = build_g_prime(h, 1);
  for (const auto& [u, v] : out.graph.edges()) {
    const auto ku = out.role(u).kind, kv = out.role(v).kind;
    EXPECT_FALSE((ku == RoleKind::Copy && kv == RoleKind::Witness) || (ku == RoleKind::Witness && kv == RoleKind::Copy));
  }
  const auto layout = layout32_of(out);
  for (std::size_t c = 1; c <= 2; ++c) {
    EXPECT_EQ(std::vector<Vertex>(out.graph.neighbors(layout.x(c)).begin(), out.graph.neighbors(layout.x(c)).end()),
              std::vector<Vertex>{static_cast<Vertex>(c)});
  }
}

TEST(BuildGPrime, RejectsEmptyBetaClassAndCaps) {
  const auto h = ColoredBipartiteGraph(BipartiteGraph::from_edges(2, 2, {}), 2, 3, {1, 2}, {1, 2});
  EXPECT_THROW(build_g_prime(h, 1), InputError);
  EXPECT_THROW(build_g_prime(colored_complete(2, 2), 0), InputError);
  EXPECT_THROW(build_g_prime(colored_complete(2, 2), 5, BuildCaps{10, 1000}), CapExceeded);
  EXPECT_THROW(build_g_prime(colored_complete(2, 2), 1, BuildCaps{1000, 3}), CapExceeded);
}

TEST(ExtractYesWitness32, BlockInstance) {
  const auto h = colored_complete(2, 2);
  const auto out = build_g_prime(h, 1);
  const auto w = extract_yes_witness32(out, full_biclique(2, 2));
  EXPECT_EQ(w.size(), 4u);
  EXPECT_TRUE(oracle::dominates(out.graph, w.vertices));
  EXPECT_EQ(oracle::min_dominating_set(out.graph).size(), 4u);
}

TEST(ExtractYesWitness32, PlantedInstance) {
  const auto inst = synth_yes_instance(2, 3, 0, 0, 1);
  const auto ci = color_single_block(inst, 2, 3, 1);
  const auto out = build_g_prime(ci.colored, 2);
  const auto w = extract_yes_witness32(out, *ci.rainbow_lift(*inst.planted));
  EXPECT_EQ(w.size(), 3u + 2u * 2u);
  EXPECT_TRUE(oracle::dominates(out.graph, w.vertices));
  EXPECT_TRUE(std::is_sorted(w.vertices.begin(), w.vertices.end()));
}

TEST(ExtractYesWitness32, MalformedWitnessNamesTheDefect) {
  std::vector<Edge> e{{1, 1}, {1, 2}, {2, 1}};
  const auto h = ColoredBipartiteGraph(BipartiteGraph::from_edges(2, 2, e), 2, 2, {1, 2}, {1, 2});
  const auto out = build_g_prime(h, 1);
  try {
    extract_yes_witness32(out, full_biclique(2, 2));
    FAIL() << "expected a witness error";
  } catch (const WitnessError& err) {
    EXPECT_NE(std::string(err.what()).find("(2,2)"), std::string::npos) << err.what();
  }
  const auto h2 = colored_complete(2, 2);
  const auto out2 = build_g_prime(h2, 1);
  EXPECT_THROW(extract_yes_witness32(out2, Biclique{{1, 2}, {1}}), WitnessError);
}

TEST(ClassHitting, EveryDominatingSetOfSmallOutputsHitsEveryClass) {
  // Exhaustive over all vertex subsets of outputs with at most 16 vertices.
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = synth_yes_instance(2, 2, seed % 2, 0, seed);
    const auto ci = color_single_block(inst, 2, 2, seed);
    const auto out = build_g_prime(ci.colored, 1);
    const std::size_t n = out.graph.num_vertices();
    ASSERT_LE(n, 16u);
    const auto adj = oracle::adjacency(out.graph);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const auto set = oracle::mask_to_set(mask);
      if (oracle::dominates(adj, set)) ASSERT_TRUE(hits_every_class(out, set, 2)) << "mask " << mask;
    }
  }
}

TEST(ClassHitting, SolverOutputsAndRandomSupersets) {
  Rng rng(77);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto inst = synth_no_instance(2, 2, 3, 3, 0.5, seed);
    const auto ci = color_single_block(inst, 2, 3, seed);
    const auto out = build_g_prime(ci.colored, 1);
    auto best = exact_min_dominating_set(out.graph);
    ASSERT_TRUE(best.optimal);
    EXPECT_TRUE(hits_every_class(out, best.vertices, 3));
    for (int trial = 0; trial < 10; ++trial) {
      auto sup = best.vertices;
      for (Vertex v = 1; v <= out.graph.num_vertices(); ++v) {
        if (rng.bernoulli(0.2)) sup.push_back(v);
      }
      EXPECT_TRUE(hits_every_class(out, sup, 3));
    }
  }
}

TEST(GPrimeWitnessBound, ExactSolverConfirmsWitnessBound) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = synth_yes_instance(2, 2, 1, 1, seed);
    const auto ci = color_single_block(inst, 2, 2, seed);
    const auto out = build_g_prime(ci.colored, 2);
    const auto w = extract_yes_witness32(out, *ci.rainbow_lift(*inst.planted));
    const auto opt = exact_min_dominating_set(out.graph);
    ASSERT_TRUE(opt.optimal);
    EXPECT_LE(opt.size(), w.size());
    EXPECT_GE(opt.size(), 2u);
  }
}

}  // namespace
}  // namespace gapforge
