#include <gtest/gtest.h>

#include "oracles.hpp"

namespace gapforge {
namespace {

ColoredBipartiteGraph colored_complete(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  for (Vertex u = 1; u <= a; ++u) {
    for (Vertex v = 1; v <= b; ++v) e.emplace_back(u, v);
  }
  std::vector<int> alpha(a), beta(b);
  std::iota(alpha.begin(), alpha.end(), 1);
  std::iota(beta.begin(), beta.end(), 1);
  return ColoredBipartiteGraph(BipartiteGraph::from_edges(a, b, e), static_cast<int>(a), static_cast<int>(b), alpha, beta);
}

Biclique full_biclique(std::size_t a, std::size_t b) {
  Biclique k;
  for (Vertex u = 1; u <= a; ++u) k.left.push_back(u);
  for (Vertex v = 1; v <= b; ++v) k.right.push_back(v);
  return k;
}

TEST(ParamsMain, KThreeCOne) {
  const auto p = derive_params_main(3, 1);
  EXPECT_EQ(p.base, 480u);
  EXPECT_EQ(p.exponent, 111u);
  EXPECT_TRUE(p.adjusted);
  const std::string root = oracle::pow_decimal(480, 111);
  EXPECT_EQ(root.size(), 298u);
  EXPECT_EQ(root.substr(0, 20), "41474136117965729220");
  EXPECT_EQ(to_decimal(p.root), root);
  EXPECT_EQ(to_decimal(p.d), oracle::pow_decimal(480, 1332));
  EXPECT_EQ(to_decimal(p.t), oracle::pow_decimal(480, 1221));
  EXPECT_TRUE(p.cond_root_gap);
  EXPECT_TRUE(p.cond_factorial);
  EXPECT_TRUE(p.cond_color_range);
  EXPECT_TRUE(p.all_conditions());
  EXPECT_TRUE(p.all_consequences());
}

TEST(ParamsMain, JsonCarriesDecimalStrings) {
  const auto j = to_json(derive_params_main(3, 1));
  EXPECT_EQ(j.at("d").get<std::string>(), oracle::pow_decimal(480, 1332));
  EXPECT_EQ(j.at("d_digits").get<std::size_t>(), 3572u);
  EXPECT_TRUE(j.at("conditions").at("i").get<bool>());
}

TEST(ParamsMain, TIsIntegralAndMatchesFormula) {
  for (int c = 1; c <= 2; ++c) {
    const auto p = derive_params_main(3, c);
    // t^(2 delta s) = c^(2 delta s) d^(2 delta s c - 1)
    const std::uint64_t q = 2 * static_cast<std::uint64_t>(p.delta) * p.s;
    EXPECT_EQ(pow_big(p.t, q), pow_big(BigInt(c), q) * pow_big(p.d, q * static_cast<std::uint64_t>(c) - 1)) << "c=" << c;
    EXPECT_EQ(pow_big(p.root, q), p.d);
  }
}

TEST(ParamsMain, RejectsBadArguments) {
  EXPECT_THROW(derive_params_main(2, 1), InputError);
  EXPECT_THROW(derive_params_main(3, 0), InputError);
}

TEST(TupleVertexSpace, PartitionsBToTheC) {
  const std::vector<int> beta{1, 2, 1, 3, 2};
  for (std::size_t c = 1; c <= 3; ++c) {
    TupleVertexSpace space(c, beta.size(), beta, 3);
    std::size_t total = 0;
    std::set<std::size_t> seen;
    for (std::size_t cls = 0; cls < space.num_classes(); ++cls) {
      const auto colors = space.class_colors(cls);
      EXPECT_FALSE(space.members(cls).empty());
      for (std::size_t idx : space.members(cls)) {
        EXPECT_TRUE(seen.insert(idx).second);
        const auto v = space.tuple(idx);
        EXPECT_EQ(v, oracle::decode(idx, beta.size(), c));
        EXPECT_EQ(space.index_of(v), idx);
        for (std::size_t l = 0; l < c; ++l) EXPECT_EQ(beta[v[l] - 1], colors[l]);
      }
      total += space.members(cls).size();
    }
    std::size_t expect = 1;
    for (std::size_t l = 0; l < c; ++l) expect *= beta.size();
    EXPECT_EQ(total, expect);
  }
  EXPECT_THROW(TupleVertexSpace(4, 20, std::vector<int>(20, 1), 1), CapExceeded);
}

TEST(BuildGc, EdgeRulesMatchIndependentDerivation) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t s = 1 + seed % 2, delta = 1 + seed % 2, d = 2, c = 1 + seed % 2, t = 1 + seed % 2;
    const auto base = synth_yes_instance(s, d, seed % 2, seed % 2, seed);
    const auto inst = duplicate_side(base, delta);
    const auto ci = color_single_block(inst, static_cast<int>(delta * s), static_cast<int>(d), seed);
    const auto out = build_g_c(ci.colored, GcParams{c, t, delta, s});
    EXPECT_EQ(oracle::edge_set(out.graph), oracle::g_c_edges(out, c, delta * s)) << "seed " << seed;
    const auto layout = layout_main_of(out);
    EXPECT_EQ(layout.num_vertices(), out.graph.num_vertices());
  }
}

TEST(BuildGc, CEqualsOneMirrorsGPrimeWithoutGuards) {
  const auto h = colored_complete(2, 3);
  const auto gc = build_g_c(h, GcParams{1, 1, 1, 2});
  EXPECT_EQ(gc.count(RoleKind::XGuard), 0u);
  EXPECT_EQ(gc.count(RoleKind::Tuple), 3u);
  EXPECT_EQ(gc.count(RoleKind::Witness), 3u * 2u);
  EXPECT_EQ(gc.count(RoleKind::Copy), 2u);
  const auto gp = build_g_prime(h, 1);
  EXPECT_EQ(gc.graph.num_vertices() + 6, gp.graph.num_vertices());
}

TEST(BuildGc, E2RequiresAllCoordinatesToDiffer) {
  // B = {1,2,3,4}, beta = (1,1,2,2), c = 2: tuples (1,3) and (1,4) share coordinate 1.
  std::vector<Edge> e{{1, 1}, {1, 2}, {1, 3}, {1, 4}};
  const ColoredBipartiteGraph h(BipartiteGraph::from_edges(1, 4, e), 1, 2, {1}, {1, 1, 2, 2});
  const auto out = build_g_c(h, GcParams{2, 1, 1, 1});
  const auto layout = layout_main_of(out);
  TupleVertexSpace space(2, 4, h.beta, 2);
  const std::vector<Vertex> v{1, 3}, shares{1, 4}, differs{2, 4};
  const Vertex w = layout.witness(space.index_of(v), 0, 1);
  EXPECT_FALSE(out.graph.adjacent(w, layout.tuple_vertex(space.index_of(shares))));
  EXPECT_TRUE(out.graph.adjacent(w, layout.tuple_vertex(space.index_of(differs))));
  EXPECT_FALSE(out.graph.adjacent(w, layout.tuple_vertex(space.index_of(v))));
}

TEST(BuildGc, RejectsInconsistentColours) {
  const auto h = colored_complete(3, 2);
  EXPECT_THROW(build_g_c(h, GcParams{1, 1, 2, 0}), InputError);
  EXPECT_THROW(build_g_c(h, GcParams{0, 1, 1, 3}), InputError);
  const ColoredBipartiteGraph gap(BipartiteGraph::from_edges(1, 2, {}), 1, 3, {1}, {1, 2});
  EXPECT_THROW(build_g_c(gap, GcParams{1, 1, 1, 1}), InputError);
  EXPECT_THROW(build_g_c(colored_complete(2, 2), GcParams{2, 3, 1, 2}, BuildCaps{20, 1000}), CapExceeded);
}

TEST(ExtractYesWitnessMain, COne) {
  const auto h = colored_complete(2, 2);
  const auto out = build_g_c(h, GcParams{1, 1, 1, 2});
  const auto w = extract_yes_witness_main(out, full_biclique(2, 2));
  EXPECT_EQ(w.size(), 4u);
  EXPECT_TRUE(oracle::dominates(out.graph, w.vertices));
  const auto opt = exact_min_dominating_set(out.graph);
  EXPECT_LE(opt.size(), 4u);
  EXPECT_EQ(opt.size(), oracle::min_dominating_set(out.graph).size());
}

TEST(ExtractYesWitnessMain, CTwo) {
  const auto h = colored_complete(2, 2);
  const auto out = build_g_c(h, GcParams{2, 1, 1, 2});
  const auto w = extract_yes_witness_main(out, full_biclique(2, 2));
  EXPECT_EQ(w.size(), 8u);
  EXPECT_TRUE(oracle::dominates(out.graph, w.vertices));
}

TEST(ExtractYesWitnessMain, MissingBetaColour) {
  const auto h = colored_complete(2, 2);
  const auto out = build_g_c(h, GcParams{1, 1, 1, 2});
  try {
    extract_yes_witness_main(out, Biclique{{1, 2}, {1}});
    FAIL() << "expected a witness error";
  } catch (const WitnessError& e) {
    EXPECT_NE(std::string(e.what()).find("beta not surjective onto [d_small]"), std::string::npos) << e.what();
  }
}

TEST(GcWitnessBound, ExactSolverConfirmsWitnessBound) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto base = synth_yes_instance(2, 2, 1, 0, seed);
    const auto inst = duplicate_side(base, 1);
    const auto ci = color_single_block(inst, 2, 2, seed);
    for (std::size_t c = 1; c <= 2; ++c) {
      const auto out = build_g_c(ci.colored, GcParams{c, 1, 1, 2});
      const auto w = extract_yes_witness_main(out, *ci.rainbow_lift(*inst.planted));
      EXPECT_EQ(w.size(), (c == 1 ? 2u : 4u) + 2 * c);
      EXPECT_TRUE(oracle::dominates(out.graph, w.vertices));
      const auto opt = exact_min_dominating_set(out.graph);
      ASSERT_TRUE(opt.optimal);
      EXPECT_LE(opt.size(), w.size());
    }
  }
}

}  // namespace
}  // namespace gapforge
