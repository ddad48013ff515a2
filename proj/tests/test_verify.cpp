#include <gtest/gtest.h>

#include <random>

#include "avd/verify.hpp"
#include "oracles.hpp"

using namespace avd;

namespace {

Graph cycle(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  return Graph::from_edges(n, es);
}

/// Colours along the cycle order 0-1, 1-2, ..., (n-1)-0.
EdgeColouring cycle_colouring(const Graph& g, const std::vector<Colour>& seq) {
  EdgeColouring c(g.num_edges(), *std::max_element(seq.begin(), seq.end()));
  const int n = g.num_vertices();
  for (int i = 0; i < n; ++i) c.set(*g.find_edge(i, (i + 1) % n), seq[i]);
  return c;
}

}  // namespace

TEST(Verify, FiveCycleRainbowIsAvd) {
  const Graph c5 = cycle(5);
  const auto rep = verify(c5, cycle_colouring(c5, {1, 2, 3, 4, 5}));
  EXPECT_TRUE(rep.proper);
  EXPECT_TRUE(rep.avd);
  EXPECT_EQ(rep.palette_used, 5);
  EXPECT_TRUE(rep.offending.empty());
}

TEST(Verify, FiveCycleWrapRepeatIsImproper) {
  const Graph c5 = cycle(5);
  const auto rep = verify(c5, cycle_colouring(c5, {1, 2, 1, 2, 3}));
  // The edges 3-4 (colour 2) and 4-0 (colour 3) are fine, but 0 sees 1 and 3,
  // 1 sees 1 and 2, 2 sees 2 and 1: vertices 1 and 2 share {1,2}.
  EXPECT_FALSE(rep.avd);
  EXPECT_FALSE(rep.offending.empty());
  const auto rep2 = verify(c5, cycle_colouring(c5, {1, 1, 2, 3, 4}));
  EXPECT_FALSE(rep2.proper);
  EXPECT_FALSE(rep2.avd);
}

TEST(Verify, PartialColouringRejected) {
  const Graph c5 = cycle(5);
  EdgeColouring c(c5.num_edges(), 5);
  EXPECT_THROW(verify(c5, c), InputError);
}

TEST(Verify, AgreesWithSetComparisonChecker) {
  std::mt19937_64 rng(7);
  int avd_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Graph g = gen_random_graph(12, 3 + trial % 4, trial + 1, GraphModel::gnp_capped);
    EdgeColouring c(g.num_edges(), g.max_degree() + 3);
    for (EdgeId e = 0; e < g.num_edges(); ++e) c.set(e, 1 + static_cast<Colour>(rng() % (g.max_degree() + 3)));
    const auto rep = verify(g, c);
    EXPECT_EQ(rep.proper, oracle::proper(g, c));
    EXPECT_EQ(rep.avd, oracle::avd(g, c));
    EXPECT_EQ(rep.offending.empty(), rep.avd);
    avd_seen += rep.avd;
  }
  EXPECT_GT(avd_seen, 0);
}

TEST(BruteForce, SmallIndices) {
  EXPECT_EQ(brute_force_avd_index(cycle(5), 8), 5);
  EXPECT_EQ(brute_force_avd_index(Graph::from_edges(3, {{0, 1}, {1, 2}}), 5), 2);
  const auto c4 = brute_force_avd_index(cycle(4), 8);
  ASSERT_TRUE(c4.has_value());
  EXPECT_LE(*c4, 4);
  EXPECT_GE(*c4, 2);
  EXPECT_THROW(brute_force_avd_index(Graph::from_edges(2, {{0, 1}}), 5), InputError);
  EXPECT_EQ(brute_force_avd_index(cycle(5), 4), std::nullopt);
}

TEST(BruteForce, AtLeastChromaticIndex) {
  for (const Graph& g : connected_graphs(5)) {
    if (g.has_isolated_edge()) continue;
    const auto idx = brute_force_avd_index(g, g.max_degree() + 3);
    ASSERT_TRUE(idx.has_value());
    EXPECT_GE(*idx, brute_force_chromatic_index(g));
  }
}

TEST(Sweep, ConnectedGraphCounts) {
  // Connected graphs on exactly 3, 4, 5 vertices: 2, 6, 21.
  EXPECT_EQ(connected_graphs(3).size(), 2u);
  EXPECT_EQ(connected_graphs(4).size(), 8u);
  EXPECT_EQ(connected_graphs(5).size(), 29u);
}

TEST(Sweep, UpToFourAllPass) {
  const auto rep = conjecture_sweep(4);
  EXPECT_TRUE(rep.passed);
  EXPECT_TRUE(rep.exceptions.empty());
}

TEST(Sweep, FiveCycleIsTheOnlyExceptionUpToFive) {
  const auto rep = conjecture_sweep(5);
  EXPECT_TRUE(rep.passed);
  ASSERT_EQ(rep.exceptions.size(), 1u);
  EXPECT_TRUE(is_cycle(rep.exceptions[0].graph));
  EXPECT_EQ(rep.exceptions[0].graph.num_vertices(), 5);
  EXPECT_EQ(rep.exceptions[0].index, 5);
}
