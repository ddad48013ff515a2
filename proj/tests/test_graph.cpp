#include <gtest/gtest.h>

#include "avd/graph.hpp"

using namespace avd;

namespace {

Graph cycle(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  return Graph::from_edges(n, es);
}

}  // namespace

TEST(Graph, ParsesEdgeListWithComments) {
  const Graph g = load_graph("# triangle\n0 1\n1 2  # tail\n\n2 0\n");
  EXPECT_EQ(g.num_vertices(), 3);
  EXPECT_EQ(g.num_edges(), 3);
  EXPECT_EQ(g.max_degree(), 2);
  EXPECT_TRUE(g.adjacent(0, 2));
}

TEST(Graph, RejectsLoopsDuplicatesAndGarbage) {
  EXPECT_THROW(load_graph("0 0\n"), InputError);
  EXPECT_THROW(load_graph("0 1\n1 0\n"), InputError);
  EXPECT_THROW(load_graph("0 x\n"), InputError);
  EXPECT_THROW(Graph::from_edges(2, {{0, 5}}), InputError);
}

TEST(Graph, EdgeListRoundTrip) {
  const Graph g = gen_random_graph(60, 12, 5, GraphModel::near_regular);
  EXPECT_EQ(load_graph(write_edge_list(g)), g);
  const auto j = graph_to_json(g);
  EXPECT_EQ(j["n"], 60);
  EXPECT_EQ(j["delta"], g.max_degree());
  EXPECT_EQ(j["edges"].size(), static_cast<std::size_t>(g.num_edges()));
}

TEST(Graph, IsolatedEdgeDetection) {
  EXPECT_TRUE(Graph::from_edges(2, {{0, 1}}).has_isolated_edge());
  EXPECT_FALSE(cycle(5).has_isolated_edge());
}

TEST(Classify, ThresholdIsExactCeiling) {
  const Graph g = cycle(5);
  // (1/2 - 1/10) * 2 = 0.8 -> 1
  EXPECT_EQ(classify(g, Ratio(1, 10), Mode::practical).d, 1);
  const Graph k = gen_random_graph(200, 60, 2, GraphModel::gnp_capped);
  const auto p = classify(k, Ratio(1, 250), Mode::practical);
  EXPECT_EQ(p.d, static_cast<int>((Ratio(1, 2) - Ratio(1, 250)).ceil_times(k.max_degree())));
  for (Vertex v = 0; v < k.num_vertices(); ++v) EXPECT_EQ(p.is_big(v), k.degree(v) >= p.d);
}

TEST(Classify, TheoryModeRefusesIsolatedEdgeAndBadThreshold) {
  std::vector<Edge> es;
  for (int i = 1; i < 30; ++i) es.push_back({0, i});
  es.push_back({30, 31});
  const Graph g = Graph::from_edges(32, es);
  EXPECT_THROW(classify(g, Ratio(1, 10), Mode::theory), InputError);
  EXPECT_NO_THROW(classify(g, Ratio(1, 10), Mode::practical));
  // d = ceil(0.496 * 5) = 3 is not below 5/2.
  EXPECT_THROW(classify(cycle(5), Ratio(1, 250), Mode::theory), Error);
  EXPECT_THROW(classify(cycle(5), Ratio(1, 2), Mode::practical), InputError);
}

TEST(Contract, PendantSmallPairMerges) {
  // K_10 on 0..9, plus small 10-11 joined to each other and to the clique.
  std::vector<Edge> es;
  for (int i = 0; i < 10; ++i)
    for (int j = i + 1; j < 10; ++j) es.push_back({i, j});
  es.push_back({0, 10});
  es.push_back({1, 10});
  es.push_back({0, 11});
  es.push_back({2, 11});
  es.push_back({10, 11});
  const Graph g = Graph::from_edges(12, es);
  const auto p = classify(g, Ratio(1, 10), Mode::practical);
  ASSERT_TRUE(p.is_small(10));
  ASSERT_TRUE(p.is_small(11));
  const auto con = contract_pendant_pairs(g, p);
  ASSERT_EQ(con.contracted.size(), 1u);
  EXPECT_EQ(g.edge(con.contracted[0]), (Edge{10, 11}));
  EXPECT_EQ(con.representative[11], 10);
  EXPECT_EQ(con.gprime.num_edges(), g.num_edges() - 1);
  EXPECT_EQ(con.gprime.multiplicity(0, 10), 2);
  EXPECT_EQ(con.gprime.max_multiplicity(), 2);
  EXPECT_EQ(con.image[con.contracted[0]], kNoEdge);
}

TEST(Contract, SmallNeighbourBlocksContraction) {
  // Path of three small vertices hanging off a clique: neither path edge qualifies.
  std::vector<Edge> es;
  for (int i = 0; i < 10; ++i)
    for (int j = i + 1; j < 10; ++j) es.push_back({i, j});
  es.push_back({0, 10});
  es.push_back({10, 11});
  es.push_back({11, 12});
  es.push_back({1, 12});
  const Graph g = Graph::from_edges(13, es);
  const auto con = contract_pendant_pairs(g, classify(g, Ratio(1, 10), Mode::practical));
  EXPECT_TRUE(con.contracted.empty());
}

TEST(Fragile, DefinitionOnHandGraph) {
  // Two adjacent degree-3 vertices whose other neighbours are all big.
  std::vector<Edge> es;
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j) es.push_back({i, j});
  es.push_back({0, 12});
  es.push_back({1, 12});
  es.push_back({2, 13});
  es.push_back({3, 13});
  es.push_back({12, 13});
  const Graph g = Graph::from_edges(14, es);
  const auto p = classify(g, Ratio(1, 10), Mode::practical);
  // With q = 1 only degrees up to 4 qualify, which leaves 12-13.
  const auto f = fragile_edges(g, p, 1);
  ASSERT_EQ(f.edges.size(), 1u);
  EXPECT_EQ(g.edge(f.edges[0]), (Edge{12, 13}));
  EXPECT_EQ(f.partner[12], 13);
  EXPECT_TRUE(f.is_matching);
  // Big endpoints count too: with q = 13 the equal-degree clique edges among
  // 4..11 (degree 11, all neighbours big) are fragile as well.
  const auto f13 = fragile_edges(g, p, 13);
  EXPECT_EQ(f13.edges.size(), 1u + 28u);
  EXPECT_TRUE(f13.is_fragile[*g.find_edge(12, 13)]);
  EXPECT_TRUE(f13.is_fragile[*g.find_edge(4, 5)]);
  EXPECT_FALSE(f13.is_fragile[*g.find_edge(0, 1)]);
  EXPECT_FALSE(f13.is_matching);
}

TEST(Generator, DeterministicAndInRange) {
  for (auto model : {GraphModel::gnp_capped, GraphModel::near_regular, GraphModel::two_tier}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Graph a = gen_random_graph(200, 60, seed, model);
      EXPECT_EQ(a, gen_random_graph(200, 60, seed, model));
      EXPECT_LE(a.max_degree(), 60);
      EXPECT_GE(a.max_degree(), 48);
      EXPECT_FALSE(a.has_isolated_edge());
    }
  }
  EXPECT_EQ(parse_model(to_string(GraphModel::two_tier)), GraphModel::two_tier);
}

TEST(Ratio, ParseAndCeil) {
  EXPECT_EQ(Ratio::parse("0.004"), Ratio(1, 250));
  EXPECT_EQ(Ratio::parse("1/250"), Ratio(1, 250));
  EXPECT_EQ(Ratio::parse("3"), Ratio(3, 1));
  EXPECT_EQ(Ratio(1, 3).ceil_times(3), 1);
  EXPECT_EQ(Ratio(1, 3).ceil_times(4), 2);
  EXPECT_THROW(Ratio::parse("abc"), InputError);
}
