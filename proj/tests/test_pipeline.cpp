#include <gtest/gtest.h>

#include "avd/log_codec.hpp"
#include "avd/pipeline.hpp"
#include "avd/verify.hpp"
#include "oracles.hpp"

using namespace avd;

TEST(Pipeline, RandomGraphsGetAvdColourings) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Graph g = gen_random_graph(200, 40 + static_cast<int>(seed) * 6, seed,
                                     static_cast<GraphModel>(seed % 3));
    PipelineConfig cfg;
    cfg.seed = seed;
    cfg.assert_invariants = true;
    const auto res = run_colouring(g, cfg);
    EXPECT_TRUE(res.big.completed);
    EXPECT_TRUE(res.property1);
    EXPECT_TRUE(oracle::avd(g, res.final_colouring));
    EXPECT_LE(res.final_colouring.max_colour(), g.max_degree() + 19);
  }
}

TEST(Pipeline, Deterministic) {
  const Graph g = gen_random_graph(200, 50, 8, GraphModel::two_tier);
  PipelineConfig cfg;
  cfg.seed = 8;
  const auto a = run_colouring(g, cfg);
  const auto b = run_colouring(g, cfg);
  EXPECT_EQ(a.final_colouring, b.final_colouring);
  EXPECT_EQ(a.big.steps, b.big.steps);
  EXPECT_EQ(a.small.steps, b.small.steps);
  cfg.seed = 9;
  const auto c = run_colouring(g, cfg);
  EXPECT_NE(a.big.steps, c.big.steps);
}

TEST(Pipeline, ErrorsNameTheStage) {
  std::vector<Edge> es;
  for (int i = 1; i < 30; ++i) es.push_back({0, i});
  es.push_back({30, 31});
  const Graph g = Graph::from_edges(32, es);
  PipelineConfig cfg;
  cfg.mode = Mode::theory;
  try {
    run_colouring(g, cfg);
    FAIL() << "expected an error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("classify"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("isolated edge"), std::string::npos);
  }
}

TEST(Pipeline, TheoryModeAtDeskScaleIsARegimeFailure) {
  const Graph g = gen_random_graph(200, 60, 1, GraphModel::gnp_capped);
  PipelineConfig cfg;
  cfg.mode = Mode::theory;
  cfg.eps = Ratio(1, 250);
  EXPECT_THROW(run_colouring(g, cfg), RegimeError);
}

TEST(Pipeline, StepCapSurfacesAsRegimeError) {
  const Graph g = gen_random_graph(200, 60, 1, GraphModel::gnp_capped);
  PipelineConfig cfg;
  cfg.step_cap = 3;
  EXPECT_THROW(run_colouring(g, cfg), RegimeError);
}
