#include "avd/gadgets.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "avd/pipeline.hpp"

namespace avd {

Gadget latin_gadget(int k) {
  if (k < 3) throw InputError("latin gadget needs k >= 3");
  std::vector<Edge> es;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) es.push_back({i, k + j});
  }
  Gadget gd{"latin-K" + std::to_string(k) + "," + std::to_string(k), Graph::from_edges(2 * k, es), Ratio(1, 10), 5, {}};
  gd.colouring = EdgeColouring(gd.graph.num_edges(), k + 2);
  for (EdgeId e = 0; e < gd.graph.num_edges(); ++e) {
    const auto [a, b] = gd.graph.edge(e);
    gd.colouring.set(e, (a + b - k) % k + 1);
  }
  return gd;
}

Gadget fragile_gadget(std::uint64_t seed) {
  constexpr int pairs = 12;
  constexpr int side = 10;
  constexpr int hooks = 3;  // core neighbours per pendant vertex
  const int core0 = 2 * pairs;
  std::vector<Edge> es;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) es.push_back({core0 + i, core0 + side + j});
  }
  std::mt19937_64 rng(seed);
  for (int p = 0; p < pairs; ++p) {
    es.push_back({2 * p, 2 * p + 1});
    for (int end = 0; end < 2; ++end) {
      std::vector<int> pool(2 * side);
      std::iota(pool.begin(), pool.end(), core0);
      for (int h = 0; h < hooks; ++h) {
        const auto pick = h + uniform_below(rng, static_cast<std::int64_t>(pool.size()) - h);
        std::swap(pool[h], pool[pick]);
        es.push_back({2 * p + end, pool[h]});
      }
    }
  }
  Gadget gd{"fragile-pairs", Graph::from_edges(core0 + 2 * side, es), Ratio(1, 10), 5, {}};
  const auto prof = classify(gd.graph, gd.eps, Mode::practical);
  gd.colouring = initial_colouring(gd.graph, contract_pendant_pairs(gd.graph, prof));
  return gd;
}

Gadget small_gadget(int cycle, int clique) {
  if (cycle < 6 || clique < 8) throw InputError("small gadget too small");
  std::vector<Edge> es;
  for (int i = 0; i < cycle; ++i) {
    es.push_back({i, (i + 1) % cycle});
    es.push_back({i, (i + 2) % cycle});
  }
  for (int i = 0; i < clique; ++i) {
    for (int j = i + 1; j < clique; ++j) es.push_back({cycle + i, cycle + j});
  }
  Gadget gd{"small-circulant", Graph::from_edges(cycle + clique, es), Ratio(1, 20), 5, {}};
  const auto prof = classify(gd.graph, gd.eps, Mode::practical);
  gd.colouring = initial_colouring(gd.graph, contract_pendant_pairs(gd.graph, prof));
  return gd;
}

}  // namespace avd
