#include "avd/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace avd {

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
  if (n < 0) throw InputError("negative vertex count");
  for (auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw InputError("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " out of range for n=" +
                       std::to_string(n));
    }
    if (e.u == e.v) throw InputError("loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw InputError("duplicate edge " + std::to_string(dup->u) + "-" + std::to_string(dup->v));
  }

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  std::vector<int> deg(n, 0);
  for (const auto& e : g.edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.nbr_.resize(g.offsets_[n]);
  g.eid_.resize(g.offsets_[n]);
  std::vector<int> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted lexicographically, so appending in edge order leaves every
  // neighbour list sorted: edges (w, x) with w < x all precede edges (x, y).
  for (EdgeId id = 0; id < static_cast<EdgeId>(g.edges_.size()); ++id) {
    const auto& e = g.edges_[id];
    g.nbr_[fill[e.u]] = e.v;
    g.eid_[fill[e.u]++] = id;
    g.nbr_[fill[e.v]] = e.u;
    g.eid_[fill[e.v]++] = id;
  }
  for (int v = 0; v < n; ++v) g.max_degree_ = std::max(g.max_degree_, g.degree(v));
  return g;
}

std::optional<EdgeId> Graph::find_edge(Vertex a, Vertex b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) return std::nullopt;
  if (degree(a) > degree(b)) std::swap(a, b);
  auto nb = neighbours(a);
  auto it = std::lower_bound(nb.begin(), nb.end(), b);
  if (it == nb.end() || *it != b) return std::nullopt;
  return incident(a)[it - nb.begin()];
}

int Graph::neighbour_rank(Vertex a, Vertex b) const {
  auto nb = neighbours(a);
  auto it = std::lower_bound(nb.begin(), nb.end(), b);
  if (it == nb.end() || *it != b) return -1;
  return static_cast<int>(it - nb.begin());
}

bool Graph::is_isolated_edge(EdgeId e) const {
  const auto& ed = edges_[e];
  return degree(ed.u) == 1 && degree(ed.v) == 1;
}

bool Graph::has_isolated_edge() const {
  for (EdgeId e = 0; e < num_edges(); ++e) {
    if (is_isolated_edge(e)) return true;
  }
  return false;
}

Graph load_graph(std::string_view text) {
  std::vector<Edge> edges;
  std::optional<int> declared_n;
  int max_index = -1;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    auto fail = [&](const std::string& why) {
      throw InputError("line " + std::to_string(lineno) + ": " + why);
    };
    if (first == "n") {
      long long count = -1;
      if (!(ls >> count) || count < 0) fail("expected 'n <count>'");
      if (declared_n) fail("vertex count declared twice");
      declared_n = static_cast<int>(count);
      continue;
    }
    long long u = 0, v = 0;
    std::string rest;
    try {
      std::size_t pos = 0;
      u = std::stoll(first, &pos);
      if (pos != first.size()) fail("cannot parse '" + first + "'");
    } catch (const std::logic_error&) {
      fail("cannot parse '" + first + "'");
    }
    if (!(ls >> v)) fail("expected two vertex indices");
    if (ls >> rest) fail("trailing text '" + rest + "'");
    if (u < 0 || v < 0) fail("negative vertex index");
    if (u == v) fail("loop at vertex " + std::to_string(u));
    edges.push_back({static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))});
    max_index = std::max<int>(max_index, static_cast<int>(std::max(u, v)));
  }
  int n = max_index + 1;
  if (declared_n) {
    if (*declared_n < n) {
      throw InputError("inconsistent n: declared " + std::to_string(*declared_n) + " but vertex " +
                       std::to_string(max_index) + " appears");
    }
    n = *declared_n;
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_graph(buf.str());
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.num_vertices() << "\n";
  for (const auto& e : g.edges()) out << e.u << " " << e.v << "\n";
  return out.str();
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.num_vertices()}, {"edges", std::move(edges)}, {"delta", g.max_degree()}};
}

DegreeProfile classify(const Graph& g, Ratio eps, Mode mode) {
  if (!(Ratio(0, 1) < eps) || !(eps < Ratio(1, 2))) {
    throw InputError("eps must satisfy 0 < eps < 1/2, got " + eps.str());
  }
  DegreeProfile p;
  p.delta = g.max_degree();
  p.eps = eps;
  p.mode = mode;
  p.d = static_cast<int>((Ratio(1, 2) - eps).ceil_times(p.delta));
  p.threshold_below_half = 2 * p.d < p.delta;
  if (!p.threshold_below_half) {
    const std::string msg = "threshold d=" + std::to_string(p.d) + " is not below delta/2 (delta=" +
                            std::to_string(p.delta) + ")";
    if (mode == Mode::theory) throw RegimeError(msg);
    p.warnings.push_back(msg);
  }
  if (g.has_isolated_edge()) {
    const std::string msg = "graph has an isolated edge";
    if (mode == Mode::theory) throw InputError(msg + " (theory mode needs none)");
    p.warnings.push_back(msg);
  }
  p.small.assign(g.num_vertices(), 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) < p.d) {
      p.small[v] = 1;
      p.small_vertices.push_back(v);
    } else {
      p.big_vertices.push_back(v);
    }
  }
  return p;
}

MultiGraph::MultiGraph(int n, std::vector<MultiEdge> edges) : n_(n), edges_(std::move(edges)), incident_(n) {
  for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
    auto& ed = edges_[e];
    if (ed.u == ed.v) throw InputError("multigraph loop");
    if (ed.u > ed.v) std::swap(ed.u, ed.v);
    incident_[ed.u].push_back(e);
    incident_[ed.v].push_back(e);
  }
}

MultiGraph MultiGraph::from_simple(const Graph& g) {
  std::vector<MultiEdge> edges;
  edges.reserve(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) edges.push_back({g.edge(e).u, g.edge(e).v, e});
  return MultiGraph(g.num_vertices(), std::move(edges));
}

int MultiGraph::max_degree() const {
  int best = 0;
  for (const auto& inc : incident_) best = std::max(best, static_cast<int>(inc.size()));
  return best;
}

int MultiGraph::multiplicity(Vertex a, Vertex b) const {
  int count = 0;
  for (EdgeId e : incident_[a]) {
    if (edges_[e].u + edges_[e].v - a == b) ++count;
  }
  return count;
}

int MultiGraph::max_multiplicity() const {
  int best = edges_.empty() ? 0 : 1;
  std::vector<int> seen(n_, 0);
  for (Vertex a = 0; a < n_; ++a) {
    for (EdgeId e : incident_[a]) {
      const Vertex b = edges_[e].u + edges_[e].v - a;
      best = std::max(best, ++seen[b]);
    }
    for (EdgeId e : incident_[a]) seen[edges_[e].u + edges_[e].v - a] = 0;
  }
  return best;
}

Contraction contract_pendant_pairs(const Graph& g, const DegreeProfile& profile) {
  const int n = g.num_vertices();
  std::vector<int> small_nbrs(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : g.neighbours(v)) small_nbrs[v] += profile.is_small(w) ? 1 : 0;
  }
  Contraction c;
  c.representative.resize(n);
  for (Vertex v = 0; v < n; ++v) c.representative[v] = v;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    if (profile.is_small(u) && profile.is_small(v) && small_nbrs[u] == 1 && small_nbrs[v] == 1) {
      c.contracted.push_back(e);
      c.representative[v] = u;  // u < v
    }
  }
  std::vector<MultiGraph::MultiEdge> medges;
  c.image.assign(g.num_edges(), kNoEdge);
  std::size_t next_contracted = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (next_contracted < c.contracted.size() && c.contracted[next_contracted] == e) {
      ++next_contracted;
      continue;
    }
    const auto [u, v] = g.edge(e);
    c.image[e] = static_cast<EdgeId>(medges.size());
    medges.push_back({c.representative[u], c.representative[v], e});
  }
  c.gprime = MultiGraph(n, std::move(medges));
  return c;
}

FragileSet fragile_edges(const Graph& g, const DegreeProfile& profile, int q) {
  if (q < 1) throw InputError("q must be at least 1");
  FragileSet f;
  f.is_fragile.assign(g.num_edges(), 0);
  f.partner.assign(g.num_vertices(), kNoVertex);
  auto others_big = [&](Vertex a, Vertex skip) {
    for (Vertex w : g.neighbours(a)) {
      if (w != skip && profile.is_small(w)) return false;
    }
    return true;
  };
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    if (g.degree(u) != g.degree(v) || g.degree(u) > q + 3) continue;
    if (!others_big(u, v) || !others_big(v, u)) continue;
    f.is_fragile[e] = 1;
    f.edges.push_back(e);
    for (Vertex x : {u, v}) {
      if (f.partner[x] != kNoVertex) f.is_matching = false;
      f.partner[x] = x == u ? v : u;
    }
  }
  return f;
}

GraphModel parse_model(std::string_view text) {
  if (text == "gnp-capped") return GraphModel::gnp_capped;
  if (text == "near-regular") return GraphModel::near_regular;
  if (text == "two-tier") return GraphModel::two_tier;
  throw InputError("unknown graph model '" + std::string(text) + "'");
}

std::string_view to_string(GraphModel model) {
  switch (model) {
    case GraphModel::gnp_capped: return "gnp-capped";
    case GraphModel::near_regular: return "near-regular";
    case GraphModel::two_tier: return "two-tier";
  }
  return "?";
}

namespace {

struct Builder {
  int n;
  std::vector<int> cap;
  std::vector<int> deg;
  std::unordered_set<std::uint64_t> present;
  std::vector<Edge> edges;

  Builder(int n_, int c) : n(n_), cap(n_, c), deg(n_, 0) {}

  static std::uint64_t key(Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  }
  bool try_add(Vertex a, Vertex b) {
    if (a == b || deg[a] >= cap[a] || deg[b] >= cap[b]) return false;
    if (!present.insert(key(a, b)).second) return false;
    edges.push_back({std::min(a, b), std::max(a, b)});
    ++deg[a];
    ++deg[b];
    return true;
  }
  void sample_pairs(std::mt19937_64& rng, std::int64_t wanted) {
    std::int64_t added = 0;
    const std::int64_t attempts = 8 * wanted + 1000;
    for (std::int64_t i = 0; i < attempts && added < wanted; ++i) {
      const auto a = static_cast<Vertex>(uniform_below(rng, n));
      const auto b = static_cast<Vertex>(uniform_below(rng, n));
      if (try_add(a, b)) ++added;
    }
  }
};

}  // namespace

Graph gen_random_graph(int n, int target_delta, std::uint64_t seed, GraphModel model) {
  if (n < 3) throw InputError("random graph needs n >= 3");
  if (target_delta < 2 || target_delta >= n) {
    throw InputError("infeasible target delta " + std::to_string(target_delta) + " for n=" + std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  Builder b(n, target_delta);
  switch (model) {
    case GraphModel::gnp_capped: {
      // Edge density aims at mean degree 0.75 * target; the cap trims the tail.
      const std::int64_t wanted = static_cast<std::int64_t>(n) * target_delta * 3 / 8;
      b.sample_pairs(rng, wanted);
      break;
    }
    case GraphModel::near_regular: {
      std::vector<Vertex> order(n);
      for (int round = 0; round < target_delta; ++round) {
        std::iota(order.begin(), order.end(), 0);
        for (int i = n - 1; i > 0; --i) std::swap(order[i], order[uniform_below(rng, i + 1)]);
        for (int i = 0; i + 1 < n; i += 2) b.try_add(order[i], order[i + 1]);
      }
      break;
    }
    case GraphModel::two_tier: {
      // A third of the vertices are hubs capped at target; the rest are capped
      // well below the small/big threshold so both classes are populated.
      const int low_cap = std::max(2, target_delta / 5);
      int hubs = 0;
      for (Vertex v = 0; v < n; ++v) {
        if (uniform_below(rng, 3) == 0) {
          ++hubs;
        } else {
          b.cap[v] = low_cap;
        }
      }
      const std::int64_t wanted =
          (static_cast<std::int64_t>(hubs) * target_delta + static_cast<std::int64_t>(n - hubs) * low_cap) * 2 / 5;
      b.sample_pairs(rng, wanted);
      break;
    }
  }

  // Lift the maximum degree into range by filling up one vertex.
  const int lo = (4 * target_delta + 4) / 5;
  auto current_max = [&] { return *std::max_element(b.deg.begin(), b.deg.end()); };
  if (current_max() < lo) {
    const auto hub = static_cast<Vertex>(std::max_element(b.deg.begin(), b.deg.end()) - b.deg.begin());
    b.cap[hub] = target_delta;
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[uniform_below(rng, i + 1)]);
    for (Vertex w : order) {
      if (b.deg[hub] >= target_delta) break;
      if (b.deg[w] < target_delta) {
        const int saved = b.cap[w];
        b.cap[w] = target_delta;
        b.try_add(hub, w);
        b.cap[w] = saved;
      }
    }
  }

  // Drop isolated edges.
  std::vector<Edge> kept;
  kept.reserve(b.edges.size());
  for (const auto& e : b.edges) {
    if (b.deg[e.u] == 1 && b.deg[e.v] == 1) continue;
    kept.push_back(e);
  }
  Graph g = Graph::from_edges(n, std::move(kept));
  if (g.max_degree() < lo || g.max_degree() > target_delta) {
    throw InputError("generator could not reach max degree in [" + std::to_string(lo) + ", " +
                     std::to_string(target_delta) + "]");
  }
  return g;
}

}  // namespace avd
