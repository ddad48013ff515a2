#include "avd/verify.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <thread>

namespace avd {

VerificationReport verify(const Graph& g, const EdgeColouring& c) {
  if (c.num_edges() != g.num_edges()) throw InputError("colouring does not match the graph's edge count");
  if (!c.is_total()) throw InputError("verify needs a total colouring");
  VerificationReport rep;
  rep.palette_used = c.max_colour();
  std::vector<std::vector<Colour>> sets(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) sets[v] = colour_set(g, c, v);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto& s = sets[v];
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) rep.proper = false;
  }
  for (const Edge& e : g.edges()) {
    const auto& su = sets[e.u];
    const auto& sv = sets[e.v];
    const bool clash_u = std::adjacent_find(su.begin(), su.end()) != su.end();
    const bool clash_v = std::adjacent_find(sv.begin(), sv.end()) != sv.end();
    if (clash_u || clash_v) {
      rep.offending.push_back({e.u, e.v, su, sv, "improper"});
    } else if (su == sv) {
      rep.avd = false;
      rep.offending.push_back({e.u, e.v, su, sv, "indistinct"});
    }
  }
  if (!rep.proper) rep.avd = false;
  return rep;
}

nlohmann::json report_to_json(const VerificationReport& r) {
  nlohmann::json off = nlohmann::json::array();
  for (const auto& o : r.offending) {
    off.push_back({{"u", o.u}, {"v", o.v}, {"su", o.su}, {"sv", o.sv}, {"what", o.what}});
  }
  return {{"proper", r.proper}, {"avd", r.avd}, {"palette_used", r.palette_used}, {"offending", off}};
}

namespace {

// Backtracking over edges in id order. New colours are introduced in
// increasing order only, which removes the k! relabelling symmetry.
class AvdSearch {
 public:
  AvdSearch(const Graph& g, int k, bool distinguish, std::int64_t budget)
      : g_(g), k_(k), distinguish_(distinguish), budget_(budget), mask_(g.num_vertices(), 0),
        left_(g.num_vertices()) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) left_[v] = g.degree(v);
  }

  bool run() { return rec(0, 0); }
  std::int64_t nodes() const { return nodes_; }

 private:
  bool complete_ok(Vertex v) const {
    for (Vertex w : g_.neighbours(v)) {
      if (left_[w] == 0 && g_.degree(w) == g_.degree(v) && mask_[w] == mask_[v]) return false;
    }
    return true;
  }

  bool rec(EdgeId i, int used) {
    if (++nodes_ > budget_) throw Error("brute-force search budget exceeded");
    if (i == g_.num_edges()) return true;
    const auto [u, v] = g_.edge(i);
    const int top = std::min(k_, used + 1);
    for (int col = 1; col <= top; ++col) {
      const std::uint32_t bit = 1u << col;
      if ((mask_[u] | mask_[v]) & bit) continue;
      mask_[u] |= bit;
      mask_[v] |= bit;
      --left_[u];
      --left_[v];
      const bool ok = !distinguish_ || ((left_[u] != 0 || complete_ok(u)) && (left_[v] != 0 || complete_ok(v)));
      if (ok && rec(i + 1, std::max(used, col))) return true;
      mask_[u] &= ~bit;
      mask_[v] &= ~bit;
      ++left_[u];
      ++left_[v];
    }
    return false;
  }

  const Graph& g_;
  int k_;
  bool distinguish_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  std::vector<std::uint32_t> mask_;
  std::vector<int> left_;
};

}  // namespace

std::optional<int> brute_force_avd_index(const Graph& g, int max_colours, std::int64_t node_budget) {
  if (g.has_isolated_edge()) throw InputError("AVD colourings do not exist for graphs with an isolated edge");
  if (max_colours > 30) throw InputError("brute force is limited to 30 colours");
  for (int k = std::max(1, g.max_degree()); k <= max_colours; ++k) {
    if (AvdSearch(g, k, true, node_budget).run()) return k;
  }
  return std::nullopt;
}

int brute_force_chromatic_index(const Graph& g) {
  for (int k = std::max(1, g.max_degree());; ++k) {
    if (AvdSearch(g, k, false, std::numeric_limits<std::int64_t>::max()).run()) return k;
  }
}

namespace {

// Small graphs as adjacency bitmasks; the code of a graph under a vertex
// order is its upper-triangle bit string, and the canonical form is the
// minimum code over all orders.
using Adj = std::vector<std::uint32_t>;

std::uint64_t code_under(const Adj& adj, const std::vector<int>& perm) {
  const int n = static_cast<int>(adj.size());
  std::uint64_t code = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) code = (code << 1) | ((adj[perm[i]] >> perm[j]) & 1u);
  }
  return code;
}

std::uint64_t canonical_code(const Adj& adj) {
  std::vector<int> perm(adj.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  do {
    best = std::min(best, code_under(adj, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Graph to_graph(const Adj& adj) {
  std::vector<Edge> edges;
  for (int i = 0; i < static_cast<int>(adj.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(adj.size()); ++j) {
      if ((adj[i] >> j) & 1u) edges.push_back({i, j});
    }
  }
  return Graph::from_edges(static_cast<int>(adj.size()), std::move(edges));
}

}  // namespace

// Every connected graph has a vertex whose removal leaves it connected, so
// growing connected graphs by one vertex at a time reaches all of them.
std::vector<Graph> connected_graphs(int n_max) {
  std::vector<Graph> out;
  std::vector<Adj> level{Adj{0}};
  for (int n = 2; n <= n_max; ++n) {
    std::set<std::uint64_t> seen;
    std::vector<Adj> next;
    for (const Adj& base : level) {
      for (std::uint32_t nbrs = 1; nbrs < (1u << (n - 1)); ++nbrs) {
        Adj adj = base;
        adj.push_back(nbrs);
        for (int i = 0; i < n - 1; ++i) {
          if ((nbrs >> i) & 1u) adj[i] |= 1u << (n - 1);
        }
        if (seen.insert(canonical_code(adj)).second) next.push_back(std::move(adj));
      }
    }
    level = std::move(next);
    if (n >= 3) {
      for (const Adj& adj : level) out.push_back(to_graph(adj));
    }
  }
  return out;
}

bool is_cycle(const Graph& g) {
  if (g.num_vertices() < 3 || g.num_edges() != g.num_vertices()) return false;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) != 2) return false;
  }
  // Connected and 2-regular.
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int count = 0;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    ++count;
    for (Vertex w : g.neighbours(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return count == g.num_vertices();
}

SweepReport conjecture_sweep(int n_max, int workers) {
  if (n_max < 3 || n_max > 7) throw InputError("conjecture sweep supports 3 <= n_max <= 7");
  SweepReport rep;
  rep.n_max = n_max;
  const auto graphs = connected_graphs(n_max);
  rep.graphs = static_cast<std::int64_t>(graphs.size());
  std::vector<int> index(graphs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < graphs.size(); i = next++) {
      const auto k = brute_force_avd_index(graphs[i], graphs[i].max_degree() + 3);
      if (!k) throw InvariantViolation("graph needs more than delta + 3 colours");
      index[i] = *k;
    }
  };
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mu;
  for (int t = 1; t < std::max(1, workers); ++t) {
    pool.emplace_back([&] {
      try {
        work();
      } catch (...) {
        std::lock_guard lock(failure_mu);
        failure = std::current_exception();
      }
    });
  }
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const int delta = graphs[i].max_degree();
    if (index[i] > delta + 2) {
      rep.exceptions.push_back({graphs[i], delta, index[i]});
      if (!(is_cycle(graphs[i]) && graphs[i].num_vertices() == 5)) rep.passed = false;
    }
  }
  return rep;
}

nlohmann::json sweep_to_json(const SweepReport& r) {
  nlohmann::json ex = nlohmann::json::array();
  for (const auto& e : r.exceptions) {
    ex.push_back({{"graph", graph_to_json(e.graph)}, {"delta", e.delta}, {"index", e.index}});
  }
  return {{"n_max", r.n_max}, {"graphs", r.graphs}, {"exceptions", ex}, {"passed", r.passed}};
}

}  // namespace avd
