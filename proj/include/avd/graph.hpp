#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avd/common.hpp"
#include "json.hpp"

namespace avd {

struct Edge {
  Vertex u = kNoVertex;  // u < v
  Vertex v = kNoVertex;

  Vertex other(Vertex x) const { return x == u ? v : u; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph in CSR form. Edge ids follow the lexicographic
/// order of (min endpoint, max endpoint); neighbour lists are sorted, and
/// that index order is the fixed vertex ordering every algorithm here uses.
class Graph {
 public:
  Graph() = default;

  /// Validates: endpoints in range, no loops, no duplicates.
  static Graph from_edges(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  int max_degree() const { return max_degree_; }

  std::span<const Vertex> neighbours(Vertex v) const {
    return {nbr_.data() + offsets_[v], nbr_.data() + offsets_[v + 1]};
  }
  /// Edge ids aligned with neighbours(v).
  std::span<const EdgeId> incident(Vertex v) const {
    return {eid_.data() + offsets_[v], eid_.data() + offsets_[v + 1]};
  }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;
  bool adjacent(Vertex a, Vertex b) const { return find_edge(a, b).has_value(); }
  /// Position of b in neighbours(a), or -1.
  int neighbour_rank(Vertex a, Vertex b) const;

  /// An edge whose endpoints both have degree one.
  bool is_isolated_edge(EdgeId e) const;
  bool has_isolated_edge() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  int n_ = 0;
  int max_degree_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_{0};
  std::vector<Vertex> nbr_;
  std::vector<EdgeId> eid_;
};

/// Parses the edge-list text format: one "u v" pair per line, '#' starts a
/// comment, and an optional "n <count>" line fixes the vertex count.
Graph load_graph(std::string_view text);
Graph load_graph_file(const std::string& path);
std::string write_edge_list(const Graph& g);
nlohmann::json graph_to_json(const Graph& g);

/// Degree split into small (degree < d) and big vertices.
struct DegreeProfile {
  int delta = 0;
  Ratio eps;
  int d = 0;  // ceil((1/2 - eps) * delta)
  Mode mode = Mode::practical;
  std::vector<char> small;  // indexed by vertex
  std::vector<Vertex> small_vertices;
  std::vector<Vertex> big_vertices;
  /// d < delta / 2, the regime the analysis assumes.
  bool threshold_below_half = false;
  std::vector<std::string> warnings;

  bool is_big(Vertex v) const { return !small[v]; }
  bool is_small(Vertex v) const { return small[v] != 0; }
};

DegreeProfile classify(const Graph& g, Ratio eps, Mode mode);

class MultiGraph {
 public:
  struct MultiEdge {
    Vertex u = kNoVertex;
    Vertex v = kNoVertex;
    EdgeId origin = kNoEdge;  // edge of the source simple graph
  };

  MultiGraph() = default;
  MultiGraph(int n, std::vector<MultiEdge> edges);
  static MultiGraph from_simple(const Graph& g);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const MultiEdge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<MultiEdge>& edges() const { return edges_; }
  const std::vector<EdgeId>& incident(Vertex v) const { return incident_[v]; }
  int degree(Vertex v) const { return static_cast<int>(incident_[v].size()); }
  int max_degree() const;
  int multiplicity(Vertex a, Vertex b) const;
  int max_multiplicity() const;

 private:
  int n_ = 0;
  std::vector<MultiEdge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

/// G' together with the bookkeeping needed to map a colouring back onto G.
struct Contraction {
  MultiGraph gprime;
  std::vector<EdgeId> contracted;      // edges of G removed by contraction, ascending
  std::vector<Vertex> representative;  // vertex of G -> vertex of G'
  std::vector<EdgeId> image;           // edge of G -> edge of G', kNoEdge if contracted
};

/// Contracts every edge uv of G with both endpoints small and no other small
/// neighbour at either endpoint. The merged vertex keeps the lower id.
Contraction contract_pendant_pairs(const Graph& g, const DegreeProfile& profile);

struct FragileSet {
  std::vector<EdgeId> edges;     // ascending
  std::vector<char> is_fragile;  // indexed by edge id
  std::vector<Vertex> partner;   // partner along a fragile edge, kNoVertex if none
  bool is_matching = true;
};

/// uv is fragile when d(u) = d(v) <= q + 3 and every other neighbour of u or v is big.
FragileSet fragile_edges(const Graph& g, const DegreeProfile& profile, int q);

enum class GraphModel { gnp_capped, near_regular, two_tier };
GraphModel parse_model(std::string_view text);
std::string_view to_string(GraphModel model);

/// Deterministic random graph whose max degree lies in
/// [ceil(0.8 * target_delta), target_delta] and which has no isolated edge.
Graph gen_random_graph(int n, int target_delta, std::uint64_t seed, GraphModel model);

}  // namespace avd
