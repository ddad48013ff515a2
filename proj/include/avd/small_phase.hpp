#pragma once

#include <optional>
#include <set>
#include <vector>

#include "avd/colouring.hpp"
#include "avd/graph.hpp"

namespace avd {

/// Fixed data of the small-vertex pass.
struct SmallContext {
  SmallContext(const Graph& graph, const DegreeProfile& profile, int q, Mode mode);

  const Graph* g;
  const DegreeProfile* profile;
  int q;
  Mode mode;
  int palette;             // delta + q + 6
  std::int64_t s;          // ceil(2 eps delta)
  std::vector<char> in_aprime;
  std::vector<EdgeId> edges;    // E(G[A']) ascending; this is the fixed edge order
  std::vector<int> position;    // edge id -> index in edges, -1 outside G[A']

  bool inside(EdgeId e) const { return position[e] >= 0; }
  /// Edges of G[A'] at v other than `skip`, in the fixed order.
  std::vector<EdgeId> inner_edges(Vertex v, EdgeId skip) const;
};

struct Danger {
  Vertex w = kNoVertex;
  Colour colour = kNoColour;
  friend bool operator==(const Danger&, const Danger&) = default;
};

struct SmallEvent {
  Vertex endpoint = kNoVertex;  // the endpoint the colour was dangerous for
  Vertex w = kNoVertex;
  EdgeId extra = kNoEdge;  // second uncoloured edge
  friend bool operator==(const SmallEvent&, const SmallEvent&) = default;
};

struct SmallStep {
  EdgeId edge = kNoEdge;
  std::int64_t r = 0;
  std::int64_t choices = 0;
  Colour colour = kNoColour;
  std::optional<SmallEvent> event;
  friend bool operator==(const SmallStep&, const SmallStep&) = default;
};

class SmallEngine {
 public:
  /// `start` must be total outside G[A']; edges of G[A'] are uncoloured here.
  SmallEngine(const SmallContext& ctx, EdgeColouring start);

  const SmallContext& context() const { return *ctx_; }
  const EdgeColouring& colouring() const { return c_; }
  bool done() const { return uncoloured_.empty(); }
  EdgeId current() const { return ctx_->edges[*uncoloured_.begin()]; }

  /// Dangerous neighbours of u with respect to the edge uv, ascending by w.
  std::vector<Danger> dangerous(Vertex u, Vertex v) const;
  /// Colours the edge may take after the single-danger removals, ascending.
  std::vector<Colour> available(EdgeId e) const;
  std::int64_t sample_range(std::int64_t available) const;

  SmallStep step(std::int64_t r);

  // Raw mutators for the decoder.
  void colour(EdgeId e, Colour c);
  void uncolour(EdgeId e);

 private:
  const SmallContext* ctx_;
  EdgeColouring c_;
  std::set<int> uncoloured_;  // positions in ctx.edges
};

struct SmallResult {
  EdgeColouring colouring;
  std::vector<SmallStep> steps;
  bool completed = false;
};

/// Uncolours G[A'] in `c2` and recolours it edge by edge.
EdgeColouring strip_small_edges(const SmallContext& ctx, const EdgeColouring& c2);
SmallResult run_small_phase(const SmallContext& ctx, const EdgeColouring& c2, std::uint64_t seed,
                            std::int64_t step_cap);
SmallResult replay_small_phase(const SmallContext& ctx, const EdgeColouring& c2,
                               const std::vector<std::int64_t>& choices);

nlohmann::json small_step_to_json(const SmallStep& step);

}  // namespace avd
