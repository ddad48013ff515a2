#include "avd/colouring.hpp"

#include <algorithm>
#include <string>

namespace avd {

bool EdgeColouring::is_total() const {
  return std::none_of(colour_.begin(), colour_.end(), [](Colour c) { return c == kNoColour; });
}

Colour EdgeColouring::max_colour() const {
  Colour best = kNoColour;
  for (Colour c : colour_) best = std::max(best, c);
  return best;
}

std::vector<Colour> colour_set(const Graph& g, const EdgeColouring& c, Vertex v) {
  std::vector<Colour> out;
  out.reserve(g.degree(v));
  for (EdgeId e : g.incident(v)) {
    if (c.coloured(e)) out.push_back(c[e]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_proper(const Graph& g, const EdgeColouring& c) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto s = colour_set(g, c, v);
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
  }
  return true;
}

bool is_proper(const MultiGraph& g, const EdgeColouring& c) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::vector<Colour> s;
    for (EdgeId e : g.incident(v)) {
      if (c.coloured(e)) s.push_back(c[e]);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
  }
  return true;
}

namespace {

// Edge colouring by multi-fans. For an uncoloured edge xy_0 a multi-fan is a
// sequence of edges xy_0, xy_1, ..., xy_p at x with distinct y_i where the
// colour of xy_i is missing at some earlier y_j. When the palette has at least
// max_degree + max_multiplicity colours, a maximal multi-fan always has either
// a colour missing at x and at some y_l (shift the fan and finish) or a colour
// missing at two fan vertices, in which case one alternating-path swap
// produces the first situation.
class FanColourer {
 public:
  FanColourer(const MultiGraph& g, int palette)
      : g_(g), k_(palette), colour_(g.num_edges(), kNoColour),
        at_(static_cast<std::size_t>(g.num_vertices()) * (palette + 1), kNoEdge) {}

  EdgeColouring run() {
    for (EdgeId e = 0; e < g_.num_edges(); ++e) colour_edge(e);
    EdgeColouring out(g_.num_edges(), k_);
    for (EdgeId e = 0; e < g_.num_edges(); ++e) out.set(e, colour_[e]);
    return out;
  }

 private:
  EdgeId& slot(Vertex v, Colour c) { return at_[static_cast<std::size_t>(v) * (k_ + 1) + c]; }
  bool missing(Vertex v, Colour c) { return slot(v, c) == kNoEdge; }
  Vertex other(EdgeId e, Vertex v) const { return g_.edge(e).u + g_.edge(e).v - v; }

  void assign(EdgeId e, Colour c) {
    colour_[e] = c;
    slot(g_.edge(e).u, c) = e;
    slot(g_.edge(e).v, c) = e;
  }
  void unassign(EdgeId e) {
    const Colour c = colour_[e];
    slot(g_.edge(e).u, c) = kNoEdge;
    slot(g_.edge(e).v, c) = kNoEdge;
    colour_[e] = kNoColour;
  }

  std::vector<Colour> missing_colours(Vertex v) {
    std::vector<Colour> out;
    for (Colour c = 1; c <= k_; ++c) {
      if (missing(v, c)) out.push_back(c);
    }
    return out;
  }

  void colour_edge(EdgeId e0) {
    const Vertex x = g_.edge(e0).u;
    const Vertex y0 = g_.edge(e0).v;
    for (Colour c = 1; c <= k_; ++c) {
      if (missing(x, c) && missing(y0, c)) {
        assign(e0, c);
        return;
      }
    }

    std::vector<EdgeId> fan_edges{e0};
    std::vector<Vertex> fan{y0};
    std::vector<char> in_fan(g_.num_vertices(), 0);
    in_fan[y0] = 1;
    for (std::size_t j = 0; j < fan.size(); ++j) {
      // Grow from every fan vertex in turn; later vertices are visited as they are added.
      for (Colour c = 1; c <= k_; ++c) {
        if (!missing(fan[j], c)) continue;
        const EdgeId e = slot(x, c);
        if (e == kNoEdge) continue;
        const Vertex z = other(e, x);
        if (in_fan[z]) continue;
        in_fan[z] = 1;
        fan.push_back(z);
        fan_edges.push_back(e);
      }
    }
    // Growth from j only looks at colours missing at fan[j] at the time; a
    // later vertex cannot change fan[j]'s missing set, so the fan is maximal.

    const auto missing_x = missing_colours(x);
    for (std::size_t l = 0; l < fan.size(); ++l) {
      for (Colour a : missing_x) {
        if (missing(fan[l], a)) {
          shift(fan, fan_edges, l, a);
          return;
        }
      }
    }

    const Colour alpha = missing_x.front();
    for (std::size_t j = 1; j < fan.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        for (Colour beta = 1; beta <= k_; ++beta) {
          if (!missing(fan[i], beta) || !missing(fan[j], beta)) continue;
          auto path = alternating_path(fan[j], alpha, beta);
          if (path_end(fan[j], path) == x) path = alternating_path(fan[i], alpha, beta);
          if (path_end(fan[i], path) == x && path_end(fan[j], path) == x) {
            throw InvariantViolation("edge colouring: both alternating paths end at the fan centre");
          }
          swap_path(path, alpha, beta);
          for (std::size_t l = 0; l < fan.size(); ++l) {
            if (missing(fan[l], alpha)) {
              shift(fan, fan_edges, l, alpha);
              return;
            }
          }
          throw InvariantViolation("edge colouring: path swap freed no fan vertex");
        }
      }
    }
    throw InvariantViolation("edge colouring: maximal fan has no free colour; palette too small");
  }

  // Alternating path starting at `start` with an edge of colour `first`.
  std::vector<EdgeId> alternating_path(Vertex start, Colour first, Colour second) {
    std::vector<EdgeId> path;
    Vertex cur = start;
    Colour want = first;
    for (;;) {
      const EdgeId e = slot(cur, want);
      if (e == kNoEdge) break;
      path.push_back(e);
      cur = other(e, cur);
      want = want == first ? second : first;
      if (path.size() > static_cast<std::size_t>(g_.num_edges())) {
        throw InvariantViolation("edge colouring: alternating walk does not terminate");
      }
    }
    return path;
  }

  Vertex path_end(Vertex start, const std::vector<EdgeId>& path) const {
    Vertex cur = start;
    for (EdgeId e : path) cur = other(e, cur);
    return cur;
  }

  void swap_path(const std::vector<EdgeId>& path, Colour a, Colour b) {
    std::vector<Colour> old;
    old.reserve(path.size());
    for (EdgeId e : path) {
      old.push_back(colour_[e]);
      unassign(e);
    }
    for (std::size_t i = 0; i < path.size(); ++i) assign(path[i], old[i] == a ? b : a);
  }

  // Colours fan edge l with `a` after rotating colours down a chain of fan
  // indices 0 = c_0 < c_1 < ... < c_m = l with colour(e_{c_{t+1}}) missing at y_{c_t}.
  void shift(const std::vector<Vertex>& fan, const std::vector<EdgeId>& fan_edges, std::size_t l, Colour a) {
    std::vector<std::size_t> chain{l};
    while (chain.back() != 0) {
      const std::size_t idx = chain.back();
      const Colour c = colour_[fan_edges[idx]];
      std::size_t pred = idx;
      for (std::size_t p = 0; p < idx; ++p) {
        if (missing(fan[p], c)) {
          pred = p;
          break;
        }
      }
      if (pred == idx) throw InvariantViolation("edge colouring: broken fan chain");
      chain.push_back(pred);
    }
    std::reverse(chain.begin(), chain.end());
    std::vector<Colour> next(chain.size());
    for (std::size_t t = 0; t + 1 < chain.size(); ++t) next[t] = colour_[fan_edges[chain[t + 1]]];
    next.back() = a;
    for (std::size_t t = 1; t < chain.size(); ++t) unassign(fan_edges[chain[t]]);
    for (std::size_t t = 0; t < chain.size(); ++t) assign(fan_edges[chain[t]], next[t]);
  }

  const MultiGraph& g_;
  int k_;
  std::vector<Colour> colour_;
  std::vector<EdgeId> at_;
};

}  // namespace

EdgeColouring vizing_colour(const MultiGraph& g) {
  const int palette = g.max_degree() + std::max(1, g.max_multiplicity());
  return FanColourer(g, palette).run();
}

EdgeColouring vizing_colour(const Graph& g) { return vizing_colour(MultiGraph::from_simple(g)); }

EdgeColouring extend_to_original(const Graph& g, const Contraction& contraction, const EdgeColouring& cprime) {
  const int palette = g.max_degree() + 2;
  if (cprime.max_colour() > palette) {
    throw InvariantViolation("G' colouring uses colour " + std::to_string(cprime.max_colour()) + " > delta+2");
  }
  EdgeColouring c(g.num_edges(), palette);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (contraction.image[e] != kNoEdge) c.set(e, cprime[contraction.image[e]]);
  }
  std::vector<char> used(palette + 1, 0);
  for (EdgeId e : contraction.contracted) {
    const auto [u, v] = g.edge(e);
    std::fill(used.begin(), used.end(), 0);
    for (Vertex x : {u, v}) {
      for (EdgeId f : g.incident(x)) used[c[f]] = 1;
    }
    Colour alpha = kNoColour;
    for (Colour a = 1; a <= palette; ++a) {
      if (!used[a]) {
        alpha = a;
        break;
      }
    }
    if (alpha == kNoColour) {
      throw InvariantViolation("no free colour for contracted edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    c.set(e, alpha);
  }
  return c;
}

bool meets_only_in_edge_colour(const Graph& g, const EdgeColouring& c, EdgeId e) {
  const auto su = colour_set(g, c, g.edge(e).u);
  const auto sv = colour_set(g, c, g.edge(e).v);
  std::vector<Colour> common;
  std::set_intersection(su.begin(), su.end(), sv.begin(), sv.end(), std::back_inserter(common));
  return common.size() == 1 && common.front() == c[e];
}

EdgeColouring recolour_selected(const Graph& g, const std::vector<EdgeId>& selected, const EdgeColouring& base,
                                int q) {
  const int delta = g.max_degree();
  EdgeColouring out = base;
  out.set_palette(delta + q + 6);
  if (selected.empty()) return out;

  std::vector<MultiGraph::MultiEdge> sub;
  sub.reserve(selected.size());
  for (EdgeId e : selected) sub.push_back({g.edge(e).u, g.edge(e).v, e});
  MultiGraph h(g.num_vertices(), std::move(sub));
  if (h.max_multiplicity() > 1) throw InvariantViolation("selected edge listed twice");
  if (h.max_degree() > q + 2) {
    throw InvariantViolation("selected subgraph has degree " + std::to_string(h.max_degree()) + " > q+2");
  }
  const EdgeColouring fresh = vizing_colour(h);
  for (EdgeId i = 0; i < h.num_edges(); ++i) out.set(h.edge(i).origin, delta + 2 + fresh[i]);
  return out;
}

nlohmann::json colouring_to_json(const Graph& g, const EdgeColouring& c) {
  nlohmann::json colours = nlohmann::json::object();
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    colours[std::to_string(g.edge(e).u) + "-" + std::to_string(g.edge(e).v)] = c[e];
  }
  nlohmann::json digest = nlohmann::json::array();
  for (Vertex v = 0; v < g.num_vertices(); ++v) digest.push_back(colour_set(g, c, v));
  return {{"palette", c.palette()}, {"max_colour", c.max_colour()}, {"colours", std::move(colours)},
          {"sets", std::move(digest)}};
}

}  // namespace avd
