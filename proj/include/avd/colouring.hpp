#pragma once

#include <vector>

#include "avd/graph.hpp"

namespace avd {

/// Edge -> optional colour in [1, palette]. Indexed by the edge ids of
/// whichever graph (simple or multi) it was built for.
class EdgeColouring {
 public:
  EdgeColouring() = default;
  EdgeColouring(int num_edges, int palette) : colour_(num_edges, kNoColour), palette_(palette) {}

  int num_edges() const { return static_cast<int>(colour_.size()); }
  int palette() const { return palette_; }
  void set_palette(int palette) { palette_ = palette; }

  Colour operator[](EdgeId e) const { return colour_[e]; }
  bool coloured(EdgeId e) const { return colour_[e] != kNoColour; }
  void set(EdgeId e, Colour c) { colour_[e] = c; }
  void clear(EdgeId e) { colour_[e] = kNoColour; }

  bool is_total() const;
  Colour max_colour() const;
  const std::vector<Colour>& raw() const { return colour_; }

  friend bool operator==(const EdgeColouring&, const EdgeColouring&) = default;

 private:
  std::vector<Colour> colour_;
  int palette_ = 0;
};

/// S_c(v): colours on coloured edges at v, ascending.
std::vector<Colour> colour_set(const Graph& g, const EdgeColouring& c, Vertex v);
/// No two coloured edges at any vertex share a colour.
bool is_proper(const Graph& g, const EdgeColouring& c);
bool is_proper(const MultiGraph& g, const EdgeColouring& c);

/// Total proper colouring of a multigraph with at most max_degree + max_multiplicity
/// colours, by the fan / alternating-path method. Always succeeds.
EdgeColouring vizing_colour(const MultiGraph& g);
EdgeColouring vizing_colour(const Graph& g);

/// Lifts a colouring of G' back to G: surviving edges keep their colour and
/// each contracted edge uv takes the smallest colour absent at u and v. The
/// palette is delta(G) + 2.
EdgeColouring extend_to_original(const Graph& g, const Contraction& contraction, const EdgeColouring& cprime);

/// S(u) and S(v) meet exactly in {c(uv)}.
bool meets_only_in_edge_colour(const Graph& g, const EdgeColouring& c, EdgeId e);

/// Recolours the selected edges with fresh colours delta+3, delta+4, ...
/// (at most q+3 of them) and leaves every other edge untouched. The result
/// carries palette delta + q + 6.
EdgeColouring recolour_selected(const Graph& g, const std::vector<EdgeId>& selected, const EdgeColouring& base,
                                int q);

nlohmann::json colouring_to_json(const Graph& g, const EdgeColouring& c);

}  // namespace avd
