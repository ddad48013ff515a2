#pragma once

// Checkers written from the definitions alone, sharing no code with the
// library beyond the graph container.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "avd/big_phase.hpp"
#include "avd/colouring.hpp"
#include "avd/graph.hpp"

namespace oracle {

using namespace avd;

inline std::vector<std::multiset<Colour>> colour_multisets(const Graph& g, const EdgeColouring& c) {
  std::vector<std::multiset<Colour>> at(g.num_vertices());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    at[g.edge(e).u].insert(c[e]);
    at[g.edge(e).v].insert(c[e]);
  }
  return at;
}

inline bool proper(const Graph& g, const EdgeColouring& c) {
  for (const auto& ms : colour_multisets(g, c)) {
    for (Colour col : ms) {
      if (col == kNoColour || ms.count(col) > 1) return false;
    }
  }
  return true;
}

inline bool proper(const MultiGraph& g, const EdgeColouring& c) {
  std::map<std::pair<Vertex, Colour>, int> seen;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (c[e] == kNoColour) return false;
    if (++seen[{g.edge(e).u, c[e]}] > 1 || ++seen[{g.edge(e).v, c[e]}] > 1) return false;
  }
  return true;
}

inline bool avd(const Graph& g, const EdgeColouring& c) {
  if (!proper(g, c)) return false;
  std::vector<std::set<Colour>> sets(g.num_vertices());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    sets[g.edge(e).u].insert(c[e]);
    sets[g.edge(e).v].insert(c[e]);
  }
  for (const auto& ed : g.edges()) {
    if (sets[ed.u] == sets[ed.v]) return false;
  }
  return true;
}

/// S'(v) from the U+ table alone.
inline std::set<Colour> s_prime(const Graph& g, const EdgeColouring& c, const std::vector<Pair>& up, Vertex v) {
  std::set<Colour> out;
  auto nb = g.neighbours(v);
  auto inc = g.incident(v);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    const Vertex w = nb[i];
    const bool sel = contains(up[v], w) || contains(up[w], v);
    if (!sel) out.insert(c[inc[i]]);
  }
  return out;
}

inline bool finished(const Graph& g, const DegreeProfile& p, const std::vector<Pair>& up, Vertex a, Vertex b) {
  if (!p.is_big(a) || !p.is_big(b)) return false;
  for (Vertex end : {a, b}) {
    if (!is_set(up[end])) return false;
    for (Vertex w : g.neighbours(end)) {
      if (p.is_big(w) && !is_set(up[w])) return false;
    }
  }
  return true;
}

inline bool bad(const Graph& g, const DegreeProfile& p, const EdgeColouring& c, const std::vector<Pair>& up,
                Vertex a, Vertex b) {
  return finished(g, p, up, a, b) && g.degree(a) == g.degree(b) &&
         s_prime(g, c, up, a) == s_prime(g, c, up, b);
}

/// Admissible pairs for u straight from the three conditions.
inline std::vector<Pair> admissible(const BigContext& ctx, std::vector<Pair> up, Vertex u) {
  const Graph& g = *ctx.g;
  std::vector<Vertex> um;
  for (Vertex w = 0; w < g.num_vertices(); ++w) {
    if (contains(up[w], u)) um.push_back(w);
  }
  const auto& np = ctx.nplus[u];
  std::vector<Pair> out;
  for (std::size_t i = 0; i < np.size(); ++i) {
    for (std::size_t j = i + 1; j < np.size(); ++j) {
      const Vertex a = np[i], b = np[j];
      if (std::count(um.begin(), um.end(), a) || std::count(um.begin(), um.end(), b)) continue;
      if (auto e = g.find_edge(a, b)) {
        const Vertex x = a, y = b;
        const bool same = g.degree(x) == g.degree(y) && g.degree(x) <= ctx.q + 3;
        bool others_big = true;
        for (Vertex end : {x, y}) {
          for (Vertex w : g.neighbours(end)) {
            if (w != x && w != y && !ctx.profile->is_big(w)) others_big = false;
          }
        }
        if (same && others_big) continue;
      }
      up[u] = make_pair_sorted(a, b);
      bool creates = false;
      for (Vertex x : g.neighbours(u)) {
        if (bad(g, *ctx.profile, *ctx.c, up, u, x)) creates = true;
      }
      up[u] = kNoPair;
      if (!creates) out.push_back(make_pair_sorted(a, b));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
