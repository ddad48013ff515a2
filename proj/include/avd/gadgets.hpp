#pragma once

#include <string>
#include <vector>

#include "avd/colouring.hpp"
#include "avd/graph.hpp"

namespace avd {

/// A small graph plus parameters under which the selection loop or the small
/// pass hits bad events often. `colouring` is the initial colouring c handed
/// to the selection loop.
struct Gadget {
  std::string name;
  Graph graph;
  Ratio eps;
  int q = 5;
  EdgeColouring colouring;
};

/// K_{k,k} coloured c(i, j) = ((i + j) mod k) + 1: every vertex sees the full
/// palette, so equal residual sets (bad edges) are common. Types 1, 3, 4, 5.
Gadget latin_gadget(int k = 12);

/// Complete bipartite core with low-index fragile pairs hanging off it, so
/// core vertices often pick one side of a fragile edge. Type 2.
Gadget fragile_gadget(std::uint64_t seed = 1);

/// A 4-regular circulant of small vertices next to a clique that sets the
/// maximum degree; with the short sampling prefix of theory mode the small
/// pass often hits dangerous colours.
Gadget small_gadget(int cycle = 60, int clique = 21);

}  // namespace avd
