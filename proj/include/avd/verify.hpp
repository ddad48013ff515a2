#pragma once

#include <optional>
#include <vector>

#include "avd/colouring.hpp"
#include "avd/graph.hpp"

namespace avd {

struct Offence {
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;
  std::vector<Colour> su;
  std::vector<Colour> sv;
  std::string what;  // "improper" or "indistinct"
};

struct VerificationReport {
  bool proper = true;
  bool avd = true;
  Colour palette_used = 0;
  std::vector<Offence> offending;
};

/// Exact check of properness and adjacent-vertex distinction. Throws
/// InputError on a partial colouring.
VerificationReport verify(const Graph& g, const EdgeColouring& c);
nlohmann::json report_to_json(const VerificationReport& r);

/// Least k admitting an AVD colouring, searched up to max_colours; nullopt if
/// none exists within that bound. Throws on an isolated edge or when the node
/// budget runs out.
std::optional<int> brute_force_avd_index(const Graph& g, int max_colours, std::int64_t node_budget = 50'000'000);

/// Least k admitting a proper edge colouring (exhaustive).
int brute_force_chromatic_index(const Graph& g);

/// All connected graphs on 3..n_max vertices up to isomorphism.
std::vector<Graph> connected_graphs(int n_max);
bool is_cycle(const Graph& g);

struct SweepEntry {
  Graph graph;
  int delta = 0;
  int index = 0;
};

struct SweepReport {
  int n_max = 0;
  std::int64_t graphs = 0;
  std::vector<SweepEntry> exceptions;  // index > delta + 2
  /// Every exception is the 5-cycle.
  bool passed = true;
};

SweepReport conjecture_sweep(int n_max, int workers = 1);
nlohmann::json sweep_to_json(const SweepReport& r);

}  // namespace avd
