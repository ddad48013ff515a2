#pragma once

#include "avd/big_phase.hpp"
#include "avd/small_phase.hpp"

#include <optional>

namespace avd {

struct PipelineConfig {
  Ratio eps{1, 10};
  int q = 13;
  Mode mode = Mode::practical;
  std::uint64_t seed = 1;
  std::int64_t step_cap = 1'000'000;  // per phase
  bool assert_invariants = false;
  /// Sampling rule for the small pass when it should differ from `mode`.
  std::optional<Mode> small_mode;
};

struct PipelineResult {
  DegreeProfile profile;
  Contraction contraction;
  EdgeColouring initial;  // c on G, palette delta + 2
  BigResult big;
  FinalizeResult finalized;
  SmallResult small;
  EdgeColouring final_colouring;
  /// Contracted edges whose endpoints meet only in the edge's colour under c.
  bool property1 = true;
};

/// c on G: colour the contracted graph, then lift back.
EdgeColouring initial_colouring(const Graph& g, const Contraction& contraction);

/// Seeds for the two random passes, derived from one user seed.
std::uint64_t small_phase_seed(std::uint64_t seed);

/// classify -> contract -> edge colour G' -> extend -> select -> finalize ->
/// small pass. Errors carry the name of the stage that raised them.
PipelineResult run_colouring(const Graph& g, const PipelineConfig& cfg);

}  // namespace avd
