#include "avd/pipeline.hpp"

#include <string>

namespace avd {

namespace {

template <class F>
auto stage(const char* name, F f) -> decltype(f()) {
  auto tag = [&](const std::exception& e) { return std::string(name) + ": " + e.what(); };
  try {
    return f();
  } catch (const RegimeError& e) {
    throw RegimeError(tag(e));
  } catch (const InvariantViolation& e) {
    throw InvariantViolation(tag(e));
  } catch (const InputError& e) {
    throw InputError(tag(e));
  }
}

}  // namespace

EdgeColouring initial_colouring(const Graph& g, const Contraction& contraction) {
  return extend_to_original(g, contraction, vizing_colour(contraction.gprime));
}

std::uint64_t small_phase_seed(std::uint64_t seed) { return seed * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL; }

PipelineResult run_colouring(const Graph& g, const PipelineConfig& cfg) {
  PipelineResult res;
  res.profile = stage("classify", [&] { return classify(g, cfg.eps, cfg.mode); });
  res.contraction = stage("contract", [&] { return contract_pendant_pairs(g, res.profile); });
  res.initial = stage("initial colouring", [&] { return initial_colouring(g, res.contraction); });
  for (EdgeId e : res.contraction.contracted) {
    if (!meets_only_in_edge_colour(g, res.initial, e)) res.property1 = false;
  }
  if (!res.property1) throw InvariantViolation("extend: a contracted edge shares a colour with its neighbourhood");

  const BigContext bctx(g, res.profile, res.initial, cfg.q, cfg.mode);
  res.big = stage("big phase", [&] {
    return run_big_phase(bctx, {cfg.q, cfg.mode, cfg.seed, cfg.step_cap, cfg.assert_invariants});
  });
  if (!res.big.completed) {
    throw RegimeError("big phase: step cap " + std::to_string(cfg.step_cap) + " reached");
  }
  res.finalized = stage("finalize", [&] { return finalize_big(bctx, res.big); });

  const SmallContext sctx(g, res.profile, cfg.q, cfg.small_mode.value_or(cfg.mode));
  res.small = stage("small phase", [&] {
    return run_small_phase(sctx, res.finalized.colouring, small_phase_seed(cfg.seed), cfg.step_cap);
  });
  if (!res.small.completed) {
    throw RegimeError("small phase: step cap " + std::to_string(cfg.step_cap) + " reached");
  }
  res.final_colouring = res.small.colouring;
  return res;
}

}  // namespace avd
