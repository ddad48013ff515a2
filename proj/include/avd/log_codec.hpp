#pragma once

#include <vector>

#include "avd/big_phase.hpp"
#include "avd/combinatorics.hpp"
#include "avd/small_phase.hpp"

namespace avd {

/// Binary word with at least as many 0s as 1s in every prefix.
struct PartialDyckWord {
  std::vector<bool> bits;

  std::int64_t zeros() const;
  std::int64_t ones() const;
  std::int64_t semilength() const { return zeros(); }
  bool valid() const;
  /// Lengths of the 1-runs following each 0, one entry per 0 (0 if none).
  /// Throws InputError if the word does not start with a 0 or breaks the
  /// prefix condition.
  std::vector<int> runs_after_zeros() const;
  /// Maximal runs of 1s in order.
  std::vector<int> descents() const;

  void push_step(int ones);
  std::string str() const;

  friend bool operator==(const PartialDyckWord&, const PartialDyckWord&) = default;
};

/// #0 - #1; throws if the prefix property fails.
std::int64_t defect(const PartialDyckWord& w);
/// Appends defect(w) copies of 011.
PartialDyckWord pad_to_dyck(const PartialDyckWord& w);
bool is_dyck(const PartialDyckWord& w);

/// Descent length for a big-phase event type (q + 1 for type 1).
int descent_length(int type, int q);

/// Exclusive upper bounds of gamma and delta for each big-phase event type.
struct Budget {
  BigInt gamma;
  BigInt delta;
};
Budget big_budget(int type, int delta_max, int d, int q);

struct BigLog {
  PartialDyckWord w;
  std::vector<BigInt> gamma;  // -1 when no event
  std::vector<BigInt> delta;
  std::vector<Pair> final_uplus;

  friend bool operator==(const BigLog&, const BigLog&) = default;
};

struct SmallLog {
  PartialDyckWord w;
  std::vector<std::int64_t> gamma;  // -1 or in [2d]
  std::vector<std::int64_t> delta;  // -1 or in [2]
  EdgeColouring final_colouring;

  friend bool operator==(const SmallLog&, const SmallLog&) = default;
};

/// Encodes the first steps of a run. `run` may be truncated (step cap).
BigLog encode_big(const BigContext& ctx, const BigResult& run);

struct DecodeOptions {
  /// Check the selection invariants on every reconstructed state.
  bool check_invariants = true;
};

/// Recovers the random choices r_1..r_t. Throws DecodeMismatch if the log is
/// inconsistent, including when replaying the recovered choices does not
/// reproduce the log bit for bit.
std::vector<std::int64_t> decode_big(const BigContext& ctx, const BigLog& log, DecodeOptions opt = {});

/// Types of the events in the log, read off W.
std::vector<int> big_event_types(const BigLog& log, int q);

SmallLog encode_small(const SmallContext& ctx, const EdgeColouring& c2, const SmallResult& run);
std::vector<std::int64_t> decode_small(const SmallContext& ctx, const SmallLog& log);

nlohmann::json big_log_to_json(const BigLog& log);
BigLog big_log_from_json(const nlohmann::json& j);
nlohmann::json small_log_to_json(const SmallLog& log);
SmallLog small_log_from_json(const nlohmann::json& j);

}  // namespace avd
