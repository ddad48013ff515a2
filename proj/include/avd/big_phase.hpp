#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "avd/colouring.hpp"
#include "avd/graph.hpp"

namespace avd {

/// Unordered pair stored ascending; {kNoVertex, kNoVertex} means "not set".
using Pair = std::array<Vertex, 2>;
inline constexpr Pair kNoPair{kNoVertex, kNoVertex};
inline Pair make_pair_sorted(Vertex a, Vertex b) { return a < b ? Pair{a, b} : Pair{b, a}; }
inline bool is_set(const Pair& p) { return p[0] != kNoVertex; }
inline bool contains(const Pair& p, Vertex v) { return v != kNoVertex && (p[0] == v || p[1] == v); }

/// s = C(d-q, 2) - 3d, the theory-mode sample size (may be <= 0).
std::int64_t big_sample_size(int d, int q);

/// Everything the selection algorithm treats as fixed: graph, degree split,
/// the initial colouring c, fragile edges and the N+(u) subsets.
struct BigContext {
  BigContext(const Graph& graph, const DegreeProfile& profile, const EdgeColouring& colouring, int q, Mode mode);

  const Graph* g;
  const DegreeProfile* profile;
  const EdgeColouring* c;
  int q;
  Mode mode;
  int d;
  std::int64_t s;
  FragileSet fragile;
  std::vector<std::vector<Vertex>> nplus;  // d smallest neighbours of each big vertex
  std::vector<std::uint64_t> key;          // per-colour hash keys for S'

  bool theory_regime() const { return s > 0; }
  int nplus_rank(Vertex u, Vertex v) const;
};

struct BadEvent {
  int type = 0;
  /// Type 1: (v). Type 2: (v, w, x). Type 3: (v, w, x). Type 4: (v, w, x, y).
  /// Type 5: (v, w, x, y, z).
  std::vector<Vertex> witness;
  /// Always contains the treated vertex u.
  std::vector<Vertex> resets;

  friend bool operator==(const BadEvent&, const BadEvent&) = default;
};

struct BigStep {
  Vertex u = kNoVertex;
  std::int64_t r = 0;        // 0-based position of the chosen pair
  std::int64_t choices = 0;  // size of the range r was drawn from
  Pair pair = kNoPair;
  std::optional<BadEvent> event;

  friend bool operator==(const BigStep&, const BigStep&) = default;
};

struct InvariantReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// State of the selection loop. Everything except U+ is derived and kept in
/// sync incrementally, so the raw mutators below leave a consistent object.
class BigEngine {
 public:
  explicit BigEngine(const BigContext& ctx);

  const BigContext& context() const { return *ctx_; }
  const std::vector<Pair>& uplus() const { return uplus_; }
  const Pair& uplus(Vertex u) const { return uplus_[u]; }
  const std::vector<Vertex>& uminus(Vertex v) const { return uminus_[v]; }
  bool selected(EdgeId e) const { return selected_[e] != 0; }
  bool done() const { return pending_.empty(); }
  /// First big vertex with U+ unset.
  Vertex current() const { return *pending_.begin(); }
  const std::set<Vertex>& pending() const { return pending_; }

  /// S'(v) ascending.
  std::vector<Colour> s_prime(Vertex v) const;
  bool finished(EdgeId e) const;
  bool bad(EdgeId e) const { return bad_[e] != 0; }
  /// Recomputes badness of e from scratch (no cached flags).
  bool bad_from_scratch(EdgeId e) const;
  const std::set<EdgeId>& bad_edges() const { return bad_set_; }
  const std::vector<Vertex>& bad_partners(Vertex v) const { return bad_nbrs_[v]; }

  /// Admissible pairs for u (requires U+(u) unset), lexicographic.
  std::vector<Pair> admissible_pairs(Vertex u) const;
  /// How many pairs r is drawn from given the admissible count.
  std::int64_t sample_range(std::int64_t admissible) const;

  /// The first bad event triggered by the assignment just made for u.
  std::optional<BadEvent> detect(Vertex u) const;
  void apply(const BadEvent& ev);

  /// One loop iteration with random choice r in [0, sample_range).
  BigStep step(std::int64_t r);

  InvariantReport check_invariants() const;

  // Raw mutators. set_pair overwrites; clear unsets.
  void set_pair(Vertex u, Pair p);
  void clear(Vertex u);
  void load(const std::vector<Pair>& uplus);

 private:
  void select_edge(Vertex a, Vertex b, bool on);
  void refresh_around(Vertex z);
  void refresh_edge(EdgeId e);
  bool same_sprime(Vertex a, Vertex b) const;

  const BigContext* ctx_;
  std::vector<Pair> uplus_;
  std::vector<std::vector<Vertex>> uminus_;
  std::vector<char> selected_;
  std::vector<std::uint64_t> hash_;
  std::vector<int> sp_size_;
  std::vector<int> unset_big_nbrs_;
  std::set<Vertex> pending_;
  std::vector<char> bad_;
  std::set<EdgeId> bad_set_;
  std::vector<std::vector<Vertex>> bad_nbrs_;
  std::vector<int> stamp_;
  int stamp_clock_ = 0;
};

struct BigParams {
  int q = 13;
  Mode mode = Mode::practical;
  std::uint64_t seed = 1;
  std::int64_t step_cap = 1'000'000;
  bool assert_invariants = false;
};

struct BigResult {
  std::vector<Pair> uplus;
  std::vector<BigStep> steps;
  bool completed = false;
  bool theory_regime = false;
  std::int64_t invariant_checks = 0;
  std::vector<EdgeId> bad_edges;
};

/// Algorithm loop. Throws InvariantViolation if --assert finds a broken
/// invariant; stops early (completed = false) at step_cap.
BigResult run_big_phase(const BigContext& ctx, const BigParams& params);

/// Replays a list of random choices; used by the codec.
BigResult replay_big_phase(const BigContext& ctx, const std::vector<std::int64_t>& choices, bool assert_invariants);

/// Selected edges of a final state, ascending.
std::vector<EdgeId> selected_edges(const Graph& g, const std::vector<Pair>& uplus);

/// Recolours selected edges with fresh colours and marks one edge per bad
/// edge with colour delta + q + 6.
struct FinalizeResult {
  EdgeColouring colouring;
  std::vector<EdgeId> marked;
};
FinalizeResult finalize_big(const BigContext& ctx, const BigResult& result);

nlohmann::json big_step_to_json(const BigStep& step);

}  // namespace avd
