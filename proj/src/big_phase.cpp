#include "avd/big_phase.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace avd {

namespace {

void insert_sorted(std::vector<Vertex>& v, Vertex x) { v.insert(std::lower_bound(v.begin(), v.end(), x), x); }

void erase_sorted(std::vector<Vertex>& v, Vertex x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) throw InvariantViolation("U- bookkeeping lost vertex " + std::to_string(x));
  v.erase(it);
}

bool has(const std::vector<Vertex>& sorted, Vertex x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

std::string pair_str(const Pair& p) { return "{" + std::to_string(p[0]) + "," + std::to_string(p[1]) + "}"; }

}  // namespace

std::int64_t big_sample_size(int d, int q) {
  const std::int64_t m = d - q;
  const std::int64_t pairs = m >= 2 ? m * (m - 1) / 2 : 0;
  return pairs - 3LL * d;
}

BigContext::BigContext(const Graph& graph, const DegreeProfile& prof, const EdgeColouring& colouring, int q_,
                       Mode mode_)
    : g(&graph), profile(&prof), c(&colouring), q(q_), mode(mode_), d(prof.d), s(big_sample_size(prof.d, q_)),
      fragile(fragile_edges(graph, prof, q_)), nplus(graph.num_vertices()) {
  if (q < 1) throw InputError("q must be at least 1");
  if (colouring.num_edges() != graph.num_edges() || !colouring.is_total()) {
    throw InputError("big phase needs a total colouring of the graph");
  }
  for (Vertex u : prof.big_vertices) {
    auto nb = graph.neighbours(u);
    nplus[u].assign(nb.begin(), nb.begin() + std::min<std::ptrdiff_t>(d, nb.size()));
  }
  // Fixed seed: the keys only speed up set comparison, they never decide it.
  std::mt19937_64 rng(0x5eedc0105ULL);
  key.resize(std::max(colouring.palette(), colouring.max_colour()) + 1);
  for (auto& k : key) k = rng();
}

int BigContext::nplus_rank(Vertex u, Vertex v) const {
  const auto& np = nplus[u];
  auto it = std::lower_bound(np.begin(), np.end(), v);
  if (it == np.end() || *it != v) return -1;
  return static_cast<int>(it - np.begin());
}

BigEngine::BigEngine(const BigContext& ctx)
    : ctx_(&ctx),
      uplus_(ctx.g->num_vertices(), kNoPair),
      uminus_(ctx.g->num_vertices()),
      selected_(ctx.g->num_edges(), 0),
      hash_(ctx.g->num_vertices(), 0),
      sp_size_(ctx.g->num_vertices(), 0),
      unset_big_nbrs_(ctx.g->num_vertices(), 0),
      bad_(ctx.g->num_edges(), 0),
      bad_nbrs_(ctx.g->num_vertices()),
      stamp_(ctx.g->num_edges(), 0) {
  const Graph& g = *ctx.g;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    for (EdgeId e : g.incident(v)) hash_[v] ^= ctx.key[(*ctx.c)[e]];
    sp_size_[v] = g.degree(v);
    for (Vertex x : g.neighbours(v)) {
      if (ctx.profile->is_big(x)) ++unset_big_nbrs_[v];
    }
  }
  pending_.insert(ctx.profile->big_vertices.begin(), ctx.profile->big_vertices.end());
}

std::vector<Colour> BigEngine::s_prime(Vertex v) const {
  std::vector<Colour> out;
  for (EdgeId e : ctx_->g->incident(v)) {
    if (!selected_[e]) out.push_back((*ctx_->c)[e]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool BigEngine::same_sprime(Vertex a, Vertex b) const {
  if (sp_size_[a] != sp_size_[b] || hash_[a] != hash_[b]) return false;
  return s_prime(a) == s_prime(b);
}

bool BigEngine::finished(EdgeId e) const {
  const auto [a, b] = ctx_->g->edge(e);
  const auto& p = *ctx_->profile;
  return p.is_big(a) && p.is_big(b) && is_set(uplus_[a]) && is_set(uplus_[b]) && unset_big_nbrs_[a] == 0 &&
         unset_big_nbrs_[b] == 0;
}

bool BigEngine::bad_from_scratch(EdgeId e) const {
  const Graph& g = *ctx_->g;
  const auto& p = *ctx_->profile;
  const auto [a, b] = g.edge(e);
  if (!p.is_big(a) || !p.is_big(b) || g.degree(a) != g.degree(b)) return false;
  for (Vertex end : {a, b}) {
    if (!is_set(uplus_[end])) return false;
    for (Vertex x : g.neighbours(end)) {
      if (p.is_big(x) && !is_set(uplus_[x])) return false;
    }
  }
  auto sp = [&](Vertex v) {
    std::vector<Colour> out;
    auto nb = g.neighbours(v);
    auto inc = g.incident(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (contains(uplus_[v], nb[i]) || contains(uplus_[nb[i]], v)) continue;
      out.push_back((*ctx_->c)[inc[i]]);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return sp(a) == sp(b);
}

void BigEngine::refresh_edge(EdgeId e) {
  const auto [a, b] = ctx_->g->edge(e);
  const bool now = ctx_->g->degree(a) == ctx_->g->degree(b) && finished(e) && same_sprime(a, b);
  if (now == (bad_[e] != 0)) return;
  bad_[e] = now;
  if (now) {
    bad_set_.insert(e);
    insert_sorted(bad_nbrs_[a], b);
    insert_sorted(bad_nbrs_[b], a);
  } else {
    bad_set_.erase(e);
    erase_sorted(bad_nbrs_[a], b);
    erase_sorted(bad_nbrs_[b], a);
  }
}

// Setting or clearing U+(z) changes S' only inside N[z] and the finished
// status only of edges touching N[z].
void BigEngine::refresh_around(Vertex z) {
  const Graph& g = *ctx_->g;
  ++stamp_clock_;
  auto touch = [&](Vertex y) {
    for (EdgeId e : g.incident(y)) {
      if (stamp_[e] == stamp_clock_) continue;
      stamp_[e] = stamp_clock_;
      refresh_edge(e);
    }
  };
  touch(z);
  for (Vertex y : g.neighbours(z)) touch(y);
}

void BigEngine::select_edge(Vertex a, Vertex b, bool on) {
  const auto e = ctx_->g->find_edge(a, b);
  if (!e) throw InvariantViolation("selected pair member " + std::to_string(b) + " is not adjacent to " + std::to_string(a));
  if ((selected_[*e] != 0) == on) {
    throw InvariantViolation("edge " + std::to_string(a) + "-" + std::to_string(b) +
                             (on ? " selected twice" : " was not selected"));
  }
  selected_[*e] = on;
  const std::uint64_t k = ctx_->key[(*ctx_->c)[*e]];
  hash_[a] ^= k;
  hash_[b] ^= k;
  const int delta = on ? -1 : 1;
  sp_size_[a] += delta;
  sp_size_[b] += delta;
}

void BigEngine::set_pair(Vertex u, Pair p) {
  if (!ctx_->profile->is_big(u)) throw InvariantViolation("U+ assigned to small vertex " + std::to_string(u));
  if (p[0] == p[1] || p[0] == u || p[1] == u || p[0] == kNoVertex) {
    throw InvariantViolation("malformed pair " + pair_str(p) + " for " + std::to_string(u));
  }
  p = make_pair_sorted(p[0], p[1]);
  clear(u);
  for (Vertex v : p) select_edge(u, v, true);
  uplus_[u] = p;
  for (Vertex v : p) insert_sorted(uminus_[v], u);
  pending_.erase(u);
  for (Vertex x : ctx_->g->neighbours(u)) --unset_big_nbrs_[x];
  refresh_around(u);
}

void BigEngine::clear(Vertex u) {
  if (!is_set(uplus_[u])) return;
  const Pair p = uplus_[u];
  uplus_[u] = kNoPair;
  for (Vertex v : p) {
    select_edge(u, v, false);
    erase_sorted(uminus_[v], u);
  }
  pending_.insert(u);
  for (Vertex x : ctx_->g->neighbours(u)) ++unset_big_nbrs_[x];
  refresh_around(u);
}

void BigEngine::load(const std::vector<Pair>& uplus) {
  if (uplus.size() != uplus_.size()) throw InputError("snapshot has wrong vertex count");
  for (Vertex u = 0; u < static_cast<Vertex>(uplus_.size()); ++u) clear(u);
  for (Vertex u = 0; u < static_cast<Vertex>(uplus.size()); ++u) {
    if (is_set(uplus[u])) set_pair(u, uplus[u]);
  }
}

std::vector<Pair> BigEngine::admissible_pairs(Vertex u) const {
  const Graph& g = *ctx_->g;
  const auto& prof = *ctx_->profile;
  if (is_set(uplus_[u])) throw InvariantViolation("admissible pairs requested for set vertex " + std::to_string(u));

  std::vector<Vertex> cand;
  for (Vertex v : ctx_->nplus[u]) {
    if (!has(uminus_[u], v)) cand.push_back(v);
  }

  // A bad edge ux can only appear if ux becomes finished, i.e. u is the last
  // unset big vertex around x and nothing around u is unset. For each such x
  // at most one pair is forbidden.
  std::vector<Pair> forbidden;
  if (unset_big_nbrs_[u] == 0) {
    const auto su = s_prime(u);
    auto nb = g.neighbours(u);
    auto inc = g.incident(u);
    auto by_colour = [&](Colour col) {
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if ((*ctx_->c)[inc[i]] == col) return nb[i];
      }
      return kNoVertex;
    };
    for (Vertex x : nb) {
      if (!prof.is_big(x) || g.degree(x) != g.degree(u) || unset_big_nbrs_[x] != 1) continue;
      const auto sx = s_prime(x);
      if (!std::includes(su.begin(), su.end(), sx.begin(), sx.end())) continue;
      std::vector<Colour> diff;
      std::set_difference(su.begin(), su.end(), sx.begin(), sx.end(), std::back_inserter(diff));
      if (diff.size() == 2) {
        const Vertex a = by_colour(diff[0]);
        const Vertex b = by_colour(diff[1]);
        if (a != x && b != x && has(cand, a) && has(cand, b)) forbidden.push_back(make_pair_sorted(a, b));
      } else if (diff.size() == 1) {
        const Vertex w = by_colour(diff[0]);
        if (w != x && has(cand, x) && has(cand, w)) forbidden.push_back(make_pair_sorted(x, w));
      }
    }
    std::sort(forbidden.begin(), forbidden.end());
  }

  std::vector<Pair> out;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    for (std::size_t j = i + 1; j < cand.size(); ++j) {
      const Pair p{cand[i], cand[j]};
      if (auto e = g.find_edge(p[0], p[1]); e && ctx_->fragile.is_fragile[*e]) continue;
      if (std::binary_search(forbidden.begin(), forbidden.end(), p)) continue;
      out.push_back(p);
    }
  }
  return out;
}

std::int64_t BigEngine::sample_range(std::int64_t admissible) const {
  if (ctx_->mode == Mode::theory) {
    if (ctx_->s <= 0) throw RegimeError("s = C(d-q,2) - 3d = " + std::to_string(ctx_->s) + " is not positive");
    if (admissible < ctx_->s) {
      throw InvariantViolation("only " + std::to_string(admissible) + " admissible pairs, fewer than s = " +
                               std::to_string(ctx_->s));
    }
    return ctx_->s;
  }
  if (admissible == 0) throw RegimeError("no admissible pair for vertex " + std::to_string(current()));
  return admissible;
}

std::optional<BadEvent> BigEngine::detect(Vertex u) const {
  const Graph& g = *ctx_->g;
  const int q = ctx_->q;
  const Pair& mine = uplus_[u];

  for (Vertex v : g.neighbours(u)) {
    if (static_cast<int>(uminus_[v].size()) == q + 1) return BadEvent{1, {v}, uminus_[v]};
  }

  {
    std::optional<std::array<Vertex, 3>> best;
    for (Vertex v : mine) {
      auto nb = g.neighbours(v);
      auto inc = g.incident(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (!ctx_->fragile.is_fragile[inc[i]]) continue;
        const Vertex w = nb[i];
        for (Vertex x : uminus_[w]) {
          if (x == u || x == v || x == w) continue;
          const std::array<Vertex, 3> t{v, w, x};
          if (!best || t < *best) best = t;
        }
      }
    }
    if (best) return BadEvent{2, {(*best)[0], (*best)[1], (*best)[2]}, {u, (*best)[2]}};
  }

  auto near = [&](Vertex a) { return g.adjacent(u, a); };

  {
    std::optional<std::array<Vertex, 3>> best;
    for (EdgeId e : bad_set_) {
      for (Vertex w : {g.edge(e).u, g.edge(e).v}) {
        const auto& bn = bad_nbrs_[w];
        if (bn.size() < 2) continue;
        for (Vertex v : bn) {
          if (!near(v) && !near(w)) continue;
          for (Vertex x : bn) {
            if (x == v) continue;
            const std::array<Vertex, 3> t{v, w, x};
            if (!best || t < *best) best = t;
          }
        }
      }
    }
    if (best) {
      const auto [v, w, x] = *best;
      return BadEvent{3, {v, w, x}, {u, v, x}};
    }
  }

  {
    std::optional<std::array<Vertex, 4>> best;
    for (EdgeId e : bad_set_) {
      for (int side = 0; side < 2; ++side) {
        const Vertex v = side == 0 ? g.edge(e).u : g.edge(e).v;
        const Vertex w = g.edge(e).other(v);
        if (!is_set(uplus_[w])) continue;
        for (Vertex x : uplus_[w]) {
          if (x == v) continue;
          for (Vertex y : bad_nbrs_[x]) {
            if (y == v || y == w) continue;
            if (!near(v) && !near(w) && !near(x) && !near(y)) continue;
            const std::array<Vertex, 4> t{v, w, x, y};
            if (!best || t < *best) best = t;
          }
        }
      }
    }
    if (best) {
      const auto [v, w, x, y] = *best;
      return BadEvent{4, {v, w, x, y}, {u, v, w, y}};
    }
  }

  {
    std::optional<std::array<Vertex, 5>> best;
    for (EdgeId e : bad_set_) {
      for (int side = 0; side < 2; ++side) {
        const Vertex v = side == 0 ? g.edge(e).u : g.edge(e).v;
        const Vertex w = g.edge(e).other(v);
        if (!near(v) && !near(w)) continue;
        if (!is_set(uplus_[w])) continue;
        for (Vertex z : uplus_[w]) {
          if (z == v) continue;
          for (Vertex x : uminus_[z]) {
            if (x == v || x == w) continue;
            for (Vertex y : bad_nbrs_[x]) {
              if (y == v || y == w || y == z) continue;
              const std::array<Vertex, 5> t{v, w, x, y, z};
              if (!best || t < *best) best = t;
            }
          }
        }
      }
    }
    if (best) {
      const auto [v, w, x, y, z] = *best;
      return BadEvent{5, {v, w, x, y, z}, {u, v, w, x, y}};
    }
  }
  return std::nullopt;
}

void BigEngine::apply(const BadEvent& ev) {
  for (Vertex a : ev.resets) clear(a);
}

namespace {

template <class Chooser>
BigStep do_step(BigEngine& eng, Chooser choose) {
  BigStep st;
  st.u = eng.current();
  const auto adm = eng.admissible_pairs(st.u);
  st.choices = eng.sample_range(static_cast<std::int64_t>(adm.size()));
  st.r = choose(st.choices);
  if (st.r < 0 || st.r >= st.choices) {
    throw InputError("random choice " + std::to_string(st.r) + " outside [0," + std::to_string(st.choices) + ")");
  }
  st.pair = adm[st.r];
  eng.set_pair(st.u, st.pair);
  st.event = eng.detect(st.u);
  if (st.event) eng.apply(*st.event);
  return st;
}

}  // namespace

BigStep BigEngine::step(std::int64_t r) {
  return do_step(*this, [r](std::int64_t) { return r; });
}

InvariantReport BigEngine::check_invariants() const {
  InvariantReport rep;
  const Graph& g = *ctx_->g;
  const auto& prof = *ctx_->profile;
  const int n = g.num_vertices();
  auto fail = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };

  std::vector<std::vector<Vertex>> um(n);
  for (Vertex u = 0; u < n; ++u) {
    if (!is_set(uplus_[u])) continue;
    for (Vertex v : uplus_[u]) {
      um[v].push_back(u);
      if (contains(uplus_[v], u)) fail("edge " + std::to_string(u) + "-" + std::to_string(v) + " selected twice");
      if (!has(ctx_->nplus[u], v)) fail("U+(" + std::to_string(u) + ") leaves N+");
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (um[v] != uminus_[v]) fail("cached U-(" + std::to_string(v) + ") out of sync");
    if (static_cast<int>(um[v].size()) > ctx_->q) {
      fail("|U-(" + std::to_string(v) + ")| = " + std::to_string(um[v].size()) + " > q");
    }
  }
  for (EdgeId e : ctx_->fragile.edges) {
    const auto [a, b] = g.edge(e);
    if (!um[a].empty() && !um[b].empty()) {
      fail("fragile edge " + std::to_string(a) + "-" + std::to_string(b) + " selected on both sides");
    }
  }

  std::vector<EdgeId> bad_list;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const bool fresh = bad_from_scratch(e);
    if (fresh != bad(e)) fail("cached bad flag of edge " + std::to_string(e) + " out of sync");
    if (fresh) bad_list.push_back(e);
  }
  std::vector<int> owner(n, -1);
  for (EdgeId e : bad_list) {
    for (Vertex end : {g.edge(e).u, g.edge(e).v}) {
      if (owner[end] != -1) fail("bad edges meet at " + std::to_string(end));
      owner[end] = e;
    }
  }
  std::vector<int> ball(n, -1);
  for (EdgeId e : bad_list) {
    for (Vertex end : {g.edge(e).u, g.edge(e).v}) {
      std::vector<Vertex> members{end};
      if (is_set(uplus_[end])) members.insert(members.end(), uplus_[end].begin(), uplus_[end].end());
      for (Vertex z : members) {
        if (ball[z] != -1 && ball[z] != e) {
          fail("neighbourhoods of distinct bad edges overlap at " + std::to_string(z));
        }
        ball[z] = e;
      }
    }
  }

  if (ctx_->mode == Mode::theory) {
    for (Vertex u : prof.big_vertices) {
      if (is_set(uplus_[u])) continue;
      const auto cnt = static_cast<std::int64_t>(admissible_pairs(u).size());
      if (cnt < ctx_->s) fail("vertex " + std::to_string(u) + " has " + std::to_string(cnt) + " < s admissible pairs");
    }
  }
  return rep;
}

namespace {

template <class Chooser>
BigResult run_loop(const BigContext& ctx, std::int64_t step_cap, bool assert_invariants, Chooser choose) {
  BigEngine eng(ctx);
  BigResult res;
  res.theory_regime = ctx.theory_regime();
  auto check = [&] {
    if (!assert_invariants) return;
    ++res.invariant_checks;
    const auto rep = eng.check_invariants();
    if (!rep.ok()) {
      throw InvariantViolation("selection invariant broken after " + std::to_string(res.steps.size()) +
                               " steps: " + rep.violations.front());
    }
  };
  check();
  while (!eng.done()) {
    if (static_cast<std::int64_t>(res.steps.size()) >= step_cap) break;
    res.steps.push_back(do_step(eng, [&](std::int64_t range) { return choose(res.steps.size(), range); }));
    check();
  }
  res.completed = eng.done();
  res.uplus = eng.uplus();
  res.bad_edges.assign(eng.bad_edges().begin(), eng.bad_edges().end());
  return res;
}

}  // namespace

BigResult run_big_phase(const BigContext& ctx, const BigParams& params) {
  if (ctx.mode == Mode::theory && ctx.s <= 0) {
    throw RegimeError("theory mode needs s = C(d-q,2) - 3d > 0, got " + std::to_string(ctx.s) +
                      " (d = " + std::to_string(ctx.d) + ", q = " + std::to_string(ctx.q) + ")");
  }
  std::mt19937_64 rng(params.seed);
  return run_loop(ctx, params.step_cap, params.assert_invariants,
                  [&](std::size_t, std::int64_t range) { return uniform_below(rng, range); });
}

BigResult replay_big_phase(const BigContext& ctx, const std::vector<std::int64_t>& choices, bool assert_invariants) {
  return run_loop(ctx, static_cast<std::int64_t>(choices.size()), assert_invariants,
                  [&](std::size_t i, std::int64_t) { return choices[i]; });
}

std::vector<EdgeId> selected_edges(const Graph& g, const std::vector<Pair>& uplus) {
  std::vector<EdgeId> out;
  for (Vertex u = 0; u < static_cast<Vertex>(uplus.size()); ++u) {
    if (!is_set(uplus[u])) continue;
    for (Vertex v : uplus[u]) out.push_back(*g.find_edge(u, v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

FinalizeResult finalize_big(const BigContext& ctx, const BigResult& result) {
  const Graph& g = *ctx.g;
  if (!result.completed) throw InvariantViolation("finalize_big called before the selection loop finished");
  FinalizeResult out{recolour_selected(g, selected_edges(g, result.uplus), *ctx.c, ctx.q), {}};
  const Colour mark_colour = g.max_degree() + ctx.q + 6;
  std::vector<char> used(g.num_vertices(), 0);
  for (EdgeId e : result.bad_edges) {
    const Vertex u = g.edge(e).u;
    const Vertex v = g.edge(e).v;
    const Pair& p = result.uplus[u];
    const Vertex w = p[0] != v ? p[0] : p[1];
    const EdgeId m = *g.find_edge(u, w);
    if (used[u] || used[w]) throw InvariantViolation("marked edges do not form a matching");
    used[u] = used[w] = 1;
    out.marked.push_back(m);
    out.colouring.set(m, mark_colour);
  }
  std::sort(out.marked.begin(), out.marked.end());
  return out;
}

nlohmann::json big_step_to_json(const BigStep& step) {
  nlohmann::json j{{"u", step.u}, {"r", step.r}, {"choices", step.choices}, {"pair", step.pair}};
  if (step.event) {
    j["event"] = {{"type", step.event->type}, {"witness", step.event->witness}, {"resets", step.event->resets}};
  }
  return j;
}

}  // namespace avd
