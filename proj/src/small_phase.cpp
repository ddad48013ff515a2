#include "avd/small_phase.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace avd {

SmallContext::SmallContext(const Graph& graph, const DegreeProfile& prof, int q_, Mode mode_)
    : g(&graph), profile(&prof), q(q_), mode(mode_), palette(prof.delta + q_ + 6),
      s((2 * prof.eps).ceil_times(prof.delta)), in_aprime(graph.num_vertices(), 0), position(graph.num_edges(), -1) {
  // Degrees inside G[A] decide A'.
  std::vector<int> small_deg(graph.num_vertices(), 0);
  for (const Edge& e : graph.edges()) {
    if (prof.is_small(e.u) && prof.is_small(e.v)) {
      ++small_deg[e.u];
      ++small_deg[e.v];
    }
  }
  for (Vertex v : prof.small_vertices) in_aprime[v] = 1;
  for (const Edge& e : graph.edges()) {
    if (prof.is_small(e.u) && prof.is_small(e.v) && small_deg[e.u] == 1 && small_deg[e.v] == 1) {
      in_aprime[e.u] = in_aprime[e.v] = 0;
    }
  }
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (in_aprime[graph.edge(e).u] && in_aprime[graph.edge(e).v]) {
      position[e] = static_cast<int>(edges.size());
      edges.push_back(e);
    }
  }
}

std::vector<EdgeId> SmallContext::inner_edges(Vertex v, EdgeId skip) const {
  std::vector<EdgeId> out;
  for (EdgeId e : g->incident(v)) {
    if (e != skip && inside(e)) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SmallEngine::SmallEngine(const SmallContext& ctx, EdgeColouring start) : ctx_(&ctx), c_(std::move(start)) {
  c_.set_palette(ctx.palette);
  for (EdgeId e = 0; e < ctx.g->num_edges(); ++e) {
    if (c_.coloured(e)) continue;
    if (!ctx.inside(e)) throw InputError("edge outside G[A'] is uncoloured at the start of the small pass");
    uncoloured_.insert(ctx.position[e]);
  }
}

std::vector<Danger> SmallEngine::dangerous(Vertex u, Vertex v) const {
  const Graph& g = *ctx_->g;
  const auto& prof = *ctx_->profile;
  std::vector<Danger> out;
  const auto su = colour_set(g, c_, u);
  for (Vertex w : g.neighbours(u)) {
    if (w == v || !prof.is_small(w) || g.degree(w) != g.degree(u)) continue;
    const auto sw = colour_set(g, c_, w);
    if (static_cast<int>(sw.size()) != g.degree(w)) continue;  // w still has an uncoloured edge
    if (sw.size() != su.size() + 1 || !std::includes(sw.begin(), sw.end(), su.begin(), su.end())) continue;
    std::vector<Colour> extra;
    std::set_difference(sw.begin(), sw.end(), su.begin(), su.end(), std::back_inserter(extra));
    out.push_back({w, extra.front()});
  }
  return out;
}

std::vector<Colour> SmallEngine::available(EdgeId e) const {
  const Graph& g = *ctx_->g;
  const auto [u, v] = g.edge(e);
  std::vector<char> blocked(ctx_->palette + 1, 0);
  for (Vertex x : {u, v}) {
    for (EdgeId f : g.incident(x)) {
      if (c_.coloured(f)) blocked[c_[f]] = 1;
    }
  }
  for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
    const auto dz = dangerous(a, b);
    if (dz.size() == 1) blocked[dz.front().colour] = 1;
  }
  std::vector<Colour> out;
  for (Colour col = 1; col <= ctx_->palette; ++col) {
    if (!blocked[col]) out.push_back(col);
  }
  return out;
}

std::int64_t SmallEngine::sample_range(std::int64_t available) const {
  if (ctx_->mode == Mode::theory) {
    if (available < ctx_->s) {
      throw InvariantViolation("only " + std::to_string(available) + " available colours, fewer than s = " +
                               std::to_string(ctx_->s));
    }
    return ctx_->s;
  }
  if (available == 0) throw RegimeError("no available colour for edge " + std::to_string(current()));
  return available;
}

void SmallEngine::colour(EdgeId e, Colour col) {
  if (!ctx_->inside(e)) throw InvariantViolation("small pass touched an edge outside G[A']");
  c_.set(e, col);
  uncoloured_.erase(ctx_->position[e]);
}

void SmallEngine::uncolour(EdgeId e) {
  if (!ctx_->inside(e)) throw InvariantViolation("small pass touched an edge outside G[A']");
  c_.clear(e);
  uncoloured_.insert(ctx_->position[e]);
}

SmallStep SmallEngine::step(std::int64_t r) {
  const Graph& g = *ctx_->g;
  SmallStep st;
  st.edge = current();
  const auto [u, v] = g.edge(st.edge);
  const auto avail = available(st.edge);
  st.choices = sample_range(static_cast<std::int64_t>(avail.size()));
  if (r < 0 || r >= st.choices) throw InputError("random choice " + std::to_string(r) + " out of range");
  st.r = r;
  st.colour = avail[r];
  const auto du = dangerous(u, v);
  const auto dv = dangerous(v, u);
  colour(st.edge, st.colour);

  for (const auto& [p, dz] : {std::pair{u, &du}, std::pair{v, &dv}}) {
    auto hit = std::find_if(dz->begin(), dz->end(), [&](const Danger& x) { return x.colour == st.colour; });
    if (hit == dz->end()) continue;
    const Vertex w = hit->w;
    const auto f = ctx_->inner_edges(p, st.edge);
    const auto uw = g.find_edge(p, w);
    auto pos = std::find(f.begin(), f.end(), *uw);
    if (pos == f.end()) {
      throw InvariantViolation("dangerous neighbour " + std::to_string(w) + " of " + std::to_string(p) +
                               " is not joined to it inside G[A']");
    }
    if (f.size() < 2) throw InvariantViolation("dangerous colour hit at a vertex with fewer than two other edges");
    const EdgeId extra = (pos + 1 == f.end()) ? f.front() : *(pos + 1);
    uncolour(st.edge);
    uncolour(extra);
    st.event = SmallEvent{p, w, extra};
    break;
  }
  return st;
}

EdgeColouring strip_small_edges(const SmallContext& ctx, const EdgeColouring& c2) {
  EdgeColouring c = c2;
  for (EdgeId e : ctx.edges) c.clear(e);
  return c;
}

namespace {

template <class Chooser>
SmallResult small_loop(const SmallContext& ctx, const EdgeColouring& c2, std::int64_t step_cap, Chooser choose) {
  SmallEngine eng(ctx, strip_small_edges(ctx, c2));
  SmallResult res;
  while (!eng.done() && static_cast<std::int64_t>(res.steps.size()) < step_cap) {
    const auto avail = eng.available(eng.current());
    const auto range = eng.sample_range(static_cast<std::int64_t>(avail.size()));
    res.steps.push_back(eng.step(choose(res.steps.size(), range)));
  }
  res.completed = eng.done();
  res.colouring = eng.colouring();
  return res;
}

}  // namespace

SmallResult run_small_phase(const SmallContext& ctx, const EdgeColouring& c2, std::uint64_t seed,
                            std::int64_t step_cap) {
  std::mt19937_64 rng(seed);
  return small_loop(ctx, c2, step_cap, [&](std::size_t, std::int64_t range) { return uniform_below(rng, range); });
}

SmallResult replay_small_phase(const SmallContext& ctx, const EdgeColouring& c2,
                               const std::vector<std::int64_t>& choices) {
  return small_loop(ctx, c2, static_cast<std::int64_t>(choices.size()),
                    [&](std::size_t i, std::int64_t) { return choices[i]; });
}

nlohmann::json small_step_to_json(const SmallStep& step) {
  nlohmann::json j{{"edge", step.edge}, {"r", step.r}, {"choices", step.choices}, {"colour", step.colour}};
  if (step.event) {
    j["event"] = {{"type", "dangerous"},
                  {"endpoint", step.event->endpoint},
                  {"w", step.event->w},
                  {"extra", step.event->extra}};
  }
  return j;
}

}  // namespace avd
