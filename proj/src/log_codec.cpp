#include "avd/log_codec.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <string>

namespace avd {

// ---------------------------------------------------------------- Dyck words

std::int64_t PartialDyckWord::zeros() const { return std::count(bits.begin(), bits.end(), false); }
std::int64_t PartialDyckWord::ones() const { return std::count(bits.begin(), bits.end(), true); }

bool PartialDyckWord::valid() const {
  std::int64_t h = 0;
  for (bool b : bits) {
    h += b ? -1 : 1;
    if (h < 0) return false;
  }
  return true;
}

std::vector<int> PartialDyckWord::runs_after_zeros() const {
  if (!valid()) throw InputError("word breaks the prefix condition");
  if (!bits.empty() && bits.front()) throw InputError("word starts with a 1");
  std::vector<int> out;
  for (bool b : bits) {
    if (!b) {
      out.push_back(0);
    } else {
      ++out.back();
    }
  }
  return out;
}

std::vector<int> PartialDyckWord::descents() const {
  std::vector<int> out;
  int run = 0;
  for (bool b : bits) {
    if (b) {
      ++run;
    } else if (run > 0) {
      out.push_back(run);
      run = 0;
    }
  }
  if (run > 0) out.push_back(run);
  return out;
}

void PartialDyckWord::push_step(int ones_after) {
  bits.push_back(false);
  bits.insert(bits.end(), ones_after, true);
}

std::string PartialDyckWord::str() const {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

std::int64_t defect(const PartialDyckWord& w) {
  if (!w.valid()) throw InputError("not a partial Dyck word: " + w.str());
  return w.zeros() - w.ones();
}

PartialDyckWord pad_to_dyck(const PartialDyckWord& w) {
  PartialDyckWord out = w;
  for (std::int64_t k = defect(w); k > 0; --k) out.bits.insert(out.bits.end(), {false, true, true});
  return out;
}

bool is_dyck(const PartialDyckWord& w) { return w.valid() && w.zeros() == w.ones(); }

int descent_length(int type, int q) {
  if (type == 1) return q + 1;
  if (type >= 2 && type <= 5) return type;
  throw InputError("unknown event type " + std::to_string(type));
}

Budget big_budget(int type, int delta_max, int d, int q) {
  const BigInt D = delta_max;
  const BigInt dd = d;
  const BigInt pairs = binom(d, 2);
  switch (type) {
    case 1: return {dd * binom(delta_max, q), ipow(dd, q + 1)};
    case 2: return {BigInt(q + 2) * dd, dd * dd};
    case 3: return {2 * ipow(D, 3), 64 * pairs};
    case 4: return {4 * ipow(D, 4), 1024 * dd * pairs};
    case 5: return {2 * ipow(D, 5), 1024 * dd * dd * pairs};
    default: throw InputError("unknown event type " + std::to_string(type));
  }
}

// ------------------------------------------------------------------ big phase

namespace {

void need(bool ok, const std::string& what) {
  if (!ok) throw DecodeMismatch(what);
}

int index_in(std::span<const Vertex> list, Vertex x) {
  auto it = std::find(list.begin(), list.end(), x);
  return it == list.end() ? -1 : static_cast<int>(it - list.begin());
}

Vertex other_of(const Pair& p, Vertex x) { return p[0] == x ? p[1] : p[0]; }

Vertex pick(std::span<const Vertex> list, const BigInt& idx, const char* what) {
  need(idx >= 0 && idx < static_cast<std::int64_t>(list.size()), std::string("index out of range for ") + what);
  return list[static_cast<std::size_t>(idx)];
}

// Membership bits, (a, b) meaning a in U+(b), in the order they are packed.
using Bit = std::pair<Vertex, Vertex>;

std::vector<Bit> bit_list(const BadEvent& ev) {
  const auto& t = ev.witness;
  if (ev.type == 3) {
    const Vertex v = t[0], w = t[1], x = t[2];
    return {{w, v}, {w, x}, {v, x}, {w, x}, {w, v}, {x, v}};
  }
  const Vertex v = t[0], w = t[1], x = t[2], y = t[3];
  return {{w, v}, {w, x}, {w, y}, {v, x}, {v, y}, {x, y}, {x, w}, {x, v}, {y, w}, {y, v}};
}

// What gamma pins down: the witness tuple and the reset set.
struct Gamma {
  int type = 0;
  std::vector<Vertex> witness;
  std::vector<Vertex> resets;  // sorted, distinct
};

std::vector<Vertex> sorted_unique(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

struct Walk {
  // order in which the witness slots are visited, and the slot of the
  // vertex each step is ranked against (-1 = u)
  std::vector<int> slot;
  std::vector<int> from;
};

// Walks for types 3-5, indexed by flag. Slots refer to witness positions.
const std::vector<Walk>& walks(int type) {
  // witness: type 3 (v,w,x); type 4 (v,w,x,y); type 5 (v,w,x,y,z)
  static const std::vector<Walk> t3{{{0, 1, 2}, {-1, 0, 1}}, {{1, 0, 2}, {-1, 1, 1}}};
  static const std::vector<Walk> t4{{{0, 1, 2, 3}, {-1, 0, 1, 2}},
                                    {{1, 0, 2, 3}, {-1, 1, 1, 2}},
                                    {{2, 3, 1, 0}, {-1, 2, 2, 1}},
                                    {{3, 2, 1, 0}, {-1, 3, 2, 1}}};
  static const std::vector<Walk> t5{{{0, 1, 4, 2, 3}, {-1, 0, 1, 4, 2}}, {{1, 0, 4, 2, 3}, {-1, 1, 1, 4, 2}}};
  return type == 3 ? t3 : type == 4 ? t4 : t5;
}

int walk_flag(const Graph& g, Vertex u, const BadEvent& ev) {
  const int options = ev.type == 4 ? 4 : 2;
  for (int f = 0; f < options; ++f) {
    if (g.adjacent(u, ev.witness[f])) return f;
  }
  throw InvariantViolation("event witness is not adjacent to the treated vertex");
}

BigInt pair_rank(const BigContext& ctx, Vertex u, const Pair& p) {
  const int a = ctx.nplus_rank(u, p[0]);
  const int b = ctx.nplus_rank(u, p[1]);
  if (a < 0 || b < 0 || a >= b) throw InvariantViolation("pair is not inside N+");
  return binom(b, 2) + a;
}

Pair pair_unrank(const BigContext& ctx, Vertex u, const BigInt& r) {
  int b = 1;
  while (binom(b + 1, 2) <= r) ++b;
  const BigInt a = r - binom(b, 2);
  const auto& np = ctx.nplus[u];
  need(b < static_cast<int>(np.size()), "pair rank out of range");
  return {np[static_cast<std::size_t>(a)], np[b]};
}

BigInt nplus_digit(const BigContext& ctx, Vertex owner, Vertex member) {
  const int r = ctx.nplus_rank(owner, member);
  if (r < 0) throw InvariantViolation("U+ member outside N+");
  return r;
}

struct Packed {
  BigInt gamma;
  BigInt delta;
};

Packed encode_event(const BigContext& ctx, const BigEngine& eng, Vertex u, const BadEvent& ev) {
  const Graph& g = *ctx.g;
  const int d = ctx.d;
  const int D = ctx.profile->delta;
  MixedRadix gm;
  MixedRadix dm;
  auto in_uplus = [&](Vertex a, Vertex b) { return contains(eng.uplus(b), a); };
  switch (ev.type) {
    case 1: {
      const Vertex v = ev.witness[0];
      std::vector<Vertex> others;
      for (Vertex w : eng.uminus(v)) {
        if (w != u) others.push_back(w);
      }
      std::vector<int> pos;
      for (Vertex w : others) pos.push_back(g.neighbour_rank(v, w));
      gm.push(nplus_digit(ctx, u, v), d);
      gm.push(colex_rank(pos), binom(D, ctx.q));
      dm.push(nplus_digit(ctx, u, other_of(eng.uplus(u), v)), d);
      for (Vertex w : others) dm.push(nplus_digit(ctx, w, other_of(eng.uplus(w), v)), d);
      break;
    }
    case 2: {
      const Vertex v = ev.witness[0], w = ev.witness[1], x = ev.witness[2];
      std::vector<Vertex> rest;
      for (Vertex y : g.neighbours(w)) {
        if (y != v) rest.push_back(y);
      }
      gm.push(nplus_digit(ctx, u, v), d);
      gm.push(index_in(rest, x), ctx.q + 2);
      dm.push(nplus_digit(ctx, u, other_of(eng.uplus(u), v)), d);
      dm.push(nplus_digit(ctx, x, other_of(eng.uplus(x), w)), d);
      break;
    }
    default: {
      const int flag = walk_flag(g, u, ev);
      const Walk& wk = walks(ev.type)[flag];
      gm.push(flag, ev.type == 4 ? 4 : 2);
      for (std::size_t k = 0; k < wk.slot.size(); ++k) {
        const Vertex base = wk.from[k] < 0 ? u : ev.witness[wk.from[k]];
        gm.push(g.neighbour_rank(base, ev.witness[wk.slot[k]]), D);
      }
      dm.push(pair_rank(ctx, u, eng.uplus(u)), binom(d, 2));
      if (ev.type == 4) {
        const Vertex w = ev.witness[1], x = ev.witness[2];
        dm.push(nplus_digit(ctx, w, other_of(eng.uplus(w), x)), d);
      } else if (ev.type == 5) {
        const Vertex w = ev.witness[1], x = ev.witness[2], z = ev.witness[4];
        dm.push(nplus_digit(ctx, w, other_of(eng.uplus(w), z)), d);
        dm.push(nplus_digit(ctx, x, other_of(eng.uplus(x), z)), d);
      }
      for (auto [a, b] : bit_list(ev)) dm.push(in_uplus(a, b) ? 1 : 0, 2);
    }
  }
  const Budget bud = big_budget(ev.type, D, d, ctx.q);
  if (gm.range() != bud.gamma || dm.range() != bud.delta) {
    throw InvariantViolation("packing range differs from the type budget");
  }
  return {gm.value(), dm.value()};
}

Gamma decode_gamma(const BigContext& ctx, Vertex u, int type, const BigInt& gamma) {
  const Graph& g = *ctx.g;
  const int d = ctx.d;
  const int D = ctx.profile->delta;
  Gamma out;
  out.type = type;
  const Budget bud = big_budget(type, D, d, ctx.q);
  need(gamma >= 0 && gamma < bud.gamma, "gamma outside its type budget");
  switch (type) {
    case 1: {
      const auto dig = split_radix(gamma, {d, binom(D, ctx.q)});
      const Vertex v = pick(ctx.nplus[u], dig[0], "type 1 v");
      const auto pos = colex_unrank(dig[1], ctx.q);
      out.witness = {v};
      out.resets = {u};
      for (int p : pos) out.resets.push_back(pick(g.neighbours(v), p, "type 1 U-"));
      break;
    }
    case 2: {
      const auto dig = split_radix(gamma, {d, ctx.q + 2});
      const Vertex v = pick(ctx.nplus[u], dig[0], "type 2 v");
      const Vertex w = ctx.fragile.partner[v];
      need(w != kNoVertex, "type 2 v has no fragile edge");
      std::vector<Vertex> rest;
      for (Vertex y : g.neighbours(w)) {
        if (y != v) rest.push_back(y);
      }
      const Vertex x = pick(rest, dig[1], "type 2 x");
      out.witness = {v, w, x};
      out.resets = {u, x};
      break;
    }
    default: {
      const std::size_t slots = type == 5 ? 5 : static_cast<std::size_t>(type);
      std::vector<BigInt> radices{type == 4 ? 4 : 2};
      radices.insert(radices.end(), slots, BigInt(D));
      const auto dig = split_radix(gamma, radices);
      const auto& all = walks(type);
      need(dig[0] < static_cast<std::int64_t>(all.size()), "walk flag out of range");
      const Walk& wk = all[static_cast<std::size_t>(dig[0])];
      out.witness.assign(slots, kNoVertex);
      for (std::size_t k = 0; k < slots; ++k) {
        const Vertex base = wk.from[k] < 0 ? u : out.witness[wk.from[k]];
        out.witness[wk.slot[k]] = pick(g.neighbours(base), dig[k + 1], "walk step");
      }
      const auto& t = out.witness;
      if (type == 3) out.resets = {u, t[0], t[2]};
      if (type == 4) out.resets = {u, t[0], t[1], t[3]};
      if (type == 5) out.resets = {u, t[0], t[1], t[2], t[3]};
    }
  }
  out.resets = sorted_unique(out.resets);
  need(static_cast<int>(out.resets.size()) == descent_length(type, ctx.q),
       "reset set size disagrees with the descent length");
  return out;
}

int type_of_descent(int len, int q) {
  if (len == q + 1) return 1;
  if (len >= 2 && len <= 5) return len;
  throw DecodeMismatch("descent of length " + std::to_string(len) + " matches no event type");
}

void check_q(int q) {
  if (q < 5) throw InputError("the log codec needs q >= 5 so that descent lengths identify event types");
}

// Recovers U+(p) from the equality S'(p) = S'(b) just before the resets.
// `unknown` holds the reset vertices whose pair is not in the engine yet.
void recover_pair(const BigContext& ctx, BigEngine& eng, Vertex p, Vertex b, std::set<Vertex>& unknown,
                  const std::map<Bit, bool>& bits) {
  if (!unknown.count(p)) return;
  const Graph& g = *ctx.g;
  const EdgeColouring& c = *ctx.c;
  need(is_set(eng.uplus(b)), "bad partner has no known U+");
  auto member = [&](Vertex a, Vertex y) {
    auto it = bits.find({a, y});
    need(it != bits.end(), "log does not say whether " + std::to_string(a) + " is in U+(" + std::to_string(y) + ")");
    return it->second;
  };
  auto selected_at = [&](Vertex a, Vertex y, bool include_own) {
    if (include_own && contains(eng.uplus(a), y)) return true;
    if (contains(eng.uplus(y), a)) return true;
    return y != p && unknown.count(y) && member(a, y);
  };
  std::vector<Colour> s_pp;  // S''(p)
  {
    auto nb = g.neighbours(p);
    auto inc = g.incident(p);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (!selected_at(p, nb[i], false)) s_pp.push_back(c[inc[i]]);
    }
  }
  std::vector<Colour> s_b;  // S'(b)
  {
    auto nb = g.neighbours(b);
    auto inc = g.incident(b);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const Vertex y = nb[i];
      bool sel = contains(eng.uplus(b), y) || contains(eng.uplus(y), b);
      if (!sel && unknown.count(y)) sel = member(b, y);
      if (!sel) s_b.push_back(c[inc[i]]);
    }
  }
  std::sort(s_b.begin(), s_b.end());
  std::vector<Vertex> found;
  auto nb = g.neighbours(p);
  auto inc = g.incident(p);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    const Colour col = c[inc[i]];
    if (std::find(s_pp.begin(), s_pp.end(), col) != s_pp.end() && !std::binary_search(s_b.begin(), s_b.end(), col)) {
      found.push_back(nb[i]);
    }
  }
  need(found.size() == 2, "recovered U+(" + std::to_string(p) + ") has " + std::to_string(found.size()) + " members");
  eng.set_pair(p, make_pair_sorted(found[0], found[1]));
  unknown.erase(p);
}

void set_known(BigEngine& eng, std::set<Vertex>& unknown, Vertex a, Pair p) {
  need(p[0] != p[1], "decoded pair repeats a vertex");
  need(unknown.count(a) || eng.uplus(a) == make_pair_sorted(p[0], p[1]), "conflicting pairs for a reset vertex");
  eng.set_pair(a, make_pair_sorted(p[0], p[1]));
  unknown.erase(a);
}

// Rebuilds the state right after u picked its pair, from the state right
// after the resets.
void undo_event(const BigContext& ctx, BigEngine& eng, Vertex u, const Gamma& gm, const BigInt& delta) {
  const int d = ctx.d;
  const Budget bud = big_budget(gm.type, ctx.profile->delta, d, ctx.q);
  need(delta >= 0 && delta < bud.delta, "delta outside its type budget");
  for (Vertex a : gm.resets) need(!is_set(eng.uplus(a)), "reset vertex is set in the later state");
  std::set<Vertex> unknown(gm.resets.begin(), gm.resets.end());
  const auto& t = gm.witness;
  auto nplus_pick = [&](Vertex owner, const BigInt& digit) { return pick(ctx.nplus[owner], digit, "N+ rank"); };

  if (gm.type == 1) {
    const auto dig = split_radix(delta, std::vector<BigInt>(ctx.q + 1, d));
    const Vertex v = t[0];
    set_known(eng, unknown, u, {v, nplus_pick(u, dig[0])});
    std::size_t k = 1;
    for (Vertex w : gm.resets) {
      if (w == u) continue;
      set_known(eng, unknown, w, {v, nplus_pick(w, dig[k++])});
    }
    return;
  }
  if (gm.type == 2) {
    const auto dig = split_radix(delta, {d, d});
    set_known(eng, unknown, u, {t[0], nplus_pick(u, dig[0])});
    set_known(eng, unknown, t[2], {t[1], nplus_pick(t[2], dig[1])});
    return;
  }
  std::vector<BigInt> radices{binom(d, 2)};
  if (gm.type >= 4) radices.push_back(d);
  if (gm.type == 5) radices.push_back(d);
  const BadEvent shape{gm.type, gm.witness, {}};
  const auto blist = bit_list(shape);
  radices.insert(radices.end(), blist.size(), BigInt(2));
  const auto dig = split_radix(delta, radices);
  std::map<Bit, bool> bits;
  for (std::size_t k = 0; k < blist.size(); ++k) {
    const bool val = dig[radices.size() - blist.size() + k] != 0;
    auto [it, fresh] = bits.emplace(blist[k], val);
    need(fresh || it->second == val, "repeated membership bit disagrees with itself");
  }
  set_known(eng, unknown, u, pair_unrank(ctx, u, dig[0]));
  if (gm.type == 3) {
    recover_pair(ctx, eng, t[0], t[1], unknown, bits);
    recover_pair(ctx, eng, t[2], t[1], unknown, bits);
  } else {
    const Vertex v = t[0], w = t[1], x = t[2], y = t[3];
    if (gm.type == 4) {
      set_known(eng, unknown, w, {x, nplus_pick(w, dig[1])});
    } else {
      const Vertex z = t[4];
      set_known(eng, unknown, w, {z, nplus_pick(w, dig[1])});
      set_known(eng, unknown, x, {z, nplus_pick(x, dig[2])});
    }
    recover_pair(ctx, eng, v, w, unknown, bits);
    recover_pair(ctx, eng, y, x, unknown, bits);
  }
  need(unknown.empty(), "some reset vertex was not reconstructed");
  for (auto [ab, val] : bits) need(contains(eng.uplus(ab.second), ab.first) == val, "membership bit contradicts the reconstruction");
}

}  // namespace

BigLog encode_big(const BigContext& ctx, const BigResult& run) {
  check_q(ctx.q);
  BigEngine eng(ctx);
  BigLog log;
  for (std::size_t i = 0; i < run.steps.size(); ++i) {
    const BigStep& st = run.steps[i];
    const std::string at = "trace step " + std::to_string(i) + ": ";
    if (eng.done() || st.u != eng.current()) throw InputError(at + "treated vertex differs from the loop order");
    const auto adm = eng.admissible_pairs(st.u);
    if (st.r < 0 || st.r >= static_cast<std::int64_t>(adm.size()) || adm[st.r] != st.pair) {
      throw InputError(at + "chosen pair is not the admissible pair at position r");
    }
    eng.set_pair(st.u, st.pair);
    const auto ev = eng.detect(st.u);
    if (ev != st.event) throw InputError(at + "recorded event differs from the replayed one");
    if (!ev) {
      log.w.push_step(0);
      log.gamma.push_back(-1);
      log.delta.push_back(-1);
      continue;
    }
    const auto resets = sorted_unique(ev->resets);
    if (static_cast<int>(resets.size()) != descent_length(ev->type, ctx.q)) {
      throw InvariantViolation(at + "type " + std::to_string(ev->type) + " event resets " +
                               std::to_string(resets.size()) + " vertices");
    }
    const Packed pk = encode_event(ctx, eng, st.u, *ev);
    log.w.push_step(static_cast<int>(resets.size()));
    log.gamma.push_back(pk.gamma);
    log.delta.push_back(pk.delta);
    eng.apply(*ev);
  }
  if (eng.uplus() != run.uplus) throw InputError("final U+ of the trace differs from the replay");
  log.final_uplus = run.uplus;
  return log;
}

std::vector<int> big_event_types(const BigLog& log, int q) {
  std::vector<int> out;
  for (int len : log.w.descents()) out.push_back(type_of_descent(len, q));
  return out;
}

std::vector<std::int64_t> decode_big(const BigContext& ctx, const BigLog& log, DecodeOptions opt) {
  check_q(ctx.q);
  const Graph& g = *ctx.g;
  const auto& prof = *ctx.profile;
  std::vector<int> runs;
  try {
    runs = log.w.runs_after_zeros();
  } catch (const InputError& e) {
    throw DecodeMismatch(e.what());
  }
  const std::size_t t = runs.size();
  need(log.gamma.size() == t && log.delta.size() == t, "gamma/delta length differs from the semilength of W");
  need(static_cast<int>(log.final_uplus.size()) == g.num_vertices(), "snapshot has the wrong vertex count");

  try {
    // Forward: B_1, ..., B_{t+1} from W and gamma.
    std::set<Vertex> b(prof.big_vertices.begin(), prof.big_vertices.end());
    std::vector<Vertex> us(t);
    std::vector<std::optional<Gamma>> gammas(t);
    for (std::size_t i = 0; i < t; ++i) {
      need(!b.empty(), "W is longer than the run");
      us[i] = *b.begin();
      if (runs[i] == 0) {
        need(log.gamma[i] == -1 && log.delta[i] == -1, "event payload without a descent");
        b.erase(us[i]);
        continue;
      }
      need(log.gamma[i] >= 0 && log.delta[i] >= 0, "descent without an event payload");
      gammas[i] = decode_gamma(ctx, us[i], type_of_descent(runs[i], ctx.q), log.gamma[i]);
      for (Vertex a : gammas[i]->resets) {
        need(prof.is_big(a), "reset vertex is small");
        need(a == us[i] || !b.count(a), "reset vertex was already unset");
        b.insert(a);
      }
    }
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      need(prof.is_big(v) ? (is_set(log.final_uplus[v]) != (b.count(v) > 0)) : !is_set(log.final_uplus[v]),
           "snapshot disagrees with the unset set read off gamma");
    }

    // Backward: U+_t, ..., U+_1 and r_t, ..., r_1.
    BigEngine eng(ctx);
    eng.load(log.final_uplus);
    std::vector<std::int64_t> rs(t);
    for (std::size_t i = t; i-- > 0;) {
      const Vertex u = us[i];
      if (gammas[i]) {
        undo_event(ctx, eng, u, *gammas[i], log.delta[i]);
        const auto ev = eng.detect(u);
        need(ev && ev->type == gammas[i]->type && ev->witness == gammas[i]->witness &&
                 sorted_unique(ev->resets) == gammas[i]->resets,
             "reconstructed state does not trigger the logged event");
      }
      const Pair chosen = eng.uplus(u);
      need(is_set(chosen), "treated vertex has no pair to rank");
      eng.clear(u);
      const auto adm = eng.admissible_pairs(u);
      const auto pos = std::find(adm.begin(), adm.end(), chosen);
      need(pos != adm.end(), "chosen pair is not admissible in the reconstructed state");
      rs[i] = pos - adm.begin();
      need(rs[i] < eng.sample_range(static_cast<std::int64_t>(adm.size())), "choice beyond the sampled prefix");
      if (opt.check_invariants) {
        const auto rep = eng.check_invariants();
        need(rep.ok(), "reconstructed state breaks an invariant: " + (rep.ok() ? "" : rep.violations.front()));
      }
    }
    for (Vertex v = 0; v < g.num_vertices(); ++v) need(!is_set(eng.uplus(v)), "U+_1 is not empty");

    const auto again = replay_big_phase(ctx, rs, false);
    need(encode_big(ctx, again) == log, "re-encoding the recovered choices does not reproduce the log");
    return rs;
  } catch (const DecodeMismatch&) {
    throw;
  } catch (const Error& e) {
    throw DecodeMismatch(std::string("decode failed: ") + e.what());
  }
}

// ---------------------------------------------------------------- small phase

SmallLog encode_small(const SmallContext& ctx, const EdgeColouring& c2, const SmallResult& run) {
  const Graph& g = *ctx.g;
  const int d = ctx.profile->d;
  SmallEngine eng(ctx, strip_small_edges(ctx, c2));
  SmallLog log;
  for (std::size_t i = 0; i < run.steps.size(); ++i) {
    const SmallStep& st = run.steps[i];
    if (eng.done() || st.edge != eng.current()) throw InputError("small trace step " + std::to_string(i) + " is out of order");
    const EdgeColouring before = eng.colouring();
    const SmallStep again = eng.step(st.r);
    if (!(again == st)) throw InputError("small trace step " + std::to_string(i) + " differs from the replay");
    if (!st.event) {
      log.w.push_step(0);
      log.gamma.push_back(-1);
      log.delta.push_back(-1);
      continue;
    }
    const auto [u, v] = g.edge(st.edge);
    const Vertex p = st.event->endpoint;
    const int side = p == u ? 0 : 1;
    const int rank = g.neighbour_rank(p, st.event->w);
    if (rank < 0 || rank >= d) throw InvariantViolation("dangerous neighbour rank exceeds d");
    const Colour other = before[st.event->extra];
    log.w.push_step(2);
    log.gamma.push_back(static_cast<std::int64_t>(side) * d + rank);
    log.delta.push_back(st.colour < other ? 0 : 1);
    (void)v;
  }
  if (!(eng.colouring() == run.colouring)) throw InputError("final small-phase colouring differs from the replay");
  log.final_colouring = run.colouring;
  return log;
}

std::vector<std::int64_t> decode_small(const SmallContext& ctx, const SmallLog& log) {
  const Graph& g = *ctx.g;
  const int d = ctx.profile->d;
  std::vector<int> runs;
  try {
    runs = log.w.runs_after_zeros();
  } catch (const InputError& e) {
    throw DecodeMismatch(e.what());
  }
  const std::size_t t = runs.size();
  need(log.gamma.size() == t && log.delta.size() == t, "gamma/delta length differs from the semilength of W");
  need(log.final_colouring.num_edges() == g.num_edges(), "snapshot has the wrong edge count");

  try {
    struct Undo {
      EdgeId edge;
      Vertex p = kNoVertex;
      Vertex w = kNoVertex;
      EdgeId extra = kNoEdge;
    };
    std::vector<Undo> plan(t);
    std::set<int> open;  // positions of uncoloured edges
    for (int k = 0; k < static_cast<int>(ctx.edges.size()); ++k) open.insert(k);
    for (std::size_t i = 0; i < t; ++i) {
      need(!open.empty(), "W is longer than the run");
      const EdgeId e = ctx.edges[*open.begin()];
      open.erase(open.begin());
      plan[i].edge = e;
      if (runs[i] == 0) {
        need(log.gamma[i] == -1 && log.delta[i] == -1, "event payload without a descent");
        continue;
      }
      need(runs[i] == 2, "small-phase descents have length 2");
      need(log.gamma[i] >= 0 && log.gamma[i] < 2LL * d && (log.delta[i] == 0 || log.delta[i] == 1),
           "event payload out of range");
      const auto [u, v] = g.edge(e);
      const Vertex p = log.gamma[i] < d ? u : v;
      const Vertex w = pick(g.neighbours(p), log.gamma[i] % d, "dangerous neighbour");
      const auto f = ctx.inner_edges(p, e);
      const auto pw = g.find_edge(p, w);
      need(pw.has_value(), "dangerous neighbour not adjacent");
      auto it = std::find(f.begin(), f.end(), *pw);
      need(it != f.end() && f.size() >= 2, "dangerous edge is not among the other inner edges");
      const EdgeId extra = (it + 1 == f.end()) ? f.front() : *(it + 1);
      need(open.insert(ctx.position[extra]).second, "extra edge was already uncoloured");
      open.insert(ctx.position[e]);
      plan[i].p = p;
      plan[i].w = w;
      plan[i].extra = extra;
    }
    for (int k = 0; k < static_cast<int>(ctx.edges.size()); ++k) {
      need(log.final_colouring.coloured(ctx.edges[k]) != (open.count(k) > 0),
           "snapshot disagrees with the uncoloured set read off W and gamma");
    }

    SmallEngine eng(ctx, log.final_colouring);
    std::vector<std::int64_t> rs(t);
    for (std::size_t i = t; i-- > 0;) {
      const Undo& un = plan[i];
      Colour chosen = kNoColour;
      if (un.extra == kNoEdge) {
        chosen = eng.colouring()[un.edge];
        need(chosen != kNoColour, "edge coloured at this step is uncoloured later without an event");
        eng.uncolour(un.edge);
      } else {
        need(!eng.colouring().coloured(un.edge) && !eng.colouring().coloured(un.extra),
             "uncoloured edges of an event are coloured in the later state");
        const auto sw = colour_set(g, eng.colouring(), un.w);
        const auto sp = colour_set(g, eng.colouring(), un.p);
        std::vector<Colour> two;
        std::set_difference(sw.begin(), sw.end(), sp.begin(), sp.end(), std::back_inserter(two));
        need(two.size() == 2, "dangerous neighbour does not see exactly two extra colours");
        chosen = log.delta[i] == 0 ? two[0] : two[1];
        eng.colour(un.extra, log.delta[i] == 0 ? two[1] : two[0]);
      }
      const auto avail = eng.available(un.edge);
      const auto pos = std::find(avail.begin(), avail.end(), chosen);
      need(pos != avail.end(), "recovered colour was not available");
      rs[i] = pos - avail.begin();
      need(rs[i] < eng.sample_range(static_cast<std::int64_t>(avail.size())), "choice beyond the sampled prefix");
    }

    const auto again = replay_small_phase(ctx, log.final_colouring, rs);
    need(encode_small(ctx, log.final_colouring, again) == log,
         "re-encoding the recovered choices does not reproduce the log");
    return rs;
  } catch (const DecodeMismatch&) {
    throw;
  } catch (const Error& e) {
    throw DecodeMismatch(std::string("decode failed: ") + e.what());
  }
}

// -------------------------------------------------------------- serialisation

namespace {

nlohmann::json word_to_json(const PartialDyckWord& w) {
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (std::size_t i = 0; i < w.bits.size(); i += 4) {
    int nib = 0;
    for (std::size_t k = 0; k < 4; ++k) nib = nib << 1 | (i + k < w.bits.size() && w.bits[i + k] ? 1 : 0);
    s += hex[nib];
  }
  return {{"length", w.bits.size()}, {"hex", s}};
}

PartialDyckWord word_from_json(const nlohmann::json& j) {
  const auto n = j.at("length").get<std::size_t>();
  const auto s = j.at("hex").get<std::string>();
  if (s.size() != (n + 3) / 4) throw InputError("W hex length does not match its bit length");
  PartialDyckWord w;
  for (std::size_t i = 0; i < n; ++i) {
    const char ch = s[i / 4];
    int nib = 0;
    if (ch >= '0' && ch <= '9') {
      nib = ch - '0';
    } else if (ch >= 'a' && ch <= 'f') {
      nib = ch - 'a' + 10;
    } else {
      throw InputError("bad hex digit in W");
    }
    w.bits.push_back((nib >> (3 - i % 4)) & 1);
  }
  return w;
}

template <class T>
std::vector<std::string> decimal(const std::vector<T>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) {
    if constexpr (std::is_same_v<T, BigInt>) {
      out.push_back(x.str());
    } else {
      out.push_back(std::to_string(x));
    }
  }
  return out;
}

BigInt parse_big(const std::string& s) {
  if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos) throw InputError("bad integer '" + s + "'");
  return BigInt(s);
}

}  // namespace

nlohmann::json big_log_to_json(const BigLog& log) {
  nlohmann::json snap = nlohmann::json::array();
  for (const Pair& p : log.final_uplus) {
    snap.push_back(is_set(p) ? nlohmann::json{p[0], p[1]} : nlohmann::json(nullptr));
  }
  return {{"W", word_to_json(log.w)},
          {"gamma", decimal(log.gamma)},
          {"delta", decimal(log.delta)},
          {"final_uplus", snap}};
}

BigLog big_log_from_json(const nlohmann::json& j) {
  BigLog log;
  log.w = word_from_json(j.at("W"));
  for (const auto& s : j.at("gamma")) log.gamma.push_back(parse_big(s.get<std::string>()));
  for (const auto& s : j.at("delta")) log.delta.push_back(parse_big(s.get<std::string>()));
  for (const auto& p : j.at("final_uplus")) {
    log.final_uplus.push_back(p.is_null() ? kNoPair : make_pair_sorted(p.at(0).get<Vertex>(), p.at(1).get<Vertex>()));
  }
  return log;
}

nlohmann::json small_log_to_json(const SmallLog& log) {
  return {{"W", word_to_json(log.w)},
          {"gamma", decimal(log.gamma)},
          {"delta", decimal(log.delta)},
          {"final_colouring", {{"palette", log.final_colouring.palette()}, {"colours", log.final_colouring.raw()}}}};
}

SmallLog small_log_from_json(const nlohmann::json& j) {
  SmallLog log;
  log.w = word_from_json(j.at("W"));
  for (const auto& s : j.at("gamma")) log.gamma.push_back(std::stoll(s.get<std::string>()));
  for (const auto& s : j.at("delta")) log.delta.push_back(std::stoll(s.get<std::string>()));
  const auto& fc = j.at("final_colouring");
  const auto cols = fc.at("colours").get<std::vector<Colour>>();
  log.final_colouring = EdgeColouring(static_cast<int>(cols.size()), fc.at("palette").get<int>());
  for (std::size_t e = 0; e < cols.size(); ++e) log.final_colouring.set(static_cast<EdgeId>(e), cols[e]);
  return log;
}

}  // namespace avd
