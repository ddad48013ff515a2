#include <gtest/gtest.h>

#include <map>
#include <set>

#include "avd/gadgets.hpp"
#include "avd/log_codec.hpp"
#include "avd/pipeline.hpp"

using namespace avd;

namespace {

PartialDyckWord word(const std::string& s) {
  PartialDyckWord w;
  for (char ch : s) w.bits.push_back(ch == '1');
  return w;
}

/// Every prefix-valid word with exactly t zeros, starting with 0.
void enumerate(int t, PartialDyckWord& cur, int zeros, int ones, std::vector<PartialDyckWord>& out) {
  if (zeros == t) out.push_back(cur);
  if (ones < zeros) {
    cur.bits.push_back(true);
    enumerate(t, cur, zeros, ones + 1, out);
    cur.bits.pop_back();
  }
  if (zeros < t) {
    cur.bits.push_back(false);
    enumerate(t, cur, zeros + 1, ones, out);
    cur.bits.pop_back();
  }
}

std::vector<std::int64_t> choices(const BigResult& r) {
  std::vector<std::int64_t> out;
  for (const auto& s : r.steps) out.push_back(s.r);
  return out;
}

void expect_within_budget(const BigLog& log, int delta, int d, int q) {
  const auto types = big_event_types(log, q);
  std::size_t k = 0;
  for (std::size_t i = 0; i < log.gamma.size(); ++i) {
    if (log.gamma[i] < 0) {
      EXPECT_EQ(log.delta[i], -1);
      continue;
    }
    const Budget b = big_budget(types.at(k++), delta, d, q);
    EXPECT_GE(log.gamma[i], 0);
    EXPECT_LT(log.gamma[i], b.gamma);
    EXPECT_GE(log.delta[i], 0);
    EXPECT_LT(log.delta[i], b.delta);
  }
  EXPECT_EQ(k, types.size());
}

}  // namespace

TEST(Dyck, DefectAndPadding) {
  const auto w = word("0010");
  EXPECT_EQ(defect(w), 2);
  EXPECT_EQ(pad_to_dyck(w).str(), "0010011011");
  EXPECT_TRUE(is_dyck(pad_to_dyck(w)));
  EXPECT_EQ(pad_to_dyck(w).semilength(), 3 + 2);
  EXPECT_THROW(defect(word("011")), InputError);
  EXPECT_EQ(word("0011010").descents(), (std::vector<int>{2, 1}));
  EXPECT_EQ(word("0011010").runs_after_zeros(), (std::vector<int>{0, 2, 1, 0}));
}

TEST(Dyck, PaddingInjectiveForFixedSemilengthAndDefect) {
  std::int64_t total = 0;
  for (int t = 0; t <= 8; ++t) {
    std::vector<PartialDyckWord> all;
    PartialDyckWord cur;
    enumerate(t, cur, 0, 0, all);
    std::map<std::int64_t, std::set<std::string>> images;
    std::map<std::int64_t, std::int64_t> counts;
    for (const auto& w : all) {
      const auto k = defect(w);
      const auto p = pad_to_dyck(w);
      ASSERT_TRUE(is_dyck(p));
      ASSERT_EQ(p.semilength(), t + k);
      images[k].insert(p.str());
      ++counts[k];
    }
    for (const auto& [k, imgs] : images) EXPECT_EQ(static_cast<std::int64_t>(imgs.size()), counts[k]) << t << " " << k;
    total += static_cast<std::int64_t>(all.size());
  }
  EXPECT_GT(total, 1000);
}

TEST(Codec, DescentLengthsAndBudgets) {
  EXPECT_EQ(descent_length(1, 13), 14);
  for (int t = 2; t <= 5; ++t) EXPECT_EQ(descent_length(t, 13), t);
  const int D = 50, d = 20, q = 13;
  EXPECT_EQ(big_budget(1, D, d, q).gamma, d * binom(D, q));
  EXPECT_EQ(big_budget(1, D, d, q).delta, ipow(d, q + 1));
  EXPECT_EQ(big_budget(2, D, d, q).gamma, (q + 2) * d);
  EXPECT_EQ(big_budget(2, D, d, q).delta, d * d);
  EXPECT_EQ(big_budget(3, D, d, q).gamma, 2 * D * D * D);
  EXPECT_EQ(big_budget(3, D, d, q).delta, 64 * binom(d, 2));
  EXPECT_EQ(big_budget(4, D, d, q).gamma, 4 * ipow(D, 4));
  EXPECT_EQ(big_budget(4, D, d, q).delta, 1024 * d * binom(d, 2));
  EXPECT_EQ(big_budget(5, D, d, q).gamma, 2 * ipow(D, 5));
  EXPECT_EQ(big_budget(5, D, d, q).delta, 1024 * d * d * binom(d, 2));
}

TEST(Codec, GadgetRoundTripsCoverAllTypes) {
  std::set<int> types_seen;
  int runs = 0;
  for (const Gadget& gd : {latin_gadget(), fragile_gadget()}) {
    const auto prof = classify(gd.graph, gd.eps, Mode::practical);
    const BigContext ctx(gd.graph, prof, gd.colouring, gd.q, Mode::practical);
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      BigResult run;
      try {
        run = run_big_phase(ctx, {gd.q, Mode::practical, seed, 100000, false});
      } catch (const RegimeError&) {
        continue;
      }
      const BigLog log = encode_big(ctx, run);
      for (int t : big_event_types(log, gd.q)) types_seen.insert(t);
      expect_within_budget(log, gd.graph.max_degree(), prof.d, gd.q);
      EXPECT_EQ(decode_big(ctx, log), choices(run)) << gd.name << " " << seed;
      EXPECT_EQ(big_log_from_json(big_log_to_json(log)), log);
      ++runs;
    }
  }
  EXPECT_GT(runs, 40);
  EXPECT_EQ(types_seen, (std::set<int>{1, 2, 3, 4, 5}));
}

TEST(Codec, TruncatedAndEmptyRuns) {
  const Gadget gd = latin_gadget();
  const auto prof = classify(gd.graph, gd.eps, Mode::practical);
  const BigContext ctx(gd.graph, prof, gd.colouring, gd.q, Mode::practical);
  for (std::int64_t cap : {0, 1, 7, 40}) {
    const auto run = run_big_phase(ctx, {gd.q, Mode::practical, 3, cap, false});
    const BigLog log = encode_big(ctx, run);
    EXPECT_EQ(static_cast<std::int64_t>(log.gamma.size()), std::min<std::int64_t>(cap, run.steps.size()));
    EXPECT_EQ(decode_big(ctx, log), choices(run));
    // #0 - #1 counts the big vertices whose pair is currently set.
    std::int64_t set = 0;
    for (Vertex v : prof.big_vertices) set += is_set(log.final_uplus[v]);
    EXPECT_EQ(defect(log.w), set) << cap;
  }
}

TEST(Codec, RandomGraphRoundTrips) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = gen_random_graph(200, 60, seed, GraphModel::two_tier);
    const auto prof = classify(g, Ratio(1, 10), Mode::practical);
    const auto c = initial_colouring(g, contract_pendant_pairs(g, prof));
    const BigContext ctx(g, prof, c, 13, Mode::practical);
    const auto run = run_big_phase(ctx, {13, Mode::practical, seed, 1'000'000, false});
    EXPECT_EQ(decode_big(ctx, encode_big(ctx, run)), choices(run));
  }
}

TEST(Codec, TamperedLogIsRejected) {
  const Gadget gd = latin_gadget();
  const auto prof = classify(gd.graph, gd.eps, Mode::practical);
  const BigContext ctx(gd.graph, prof, gd.colouring, gd.q, Mode::practical);
  int tampered = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    BigResult run;
    try {
      run = run_big_phase(ctx, {gd.q, Mode::practical, seed, 100000, false});
    } catch (const RegimeError&) {
      continue;
    }
    const BigLog log = encode_big(ctx, run);
    for (std::size_t i = 0; i < log.delta.size(); ++i) {
      if (log.delta[i] < 0) continue;
      BigLog bad = log;
      bad.delta[i] += 1;
      // Either rejected, or it is the exact log of some other run.
      try {
        const auto other = decode_big(ctx, bad);
        EXPECT_NE(other, choices(run));
        EXPECT_EQ(encode_big(ctx, replay_big_phase(ctx, other, false)), bad);
      } catch (const DecodeMismatch&) {
      }
      ++tampered;
      break;
    }
    BigLog bad = log;
    bad.final_uplus[prof.big_vertices.front()] = kNoPair;
    EXPECT_THROW(decode_big(ctx, bad), DecodeMismatch);
    BigLog flipped = log;
    flipped.w.bits.back() = !flipped.w.bits.back();
    EXPECT_THROW(decode_big(ctx, flipped), DecodeMismatch);
  }
  EXPECT_GT(tampered, 0);
}

TEST(Codec, SmallPhaseRoundTripsWithEvents) {
  const Gadget gd = small_gadget();
  int with_events = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    PipelineConfig cfg;
    cfg.eps = gd.eps;
    cfg.q = gd.q;
    cfg.seed = seed;
    cfg.small_mode = Mode::theory;
    const auto res = run_colouring(gd.graph, cfg);
    const SmallContext ctx(gd.graph, res.profile, gd.q, Mode::theory);
    const SmallLog log = encode_small(ctx, res.finalized.colouring, res.small);
    std::vector<std::int64_t> rs;
    bool ev = false;
    for (const auto& st : res.small.steps) {
      rs.push_back(st.r);
      ev = ev || st.event.has_value();
    }
    with_events += ev;
    for (std::size_t i = 0; i < log.gamma.size(); ++i) {
      if (log.gamma[i] < 0) continue;
      EXPECT_LT(log.gamma[i], 2 * res.profile.d);
      EXPECT_LT(log.delta[i], 2);
    }
    EXPECT_EQ(decode_small(ctx, log), rs);
    EXPECT_EQ(small_log_from_json(small_log_to_json(log)), log);
    if (ev) {
      SmallLog bad = log;
      for (auto& dl : bad.delta) {
        if (dl >= 0) {
          dl = 1 - dl;
          break;
        }
      }
      try {
        EXPECT_NE(decode_small(ctx, bad), rs);
      } catch (const DecodeMismatch&) {
      }
    }
  }
  EXPECT_GT(with_events, 15);
}
