#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "avd/bound_analysis.hpp"
#include "avd/gadgets.hpp"
#include "avd/log_codec.hpp"
#include "avd/pipeline.hpp"
#include "avd/verify.hpp"

using namespace avd;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kVerifyFail = 1, kUsage = 2, kRegime = 3 };

struct Options {
  std::string eps;  // empty: mode default
  int q = 13;
  std::uint64_t seed = 1;
  std::string mode = "practical";
  std::int64_t step_cap = 1'000'000;
  bool assert_inv = false;
  std::string trace_out;
  std::string format = "text";
  int workers = 1;
};

PipelineConfig to_config(const Options& o) {
  PipelineConfig cfg;
  cfg.mode = parse_mode(o.mode);
  cfg.eps = o.eps.empty() ? (cfg.mode == Mode::theory ? Ratio(1, 250) : Ratio(1, 10)) : Ratio::parse(o.eps);
  if (o.q < 1) throw InputError("q must be at least 1");
  if (o.step_cap < 0) throw InputError("step cap must be non-negative");
  cfg.q = o.q;
  cfg.seed = o.seed;
  cfg.step_cap = o.step_cap;
  cfg.assert_invariants = o.assert_inv;
  return cfg;
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Reads the "colours" map written by colouring_to_json.
EdgeColouring load_colouring(const Graph& g, const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw InputError(std::string("colouring file: ") + e.what());
  }
  const json& cols = j.contains("colouring") ? j.at("colouring") : j;
  if (!cols.contains("colours")) throw InputError("colouring file has no \"colours\" map");
  EdgeColouring c(g.num_edges(), cols.value("palette", 0));
  for (auto& [key, val] : cols.at("colours").items()) {
    const auto dash = key.find('-');
    if (dash == std::string::npos) throw InputError("bad edge key " + key);
    const Vertex a = std::stoi(key.substr(0, dash)), b = std::stoi(key.substr(dash + 1));
    if (a < 0 || b < 0 || a >= g.num_vertices() || b >= g.num_vertices()) throw InputError("edge key out of range: " + key);
    const auto e = g.find_edge(a, b);
    if (!e) throw InputError("colouring names a non-edge " + key);
    const int col = val.get<int>();
    if (col < 0) throw InputError("negative colour on " + key);
    if (col != kNoColour) c.set(*e, col);
  }
  if (c.palette() == 0) c.set_palette(c.max_colour());
  return c;
}

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Results are stored
/// by index so output order never depends on scheduling.
void fan_out(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, n));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

json trace_json(const PipelineResult& r) {
  json big = json::array(), small = json::array();
  for (const auto& s : r.big.steps) big.push_back(big_step_to_json(s));
  for (const auto& s : r.small.steps) small.push_back(small_step_to_json(s));
  return {{"big_steps", std::move(big)}, {"small_steps", std::move(small)}};
}

// ---------------------------------------------------------------- gen

int cmd_gen(const Options& o, int n, int delta, const std::string& model, const std::string& out) {
  const Graph g = gen_random_graph(n, delta, o.seed, parse_model(model));
  if (o.format == "json") {
    write_file(out, graph_to_json(g).dump() + "\n");
  } else {
    write_file(out, write_edge_list(g));
  }
  return kOk;
}

// ---------------------------------------------------------------- color

int cmd_color(const Options& o, const std::string& input, const std::string& out) {
  const PipelineConfig cfg = to_config(o);
  const Graph g = load_graph_file(input);
  const PipelineResult r = run_colouring(g, cfg);
  const VerificationReport rep = verify(g, r.final_colouring);
  const int bound = g.max_degree() + cfg.q + 6;
  const bool ok = rep.proper && rep.avd && rep.palette_used <= bound && r.property1;

  json doc = {{"delta", g.max_degree()},
              {"d", r.profile.d},
              {"eps", cfg.eps.str()},
              {"q", cfg.q},
              {"mode", std::string(to_string(cfg.mode))},
              {"seed", cfg.seed},
              {"palette_bound", bound},
              {"big_steps", r.big.steps.size()},
              {"small_steps", r.small.steps.size()},
              {"invariant_checks", r.big.invariant_checks},
              {"verification", report_to_json(rep)},
              {"colouring", colouring_to_json(g, r.final_colouring)}};
  if (!out.empty()) write_file(out, doc.dump(1) + "\n");

  if (!o.trace_out.empty()) {
    json t = trace_json(r);
    const BigContext bctx(g, r.profile, r.initial, cfg.q, cfg.mode);
    t["big_log"] = big_log_to_json(encode_big(bctx, r.big));
    const SmallContext sctx(g, r.profile, cfg.q, cfg.mode);
    t["small_log"] = small_log_to_json(encode_small(sctx, r.finalized.colouring, r.small));
    write_file(o.trace_out, t.dump() + "\n");
  }

  if (o.format == "json") {
    if (out.empty()) doc.erase("colouring");
    std::cout << doc.dump(1) << "\n";
  } else {
    std::cout << "delta " << g.max_degree() << "  d " << r.profile.d << "  big steps " << r.big.steps.size()
              << "  small steps " << r.small.steps.size() << "\n"
              << "proper " << rep.proper << "  avd " << rep.avd << "  palette " << rep.palette_used << " (bound "
              << bound << ")\n";
    for (const auto& w : r.profile.warnings) std::cout << "warning: " << w << "\n";
  }
  return ok ? kOk : kVerifyFail;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Options& o, const std::string& graph_path, const std::string& colouring_path) {
  const Graph g = load_graph_file(graph_path);
  const EdgeColouring c = load_colouring(g, colouring_path);
  const VerificationReport rep = verify(g, c);
  if (o.format == "json") {
    std::cout << report_to_json(rep).dump(1) << "\n";
  } else {
    std::cout << "proper " << rep.proper << "  avd " << rep.avd << "  palette " << rep.palette_used << "\n";
    for (const auto& off : rep.offending) std::cout << off.what << " " << off.u << "-" << off.v << "\n";
  }
  return rep.proper && rep.avd ? kOk : kVerifyFail;
}

// ---------------------------------------------------------------- codec-test

struct CodecOutcome {
  std::string unit;
  bool ok = false;
  bool skipped = false;
  std::string detail;
  std::vector<int> types;
  std::int64_t small_events = 0;
};

std::vector<std::int64_t> choices_of(const BigResult& r) {
  std::vector<std::int64_t> out;
  for (const auto& s : r.steps) out.push_back(s.r);
  return out;
}

void corrupt(BigLog& log) {
  for (auto& d : log.delta) {
    if (d >= 0) {
      d += 1;
      return;
    }
  }
  for (auto& gmm : log.gamma) {
    if (gmm >= 0) {
      gmm += 1;
      return;
    }
  }
  if (!log.final_uplus.empty()) log.final_uplus[0] = kNoPair;
}

CodecOutcome codec_big(const Graph& g, const DegreeProfile& prof, const EdgeColouring& c0, int q, Mode mode,
                       std::uint64_t seed, std::int64_t truncate, bool inject) {
  CodecOutcome out;
  const BigContext ctx(g, prof, c0, q, mode);
  BigResult run;
  try {
    run = run_big_phase(ctx, {q, mode, seed, truncate >= 0 ? truncate : 1'000'000, false});
  } catch (const RegimeError& e) {
    out.skipped = true;
    out.detail = e.what();
    return out;
  }
  BigLog log = encode_big(ctx, run);
  out.types = big_event_types(log, q);
  if (inject) corrupt(log);
  try {
    out.ok = decode_big(ctx, log) == choices_of(run);
    if (!out.ok) out.detail = "decoded choices differ";
  } catch (const DecodeMismatch& e) {
    out.detail = e.what();
  }
  return out;
}

int cmd_codec_test(const Options& o, const std::string& input, int runs, std::int64_t truncate, bool gadgets,
                   bool inject) {
  std::vector<std::function<CodecOutcome()>> units;
  std::vector<Gadget> suite;
  std::optional<Graph> graph;
  std::optional<DegreeProfile> prof;
  std::optional<Contraction> con;
  std::optional<EdgeColouring> c0;
  const PipelineConfig cfg = to_config(o);

  if (gadgets) {
    suite = {latin_gadget(), fragile_gadget(), small_gadget()};
    for (int i = 0; i < runs; ++i) {
      const std::uint64_t seed = o.seed + i;
      for (int k = 0; k < 2; ++k) {
        units.push_back([&, k, seed] {
          const Gadget& gd = suite[k];
          auto p = classify(gd.graph, gd.eps, Mode::practical);
          auto res = codec_big(gd.graph, p, gd.colouring, gd.q, Mode::practical, seed, truncate, inject);
          res.unit = gd.name + "/" + std::to_string(seed);
          return res;
        });
      }
      units.push_back([&, seed] {
        const Gadget& gd = suite[2];
        CodecOutcome out;
        out.unit = gd.name + "/" + std::to_string(seed);
        PipelineConfig pc;
        pc.eps = gd.eps;
        pc.q = gd.q;
        pc.seed = seed;
        pc.small_mode = Mode::theory;
        const PipelineResult res = run_colouring(gd.graph, pc);
        const SmallContext sctx(gd.graph, res.profile, gd.q, Mode::theory);
        SmallLog log = encode_small(sctx, res.finalized.colouring, res.small);
        for (const auto& s : res.small.steps) out.small_events += s.event.has_value();
        if (inject) {
          for (auto& gm : log.gamma) {
            if (gm >= 0) {
              gm = (gm + 1) % (2 * sctx.profile->d);
              break;
            }
          }
        }
        std::vector<std::int64_t> rs;
        for (const auto& s : res.small.steps) rs.push_back(s.r);
        try {
          out.ok = decode_small(sctx, log) == rs;
          if (!out.ok) out.detail = "decoded choices differ";
        } catch (const DecodeMismatch& e) {
          out.detail = e.what();
        }
        return out;
      });
    }
  } else {
    if (input.empty()) throw InputError("codec-test needs a graph file or --gadgets");
    graph = load_graph_file(input);
    prof = classify(*graph, cfg.eps, cfg.mode);
    con = contract_pendant_pairs(*graph, *prof);
    c0 = initial_colouring(*graph, *con);
    for (int i = 0; i < runs; ++i) {
      const std::uint64_t seed = o.seed + i;
      units.push_back([&, seed] {
        auto res = codec_big(*graph, *prof, *c0, cfg.q, cfg.mode, seed, truncate, inject);
        res.unit = "graph/" + std::to_string(seed);
        return res;
      });
    }
  }

  std::vector<CodecOutcome> results(units.size());
  fan_out(static_cast<int>(units.size()), o.workers, [&](int i) { results[i] = units[i](); });

  int ok = 0, fail = 0, skipped = 0;
  int type_count[6] = {0, 0, 0, 0, 0, 0};
  json rows = json::array();
  for (const auto& r : results) {
    if (r.skipped) {
      ++skipped;
    } else if (r.ok) {
      ++ok;
    } else {
      ++fail;
    }
    for (int t : r.types) ++type_count[t];
    if (!r.ok && !r.skipped && o.format == "text") std::cout << "MISMATCH " << r.unit << ": " << r.detail << "\n";
    rows.push_back({{"unit", r.unit}, {"ok", r.ok}, {"skipped", r.skipped}, {"detail", r.detail}});
  }
  if (o.format == "json") {
    std::cout << json{{"ok", ok}, {"fail", fail}, {"skipped", skipped},
                      {"event_types", std::vector<int>(type_count + 1, type_count + 6)}, {"units", rows}}
                     .dump(1)
              << "\n";
  } else {
    std::cout << "round trips ok " << ok << "  failed " << fail << "  skipped " << skipped << "\n"
              << "events by type:";
    for (int t = 1; t <= 5; ++t) std::cout << " " << t << ":" << type_count[t];
    std::cout << "\n";
  }
  return fail == 0 ? kOk : kVerifyFail;
}

// ---------------------------------------------------------------- analyze

DescentSpec toy_spec(const std::string& name) {
  if (name == "catalan") return {{{2, 1}}};
  if (name == "motzkin") return {{{1, 1}, {2, 1}}};
  if (name == "triple") return {{{2, 3}}};
  if (name == "mixed") return {{{1, 2}, {3, 1}, {4, 5}}};
  throw InputError("unknown toy spec '" + name + "' (catalan, motzkin, triple, mixed)");
}

int cmd_analyze(const Options& o, bool constant, bool sweep, bool dyck, int t, const std::string& spec_name,
                std::int64_t delta, bool crossover, int max_exp, const std::string& eps1, const std::string& eps_prime,
                bool eps1_given) {
  const Ratio eps = o.eps.empty() ? Ratio(1, 250) : Ratio::parse(o.eps);
  CertifyOptions copt;
  copt.eps1 = Real(eps1);
  copt.eps_prime = Real(eps_prime);
  json doc = json::object();
  bool fine = true;
  if (!constant && !sweep && !dyck && delta == 0 && !crossover) constant = true;

  if (constant) {
    const Real v = constant_check(o.q, eps1_given ? copt.eps1 : Real(0));
    const bool below = v < Real(1) / 8;
    doc["constant"] = {{"q", o.q}, {"value", real_str(v, 10)}, {"below_one_eighth", below}};
    if (o.format == "text") std::cout << "constant(q=" << o.q << ") = " << real_str(v, 10) << (below ? " < 1/8" : " >= 1/8") << "\n";
  }
  if (delta > 0) {
    const auto rep = certify_big_phase(delta, eps, o.q, copt);
    doc["certify"] = certify_to_json(rep);
    if (o.format == "text") std::cout << certify_table({rep});
  }
  if (sweep || crossover) {
    const auto cr = find_crossover(eps, o.q, max_exp, copt);
    json rows = json::array();
    for (const auto& r : cr.decades) rows.push_back(certify_to_json(r));
    doc["sweep"] = rows;
    doc["crossover"] = cr.crossover ? json(*cr.crossover) : json(nullptr);
    if (o.format == "text") {
      std::cout << certify_table(cr.decades) << "crossover: " << (cr.crossover ? std::to_string(*cr.crossover) : "none")
                << "\n";
    }
  }
  if (dyck) {
    const DescentSpec spec = toy_spec(spec_name);
    const auto series = tree_series(spec, t + 1);
    json rows = json::array();
    for (int k = 0; k <= t; ++k) {
      const BigInt dp = dyck_count_dp(k, spec);
      const bool eq = dp == series[k + 1];
      fine = fine && eq;
      rows.push_back({{"t", k}, {"dp", dp.str()}, {"series", series[k + 1].str()}, {"equal", eq}});
      if (o.format == "text") std::cout << "t=" << k << "  dp " << dp << "  series " << series[k + 1] << (eq ? "" : "  MISMATCH") << "\n";
    }
    const auto tau = solve_tau(spec);
    doc["dyck"] = {{"spec", spec_name}, {"rows", rows}, {"tau", real_str(tau.tau, 15)}, {"gamma", real_str(tau.gamma, 15)}};
    if (o.format == "text") std::cout << "tau " << real_str(tau.tau, 15) << "  gamma " << real_str(tau.gamma, 15) << "\n";
  }
  if (o.format == "json") std::cout << doc.dump(1) << "\n";
  return fine ? kOk : kVerifyFail;
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(const Options& o, int n_max) {
  if (n_max < 3 || n_max > 7) throw InputError("sweep needs 3 <= n-max <= 7");
  const SweepReport rep = conjecture_sweep(n_max, o.workers);
  if (o.format == "json") {
    std::cout << sweep_to_json(rep).dump(1) << "\n";
  } else {
    std::cout << "graphs " << rep.graphs << "  exceptions " << rep.exceptions.size() << "  "
              << (rep.passed ? "pass" : "FAIL") << "\n";
    for (const auto& ex : rep.exceptions) {
      std::cout << "  index " << ex.index << " > delta+2 = " << ex.delta + 2 << " on " << ex.graph.num_vertices()
                << " vertices" << (is_cycle(ex.graph) ? " (cycle)" : "") << "\n";
    }
  }
  return rep.passed ? kOk : kVerifyFail;
}

// ---------------------------------------------------------------- bench

int cmd_bench(const Options& o, int graphs, int n, int dmin, int dmax) {
  if (graphs < 1 || dmin > dmax) throw InputError("bench needs graphs >= 1 and delta-min <= delta-max");
  const PipelineConfig base = to_config(o);
  struct Row {
    int delta = 0;
    double ms = 0;
    bool ok = false;
    int palette = 0;
    std::string error;
  };
  std::vector<Row> rows(graphs);
  fan_out(graphs, o.workers, [&](int i) {
    const std::uint64_t seed = o.seed + i;
    const int target = dmin + static_cast<int>(seed % static_cast<std::uint64_t>(dmax - dmin + 1));
    Row& row = rows[i];
    try {
      const Graph g = gen_random_graph(n, target, seed, GraphModel::gnp_capped);
      row.delta = g.max_degree();
      PipelineConfig cfg = base;
      cfg.seed = seed;
      const auto t0 = std::chrono::steady_clock::now();
      const auto res = run_colouring(g, cfg);
      const auto rep = verify(g, res.final_colouring);
      row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      row.palette = rep.palette_used;
      row.ok = rep.avd && rep.palette_used <= g.max_degree() + cfg.q + 6;
    } catch (const Error& e) {
      row.error = e.what();
    }
  });
  int ok = 0;
  double total = 0, worst = 0;
  json out = json::array();
  for (int i = 0; i < graphs; ++i) {
    ok += rows[i].ok;
    total += rows[i].ms;
    worst = std::max(worst, rows[i].ms);
    out.push_back({{"seed", o.seed + i}, {"delta", rows[i].delta}, {"ms", rows[i].ms}, {"ok", rows[i].ok},
                   {"palette", rows[i].palette}, {"error", rows[i].error}});
  }
  if (o.format == "json") {
    std::cout << json{{"ok", ok}, {"graphs", graphs}, {"mean_ms", total / graphs}, {"max_ms", worst}, {"runs", out}}.dump(1)
              << "\n";
  } else {
    std::cout << ok << "/" << graphs << " ok  mean " << total / graphs << " ms  max " << worst << " ms\n";
    for (int i = 0; i < graphs; ++i) {
      if (!rows[i].error.empty()) std::cout << "seed " << o.seed + i << ": " << rows[i].error << "\n";
    }
  }
  return ok == graphs ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AVD edge colouring toolkit"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--eps", o.eps, "threshold parameter, e.g. 0.1 or 1/250")->envname("AVD_EPS");
    sub->add_option("--q", o.q, "pair budget constant")->envname("AVD_Q");
    sub->add_option("--seed", o.seed)->envname("AVD_SEED");
    sub->add_option("--mode", o.mode)->check(CLI::IsMember({"theory", "practical"}))->envname("AVD_MODE");
    sub->add_option("--step-cap", o.step_cap, "per phase")->envname("AVD_STEP_CAP");
    sub->add_flag("--assert", o.assert_inv, "check loop invariants at every test point")->envname("AVD_ASSERT");
    sub->add_option("--trace-out", o.trace_out)->envname("AVD_TRACE_OUT");
    sub->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}))->envname("AVD_FORMAT");
    sub->add_option("--workers", o.workers)->check(CLI::PositiveNumber)->envname("AVD_WORKERS");
  };

  int gen_n = 200, gen_delta = 60;
  std::string gen_model = "gnp-capped", out_path;
  auto* gen = app.add_subcommand("gen", "random graph, edge list or JSON");
  common(gen);
  gen->add_option("-n,--n", gen_n);
  gen->add_option("--delta", gen_delta);
  gen->add_option("--model", gen_model, "gnp-capped, near-regular or two-tier");
  gen->add_option("-o,--out", out_path);

  std::string input, colouring_path;
  auto* color = app.add_subcommand("color", "colour a graph and verify the result");
  common(color);
  color->add_option("input", input)->required();
  color->add_option("-o,--out", out_path);

  auto* ver = app.add_subcommand("verify", "check a colouring file against a graph");
  common(ver);
  ver->add_option("graph", input)->required();
  ver->add_option("colouring", colouring_path)->required();

  int runs = 100;
  std::int64_t truncate = -1;
  bool gadgets = false, inject = false;
  auto* codec = app.add_subcommand("codec-test", "encode/decode round trips");
  common(codec);
  codec->add_option("input", input);
  codec->add_option("--runs", runs);
  codec->add_option("--truncate", truncate, "stop the selection loop after t steps");
  codec->add_flag("--gadgets", gadgets, "use the built-in gadget suite");
  codec->add_flag("--corrupt", inject, "tamper with each log before decoding");

  bool a_const = false, a_sweep = false, a_dyck = false, a_cross = false;
  int a_t = 20, a_max_exp = 12;
  std::int64_t a_delta = 0;
  std::string a_spec = "catalan", a_eps1 = "1e-3", a_epsp = "1e-3";
  auto* analyze = app.add_subcommand("analyze", "counting bounds and certifier");
  common(analyze);
  analyze->add_flag("--constant", a_const);
  analyze->add_flag("--sweep", a_sweep, "decade sweep of the certifier");
  analyze->add_flag("--crossover", a_cross);
  analyze->add_flag("--dyck", a_dyck, "DP vs series cross-check");
  analyze->add_option("-t", a_t);
  analyze->add_option("--spec", a_spec);
  analyze->add_option("--delta", a_delta, "certify a single delta");
  analyze->add_option("--max-exp", a_max_exp);
  analyze->add_option("--eps1", a_eps1);
  analyze->add_option("--eps-prime", a_epsp);

  int n_max = 5;
  auto* sweep = app.add_subcommand("sweep", "brute-force AVD index over all small connected graphs");
  common(sweep);
  sweep->add_option("--n-max", n_max);

  int b_graphs = 50, b_n = 200, b_dmin = 40, b_dmax = 80;
  auto* bench = app.add_subcommand("bench", "time the pipeline on random graphs");
  common(bench);
  bench->add_option("--graphs", b_graphs);
  bench->add_option("-n,--n", b_n);
  bench->add_option("--delta-min", b_dmin);
  bench->add_option("--delta-max", b_dmax);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(o, gen_n, gen_delta, gen_model, out_path);
    if (*color) return cmd_color(o, input, out_path);
    if (*ver) return cmd_verify(o, input, colouring_path);
    if (*codec) return cmd_codec_test(o, input, runs, truncate, gadgets, inject);
    if (*analyze) {
      return cmd_analyze(o, a_const, a_sweep, a_dyck, a_t, a_spec, a_delta, a_cross, a_max_exp, a_eps1, a_epsp,
                         analyze->count("--eps1") > 0);
    }
    if (*sweep) return cmd_sweep(o, n_max);
    if (*bench) return cmd_bench(o, b_graphs, b_n, b_dmin, b_dmax);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const RegimeError& e) {
    std::cerr << "regime: " << e.what() << "\n";
    return kRegime;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant: " << e.what() << "\n";
    return kVerifyFail;
  } catch (const DecodeMismatch& e) {
    std::cerr << "decode: " << e.what() << "\n";
    return kVerifyFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
