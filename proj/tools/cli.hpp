#pragma once

// Command-line front end. `run` is kept separate from main() so the test
// suite can drive every subcommand in-process.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gapforge/gapforge.hpp"

namespace gapforge::cli {

struct Options {
  std::string command;
  std::string in;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> k;
  std::optional<int> c;
  std::optional<std::size_t> s;
  std::optional<std::size_t> d;
  std::optional<std::size_t> t;
  std::optional<std::size_t> n;
  std::optional<std::string> epsilon;
  std::optional<std::string> delta;
  std::size_t delta_dup = 1;
  std::string mode = "exact";
  std::size_t jobs = 1;
  std::size_t cap_vertices = kDefaultVertexCap;
  std::size_t cap_edges = kDefaultEdgeCap;
  std::uint64_t max_nodes = SolverBudget{}.max_nodes;
  std::string promise = "yes";
  std::size_t left_pad = 0;
  std::size_t right_pad = 0;
  std::optional<std::size_t> a_size;
  std::optional<std::size_t> b_size;
  double edge_prob = 0.5;
  std::string coloring = "single";
  std::string set;
  std::uint64_t samples = 100'000;
};

namespace detail {

inline nlohmann::json ds_json(const DominatingSetResult& r) {
  return {{"size", r.size()}, {"vertices", r.vertices}, {"optimal", r.optimal}, {"lower_bound", r.gamma_lower_bound}};
}

inline std::vector<Vertex> parse_vertex_list(const std::string& text) {
  std::vector<Vertex> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    Vertex v = 0;
    if (!gapforge::detail::parse_uint(std::string_view(item), v)) throw InputError("bad vertex id '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// Writes artifacts next to the report: <stem>.<suffix>.
class ArtifactSink {
 public:
  ArtifactSink(const std::string& report_path, std::string digest) : digest_(std::move(digest)) {
    if (report_path.empty()) return;
    std::filesystem::path p(report_path);
    if (p.extension() == ".json") p.replace_extension();
    stem_ = p.string();
  }

  bool enabled() const { return !stem_.empty(); }

  nlohmann::json& paths() { return paths_; }

  void graph(const std::string& suffix, const Graph& g) {
    if (!enabled()) return;
    const std::string path = stem_ + "." + suffix + ".gr";
    write_text_file(path, "c input_digest " + digest_ + "\n" + write_graph(g));
    paths_.push_back(path);
  }

  void json(const std::string& suffix, nlohmann::json body) {
    if (!enabled()) return;
    const std::string path = stem_ + "." + suffix + ".json";
    body["input_digest"] = digest_;
    write_text_file(path, body.dump(2) + "\n");
    paths_.push_back(path);
  }

  void text(const std::string& suffix, const std::string& ext, const std::string& body) {
    if (!enabled()) return;
    const std::string path = stem_ + "." + suffix + "." + ext;
    write_text_file(path, "c input_digest " + digest_ + "\n" + body);
    paths_.push_back(path);
  }

 private:
  std::string stem_;
  std::string digest_;
  nlohmann::json paths_ = nlohmann::json::array();
};

struct Context {
  const Options& opt;
  nlohmann::json parameters = nlohmann::json::object();
  ArtifactSink sink;
  BuildCaps caps;
  SolverBudget budget;
  std::uint64_t seed = 0;
};

template <class T>
nlohmann::json opt_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
T require(const std::optional<T>& v, const char* flag) {
  if (!v) throw InputError(std::string("missing required flag ") + flag);
  return *v;
}

inline std::string require_in(const Options& o) {
  if (o.in.empty()) throw InputError("missing required flag --in");
  return o.in;
}

inline nlohmann::json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline ColoredInstance color_for(const Context& ctx, const GapBicliqueInstance& inst, int a_colors, int b_colors) {
  if (ctx.opt.coloring == "single") return color_single_block(inst, a_colors, b_colors, ctx.seed);
  if (ctx.opt.coloring == "family") return attach_colorings(inst, a_colors, b_colors);
  throw InputError("unknown --coloring '" + ctx.opt.coloring + "' (expected single or family)");
}

inline std::optional<DominatingSetResult> witness_for(const ColoredInstance& ci, const GapBicliqueInstance& inst,
                                                      const ReductionOutput& out, bool main) {
  if (!inst.planted) return std::nullopt;
  auto lifted = ci.rainbow_lift(*inst.planted);
  if (!lifted) return std::nullopt;
  return main ? extract_yes_witness_main(out, *lifted) : extract_yes_witness32(out, *lifted);
}

inline nlohmann::json reduction_summary(const ReductionOutput& out) {
  return {{"vertices", out.graph.num_vertices()}, {"edges", out.graph.num_edges()}, {"digest", content_digest(write_graph(out.graph))}};
}

// ---------------------------------------------------------------------------
// Subcommands. Each returns the "result" object; failures surface as exceptions.

inline nlohmann::json cmd_gen_family(Context& ctx) {
  const auto n = require(ctx.opt.n, "--n");
  const int k = require(ctx.opt.k, "--k");
  ctx.parameters["n"] = n;
  ctx.parameters["k"] = k;
  auto family = build_family(n, k);
  nlohmann::json result = {{"size", family.size()}, {"verified_during_build", family.verified}};
  FamilyVerdict verdict;
  try {
    verdict = verify_family(family);
    result["check"] = "exhaustive";
  } catch (const CapExceeded&) {
    ctx.parameters["samples"] = ctx.opt.samples;
    verdict = verify_family_sampled(family, ctx.opt.samples, ctx.seed);
    result["check"] = "sampled";
  }
  result["ok"] = verdict.ok;
  result["subsets_checked"] = verdict.subsets_checked;
  if (!verdict.ok) result["counterexample"] = verdict.counterexample;
  ctx.sink.json("family", to_json(family));
  if (!verdict.ok) throw VerificationError("family misses a " + std::to_string(k) + "-subset");
  return result;
}

inline nlohmann::json cmd_preprocess(Context& ctx) {
  const int k = require(ctx.opt.k, "--k");
  ctx.parameters["k"] = k;
  const Graph g = read_graph_file(require_in(ctx.opt));
  auto pre = preprocess(g, k);
  ctx.sink.graph("graph", pre.graph);
  return {{"k_out", pre.k}, {"added", pre.added}, {"vertices", pre.graph.num_vertices()}};
}

inline GapBicliqueInstance synth_from(const Context& ctx, const std::string& promise, std::uint64_t seed) {
  const auto s = require(ctx.opt.s, "--s");
  const auto d = require(ctx.opt.d, "--d");
  if (promise == "yes") return synth_yes_instance(s, d, ctx.opt.left_pad, ctx.opt.right_pad, seed);
  if (promise == "no") {
    if (d < 1) throw InputError("--d must be positive");
    return synth_no_instance(s, d - 1, ctx.opt.a_size.value_or(s + ctx.opt.left_pad),
                             ctx.opt.b_size.value_or(d + ctx.opt.right_pad), ctx.opt.edge_prob, seed);
  }
  throw InputError("unknown --promise '" + promise + "' (expected yes or no)");
}

inline nlohmann::json cmd_synth(Context& ctx) {
  ctx.parameters["promise"] = ctx.opt.promise;
  ctx.parameters["s"] = opt_json(ctx.opt.s);
  ctx.parameters["d"] = opt_json(ctx.opt.d);
  ctx.parameters["left_pad"] = ctx.opt.left_pad;
  ctx.parameters["right_pad"] = ctx.opt.right_pad;
  if (ctx.opt.promise == "no") {
    ctx.parameters["a_size"] = opt_json(ctx.opt.a_size);
    ctx.parameters["b_size"] = opt_json(ctx.opt.b_size);
    ctx.parameters["edge_prob"] = ctx.opt.edge_prob;
  }
  auto inst = synth_from(ctx, ctx.opt.promise, ctx.seed);
  const auto check = verify_promise(inst);
  ctx.sink.json("instance", to_json(inst));
  return {{"a_size", inst.graph.a_size()},
          {"b_size", inst.graph.b_size()},
          {"edges", inst.graph.num_edges()},
          {"promise", to_string(inst.promise)},
          {"seed_used", inst.seed},
          {"verified", check.ok},
          {"detail", check.detail}};
}

inline nlohmann::json cmd_reduce32(Context& ctx) {
  const auto t = require(ctx.opt.t, "--t");
  ctx.parameters["t"] = t;
  ctx.parameters["coloring"] = ctx.opt.coloring;
  const auto inst = instance_from_json(read_json_file(require_in(ctx.opt)));
  const auto ci = color_for(ctx, inst, static_cast<int>(inst.s), static_cast<int>(inst.d));
  const auto out = build_g_prime(ci.colored, t, ctx.caps);
  nlohmann::json result = reduction_summary(out);
  result["witness_bound"] = inst.d + inst.s * t;
  if (auto w = witness_for(ci, inst, out, false)) {
    if (!is_dominating(out.graph, w->vertices)) throw VerificationError("planted witness does not dominate G'");
    result["witness"] = ds_json(*w);
  }
  ctx.sink.graph("graph", out.graph);
  ctx.sink.json("manifest", out.manifest);
  return result;
}

inline nlohmann::json cmd_reduce_main(Context& ctx) {
  const int c = require(ctx.opt.c, "--c");
  const auto t = ctx.opt.t.value_or(1);
  if (c < 1) throw InputError("--c must be positive");
  ctx.parameters["c"] = c;
  ctx.parameters["t"] = t;
  ctx.parameters["delta_dup"] = ctx.opt.delta_dup;
  ctx.parameters["coloring"] = ctx.opt.coloring;
  const auto base = instance_from_json(read_json_file(require_in(ctx.opt)));
  const auto inst = duplicate_side(base, ctx.opt.delta_dup);
  const auto ci = color_for(ctx, inst, static_cast<int>(inst.s), static_cast<int>(inst.d));
  const auto out = build_g_c(ci.colored, GcParams{static_cast<std::size_t>(c), t, ctx.opt.delta_dup, base.s}, ctx.caps);
  nlohmann::json result = reduction_summary(out);
  std::size_t dc = 1;
  for (int i = 0; i < c; ++i) dc *= inst.d;
  result["witness_bound"] = dc + inst.s * static_cast<std::size_t>(c) * t;
  if (auto w = witness_for(ci, inst, out, true)) {
    if (!is_dominating(out.graph, w->vertices)) throw VerificationError("planted witness does not dominate G_c");
    result["witness"] = ds_json(*w);
  }
  ctx.sink.graph("graph", out.graph);
  ctx.sink.json("manifest", out.manifest);
  return result;
}

inline nlohmann::json cmd_params(Context& ctx) {
  const int k = require(ctx.opt.k, "--k");
  ctx.parameters["k"] = k;
  if (ctx.opt.epsilon || ctx.opt.delta) {
    const Rational eps = parse_rational(require(ctx.opt.epsilon, "--epsilon"));
    const Rational del = parse_rational(require(ctx.opt.delta, "--delta"));
    ctx.parameters["reduction"] = "g_prime";
    ctx.parameters["epsilon"] = to_string(eps);
    ctx.parameters["delta"] = to_string(del);
    std::optional<BigInt> n;
    if (ctx.opt.n) {
      n = BigInt(*ctx.opt.n);
      ctx.parameters["n"] = *ctx.opt.n;
    }
    return to_json(derive_params32(k, n, eps, del));
  }
  const int c = ctx.opt.c.value_or(1);
  const int delta = ctx.opt.delta_dup > 1 ? static_cast<int>(ctx.opt.delta_dup) : 2;
  ctx.parameters["reduction"] = "g_c";
  ctx.parameters["c"] = c;
  ctx.parameters["delta_dup"] = delta;
  return to_json(derive_params_main(k, c, delta));
}

inline nlohmann::json cmd_solve_ds(Context& ctx) {
  ctx.parameters["mode"] = to_string(ctx.budget.mode);
  const Graph g = read_graph_file(require_in(ctx.opt));
  const auto r = exact_min_dominating_set(g, ctx.budget);
  if (!is_dominating(g, r.vertices)) throw InternalFault("solver returned a non-dominating set");
  return ds_json(r);
}

inline nlohmann::json cmd_clique(Context& ctx) {
  const int k = require(ctx.opt.k, "--k");
  ctx.parameters["k"] = k;
  const Graph g = read_graph_file(require_in(ctx.opt));
  const auto w = has_k_clique(g, k, ctx.opt.max_nodes);
  nlohmann::json result = {{"found", w.has_value()}};
  if (w) result["witness"] = *w;
  return result;
}

inline nlohmann::json cmd_circuit(Context& ctx) {
  const std::string path = require_in(ctx.opt);
  const std::string text = read_text_file(path);
  const bool is_circuit = text.rfind("vars", 0) == 0;
  const MonotoneCircuit circuit = is_circuit ? parse_circuit(text) : graph_to_circuit(parse_graph(text));
  ctx.parameters["input_kind"] = is_circuit ? "circuit" : "graph";
  const auto a = min_weight_satisfying(circuit, ctx.opt.max_nodes);
  nlohmann::json result = {{"vars", circuit.num_vars},
                           {"clauses", circuit.clauses.size()},
                           {"weight", a.weight()},
                           {"support", a.support},
                           {"optimal", a.optimal},
                           {"lower_bound", a.lower_bound}};
  if (!is_circuit) {
    const Graph g = parse_graph(text);
    const auto ds = exact_min_dominating_set(g, ctx.budget);
    result["gamma"] = ds.size();
    const bool support_dominates = is_dominating(g, std::vector<Vertex>(a.support.begin(), a.support.end()));
    result["support_dominates"] = support_dominates;
    ctx.sink.text("circuit", "circ", write_circuit(circuit));
    if (a.optimal && ds.optimal && (a.weight() != ds.size() || !support_dominates)) {
      throw VerificationError("circuit weight " + std::to_string(a.weight()) + " differs from gamma " +
                              std::to_string(ds.size()));
    }
  }
  return result;
}

inline nlohmann::json cmd_verify(Context& ctx) {
  const std::string path = require_in(ctx.opt);
  nlohmann::json result;
  if (std::filesystem::path(path).extension() == ".gr") {
    const Graph g = read_graph_file(path);
    const auto set = parse_vertex_list(ctx.opt.set);
    ctx.parameters["set"] = set;
    const bool ok = is_dominating(g, set);
    result = {{"kind", "dominating_set"}, {"ok", ok}, {"size", set.size()}};
    if (!ok) throw VerificationError("given set does not dominate the graph");
    return result;
  }
  const auto j = read_json_file(path);
  if (j.contains("functions")) {
    const auto family = family_from_json(j);
    FamilyVerdict v;
    try {
      v = verify_family(family);
      result["check"] = "exhaustive";
    } catch (const CapExceeded&) {
      v = verify_family_sampled(family, ctx.opt.samples, ctx.seed);
      result["check"] = "sampled";
    }
    result["kind"] = "family";
    result["ok"] = v.ok;
    result["subsets_checked"] = v.subsets_checked;
    if (!v.ok) throw VerificationError("family misses subset " + nlohmann::json(v.counterexample).dump());
    return result;
  }
  if (j.contains("promise")) {
    const auto inst = instance_from_json(j);
    const auto check = verify_promise(inst);
    result = {{"kind", "instance"}, {"promise", to_string(inst.promise)}, {"ok", check.ok}, {"detail", check.detail}};
    if (check.extremal) result["extremal"] = {{"count", check.extremal->count}, {"witness", check.extremal->witness}};
    if (!check.ok) throw VerificationError("promise violated: " + check.detail);
    return result;
  }
  throw InputError(path + ": not a graph, colour family or gap instance");
}

inline nlohmann::json cmd_gap_demo(Context& ctx, nlohmann::json& gap) {
  const auto s = require(ctx.opt.s, "--s");
  const auto d = require(ctx.opt.d, "--d");
  const auto t = require(ctx.opt.t, "--t");
  const bool main = ctx.opt.c.has_value();
  const std::size_t c = main ? static_cast<std::size_t>(*ctx.opt.c) : 1;
  const std::size_t delta = ctx.opt.delta_dup;
  ctx.parameters["s"] = s;
  ctx.parameters["d"] = d;
  ctx.parameters["t"] = t;
  ctx.parameters["reduction"] = main ? "g_c" : "g_prime";
  if (main) {
    ctx.parameters["c"] = c;
    ctx.parameters["delta_dup"] = delta;
  }
  if (d < 2) throw InputError("gap-demo needs --d >= 2 so the NO side has a threshold below d");

  // Matched pair on equal part sizes: |A| = s + 1, |B| = d, singleton beta classes.
  const auto yes = synth_yes_instance(s, d, 1, 0, ctx.seed);
  const auto no = synth_no_instance(s, d - 1, s + 1, d, ctx.opt.edge_prob, ctx.seed);
  auto build = [&](const GapBicliqueInstance& base) {
    const auto inst = main ? duplicate_side(base, delta) : base;
    auto ci = color_single_block(inst, static_cast<int>(inst.s), static_cast<int>(d), ctx.seed);
    auto out = main ? build_g_c(ci.colored, GcParams{c, t, delta, s}, ctx.caps) : build_g_prime(ci.colored, t, ctx.caps);
    return std::make_tuple(inst, std::move(ci), std::move(out));
  };
  const auto [yes_inst, yes_ci, yes_out] = build(yes);
  const auto [no_inst, no_ci, no_out] = build(no);

  std::size_t dc = 1;
  for (std::size_t i = 0; i < c; ++i) dc *= d;
  const std::size_t bound = main ? dc + delta * s * c * t : d + s * t;
  const auto witness = witness_for(yes_ci, yes_inst, yes_out, main);
  if (!witness || witness->size() != bound || !is_dominating(yes_out.graph, witness->vertices)) {
    throw VerificationError("YES witness failed to dominate at the expected size");
  }
  const auto yes_opt = exact_min_dominating_set(yes_out.graph, ctx.budget);
  const auto no_opt = exact_min_dominating_set(no_out.graph, ctx.budget);

  ctx.sink.json("yes_instance", to_json(yes_inst));
  ctx.sink.json("no_instance", to_json(no_inst));
  ctx.sink.graph("yes_graph", yes_out.graph);
  ctx.sink.graph("no_graph", no_out.graph);

  nlohmann::json result = {{"yes", reduction_summary(yes_out)},
                           {"no", reduction_summary(no_out)},
                           {"yes_witness", ds_json(*witness)},
                           {"yes_optimum", ds_json(yes_opt)},
                           {"no_optimum", ds_json(no_opt)},
                           {"no_seed_used", no.seed}};
  // The NO value is certified only by its lower bound when the solver stops early.
  const std::size_t no_value = no_opt.optimal ? no_opt.size() : no_opt.gamma_lower_bound;
  gap = {{"ds_yes_bound", bound},
         {"ds_no_value", no_value},
         {"ds_no_certified", no_opt.optimal},
         {"ratio", static_cast<double>(no_value) / static_cast<double>(bound)},
         {"ratio_exact", to_string(Rational(no_value, bound))}};
  if (no_value <= bound) {
    throw VerificationError("no gap: NO value " + std::to_string(no_value) + " <= YES bound " + std::to_string(bound));
  }
  return result;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Options opt;
  CLI::App app{"gapforge: reductions from biclique gap instances to dominating set"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen-family", "build and check a perfect hash family Lambda_{n,k}"},
      {"preprocess", "pad a clique instance so that 6 divides k+1"},
      {"synth", "generate a verified YES or NO gap biclique instance"},
      {"reduce32", "build G' from a gap instance"},
      {"reduce-main", "build G_c from a gap instance"},
      {"params", "derive the exact reduction parameters"},
      {"solve-ds", "minimum dominating set"},
      {"clique", "k-clique search"},
      {"circuit", "dominating set as a monotone 2-level circuit"},
      {"verify", "check a dominating set, colour family or gap instance"},
      {"gap-demo", "matched YES/NO pipeline with exact solving"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->callback([&opt, name = name] { opt.command = name; });
  }
  app.add_option("--in", opt.in, "input file");
  app.add_option("--out", opt.out, "report path; artifacts are written next to it");
  app.add_option("--seed", opt.seed, "RNG seed (falls back to GAPFORGE_SEED, then 0)");
  app.add_option("--k", opt.k);
  app.add_option("--c", opt.c);
  app.add_option("--s", opt.s);
  app.add_option("--d", opt.d);
  app.add_option("--t", opt.t);
  app.add_option("--n", opt.n);
  app.add_option("--epsilon", opt.epsilon, "exact decimal or fraction");
  app.add_option("--delta", opt.delta, "exact decimal or fraction");
  app.add_option("--delta-dup", opt.delta_dup, "duplication factor Delta")->check(CLI::PositiveNumber);
  app.add_option("--mode", opt.mode, "exact | exact_bb | exact_enum | greedy");
  app.add_option("--jobs", opt.jobs, "worker cap (all work is single-threaded)")->check(CLI::PositiveNumber);
  app.add_option("--cap-vertices", opt.cap_vertices)->check(CLI::PositiveNumber);
  app.add_option("--cap-edges", opt.cap_edges)->check(CLI::PositiveNumber);
  app.add_option("--max-nodes", opt.max_nodes, "search node budget")->check(CLI::PositiveNumber);
  app.add_option("--promise", opt.promise, "yes | no (synth)");
  app.add_option("--left-pad", opt.left_pad);
  app.add_option("--right-pad", opt.right_pad);
  app.add_option("--a-size", opt.a_size);
  app.add_option("--b-size", opt.b_size);
  app.add_option("--edge-prob", opt.edge_prob)->check(CLI::Range(0.0, 1.0));
  app.add_option("--coloring", opt.coloring, "single | family");
  app.add_option("--set", opt.set, "comma-separated vertex ids (verify on a graph)");
  app.add_option("--samples", opt.samples, "sample count when exhaustive checks exceed their cap");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const auto started = std::chrono::steady_clock::now();
  std::uint64_t seed = 0;
  if (opt.seed) {
    seed = *opt.seed;
  } else if (const char* env = std::getenv("GAPFORGE_SEED")) {
    if (!gapforge::detail::parse_uint(std::string_view(env), seed)) {
      err << "error: GAPFORGE_SEED is not an unsigned integer\n";
      return 2;
    }
  }

  nlohmann::json report = {{"command", opt.command}};
  int code = 0;
  std::string input_bytes;
  try {
    if (!opt.in.empty()) input_bytes = read_text_file(opt.in);
    SolverBudget budget;
    budget.mode = solver_mode_from_string(opt.mode);
    budget.max_nodes = opt.max_nodes;
    const std::string digest = content_digest(opt.command + "\n" + input_bytes);
    detail::Context ctx{opt, nlohmann::json::object(), detail::ArtifactSink(opt.out, digest),
                        BuildCaps{opt.cap_vertices, opt.cap_edges}, budget, seed};
    ctx.parameters["seed"] = seed;
    ctx.parameters["jobs"] = opt.jobs;
    report["inputs_digest"] = digest;
    if (!opt.in.empty()) report["input"] = opt.in;
    nlohmann::json gap;
    nlohmann::json result;
    try {
      if (opt.command == "gen-family") result = detail::cmd_gen_family(ctx);
      else if (opt.command == "preprocess") result = detail::cmd_preprocess(ctx);
      else if (opt.command == "synth") result = detail::cmd_synth(ctx);
      else if (opt.command == "reduce32") result = detail::cmd_reduce32(ctx);
      else if (opt.command == "reduce-main") result = detail::cmd_reduce_main(ctx);
      else if (opt.command == "params") result = detail::cmd_params(ctx);
      else if (opt.command == "solve-ds") result = detail::cmd_solve_ds(ctx);
      else if (opt.command == "clique") result = detail::cmd_clique(ctx);
      else if (opt.command == "circuit") result = detail::cmd_circuit(ctx);
      else if (opt.command == "verify") result = detail::cmd_verify(ctx);
      else if (opt.command == "gap-demo") result = detail::cmd_gap_demo(ctx, gap);
      report["status"] = "ok";
    } catch (const VerificationError& e) {
      report["status"] = "verification_failed";
      report["error"] = e.what();
      code = 1;
    }
    report["parameters"] = ctx.parameters;
    report["result"] = result;
    if (!gap.is_null()) report["gap"] = gap;
    report["outputs"] = ctx.sink.paths();
  } catch (const InputError& e) {
    report["status"] = "input_error";
    report["error"] = e.what();
    code = 2;
  } catch (const GenerationError& e) {
    report["status"] = "generation_failed";
    report["error"] = e.what();
    code = 1;
  } catch (const std::exception& e) {
    report["status"] = "internal_fault";
    report["error"] = e.what();
    code = 1;
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
  report["timing"] = {{"elapsed_ms", elapsed.count()}};

  if (report.contains("error")) err << "error: " << report["error"].get<std::string>() << "\n";
  const std::string text = report.dump(2) + "\n";
  if (opt.out.empty()) {
    out << text;
  } else {
    try {
      write_text_file(opt.out, text);
    } catch (const InputError& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return code;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args);
}

}  // namespace gapforge::cli
