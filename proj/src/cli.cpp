#include "fgr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fgr/campaigns.hpp"
#include "fgr/detred.hpp"
#include "fgr/digitred.hpp"
#include "fgr/errors.hpp"
#include "fgr/fewc4.hpp"
#include "fgr/instances.hpp"
#include "fgr/oracles.hpp"
#include "fgr/rng.hpp"

namespace fgr {

using nlohmann::json;

namespace {

// Every flag the harness understands; each subcommand registers the subset
// it reads.
struct Options {
  std::uint64_t seed = 1;
  std::optional<int> n;
  std::vector<int> parts;
  std::optional<std::int64_t> weight_bound;
  std::optional<double> density;
  std::optional<std::size_t> planted;
  std::optional<std::size_t> trials;
  std::optional<double> t_exponent;
  double epsilon = 0.25;
  double delta = 0.1;
  std::optional<double> x;
  std::optional<std::size_t> budget;
  std::string out_path;
  std::string format = "json";
  std::vector<std::int64_t> sizes;
  std::optional<std::int64_t> q;
  std::string in_path;
  std::optional<double> error;
  std::string kind;
  std::string to;
  std::string pipeline;
  std::string campaign;
};

// Usage problems detected after parsing; reported like parse errors.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::array<int, 3> parts_or(const Options& o, int fallback) {
  if (o.parts.empty()) {
    const int n = o.n.value_or(fallback);
    return {n, n, n};
  }
  if (o.parts.size() != 3) throw UsageError("--parts takes three comma-separated sizes");
  return {o.parts[0], o.parts[1], o.parts[2]};
}

json read_json(const std::string& path) {
  if (path.empty()) throw UsageError("--in is required");
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.out_path);
  f << text;
}

void emit_json(const Options& o, const json& j, std::ostream& out) { emit(o, j.dump(2) + "\n", out); }

double t_for(const Options& o, double n, double fallback_exponent) {
  return std::pow(std::max(1.0, n), o.t_exponent.value_or(fallback_exponent));
}

std::size_t budget_of(const Options& o) { return o.budget.value_or(kUnlimited); }

json witness_json(const std::optional<TriangleWitness>& w) {
  return w ? json::array({w->a, w->b, w->c}) : json(nullptr);
}

// ---------------------------------------------------------------------------

int cmd_gen(const Options& o, std::ostream& out) {
  const std::string kind = o.kind.empty() ? "exact-tri" : o.kind;
  const std::size_t planted = o.planted.value_or(0);
  if (kind == "exact-tri") {
    const auto parts = parts_or(o, 8);
    emit(o, serialize(gen_exact_tri(parts, o.weight_bound.value_or(1 << 16), o.density.value_or(1.0), planted, o.seed)) + "\n",
         out);
  } else if (kind == "3sum") {
    const auto n = static_cast<std::size_t>(o.n.value_or(16));
    const auto w = o.weight_bound.value_or(static_cast<std::int64_t>(n * n * n));
    emit(o, serialize(gen_3sum(n, w, planted, o.seed)) + "\n", out);
  } else if (kind == "sparse-tri") {
    emit(o, serialize(gen_sparse_tri(parts_or(o, 16), o.density.value_or(0.1), o.seed)) + "\n", out);
  } else if (kind == "antisym") {
    const auto g = gen_undirected(o.n.value_or(8), o.weight_bound.value_or(8), o.density.value_or(0.5), planted, o.seed);
    emit(o, serialize(antisymmetrize(g)) + "\n", out);
  } else {
    throw UsageError("unknown --kind " + kind + " (exact-tri, 3sum, sparse-tri, antisym)");
  }
  return 0;
}

json sparse_family_json(const std::vector<std::pair<Weight3, UnweightedTripartiteGraph>>& graphs) {
  json arr = json::array();
  for (const auto& [delta, g] : graphs) arr.push_back({{"delta", delta}, {"graph", to_json(g)}});
  return arr;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const json in = read_json(o.in_path);
  const std::string to = o.to.empty() ? "sparse" : o.to;
  if (in.value("kind", "") == "3sum") {
    const auto inst = three_sum_from_json(in);
    const std::int64_t q = o.q.value_or(ceil_cbrt(std::max<std::int64_t>(1, inst.weight_bound)));
    if (to == "digits") {
      emit_json(o, {{"q", q}, {"elements", decompose_3sum(inst, q)}}, out);
    } else if (to == "sparse") {
      std::vector<std::pair<Weight3, UnweightedTripartiteGraph>> graphs;
      for (const auto& d : delta_set(q)) graphs.push_back({d, build_sparse_3sum(decompose_3sum(inst, q, d), q).graph});
      emit_json(o, {{"q", q}, {"graphs", sparse_family_json(graphs)}}, out);
    } else {
      throw UsageError("3sum instances reduce --to digits or sparse");
    }
    return 0;
  }
  const auto g = exact_tri_from_json(in);
  const std::int64_t q = o.q.value_or(ceil_cbrt(std::max<std::int64_t>(1, g.weight_bound())));
  if (to == "modp") {
    const auto res = mod_p_reduce(g, t_for(o, g.node_count(), 2.25), o.seed);
    emit_json(o,
              {{"p", res.prime.p}, {"prime_range", {res.prime.lo, res.prime.hi}}, {"graph", to_json(res.graph)}},
              out);
  } else if (to == "digits") {
    emit_json(o, {{"q", q}, {"graph", to_json(decompose_graph(g, Radix::uniform(q)))}}, out);
  } else if (to == "sparse" || to == "pruned") {
    const auto g3 = decompose_graph(g, Radix::uniform(q));
    std::vector<std::pair<Weight3, UnweightedTripartiteGraph>> graphs;
    std::uint64_t task = 0;
    for (const auto& d : delta_set(q)) {
      const auto shifted = retarget(g3, d);
      if (to == "sparse")
        graphs.push_back({d, build_sparse_exact(shifted, q)});
      else
        graphs.push_back({d, degree_bounded_sparse(shifted, q, derive_seed(o.seed, Stream::shift, task++), 1).front()});
    }
    json j = {{"q", q}, {"graphs", sparse_family_json(graphs)}};
    if (to == "pruned") j["degree_threshold"] = degree_threshold(g3.node_count(), q);
    emit_json(o, j, out);
  } else if (to == "halve") {
    emit(o, serialize(halve(g)) + "\n", out);
  } else if (to == "scale4") {
    emit(o, serialize(scale_by_4(g)) + "\n", out);
  } else {
    throw UsageError("unknown --to " + to + " (modp, digits, sparse, pruned, halve, scale4)");
  }
  return 0;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const json in = read_json(o.in_path);
  const std::string kind = in.value("kind", "");
  std::string pipeline = o.pipeline.empty() ? "listing" : o.pipeline;
  if (kind == "3sum") {
    const auto inst = three_sum_from_json(in);
    if (pipeline == "brute") {
      const auto b = brute_3sum(inst, 1);
      const json w = b.items.empty() ? json(nullptr) : json::array({b.items[0].i, b.items[0].j, b.items[0].k});
      emit_json(o, {{"pipeline", pipeline}, {"found", !b.items.empty()}, {"witness", w}}, out);
      return 0;
    }
    if (pipeline != "listing") throw UsageError("3sum instances solve with --pipeline listing or brute");
    const auto res = threesum_via_listing(inst, t_for(o, static_cast<double>(inst.max_size()), 1.5),
                                          default_listing_backend(), budget_of(o), o.seed);
    const json w = res.witness ? json::array({res.witness->i, res.witness->j, res.witness->k}) : json(nullptr);
    emit_json(o, {{"pipeline", pipeline}, {"found", res.found}, {"witness", w}, {"report", res.report.to_json(false)}},
              out);
    return 0;
  }
  if (kind == "sparse-tri") {
    const auto g = sparse_tri_from_json(in);
    const auto an = list_via_an_oracle(g, default_all_nodes_backend());
    json tris = json::array();
    for (const auto& t : an.triangles) tris.push_back({t.a, t.b, t.c});
    emit_json(o,
              {{"pipeline", "an-listing"},
               {"triangles", tris},
               {"oracle_calls", an.stats.oracle_calls},
               {"level_edges", an.stats.level_edges},
               {"bound_ratio", an.stats.bound_ratio()}},
              out);
    return 0;
  }
  const auto g = exact_tri_from_json(in);
  json j = {{"pipeline", pipeline}};
  if (pipeline == "listing" || pipeline == "an") {
    const auto res = pipeline == "listing"
                         ? exact_tri_via_listing(g, t_for(o, g.node_count(), 2.25), default_listing_backend(),
                                                 budget_of(o), o.seed)
                         : exact_tri_via_an(g, t_for(o, g.node_count(), 1.8), default_all_nodes_backend(), o.seed);
    j["found"] = res.found;
    j["witness"] = witness_json(res.witness);
    j["report"] = res.report.to_json(false);
  } else if (pipeline == "detect") {
    ReductionReport rep;
    j["found"] = detect_via_sparse(g, default_detect_backend(), &rep);
    j["report"] = rep.to_json(false);
  } else if (pipeline == "brute") {
    const auto b = brute_exact_triangles(g, {0, 0, 0}, 1);
    j["found"] = !b.items.empty();
    j["witness"] = b.items.empty() ? json(nullptr) : json::array({b.items[0].a, b.items[0].b, b.items[0].c});
  } else if (pipeline == "det") {
    const auto res = det_reduce(g, default_all_edges_backend(), o.epsilon);
    j["table"] = res.table.to_json();
    j["stats"] = res.stats.to_json();
  } else if (pipeline == "fewc4") {
    const auto res = solve_with_fewc4_oracle(g, brute_fewc4_backend(), o.delta, o.x.value_or(0.5), o.seed);
    j["found"] = res.witness.has_value();
    j["witness"] = witness_json(res.witness);
    j["stats"] = res.stats.to_json();
  } else {
    throw UsageError("unknown --pipeline " + pipeline + " (listing, an, detect, brute, det, fewc4)");
  }
  emit_json(o, j, out);
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  CampaignConfig cfg;
  cfg.name = o.campaign;
  cfg.seed = o.seed;
  cfg.n = o.n;
  if (!o.parts.empty()) cfg.parts = parts_or(o, 0);
  cfg.weight_bound = o.weight_bound;
  cfg.density = o.density;
  cfg.planted = o.planted;
  cfg.trials = o.trials;
  cfg.t_exponent = o.t_exponent;
  cfg.q = o.q;
  cfg.x = o.x;
  cfg.epsilon = o.epsilon;
  cfg.delta = o.delta;
  cfg.budget = budget_of(o);
  if (cfg.trials && *cfg.trials == 0) throw UsageError("--trials must be at least 1");
  if (o.format != "json") throw UsageError("verify reports are json");
  const auto res = run_campaign(cfg);
  emit_json(o, res.report, out);
  if (!res.passed) {
    err << "verify " << cfg.name << ": " << res.mismatches << " mismatches in " << res.trials << " trials\n";
    return 1;
  }
  return 0;
}

int cmd_bench(const Options& o, std::ostream& out) {
  const std::string family = o.kind.empty() ? "exact-q" : o.kind;
  const std::int64_t fixed = family.ends_with("-q") ? o.n.value_or(0) : (family.ends_with("-n") ? o.q.value_or(0) : o.n.value_or(0));
  const auto ladder = bench_ladder(family, o.sizes, o.seed, fixed);
  if (o.format == "csv")
    emit(o, ladder.to_csv(), out);
  else if (o.format == "json")
    emit_json(o, ladder.to_json(), out);
  else
    throw UsageError("--format is json or csv");
  return 0;
}

int cmd_estimate(const Options& o, std::ostream& out) {
  const auto g = exact_tri_from_json(read_json(o.in_path));
  const auto d = DirectedWeightedGraph::from_tripartite(g);
  const double n = std::max(1, d.node_count());
  const double target = o.error.value_or(n * n);
  const TupleMode mode = o.pipeline == "distinct" ? TupleMode::distinct : TupleMode::all;
  if (!o.pipeline.empty() && o.pipeline != "distinct" && o.pipeline != "all")
    throw UsageError("estimate --pipeline is all or distinct");
  const auto est = estimate_zero_4cycles(d, target, o.seed, mode);
  emit_json(o,
            {{"mode", mode == TupleMode::all ? "all" : "distinct"},
             {"error_target", target},
             {"estimate", est.value},
             {"samples", est.samples},
             {"hits", est.hits},
             {"tuple_space", est.tuple_space},
             {"exact", est.exact},
             {"repeated", repeated_zero_4cycles(d)},
             {"brute_count", count_zero_4cycles_brute(d)}},
            out);
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fine-grained reduction toolkit", "fgr"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--n", o.n, "size (part size or array length)");
    sub->add_option("--parts", o.parts, "part sizes n1,n2,n3")->delimiter(',');
    sub->add_option("--weight-bound", o.weight_bound, "weight bound W");
    sub->add_option("--density", o.density, "edge density");
    sub->add_option("--planted", o.planted, "planted solutions");
    sub->add_option("--t-exponent", o.t_exponent, "t = n^exponent");
    sub->add_option("--epsilon", o.epsilon, "chunk exponent of the deterministic reduction");
    sub->add_option("--delta", o.delta, "dense/sparse exponent of the 4-cycle driver");
    sub->add_option("--x", o.x, "bucket exponent of the 4-cycle driver");
    sub->add_option("--budget", o.budget, "listing output budget");
    sub->add_option("--q", o.q, "digit base");
    sub->add_option("--out", o.out_path, "output path (default stdout)");
    sub->add_option("--format", o.format, "json or csv");
  };

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  common(gen);
  gen->add_option("--kind", o.kind, "exact-tri, 3sum, sparse-tri or antisym");

  auto* reduce = app.add_subcommand("reduce", "apply one reduction step to an instance");
  common(reduce);
  reduce->add_option("--in", o.in_path, "instance file")->required();
  reduce->add_option("--to", o.to, "modp, digits, sparse, pruned, halve or scale4");

  auto* solve = app.add_subcommand("solve", "solve an instance through a pipeline");
  common(solve);
  solve->add_option("--in", o.in_path, "instance file")->required();
  solve->add_option("--pipeline", o.pipeline, "listing, an, detect, brute, det or fewc4");

  auto* verify = app.add_subcommand("verify", "run a verification campaign against the oracles");
  common(verify);
  verify->add_option("campaign", o.campaign, "campaign name")->required()->check(CLI::IsMember(campaign_names()));
  verify->add_option("--trials", o.trials, "trial count");

  auto* bench = app.add_subcommand("bench", "size ladder with CSV output");
  common(bench);
  bench->add_option("--kind", o.kind, "exact-q, exact-n, 3sum-q, 3sum-n, an or det")
      ->check(CLI::IsMember(bench_families()));
  bench->add_option("--sizes", o.sizes, "ascending sizes")->delimiter(',');

  auto* estimate = app.add_subcommand("estimate", "sampled zero-weight 4-cycle count");
  common(estimate);
  estimate->add_option("--in", o.in_path, "antisymmetric instance file")->required();
  estimate->add_option("--error", o.error, "error target E");
  estimate->add_option("--pipeline", o.pipeline, "all or distinct tuples");

  if (!args.empty() && !args[0].starts_with("-") && !app.get_subcommand_no_throw(args[0])) {
    err << "error: unknown subcommand " << args[0] << "\n" << app.help();
    return 2;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(o, out);
    if (reduce->parsed()) return cmd_reduce(o, out);
    if (solve->parsed()) return cmd_solve(o, out);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (bench->parsed()) return cmd_bench(o, out);
    if (estimate->parsed()) return cmd_estimate(o, out);
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }
  err << app.help();
  return 2;
}

}  // namespace fgr
