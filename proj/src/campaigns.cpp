#include "fgr/campaigns.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "fgr/detred.hpp"
#include "fgr/digitred.hpp"
#include "fgr/errors.hpp"
#include "fgr/fewc4.hpp"
#include "fgr/instances.hpp"
#include "fgr/rng.hpp"

namespace fgr {

using nlohmann::json;

namespace {

// Running tally shared by every campaign.
struct Tally {
  std::size_t trials = 0;
  std::size_t mismatches = 0;
  json rows = json::array();
  json metrics = json::object();
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++mismatches;
    if (failures.size() < 20) failures.push_back(what);
  }
};

std::size_t trials_or(const CampaignConfig& cfg, std::size_t fallback) { return cfg.trials.value_or(fallback); }

Rng trial_rng(const CampaignConfig& cfg, std::uint64_t i) { return Rng(derive_seed(cfg.seed, Stream::trial, i)); }

int draw_int(Rng& rng, int lo, int hi) { return static_cast<int>(rng.uniform(lo, hi)); }

std::array<int, 3> draw_parts(const CampaignConfig& cfg, Rng& rng, int lo, int hi) {
  if (cfg.parts) return *cfg.parts;
  return {draw_int(rng, lo, hi), draw_int(rng, lo, hi), draw_int(rng, lo, hi)};
}

std::size_t planted_for(const CampaignConfig& cfg, std::uint64_t trial) { return cfg.planted.value_or(trial % 2); }

std::vector<IndexTriple> as_triples(const WitnessList& list) {
  std::vector<IndexTriple> out;
  out.reserve(list.items.size());
  for (const auto& w : list.items) out.push_back({w.a, w.b, w.c});
  return out;
}

json triple_json(const std::optional<IndexTriple>& t) {
  return t ? json::array({t->i, t->j, t->k}) : json(nullptr);
}

json witness_json(const std::optional<TriangleWitness>& w) {
  return w ? json::array({w->a, w->b, w->c}) : json(nullptr);
}

// t = n^exponent for a size n.
double t_of(double n, double exponent) { return std::pow(std::max(1.0, n), exponent); }

// ---------------------------------------------------------------------------

void digit_identity(const CampaignConfig& cfg, Tally& tally) {
  std::vector<std::int64_t> qs = cfg.q ? std::vector<std::int64_t>{*cfg.q} : std::vector<std::int64_t>{2, 3, 4};
  for (std::int64_t q : qs) {
    if (q < 1) throw PreconditionError("q must be at least 1");
    const std::int64_t cap = q * q * q;
    const auto deltas = delta_set(q);
    const std::set<Weight3> dset(deltas.begin(), deltas.end());
    std::vector<Weight3> digits;
    for (std::int64_t x = -cap; x <= cap; ++x) digits.push_back(digit_decompose(x, q).as_weight());
    std::size_t checked = 0, zero = 0, bad = 0;
    for (std::int64_t x = -cap; x <= cap; ++x)
      for (std::int64_t y = -cap; y <= cap; ++y) {
        const Weight3 xy = digits[x + cap] + digits[y + cap];
        for (std::int64_t z = -cap; z <= cap; ++z) {
          const bool is_zero = x + y + z == 0;
          const bool in_delta = dset.count(xy + digits[z + cap]) != 0;
          ++checked;
          zero += is_zero;
          if (is_zero != in_delta) ++bad;
        }
      }
    ++tally.trials;
    tally.expect(bad == 0, "digit identity fails for q = " + std::to_string(q));
    tally.rows.push_back({{"q", q}, {"triples", checked}, {"zero_sums", zero}, {"mismatches", bad}});
  }
}

void sparse_correspondence(const CampaignConfig& cfg, Tally& tally) {
  const std::size_t trials = trials_or(cfg, 200);
  std::size_t unbalanced = 0, exact_triangles = 0, threesum_triples = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = trial_rng(cfg, i);
    const auto parts = draw_parts(cfg, rng, 2, cfg.n.value_or(12));
    const std::int64_t W = cfg.weight_bound.value_or(rng.uniform(1, 64));
    const double density = cfg.density.value_or(0.3 + 0.7 * rng.uniform01());
    const std::size_t planted = std::min<std::size_t>(planted_for(cfg, i) * 3,
                                                      static_cast<std::size_t>(parts[0]) * parts[1] * parts[2]);
    const auto g = gen_exact_tri(parts, W, density, planted, rng.next());
    Radix radix = Radix::uniform(ceil_cbrt(W));
    if (i % 4 == 3) {
      radix.q2 = rng.uniform(1, 4);
      radix.q3 = rng.uniform(1, 4);
      radix.q1 = (W + radix.q2 * radix.q3 - 1) / (radix.q2 * radix.q3);
      ++unbalanced;
    }
    const auto via_digits = digit_zero_triangles(g, radix);
    const auto brute = as_triples(brute_exact_triangles(g));
    exact_triangles += brute.size();
    ++tally.trials;
    tally.expect(via_digits == brute, "exact trial " + std::to_string(i));
    tally.rows.push_back({{"kind", "exact-tri"},
                          {"trial", i},
                          {"parts", parts},
                          {"W", W},
                          {"radix", {radix.q1, radix.q2, radix.q3}},
                          {"brute", brute.size()},
                          {"decoded", via_digits.size()}});
  }
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = trial_rng(cfg, trials + i);
    const auto n = static_cast<std::size_t>(rng.uniform(1, cfg.n.value_or(24)));
    const std::int64_t n3 = static_cast<std::int64_t>(n * n * n);
    const std::int64_t W = cfg.weight_bound.value_or(rng.uniform(1, n3));
    const auto inst = gen_3sum(n, W, std::min(n, planted_for(cfg, i)), rng.next());
    const auto q = ceil_cbrt(W);
    const auto via_digits = digit_zero_triples(inst, q);
    const auto brute = brute_3sum(inst).items;
    threesum_triples += brute.size();
    ++tally.trials;
    tally.expect(via_digits == brute, "3sum trial " + std::to_string(i));
    tally.rows.push_back({{"kind", "3sum"},
                          {"trial", i},
                          {"n", n},
                          {"W", W},
                          {"q", q},
                          {"brute", brute.size()},
                          {"decoded", via_digits.size()}});
  }
  tally.metrics["unbalanced_trials"] = unbalanced;
  tally.metrics["exact_triangles"] = exact_triangles;
  tally.metrics["threesum_triples"] = threesum_triples;
}

void edge_growth(const CampaignConfig& cfg, Tally& tally) {
  struct Check {
    const char* family;
    std::vector<std::int64_t> sizes;
    std::int64_t fixed;
    double lo;
    double hi;
  };
  const std::int64_t n = cfg.n.value_or(12);
  const std::int64_t q = cfg.q.value_or(4);
  const std::vector<Check> checks{
      {"exact-q", {2, 4, 8, 16}, n, 0.85, 1.15},
      {"exact-n", {8, 16, 32}, q, 1.85, 2.15},
      {"3sum-q", {4, 8, 16, 32}, 16, 0.85, 1.15},
      {"3sum-n", {16, 32, 64, 128, 256}, 32, 0.85, 1.15},
  };
  for (const auto& c : checks) {
    const auto ladder = bench_ladder(c.family, c.sizes, cfg.seed, c.fixed);
    const double slope = ladder.slope.value_or(std::nan(""));
    ++tally.trials;
    tally.expect(slope >= c.lo && slope <= c.hi, std::string("edge slope out of range for ") + c.family);
    json rows = json::array();
    for (const auto& r : ladder.rows) rows.push_back({{"size", r.size}, {"edges", r.edges}, {"max_degree", r.max_degree}});
    tally.rows.push_back(
        {{"family", c.family}, {"fixed", c.fixed}, {"slope", slope}, {"range", {c.lo, c.hi}}, {"ladder", rows}});
  }
}

void modp_soundness(const CampaignConfig& cfg, Tally& tally) {
  const std::size_t trials = trials_or(cfg, 500);
  const auto parts = cfg.parts.value_or(std::array<int, 3>{12, 12, 12});
  const std::int64_t W = cfg.weight_bound.value_or(std::int64_t{1} << 20);
  const std::size_t planted = cfg.planted.value_or(20);
  const double density = cfg.density.value_or(0.5);
  const double exponent = cfg.t_exponent.value_or(2.25);
  const auto nodes = static_cast<std::uint64_t>(parts[0] + parts[1] + parts[2]);

  std::size_t zero_triangles = 0, missed = 0, fp_total = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = trial_rng(cfg, i);
    const auto g = gen_exact_tri(parts, W, density, planted, rng.next());
    const auto [lo, hi] = prime_range(nodes, t_of(static_cast<double>(nodes), exponent));
    const auto p = random_prime(lo, hi, rng.next()).p;
    const auto res = residues(g, p);
    const Radix radix = Radix::uniform(ceil_cbrt(2 * static_cast<std::int64_t>(p)));
    std::set<IndexTriple> candidates;
    for (std::int64_t k = 0; k <= 2; ++k)
      for (const auto& t : digit_zero_triangles(shift_ab(res, k * static_cast<std::int64_t>(p)), radix))
        candidates.insert(t);
    const auto zeros = as_triples(brute_exact_triangles(g));
    std::size_t trial_missed = 0;
    for (const auto& z : zeros) trial_missed += candidates.count(z) == 0;
    const std::size_t fps = candidates.size() - (zeros.size() - trial_missed);
    zero_triangles += zeros.size();
    missed += trial_missed;
    fp_total += fps;
    ++tally.trials;
    tally.expect(trial_missed == 0, "false negative in trial " + std::to_string(i));
    tally.expect(zeros.size() >= planted, "planted triangles present in trial " + std::to_string(i));
    tally.expect(fps == modp_false_positives(g, p), "false-positive count in trial " + std::to_string(i));
    tally.rows.push_back({{"trial", i}, {"p", p}, {"zero", zeros.size()}, {"false_positives", fps}});
  }
  tally.metrics["zero_triangles"] = zero_triangles;
  tally.metrics["false_negatives"] = missed;
  tally.metrics["false_positives"] = fp_total;

  // False positives against t on a doubling ladder, t = N^3 / 1600 * 2^r.
  const std::size_t fp_seeds = cfg.trials ? std::max<std::size_t>(1, *cfg.trials / 5) : 100;
  const std::array<int, 3> fp_parts{12, 12, 12};
  const std::int64_t fp_w = std::int64_t{1} << 30;
  const double n3 = 36.0 * 36.0 * 36.0;
  std::vector<double> ts, means;
  json ladder = json::array();
  double c_max = 0.0;
  for (int r = 0; r < 5; ++r) {
    const double t = n3 / 1600.0 * std::pow(2.0, r);
    const auto [lo, hi] = prime_range(36, t);
    std::size_t total = 0;
    for (std::size_t s = 0; s < fp_seeds; ++s) {
      const std::uint64_t base = derive_seed(cfg.seed, Stream::trial, 1'000'000 + s);
      const auto g = gen_exact_tri(fp_parts, fp_w, 1.0, 0, base);
      const auto p = random_prime(lo, hi, derive_seed(base, Stream::prime, static_cast<std::uint64_t>(r))).p;
      total += modp_false_positives(g, p);
    }
    const double mean = static_cast<double>(total) / static_cast<double>(fp_seeds);
    const double c = mean / (t * std::log(36.0));
    c_max = std::max(c_max, c);
    ts.push_back(t);
    means.push_back(mean);
    ladder.push_back({{"t", t}, {"prime_range", {lo, hi}}, {"mean_false_positives", mean}, {"C", c}});
  }
  const auto slope = loglog_slope(ts, means);
  ++tally.trials;
  tally.expect(slope && *slope >= 0.7 && *slope <= 1.3, "false-positive growth exponent out of [0.7, 1.3]");
  tally.expect(std::isfinite(c_max), "fitted C is finite");
  tally.metrics["fp_slope"] = slope ? json(*slope) : json(nullptr);
  tally.metrics["fp_C"] = c_max;
  tally.metrics["fp_ladder"] = ladder;
}

void equiv_modp(const CampaignConfig& cfg, Tally& tally) {
  const std::size_t trials = trials_or(cfg, 200);
  const double exponent = cfg.t_exponent.value_or(2.25);
  const int n = cfg.n.value_or(16);
  const std::int64_t W = cfg.weight_bound.value_or(std::int64_t{1} << 16);
  std::size_t inferred = 0, false_positives = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = trial_rng(cfg, i);
    const auto parts = draw_parts(cfg, rng, 2, n);
    const double density = cfg.density.value_or(0.2 + 0.8 * rng.uniform01());
    const auto g = gen_exact_tri(parts, W, density, planted_for(cfg, i), rng.next());
    const double t = t_of(g.node_count(), exponent);
    const auto res = exact_tri_via_listing(g, t, default_listing_backend(), cfg.budget, rng.next());
    const auto brute = brute_exact_triangles(g, {0, 0, 0}, 1);
    const bool expect = !brute.items.empty();
    ++tally.trials;
    tally.expect(res.found == expect, "existence differs in trial " + std::to_string(i));
    if (!res.report.inferred_yes)
      tally.expect(res.witness == (expect ? std::optional<TriangleWitness>(brute.items.front()) : std::nullopt),
                   "witness differs in trial " + std::to_string(i));
    inferred += res.report.inferred_yes;
    false_positives += res.report.false_positives;
    tally.rows.push_back({{"trial", i},
                          {"parts", parts},
                          {"found", res.found},
                          {"brute", expect},
                          {"witness", witness_json(res.witness)},
                          {"p", res.report.p ? json(*res.report.p) : json(nullptr)},
                          {"q", res.report.q ? json(*res.report.q) : json(nullptr)},
                          {"candidates", res.report.candidates},
                          {"false_positives", res.report.false_positives}});
  }
  tally.metrics["inferred_yes"] = inferred;
  tally.metrics["false_positives"] = false_positives;
}

void equiv_an(const CampaignConfig& cfg, Tally& tally) {
  const std::size_t trials = trials_or(cfg, 200);
  const double exponent = cfg.t_exponent.value_or(1.8);
  const int n = cfg.n.value_or(12);
  const std::int64_t W = cfg.weight_bound.value_or(std::int64_t{1} << 12);
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = trial_rng(cfg, i);
    const auto parts = draw_parts(cfg, rng, 2, n);
    const double density = cfg.density.value_or(0.2 + 0.8 * rng.uniform01());
    const auto g = gen_exact_tri(parts, W, density, planted_for(cfg, i), rng.next());
    const double t = t_of(g.node_count(), exponent);
    const auto res = exact_tri_via_an(g, t, default_all_nodes_backend(), rng.next());
    const auto brute = brute_exact_triangles(g, {0, 0, 0}, 1);
    const bool expect = !brute.items.empty();
    ++tally.trials;
    tally.expect(res.found == expect, "existence differs in trial " + std::to_string(i));
    if (expect) tally.expect(res.witness == brute.items.front(), "witness differs in trial " + std::to_string(i));
    const double ratio = res.report.metrics.at("an_bound_ratio");
    worst_ratio = std::max(worst_ratio, ratio);
    tally.rows.push_back({{"trial", i},
                          {"parts", parts},
                          {"found", res.found},
                          {"brute", expect},
                          {"witness", witness_json(res.witness)},
                          {"rounds", res.report.metrics.at("rounds")},
                          {"degree_threshold", res.report.metrics.at("degree_threshold")},
                          {"an_bound_ratio", ratio}});
  }
  tally.metrics["worst_an_bound_ratio"] = worst_ratio;
}

void equiv_detect(const CampaignConfig& cfg, Tally& tally) {
  const std::size_t trials = trials_or(cfg, 200);
  const int n = cfg.n.value_or(14);
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = trial_rng(cfg, i);
    const auto parts = draw_parts(cfg, rng, 2, n);
    const std::int64_t W = cfg.weight_bound.value_or(std::max({parts[0], parts[1], parts[2]}));
    const double density = cfg.density.value_or(0.2 + 0.8 * rng.uniform01());
    const auto g = gen_exact_tri(parts, W, density, planted_for(cfg, i), rng.next());
    ReductionReport rep;
    const bool found = detect_via_sparse(g, default_detect_backend(), &rep);
    const bool expect = !brute_exact_triangles(g, {0, 0, 0}, 1).items.empty();
    ++tally.trials;
    tally.expect(found == expect, "existence differs in trial " + std::to_string(i));
    tally.rows.push_back({{"trial", i}, {"parts", parts}, {"W", W}, {"found", found}, {"brute", expect}});
  }
}

void equiv_3sum(const CampaignConfig& cfg, Tally& tally) {
  const std::size_t trials = trials_or(cfg, 200);
  const double exponent = cfg.t_exponent.value_or(1.5);
  const int n_max = cfg.n.value_or(32);
  std::size_t false_positives = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = trial_rng(cfg, i);
    const auto n = static_cast<std::size_t>(rng.uniform(1, n_max));
    const std::int64_t W = cfg.weight_bound.value_or(static_cast<std::int64_t>(n * n * n));
    const auto inst = gen_3sum(n, W, std::min(n, planted_for(cfg, i)), rng.next());
    const auto res =
        threesum_via_listing(inst, t_of(static_cast<double>(n), exponent), default_listing_backend(), cfg.budget, rng.next());
    const auto brute = brute_3sum(inst, 1);
    const bool expect = !brute.items.empty();
    ++tally.trials;
    tally.expect(res.found == expect, "existence differs in trial " + std::to_string(i));
    if (!res.report.inferred_yes)
      tally.expect(res.witness == (expect ? std::optional<IndexTriple>(brute.items.front()) : std::nullopt),
                   "witness differs in trial " + std::to_string(i));
    false_positives += res.report.false_positives;
    tally.rows.push_back({{"trial", i},
                          {"n", n},
                          {"W", W},
                          {"found", res.found},
                          {"brute", expect},
                          {"witness", triple_json(res.witness)},
                          {"p", res.report.p ? json(*res.report.p) : json(nullptr)},
                          {"false_positives", res.report.false_positives}});
  }
  tally.metrics["false_positives"] = false_positives;
}

void det_reduce_campaign(const CampaignConfig& cfg, Tally& tally) {
  const std::size_t trials = trials_or(cfg, 100);
  const int n = cfg.n.value_or(16);
  const auto parts = cfg.parts.value_or(std::array<int, 3>{n, n, 4});
  const std::int64_t W = cfg.weight_bound.value_or(std::int64_t{1} << 20);
  const double density = cfg.density.value_or(0.9);
  std::size_t rng_draws = 0, witnesses = 0, exact_rows = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = trial_rng(cfg, i);
    const auto planted = cfg.planted.value_or(static_cast<std::size_t>(rng.uniform(0, 6)));
    const auto g = gen_exact_tri(parts, W, density, planted, rng.next());

    const auto before = Rng::draw_count();
    const auto first = det_reduce(g, default_all_edges_backend(), cfg.epsilon);
    const auto second = det_reduce(g, default_all_edges_backend(), cfg.epsilon);
    const auto exact = det_reduce(scale_by_4(g), default_all_edges_backend(), cfg.epsilon);
    const auto draws = Rng::draw_count() - before;
    rng_draws += draws;

    const auto brute = near_zero_witness_table_brute(g, kTolerance);
    ++tally.trials;
    const std::string tag = " in trial " + std::to_string(i);
    tally.expect(draws == 0, "RNG draws" + tag);
    tally.expect(first.table.same_support(brute), "witness support differs" + tag);
    for (int a = 0; a < g.part_size(0); ++a)
      for (int b = 0; b < g.part_size(1); ++b)
        if (const auto& w = first.table.at(a, b)) {
          const auto tw = g.triangle_weight(a, b, w->c);
          tally.expect(tw && (*tw)[0] == w->sum && std::llabs(w->sum) <= kTolerance, "witness sum" + tag);
          ++witnesses;
        }
    tally.expect(first.table.to_json().dump() == second.table.to_json().dump() &&
                     first.stats.to_json().dump() == second.stats.to_json().dump(),
                 "repeat run differs" + tag);
    tally.expect(first.stats.max_level_pieces <= first.stats.piece_bound, "piece bound" + tag);
    tally.expect(first.stats.max_scans_per_pair <= 1, "one scan per pair" + tag);

    // Scaled by 4, |sum| <= 3 forces an exact zero.
    std::set<std::pair<int, int>> zero_pairs;
    for (const auto& w : brute_exact_triangles(g).items) zero_pairs.insert({w.a, w.b});
    std::size_t rows = 0;
    bool exact_ok = true;
    for (int a = 0; a < g.part_size(0); ++a)
      for (int b = 0; b < g.part_size(1); ++b) {
        const auto& w = exact.table.at(a, b);
        if (w) ++rows;
        exact_ok = exact_ok && (w.has_value() == (zero_pairs.count({a, b}) != 0)) && (!w || w->sum == 0);
      }
    exact_rows += rows;
    tally.expect(exact_ok, "scaled table differs from exact triangles" + tag);
    tally.rows.push_back({{"trial", i},
                          {"planted", planted},
                          {"witnesses", first.table.filled()},
                          {"exact_pairs", rows},
                          {"stats", first.stats.to_json()}});
  }
  tally.metrics["rng_draws"] = rng_draws;
  tally.metrics["witnesses"] = witnesses;
  tally.metrics["exact_pairs"] = exact_rows;
}

void degree_bound(const CampaignConfig& cfg, Tally& tally) {
  const std::size_t trials = trials_or(cfg, 500);
  const auto parts = cfg.parts.value_or(std::array<int, 3>{10, 10, 10});
  const std::int64_t q = cfg.q.value_or(32);
  const std::int64_t W = cfg.weight_bound.value_or(q * q * q);
  const double density = cfg.density.value_or(1.0);
  const Radix radix = Radix::uniform(q);

  // Hard degree assertion over random instances, every carry pattern.
  const std::size_t audits = std::max<std::size_t>(1, trials / 50);
  std::size_t graphs = 0;
  int worst = 0;
  for (std::size_t i = 0; i < audits; ++i) {
    Rng rng = trial_rng(cfg, 1'000'000 + i);
    const auto g3 = decompose_graph(gen_exact_tri(parts, W, density, 0, rng.next()), radix);
    const int thr = degree_threshold(g3.node_count(), q);
    const std::uint64_t seed = rng.next();
    for (const auto& delta : delta_set(radix))
      for (const auto& pruned : degree_bounded_sparse(retarget(g3, delta), q, seed, 1)) {
        ++graphs;
        worst = std::max(worst, pruned.max_degree());
        tally.expect(pruned.max_degree() <= thr, "pruned degree above threshold");
      }
  }
  ++tally.trials;
  tally.metrics["audited_graphs"] = graphs;
  tally.metrics["worst_degree"] = worst;

  // Single-round survival of one planted zero triangle.
  std::size_t survived = 0, observed = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = trial_rng(cfg, i);
    const auto g = gen_exact_tri(parts, W, density, cfg.planted.value_or(1), rng.next());
    const auto zeros = brute_exact_triangles(g).items;
    const auto g3 = decompose_graph(g, radix);
    const std::uint64_t seed = rng.next();
    ++tally.trials;
    tally.expect(!zeros.empty(), "planted triangle present in trial " + std::to_string(i));
    if (zeros.empty()) continue;
    const auto& z = zeros.front();
    const Weight3 delta = g3.weight(PartPair::AB, z.a, z.b) + g3.weight(PartPair::BC, z.b, z.c) +
                          g3.weight(PartPair::CA, z.c, z.a);
    const auto pruned = degree_bounded_sparse(retarget(g3, delta), q, seed, 1).front();
    tally.expect(pruned.max_degree() <= degree_threshold(g3.node_count(), q), "pruned degree above threshold");
    bool hit = false;
    for (const auto& t : list_triangles(pruned).triangles) {
      const auto src = decode(pruned, t);
      hit = hit || (src.i == z.a && src.j == z.b && src.k == z.c);
    }
    ++observed;
    survived += hit;
    tally.rows.push_back({{"trial", i}, {"triangle", {z.a, z.b, z.c}}, {"survived", hit}});
  }
  const double rate = observed ? static_cast<double>(survived) / static_cast<double>(observed) : 0.0;
  tally.expect(rate >= 0.4, "survival rate below 0.4");
  tally.metrics["survival_rate"] = rate;
  tally.metrics["threshold"] = degree_threshold(parts[0] + parts[1] + parts[2], q);
}

void an_recursion(const CampaignConfig& cfg, Tally& tally) {
  const std::size_t trials = trials_or(cfg, 100);
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = trial_rng(cfg, i);
    const auto parts = draw_parts(cfg, rng, 1, cfg.n.value_or(40));
    // Expected edge count at most 2000.
    const double pairs = static_cast<double>(parts[0]) * parts[1] + static_cast<double>(parts[1]) * parts[2] +
                         static_cast<double>(parts[2]) * parts[0];
    const double density = cfg.density.value_or(std::min(1.0, rng.uniform01() * 1800.0 / pairs));
    const auto g = gen_sparse_tri(parts, density, rng.next());
    const auto an = list_via_an_oracle(g, default_all_nodes_backend());
    const auto brute = list_triangles(g).triangles;
    ++tally.trials;
    tally.expect(g.edge_count() <= 2000 || cfg.density.has_value(), "edge count within 2000");
    tally.expect(an.triangles == brute, "triangle list differs in trial " + std::to_string(i));
    tally.rows.push_back({{"trial", i},
                          {"parts", parts},
                          {"edges", g.edge_count()},
                          {"triangles", brute.size()},
                          {"oracle_calls", an.stats.oracle_calls},
                          {"bound_ratio", an.stats.bound_ratio()}});
  }
  const auto ladder = bench_ladder("an", {10, 20, 40, 80, 160}, cfg.seed);
  double lo = INFINITY, hi = 0.0;
  json rows = json::array();
  for (const auto& r : ladder.rows) {
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
    rows.push_back({{"parts", r.size}, {"edges", r.edges}, {"max_degree", r.max_degree}, {"C", r.ratio}});
  }
  ++tally.trials;
  tally.expect(lo > 0 && hi <= 2.0 * lo, "fitted C varies more than 2x across the ladder");
  tally.metrics["ladder"] = rows;
  tally.metrics["C_min"] = lo;
  tally.metrics["C_max"] = hi;
}

void fewc4_campaign(const CampaignConfig& cfg, Tally& tally) {
  const std::size_t trials = trials_or(cfg, 50);
  const int n_max = cfg.n.value_or(15);
  const double x = cfg.x.value_or(0.5);
  std::size_t dense_iterations = 0, backend_calls = 0, audited = 0, counted = 0, fallbacks = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = trial_rng(cfg, i);
    const int n = draw_int(rng, 2, n_max);
    const std::int64_t W = cfg.weight_bound.value_or(rng.uniform(1, 6));
    const double density = cfg.density.value_or(0.3 + 0.7 * rng.uniform01());
    const std::size_t triples = n < 3 ? 0 : static_cast<std::size_t>(n) * (n - 1) * (n - 2) / 6;
    const auto g = antisymmetrize(gen_undirected(n, W, density, std::min(triples, planted_for(cfg, i)), rng.next()));
    const bool expect = !brute_exact_triangles(g, {0, 0, 0}, 1).items.empty();
    const std::uint64_t seed = rng.next();
    const std::string tag = " in trial " + std::to_string(i);

    Fewc4Trace trace;
    trace.on_dense_iteration = [&](const DirectedWeightedGraph& d, const HeavyPairContext& ctx,
                                   const std::vector<std::pair<int, int>>& e0) {
      ++dense_iterations;
      tally.expect(e0 == brute_partners(d, ctx.i0, ctx.k0), "E0 differs from brute partners" + tag);
    };
    trace.on_backend_call = [&](const SubInstance& sub) {
      ++audited;
      bool ok = sub.graph.antisymmetric();
      try {
        sub.graph.validate();
      } catch (const InvariantViolation&) {
        ok = false;
      }
      if (sub.graph.node_count() <= 12) {
        ++counted;
        ok = ok && property1_holds(sub.graph);
      }
      tally.expect(ok, "4-cycle bound audit" + tag);
    };
    json runs = json::array();
    for (double delta : {cfg.delta, 1.5}) {
      const auto res = solve_with_fewc4_oracle(g, brute_fewc4_backend(), delta, x, seed, &trace);
      tally.expect(res.witness.has_value() == expect, "existence differs" + tag);
      if (res.witness) {
        const auto tw = g.triangle_weight(res.witness->a, res.witness->b, res.witness->c);
        tally.expect(tw && (*tw)[0] == 0, "witness is a zero triangle" + tag);
      }
      backend_calls += res.stats.backend_calls;
      fallbacks += res.stats.brute_fallbacks;
      runs.push_back({{"delta", delta}, {"found", res.witness.has_value()}, {"stats", res.stats.to_json()}});
    }
    ++tally.trials;
    tally.rows.push_back({{"trial", i}, {"n", n}, {"W", W}, {"brute", expect}, {"runs", runs}});
  }
  tally.metrics["dense_iterations"] = dense_iterations;
  tally.metrics["backend_calls"] = backend_calls;
  tally.metrics["audited_sub_instances"] = audited;
  tally.metrics["counted_sub_instances"] = counted;
  tally.metrics["brute_fallbacks"] = fallbacks;
}

using CampaignFn = void (*)(const CampaignConfig&, Tally&);

const std::map<std::string, CampaignFn>& registry() {
  static const std::map<std::string, CampaignFn> r{
      {"digit-identity", digit_identity},   {"sparse-correspondence", sparse_correspondence},
      {"edge-growth", edge_growth},         {"modp-soundness", modp_soundness},
      {"equiv-modp", equiv_modp},           {"equiv-an", equiv_an},
      {"equiv-detect", equiv_detect},       {"equiv-3sum", equiv_3sum},
      {"det-reduce", det_reduce_campaign},  {"degree-bound", degree_bound},
      {"an-recursion", an_recursion},       {"fewc4", fewc4_campaign},
  };
  return r;
}

// ---------------------------------------------------------------------------
// Bench ladders

BenchRow sparse_row(const std::string& family, std::int64_t size, std::int64_t n, std::int64_t q,
                    const UnweightedTripartiteGraph& g) {
  BenchRow row;
  row.family = family;
  row.size = size;
  row.n = n;
  row.q = q;
  row.nodes = static_cast<std::size_t>(g.node_count());
  row.edges = g.edge_count();
  row.max_degree = g.max_degree();
  return row;
}

// Random sparse graph with average degree about 4 plus the triangles
// (i, i, i) for i < n / 4, so both m and t grow linearly in n.
UnweightedTripartiteGraph an_ladder_graph(int n, std::uint64_t seed) {
  const auto base = gen_sparse_tri({n, n, n}, std::min(1.0, 2.0 / n), seed);
  UnweightedGraphBuilder b;
  for (int v = 0; v < base.node_count(); ++v) b.node(base.label(v));
  for (const auto& [u, v] : base.edges()) b.add_edge(base.label(u), base.label(v));
  for (int i = 0; i < n / 4; ++i) {
    const NodeLabel a{0, i, 0, 0}, bb{1, i, 0, 0}, c{2, i, 0, 0};
    b.add_edge(a, bb);
    b.add_edge(bb, c);
    b.add_edge(c, a);
  }
  return std::move(b).build();
}

BenchRow bench_one(const std::string& family, std::int64_t size, std::uint64_t seed, std::int64_t fixed) {
  const std::uint64_t s = derive_seed(seed, Stream::generate, static_cast<std::uint64_t>(size));
  if (family == "exact-q" || family == "exact-n") {
    const bool by_q = family == "exact-q";
    const std::int64_t n = by_q ? (fixed ? fixed : 12) : size;
    const std::int64_t q = by_q ? size : (fixed ? fixed : 4);
    const int ni = static_cast<int>(n);
    const auto g = gen_exact_tri({ni, ni, ni}, q * q * q, 1.0, 0, s);
    const auto sparse = build_sparse_exact(decompose_graph(g, Radix::uniform(q)), q);
    auto row = sparse_row(family, size, n, q, sparse);
    row.ratio = static_cast<double>(row.edges) / (3.0 * static_cast<double>(n * n * q));
    return row;
  }
  if (family == "3sum-q" || family == "3sum-n") {
    const bool by_q = family == "3sum-q";
    // Few repeated digit triples need n well below q^3.
    const std::int64_t n = by_q ? (fixed ? fixed : 16) : size;
    const std::int64_t q = by_q ? size : (fixed ? fixed : 32);
    const auto inst = gen_3sum(static_cast<std::size_t>(n), q * q * q, 0, s);
    const auto sparse = build_sparse_3sum(decompose_3sum(inst, q), q);
    auto row = sparse_row(family, size, n, q, sparse.graph);
    row.ratio = static_cast<double>(row.edges) / (3.0 * static_cast<double>(n * q));
    return row;
  }
  if (family == "an") {
    const int n = static_cast<int>(size);
    const auto g = an_ladder_graph(n, s);
    const auto an = list_via_an_oracle(g, default_all_nodes_backend());
    auto row = sparse_row(family, size, 3 * size, 0, g);
    row.oracle_calls = an.stats.oracle_calls;
    row.ratio = an.stats.bound_ratio();
    return row;
  }
  if (family == "det") {
    const int n = static_cast<int>(size);
    const int c = static_cast<int>(fixed ? fixed : 4);
    const auto g = gen_exact_tri({n, n, c}, std::int64_t{1} << 20, 0.9, 2, s);
    const auto res = det_reduce(g, default_all_edges_backend());
    BenchRow row;
    row.family = family;
    row.size = size;
    row.n = size;
    row.nodes = static_cast<std::size_t>(g.node_count());
    row.edges = g.edge_count();
    row.oracle_calls = res.stats.backend_calls;
    row.ratio = res.stats.piece_bound
                    ? static_cast<double>(res.stats.max_level_pieces) / static_cast<double>(res.stats.piece_bound)
                    : 0.0;
    return row;
  }
  throw PreconditionError("unknown bench family: " + family);
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

}  // namespace

nlohmann::json CampaignConfig::to_json() const {
  json j;
  j["name"] = name;
  j["seed"] = seed;
  j["n"] = n ? json(*n) : json(nullptr);
  j["parts"] = parts ? json(*parts) : json(nullptr);
  j["weight_bound"] = weight_bound ? json(*weight_bound) : json(nullptr);
  j["density"] = density ? json(*density) : json(nullptr);
  j["planted"] = planted ? json(*planted) : json(nullptr);
  j["trials"] = trials ? json(*trials) : json(nullptr);
  j["t_exponent"] = t_exponent ? json(*t_exponent) : json(nullptr);
  j["q"] = q ? json(*q) : json(nullptr);
  j["x"] = x ? json(*x) : json(nullptr);
  j["epsilon"] = epsilon;
  j["delta"] = delta;
  j["budget"] = budget == kNoCap ? json("unlimited") : json(budget);
  return j;
}

const std::vector<std::string>& campaign_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, fn] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
  const auto it = registry().find(cfg.name);
  if (it == registry().end()) throw PreconditionError("unknown campaign: " + cfg.name);
  if (cfg.trials && *cfg.trials == 0) throw PreconditionError("trial count must be at least 1");
  Tally tally;
  it->second(cfg, tally);
  FGR_CHECK(tally.trials > 0, "campaign ran at least one trial");
  CampaignResult out;
  out.trials = tally.trials;
  out.mismatches = tally.mismatches;
  out.passed = tally.mismatches == 0;
  out.report = {{"campaign", cfg.name},
                {"config", cfg.to_json()},
                {"trials", tally.trials},
                {"mismatches", tally.mismatches},
                {"passed", out.passed},
                {"failures", tally.failures},
                {"metrics", tally.metrics},
                {"rows", tally.rows}};
  return out;
}

const std::vector<std::string>& bench_families() {
  static const std::vector<std::string> f{"exact-q", "exact-n", "3sum-q", "3sum-n", "an", "det"};
  return f;
}

BenchLadder bench_ladder(const std::string& family, const std::vector<std::int64_t>& sizes, std::uint64_t seed,
                         std::int64_t fixed) {
  if (std::find(bench_families().begin(), bench_families().end(), family) == bench_families().end())
    throw PreconditionError("unknown bench family: " + family);
  if (!std::is_sorted(sizes.begin(), sizes.end())) throw PreconditionError("ladder sizes must be ascending");
  BenchLadder ladder;
  std::vector<double> xs, ys;
  for (std::int64_t size : sizes) {
    if (size < 1) throw PreconditionError("ladder sizes must be positive");
    const auto start = std::chrono::steady_clock::now();
    auto row = bench_one(family, size, seed, fixed);
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    xs.push_back(static_cast<double>(size));
    ys.push_back(static_cast<double>(row.edges));
    ladder.rows.push_back(std::move(row));
  }
  ladder.slope = loglog_slope(xs, ys);
  return ladder;
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i)
    if (x[i] > 0 && y[i] > 0) pts.push_back({std::log(x[i]), std::log(y[i])});
  if (pts.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (const auto& [a, b] : pts) {
    mx += a;
    my += b;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0;
  for (const auto& [a, b] : pts) {
    sxy += (a - mx) * (b - my);
    sxx += (a - mx) * (a - mx);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

std::string BenchLadder::to_csv() const {
  std::ostringstream os;
  os << "# fgr-bench v1\n";
  os << "family,size,n,q,nodes,edges,max_degree,oracle_calls,ratio,seconds\n";
  for (const auto& r : rows)
    os << r.family << ',' << r.size << ',' << r.n << ',' << r.q << ',' << r.nodes << ',' << r.edges << ','
       << r.max_degree << ',' << r.oracle_calls << ',' << format_double(r.ratio) << ',' << format_double(r.seconds)
       << '\n';
  if (slope) os << "# slope log(edges)/log(size) = " << format_double(*slope) << '\n';
  return os.str();
}

nlohmann::json BenchLadder::to_json() const {
  json rows_j = json::array();
  for (const auto& r : rows)
    rows_j.push_back({{"family", r.family},
                      {"size", r.size},
                      {"n", r.n},
                      {"q", r.q},
                      {"nodes", r.nodes},
                      {"edges", r.edges},
                      {"max_degree", r.max_degree},
                      {"oracle_calls", r.oracle_calls},
                      {"ratio", r.ratio},
                      {"seconds", r.seconds}});
  return {{"format", "fgr-bench v1"}, {"rows", rows_j}, {"slope", slope ? json(*slope) : json(nullptr)}};
}

}  // namespace fgr
