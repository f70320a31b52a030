#include "fgr/digitred/drivers.hpp"

#include <algorithm>
#include <set>

#include "fgr/digitred/an_listing.hpp"
#include "fgr/digitred/degree.hpp"
#include "fgr/digitred/digits.hpp"
#include "fgr/digitred/modp.hpp"
#include "fgr/digitred/sparse_build.hpp"
#include "fgr/errors.hpp"
#include "fgr/rng.hpp"

namespace fgr {

namespace {

// Weight_dim 1 graphs, one per residue target, whose zero-weight triangles
// include every zero-weight triangle of the input; q covers their weights.
struct Targets {
  std::vector<WeightedTripartiteGraph> graphs;
  std::int64_t q = 1;
};

Targets residue_targets(const WeightedTripartiteGraph& g, double t, std::uint64_t seed, ReductionReport& rep) {
  if (g.weight_dim() != 1) throw PreconditionError("driver needs weight_dim 1");
  StageTimer timer(rep, "modp");
  rep.t = t;
  Targets out;
  const auto [lo, hi] = prime_range(static_cast<std::uint64_t>(g.node_count()), t);
  std::uint64_t p = 0;
  try {
    p = random_prime(lo, hi, seed).p;
  } catch (const NoPrimeInRange&) {
    rep.metrics["modp_skipped"] = 1;
    out.q = ceil_cbrt(std::max<std::int64_t>(1, g.weight_bound()));
    out.graphs.push_back(g);
    rep.q = out.q;
    return out;
  }
  rep.p = p;
  const auto res = residues(g, p);
  out.q = ceil_cbrt(2 * static_cast<std::int64_t>(p));
  for (std::int64_t k = 0; k <= 2; ++k) out.graphs.push_back(shift_ab(res, k * static_cast<std::int64_t>(p)));
  rep.q = out.q;
  return out;
}

// Checks a decoded candidate against the original weights.
void consider(const WeightedTripartiteGraph& g, const IndexTriple& t, ExactTriResult& res) {
  ++res.report.candidates;
  const auto tw = g.triangle_weight(t.i, t.j, t.k);
  FGR_CHECK(tw.has_value(), "decoded triangle uses original edges");
  if ((*tw)[0] != 0) {
    ++res.report.false_positives;
    return;
  }
  ++res.report.verified;
  res.found = true;
  const TriangleWitness w{t.i, t.j, t.k, *tw};
  if (!res.witness || std::tie(w.a, w.b, w.c) < std::tie(res.witness->a, res.witness->b, res.witness->c))
    res.witness = w;
}

}  // namespace

ListingBackend default_listing_backend() {
  return [](const UnweightedTripartiteGraph& g, std::size_t cap) { return list_triangles(g, cap); };
}

AllNodesBackend default_all_nodes_backend() {
  return [](const UnweightedTripartiteGraph& g) { return all_nodes_triangle(g); };
}

DetectBackend default_detect_backend() {
  return [](const UnweightedTripartiteGraph& g) { return detect_triangle(g); };
}

ExactTriResult exact_tri_via_listing(const WeightedTripartiteGraph& g, double t, const ListingBackend& backend,
                                     std::size_t budget, std::uint64_t seed) {
  ExactTriResult res;
  res.report.seed = seed;
  const Targets targets = residue_targets(g, t, seed, res.report);
  const Radix radix = Radix::uniform(targets.q);
  std::size_t listed = 0;
  for (const auto& gt : targets.graphs) {
    const auto g3 = decompose_graph(gt, radix);
    for (const auto& delta : delta_set(radix)) {
      UnweightedTripartiteGraph sparse;
      {
        StageTimer timer(res.report, "sparse");
        sparse = build_sparse_exact(retarget(g3, delta), targets.q);
      }
      res.report.record_graph("sparse", sparse);
      const std::size_t cap = budget == kUnlimited ? kNoCap : budget - listed;
      TriangleList list;
      {
        StageTimer timer(res.report, "listing");
        list = backend(sparse, cap);
      }
      res.report.count_call("listing");
      listed += list.triangles.size();
      res.report.stage("sparse").triangles += list.triangles.size();
      for (const auto& tri : decode_all(sparse, list)) consider(g, tri, res);
      if (list.truncated) {
        res.report.inferred_yes = true;
        res.found = true;
        return res;
      }
    }
  }
  return res;
}

ExactTriResult exact_tri_via_an(const WeightedTripartiteGraph& g, double t, const AllNodesBackend& backend,
                                std::uint64_t seed, int rounds) {
  ExactTriResult res;
  res.report.seed = seed;
  if (rounds <= 0) rounds = default_rounds(static_cast<std::size_t>(g.node_count()));
  res.report.metrics["rounds"] = rounds;
  const Targets targets = residue_targets(g, t, seed, res.report);
  const Radix radix = Radix::uniform(targets.q);
  res.report.metrics["degree_threshold"] = degree_threshold(g.node_count(), targets.q);
  std::set<IndexTriple> seen;
  double worst_ratio = 0.0;
  std::uint64_t task = 0;
  for (const auto& gt : targets.graphs) {
    const auto g3 = decompose_graph(gt, radix);
    for (const auto& delta : delta_set(radix)) {
      std::vector<UnweightedTripartiteGraph> pruned;
      {
        StageTimer timer(res.report, "pruned");
        pruned = degree_bounded_sparse(retarget(g3, delta), targets.q, derive_seed(seed, Stream::shift, task++), rounds);
      }
      for (const auto& sparse : pruned) {
        res.report.record_graph("pruned", sparse);
        AnListing listing;
        {
          StageTimer timer(res.report, "an_listing");
          listing = list_via_an_oracle(sparse, backend);
        }
        res.report.count_call("all_nodes", listing.stats.oracle_calls);
        res.report.stage("pruned").triangles += listing.triangles.size();
        worst_ratio = std::max(worst_ratio, listing.stats.bound_ratio());
        for (const auto& tri : listing.triangles) {
          const IndexTriple src = decode(sparse, tri);
          if (seen.insert(src).second) consider(g, src, res);
        }
      }
    }
  }
  res.report.metrics["an_bound_ratio"] = worst_ratio;
  return res;
}

bool detect_via_sparse(const WeightedTripartiteGraph& g, const DetectBackend& backend, ReductionReport* report) {
  if (g.weight_dim() != 1) throw PreconditionError("detect_via_sparse needs weight_dim 1");
  const std::int64_t q = ceil_cbrt(std::max<std::int64_t>(1, g.weight_bound()));
  if (report) report->q = q;
  const auto g3 = decompose_graph(g, Radix::uniform(q));
  for (const auto& delta : delta_set(q)) {
    const auto sparse = build_sparse_exact(retarget(g3, delta), q);
    if (report) {
      report->record_graph("sparse", sparse);
      report->count_call("detect");
    }
    if (backend(sparse)) return true;
  }
  return false;
}

ThreeSumResult threesum_via_listing(const ThreeSumInstance& inst, double t, const ListingBackend& backend,
                                    std::size_t budget, std::uint64_t seed) {
  inst.validate();
  ThreeSumResult res;
  auto& rep = res.report;
  rep.seed = seed;
  rep.t = t;

  std::vector<ThreeSumInstance> targets;
  std::int64_t q = 1;
  {
    StageTimer timer(rep, "modp");
    const auto [lo, hi] = prime_range(inst.max_size(), t);
    std::uint64_t p = 0;
    try {
      p = random_prime(lo, hi, seed).p;
    } catch (const NoPrimeInRange&) {
      rep.metrics["modp_skipped"] = 1;
    }
    if (p == 0) {
      targets.push_back(inst);
      q = ceil_cbrt(std::max<std::int64_t>(1, inst.weight_bound));
    } else {
      rep.p = p;
      const auto pp = static_cast<std::int64_t>(p);
      q = ceil_cbrt(2 * pp);
      for (std::int64_t k = 0; k <= 2; ++k) {
        ThreeSumInstance r;
        r.weight_bound = 2 * pp;
        for (int part = 0; part < 3; ++part)
          for (auto x : inst.arrays[part]) r.arrays[part].push_back(mod_floor(x, p) - (part == 0 ? k * pp : 0));
        targets.push_back(std::move(r));
      }
    }
  }
  rep.q = q;

  std::size_t listed = 0;
  for (const auto& target : targets)
    for (const auto& delta : delta_set(q)) {
      SparseThreeSum s;
      {
        StageTimer timer(rep, "sparse");
        s = build_sparse_3sum(decompose_3sum(target, q, delta), q);
      }
      rep.record_graph("sparse", s.graph);
      const std::size_t cap = budget == kUnlimited ? kNoCap : budget - listed;
      TriangleList list;
      {
        StageTimer timer(rep, "listing");
        list = backend(s.graph, cap);
      }
      rep.count_call("listing");
      listed += list.triangles.size();
      rep.stage("sparse").triangles += list.triangles.size();
      for (const auto& ijk : decode_3sum(s, list)) {
        ++rep.candidates;
        if (inst.A()[ijk.i] + inst.B()[ijk.j] + inst.C()[ijk.k] != 0) {
          ++rep.false_positives;
          continue;
        }
        ++rep.verified;
        res.found = true;
        if (!res.witness || ijk < *res.witness) res.witness = ijk;
      }
      if (list.truncated) {
        rep.inferred_yes = true;
        res.found = true;
        return res;
      }
    }
  return res;
}

}  // namespace fgr
