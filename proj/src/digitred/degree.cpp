#include "fgr/digitred/degree.hpp"

#include <algorithm>
#include <cmath>

#include "fgr/digitred/sparse_build.hpp"
#include "fgr/errors.hpp"
#include "fgr/rng.hpp"

namespace fgr {

const Weight3& ShiftFunction::of(int part, int i) const {
  int off = 0;
  for (int p = 0; p < part; ++p) off += part_sizes[p];
  return h[static_cast<std::size_t>(off + i)];
}

ShiftResult random_shift(const WeightedTripartiteGraph& g3, std::int64_t q, std::uint64_t seed) {
  if (g3.weight_dim() != 3) throw PreconditionError("random_shift needs weight_dim 3");
  if (q < 1) throw PreconditionError("q must be >= 1");
  ShiftFunction s{};
  s.part_sizes = g3.part_sizes();
  s.q = q;
  s.seed = seed;
  Rng rng(seed);
  s.h.resize(static_cast<std::size_t>(g3.node_count()));
  for (auto& h : s.h)
    for (auto& x : h) x = q == 1 ? 1 : rng.uniform(1, q);

  ShiftResult out{WeightedTripartiteGraph(g3.part_sizes(), 3, g3.weight_bound() + (q - 1), g3.antisymmetric()), s};
  for (PartPair pp : kAllPairs) {
    const int from = source_part(pp);
    const int to = target_part(pp);
    g3.for_each_edge(pp, [&](int i, int j, const Weight3& w) {
      out.graph.set_edge(pp, i, j, w + s.of(to, j) - s.of(from, i));
    });
  }
  return out;
}

int degree_threshold(int n, std::int64_t q) {
  if (q < 1) throw PreconditionError("q must be >= 1");
  return static_cast<int>(std::max<std::int64_t>(1, (6 * static_cast<std::int64_t>(n)) / q));
}

int default_rounds(std::size_t size) {
  if (size <= 1) return 1;
  return std::max(1, static_cast<int>(std::ceil(2.0 * std::log2(static_cast<double>(size)))));
}

UnweightedTripartiteGraph prune_degree(const UnweightedTripartiteGraph& g, int threshold, PruneStats* stats) {
  std::vector<std::uint8_t> keep(static_cast<std::size_t>(g.node_count()), 0);
  std::size_t removed = 0;
  for (int v = 0; v < g.node_count(); ++v) {
    keep[v] = g.degree(v) <= threshold;
    removed += !keep[v];
  }
  auto pruned = g.induced(keep).graph;
  FGR_CHECK(pruned.max_degree() <= threshold, "pruned degree bound");
  if (stats) {
    stats->built_edges = g.edge_count();
    stats->removed_nodes = removed;
    stats->threshold = threshold;
  }
  return pruned;
}

std::vector<UnweightedTripartiteGraph> degree_bounded_sparse(const WeightedTripartiteGraph& g3, std::int64_t q,
                                                             std::uint64_t seed, int rounds,
                                                             std::vector<PruneStats>* stats) {
  if (rounds < 1) throw PreconditionError("rounds must be >= 1");
  const int threshold = degree_threshold(g3.node_count(), q);
  std::vector<UnweightedTripartiteGraph> out;
  out.reserve(static_cast<std::size_t>(rounds));
  for (int r = 0; r < rounds; ++r) {
    const auto shifted = random_shift(g3, q, derive_seed(seed, Stream::shift, static_cast<std::uint64_t>(r)));
    PruneStats st;
    out.push_back(prune_degree(build_sparse_exact(shifted.graph, q), threshold, &st));
    if (stats) stats->push_back(st);
  }
  return out;
}

}  // namespace fgr
