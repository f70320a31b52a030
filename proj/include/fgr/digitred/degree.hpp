#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fgr/instances.hpp"

namespace fgr {

// h: node -> [1..q]^3 on global ids (A, then B, then C).
struct ShiftFunction {
  std::vector<Weight3> h;
  std::array<int, 3> part_sizes{0, 0, 0};
  std::int64_t q = 1;
  std::uint64_t seed = 0;

  const Weight3& of(int part, int i) const;
};

struct ShiftResult {
  WeightedTripartiteGraph graph;
  ShiftFunction shift;
};

// w_uv + h(v) - h(u) on every stored edge u -> v. Directed triangle totals
// are unchanged.
ShiftResult random_shift(const WeightedTripartiteGraph& g3, std::int64_t q, std::uint64_t seed);

// max(1, floor(6n / q)).
int degree_threshold(int n, std::int64_t q);

// ceil(2 log2 size), at least 1.
int default_rounds(std::size_t size);

struct PruneStats {
  std::size_t built_edges = 0;
  std::size_t removed_nodes = 0;
  int threshold = 0;
};

// Drops every node of degree above the threshold in one pass.
UnweightedTripartiteGraph prune_degree(const UnweightedTripartiteGraph& g, int threshold, PruneStats* stats = nullptr);

// One pruned sparse graph per round: random_shift, build_sparse_exact,
// prune_degree with threshold degree_threshold(g3.node_count(), q). Round r
// draws its shift from derive_seed(seed, shift, r).
std::vector<UnweightedTripartiteGraph> degree_bounded_sparse(const WeightedTripartiteGraph& g3, std::int64_t q,
                                                             std::uint64_t seed, int rounds,
                                                             std::vector<PruneStats>* stats = nullptr);

}  // namespace fgr
