#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fgr/instances.hpp"
#include "fgr/oracles.hpp"

#include "json.hpp"

namespace fgr {

// Weights at or below this magnitude go to the base case.
inline constexpr std::int64_t kBaseBound = 4;
inline constexpr std::int64_t kTolerance = 3;
inline constexpr int kDeltaMin = -6;
inline constexpr int kDeltaMax = 9;

// Throughout, w_ac is the stored C-A weight: the instance is read as an
// undirected weighted graph.
WeightedTripartiteGraph scale_by_4(const WeightedTripartiteGraph& g);
// floor(w / 2) on every weight.
WeightedTripartiteGraph halve(const WeightedTripartiteGraph& g);

// Smallest c with |w_ab + w_bc + w_ac| <= 3 for every A-B edge, by
// intersecting per-weight neighbor bitsets over C. Throws PreconditionError
// when a weight exceeds kBaseBound.
WitnessTable base_case(const WeightedTripartiteGraph& g);

// Nodes A'(0, a, 0, 0), B'(1, b, 0, 0) and U(2, c, u, 0) for c in cs, with
//   A' - B'       for (a, b) in pairs
//   a - (c, u)    u = w_ac - w_ak + delta - delta_p
//   b - (c, u)    u = w_bk - w_bc
// over the endpoints of pairs. Every pair must satisfy
// w_ab + w_bk + w_ak = delta (PreconditionError otherwise).
UnweightedTripartiteGraph build_instance(std::span<const std::pair<int, int>> pairs, int k, int delta, int delta_p,
                                         std::span<const int> cs, const WeightedTripartiteGraph& g);

struct DetStats {
  int levels = 0;
  std::size_t base_calls = 0;
  std::size_t backend_calls = 0;
  std::size_t pieces = 0;
  std::size_t max_piece = 0;
  std::size_t piece_cap = 0;
  // Largest piece count of one level and its allowed maximum.
  std::size_t max_level_pieces = 0;
  std::size_t piece_bound = 0;
  std::size_t scans = 0;
  std::size_t max_scans_per_pair = 0;
  std::size_t triangles_checked = 0;

  nlohmann::json to_json() const;
};

// Witness table for g from the table of halve(g): buckets L_{k, delta},
// pieces of at most ceil(n^1.5) pairs, C cut into clamp(ceil(n^eps), 1, |C|)
// chunks, one All-Edges call per (piece, delta', chunk), and a single
// exhaustive scan per resolved pair.
WitnessTable lift_level(const WeightedTripartiteGraph& g, const WitnessTable& prev, double epsilon,
                        const AllEdgesBackend& backend, DetStats* stats = nullptr);

struct DetResult {
  WitnessTable table;
  DetStats stats;
};

DetResult det_reduce(const WeightedTripartiteGraph& g, const AllEdgesBackend& backend, double epsilon = 0.25);

AllEdgesBackend default_all_edges_backend();

}  // namespace fgr
