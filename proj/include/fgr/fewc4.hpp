#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fgr/instances.hpp"

#include "json.hpp"

namespace fgr {

// Zero-weight 4-cycles (i, j, k, l) with i = k or j = l. Under antisymmetry
// every such tuple telescopes to zero and the count is 2 sum deg^2 - |E|.
std::uint64_t repeated_zero_4cycles(const DirectedWeightedGraph& g);

enum class TupleMode {
  all,       // every tuple in V^4
  distinct,  // i != k and j != l
};

struct Estimate {
  double value = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::uint64_t tuple_space = 0;
  bool exact = false;
};

// s = ceil(20 (T / E) ln(n + 2)) uniform tuples from the T tuples of the
// mode, hit fraction scaled by T; exact count when s >= T. A true count of
// at least 2E gives an estimate above E, and a zero count gives 0, except
// with probability at most n^-3.
Estimate estimate_zero_4cycles(const DirectedWeightedGraph& g, double error_target, std::uint64_t seed,
                               TupleMode mode = TupleMode::all);

struct HeavyPairContext {
  int i0 = 0;
  int k0 = 0;
  // r[k] = w_{i0,k} - w_{i0,k0}, defined where (i0, k) is an edge.
  std::vector<std::optional<std::int64_t>> r;
  double estimate = 0.0;
};

// Partners (i, k) of (i0, k0): tuples (i0, k0, i, k) that are zero-weight
// 4-cycles.
std::vector<std::pair<int, int>> brute_partners(const DirectedWeightedGraph& g, int i0, int k0);

// First edge in lexicographic order whose estimated partner count reaches
// threshold / 2 (estimator error target threshold / 2).
std::optional<HeavyPairContext> heavy_pair(const DirectedWeightedGraph& g, double threshold, std::uint64_t seed);

// {(i, k) in E : w_ik - w_{i,k0} = r_k}, sorted.
std::vector<std::pair<int, int>> fredman_e0(const DirectedWeightedGraph& g, const HeavyPairContext& ctx);

// A zero-weight directed triangle i -> k -> j -> i through some (i, k) in
// E0, found with one Equality Product over A_ij = w_{i,k0} + w_ji and
// B_jk = -w_kj - r_k. Returned in the A -> B -> C orientation, verified.
std::optional<TriangleWitness> zero_tri_through_e0(const DirectedWeightedGraph& g, const HeavyPairContext& ctx,
                                                   const std::vector<std::pair<int, int>>& e0);

// Tripartite view of a sub-instance: original node ids plus isolated padding
// nodes appended to part A.
struct SubInstance {
  WeightedTripartiteGraph graph;
  std::vector<int> origin;  // sub global id -> original global id, -1 for padding
  int padding = 0;
  std::array<int, 3> buckets{0, 0, 0};
};

std::vector<int> bucket_assignment(int n, int bucket_count, std::uint64_t seed);

// One SubInstance per unordered bucket triple with repetition, over a single
// bucketing of all nodes. Empty triples are skipped.
std::vector<SubInstance> bucket_split(const DirectedWeightedGraph& g, int bucket_count, std::uint64_t seed);

// Smallest n' >= n with count <= n'^3.
int padded_size(int n, std::uint64_t count);
SubInstance pad_to_bound(const SubInstance& sub, std::uint64_t count);

// Antisymmetry and count_zero_4cycles_brute <= n^3.
bool property1_holds(const WeightedTripartiteGraph& g);

using Fewc4Backend = std::function<std::optional<TriangleWitness>(const WeightedTripartiteGraph&)>;
Fewc4Backend brute_fewc4_backend();

struct Fewc4Stats {
  bool dense = false;
  int dense_iterations = 0;
  std::size_t removed_edges = 0;
  int bucket_count = 0;
  std::size_t sub_instances = 0;
  std::size_t backend_calls = 0;
  std::size_t brute_fallbacks = 0;
  std::size_t padding = 0;
  double global_estimate = 0.0;

  nlohmann::json to_json() const;
};

struct Fewc4Trace {
  std::function<void(const DirectedWeightedGraph&, const HeavyPairContext&, const std::vector<std::pair<int, int>>&)>
      on_dense_iteration;
  std::function<void(const SubInstance&)> on_backend_call;
};

struct Fewc4Result {
  std::optional<TriangleWitness> witness;
  Fewc4Stats stats;
};

// Two-case driver. Dense while the global estimate exceeds n^{4-delta}/2:
// heavy pair, E0, triangle check through E0, remove E0 and its reverses.
// Then sparse: round(n^{1-x}) buckets, per sub-instance estimate, brute
// fallback when the estimate reaches 2 size^2, else pad and call backend.
// n is the total node count.
Fewc4Result solve_with_fewc4_oracle(const WeightedTripartiteGraph& g, const Fewc4Backend& backend, double delta,
                                    double x, std::uint64_t seed, const Fewc4Trace* trace = nullptr);

}  // namespace fgr
