#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "fgr/digitred/digits.hpp"
#include "fgr/instances.hpp"
#include "fgr/oracles.hpp"

namespace fgr {

// Nodes A(a, x1, z3), B(b, y3, x2), C(c, z2, y1) with edges
//   A(a, w1, z3)  - B(b, y3, w2)  iff w_ab = (w1, w2, -y3 - z3)
//   B(b, w3, x2)  - C(c, z2, w1)  iff w_bc = (w1, -x2 - z2, w3)
//   C(c, w2, y1)  - A(a, x1, w3)  iff w_ca = (-x1 - y1, w2, w3)
// so triangles are exactly the zero-weight triangles of g3. Enumerated
// digit k ranges over [-L_k, L_k], L_k = max(2 q_k, max |component k|).
UnweightedTripartiteGraph build_sparse_unbalanced(const WeightedTripartiteGraph& g3, const Radix& r);
inline UnweightedTripartiteGraph build_sparse_exact(const WeightedTripartiteGraph& g3, std::int64_t q) {
  return build_sparse_unbalanced(g3, Radix::uniform(q));
}

// Source triangle (a, b, c) of an output triangle.
IndexTriple decode(const UnweightedTripartiteGraph& g, const Triangle& t);
std::vector<IndexTriple> decode_all(const UnweightedTripartiteGraph& g, const TriangleList& list);

// All zero-weight triangles of a weight_dim 1 graph found through the
// digit construction: decompose, one sparse graph per delta, list, decode.
// Sorted; a multiset equal to the brute oracle's.
std::vector<IndexTriple> digit_zero_triangles(const WeightedTripartiteGraph& g, const Radix& r);

// 3SUM variant. Elements are digit triples; the build applies the same
// three rules with membership in A, B, C in place of edge weights.
struct SparseThreeSum {
  UnweightedTripartiteGraph graph;
  // Digit triple -> indices of the elements carrying it, per array.
  std::array<std::map<Weight3, std::vector<int>>, 3> index;
};

SparseThreeSum build_sparse_3sum(const std::array<std::vector<Weight3>, 3>& elements, std::int64_t q);
// Index triples (i, j, k) encoded by the listed triangles, with duplicates
// expanded, sorted.
std::vector<IndexTriple> decode_3sum(const SparseThreeSum& s, const TriangleList& list);

// Digit elements of an integer instance, with delta subtracted from A.
std::array<std::vector<Weight3>, 3> decompose_3sum(const ThreeSumInstance& inst, std::int64_t q,
                                                   const Weight3& delta = {0, 0, 0});
std::vector<IndexTriple> digit_zero_triples(const ThreeSumInstance& inst, std::int64_t q);

}  // namespace fgr
