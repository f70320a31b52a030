#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fgr/instances.hpp"

namespace fgr {

inline constexpr std::size_t kNoCap = std::numeric_limits<std::size_t>::max();

// Results truncated at a cap say so; truncation is never silent.
struct WitnessList {
  std::vector<TriangleWitness> items;
  bool truncated = false;
};

struct IndexTripleList {
  std::vector<IndexTriple> items;
  bool truncated = false;
};

struct TriangleList {
  std::vector<Triangle> triangles;
  bool truncated = false;
};

// Per-edge answer of All-Edges Sparse Triangle. Edges are (u, v) with u < v in
// the graph's canonical order.
class EdgeFlagTable {
 public:
  EdgeFlagTable() = default;
  explicit EdgeFlagTable(std::vector<std::pair<int, int>> edges)
      : edges_(std::move(edges)), flags_(edges_.size(), 0) {}

  std::size_t size() const { return edges_.size(); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool flag_at(std::size_t i) const { return flags_[i] != 0; }
  void set_at(std::size_t i, bool v) { flags_[i] = v ? 1 : 0; }
  // False for pairs that are not edges.
  bool flag(int u, int v) const;
  std::size_t count() const;

 private:
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint8_t> flags_;
};

class NodeFlagTable {
 public:
  NodeFlagTable() = default;
  explicit NodeFlagTable(int n) : flags_(static_cast<std::size_t>(n), 0) {}
  int size() const { return static_cast<int>(flags_.size()); }
  bool flag(int v) const { return flags_[v] != 0; }
  void set(int v, bool x) { flags_[v] = x ? 1 : 0; }
  std::size_t count() const;

 private:
  std::vector<std::uint8_t> flags_;
};

// Matrix whose entries may be undefined; an undefined entry equals nothing.
class PartialMatrix {
 public:
  PartialMatrix() = default;
  PartialMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), v_(static_cast<std::size_t>(rows) * cols, 0), def_(v_.size(), 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool defined(int i, int j) const { return def_[at(i, j)] != 0; }
  std::int64_t get(int i, int j) const { return v_[at(i, j)]; }
  void set(int i, int j, std::int64_t x) {
    v_[at(i, j)] = x;
    def_[at(i, j)] = 1;
  }

 private:
  std::size_t at(int i, int j) const { return static_cast<std::size_t>(i) * cols_ + j; }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> v_;
  std::vector<std::uint8_t> def_;
};

// All triangles a -> b -> c -> a of total weight `target`, lexicographic by
// (a, b, c), truncated at cap.
WitnessList brute_exact_triangles(const WeightedTripartiteGraph& g, const Weight3& target = {0, 0, 0},
                                  std::size_t cap = kNoCap);

// All (i, j, k) with A[i] + B[j] + C[k] = 0, lexicographic, truncated at cap.
IndexTripleList brute_3sum(const ThreeSumInstance& inst, std::size_t cap = kNoCap);

// Degree-ordered enumeration: nodes ranked by nonincreasing degree, every
// edge oriented toward the lower rank, triangles found by intersecting
// sorted out-lists. O(m^{3/2}) work; output sorted by (a, b, c).
TriangleList list_triangles(const UnweightedTripartiteGraph& g, std::size_t cap = kNoCap);

bool detect_triangle(const UnweightedTripartiteGraph& g);
EdgeFlagTable all_edges_triangle(const UnweightedTripartiteGraph& g);
NodeFlagTable all_nodes_triangle(const UnweightedTripartiteGraph& g);

// For each query (i, k): the smallest j with A[i][j] == B[j][k], if any.
// Implemented as an equi-join grouped by (j, value).
std::vector<std::optional<int>> equality_product_queries(const PartialMatrix& A, const PartialMatrix& B,
                                                         std::span<const std::pair<int, int>> queries);

// Tuples (i, j, k, l), repeats allowed, whose four directed edges exist and
// sum to zero.
std::uint64_t count_zero_4cycles_brute(const DirectedWeightedGraph& g);
std::uint64_t count_zero_4cycles_brute(const WeightedTripartiteGraph& g);

// For every A-B edge, the smallest c with |w_ab + w_bc + w_ca| <= tol.
WitnessTable near_zero_witness_table_brute(const WeightedTripartiteGraph& g, std::int64_t tol);

// Backend signatures the reductions are parameterized over.
using ListingBackend = std::function<TriangleList(const UnweightedTripartiteGraph&, std::size_t cap)>;
using DetectBackend = std::function<bool(const UnweightedTripartiteGraph&)>;
using AllEdgesBackend = std::function<EdgeFlagTable(const UnweightedTripartiteGraph&)>;
using AllNodesBackend = std::function<NodeFlagTable(const UnweightedTripartiteGraph&)>;

}  // namespace fgr
