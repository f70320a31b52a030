#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

namespace fgr {

// Any sum of four weights plus offsets of size 2W stays inside int64.
inline constexpr std::int64_t kMaxWeightBound = std::int64_t{1} << 40;

using Weight3 = std::array<std::int64_t, 3>;

inline Weight3 operator+(const Weight3& x, const Weight3& y) {
  return {x[0] + y[0], x[1] + y[1], x[2] + y[2]};
}
inline Weight3 operator-(const Weight3& x, const Weight3& y) {
  return {x[0] - y[0], x[1] - y[1], x[2] - y[2]};
}
inline Weight3 operator-(const Weight3& x) { return {-x[0], -x[1], -x[2]}; }

// Ordered pair of parts (0 = A, 1 = B, 2 = C). The forward pairs AB, BC, CA
// give the triangle orientation a -> b -> c -> a; the other three are their
// reverses and are only populated in antisymmetric instances.
enum class PartPair : std::uint8_t { AB = 0, BC = 1, CA = 2, BA = 3, CB = 4, AC = 5 };

inline constexpr std::array<PartPair, 3> kForwardPairs{PartPair::AB, PartPair::BC, PartPair::CA};
inline constexpr std::array<PartPair, 6> kAllPairs{PartPair::AB, PartPair::BC, PartPair::CA,
                                                   PartPair::BA, PartPair::CB, PartPair::AC};

int source_part(PartPair pp);
int target_part(PartPair pp);
PartPair reverse(PartPair pp);
PartPair pair_of(int from_part, int to_part);
const char* pair_name(PartPair pp);
PartPair pair_from_name(const std::string& name);

class WeightedTripartiteGraph {
 public:
  WeightedTripartiteGraph() : WeightedTripartiteGraph({0, 0, 0}, 1, 0) {}
  WeightedTripartiteGraph(std::array<int, 3> part_sizes, int weight_dim, std::int64_t weight_bound,
                          bool antisymmetric = false);

  const std::array<int, 3>& part_sizes() const { return sizes_; }
  int part_size(int part) const { return sizes_[part]; }
  int node_count() const { return sizes_[0] + sizes_[1] + sizes_[2]; }
  int weight_dim() const { return dim_; }
  std::int64_t weight_bound() const { return bound_; }
  bool antisymmetric() const { return antisymmetric_; }
  void set_antisymmetric(bool flag) { antisymmetric_ = flag; }

  bool has_edge(PartPair pp, int i, int j) const { return present_[idx(pp)][slot(pp, i, j)] != 0; }
  const Weight3& weight(PartPair pp, int i, int j) const { return w_[idx(pp)][slot(pp, i, j)]; }
  std::int64_t w(PartPair pp, int i, int j) const { return weight(pp, i, j)[0]; }

  // Throws RangeError when a component exceeds the weight bound or an unused
  // component (weight_dim 1) is nonzero.
  void set_edge(PartPair pp, int i, int j, const Weight3& weight);
  void set_edge(PartPair pp, int i, int j, std::int64_t weight) { set_edge(pp, i, j, {weight, 0, 0}); }
  void remove_edge(PartPair pp, int i, int j);

  std::size_t edge_count(PartPair pp) const { return counts_[idx(pp)]; }
  std::size_t edge_count() const;

  template <class F>
  void for_each_edge(PartPair pp, F&& f) const {
    const int n_src = sizes_[source_part(pp)];
    const int n_tgt = sizes_[target_part(pp)];
    const auto& pres = present_[idx(pp)];
    const auto& ws = w_[idx(pp)];
    for (int i = 0; i < n_src; ++i)
      for (int j = 0; j < n_tgt; ++j) {
        const std::size_t s = static_cast<std::size_t>(i) * n_tgt + j;
        if (pres[s]) f(i, j, ws[s]);
      }
  }

  // Sum along a -> b -> c -> a, or nullopt when an edge is missing.
  std::optional<Weight3> triangle_weight(int a, int b, int c) const;

  std::int64_t max_abs_component() const;
  // Raises the bound; lowering it below a stored weight throws RangeError.
  void set_weight_bound(std::int64_t bound);

  // Throws InvariantViolation when the antisymmetric flag is set but the
  // reverse edges do not mirror the forward ones.
  void validate() const;

  bool operator==(const WeightedTripartiteGraph& other) const = default;

 private:
  static std::size_t idx(PartPair pp) { return static_cast<std::size_t>(pp); }
  std::size_t slot(PartPair pp, int i, int j) const {
    return static_cast<std::size_t>(i) * sizes_[target_part(pp)] + j;
  }

  std::array<int, 3> sizes_;
  int dim_;
  std::int64_t bound_;
  bool antisymmetric_;
  std::array<std::vector<Weight3>, 6> w_;
  std::array<std::vector<std::uint8_t>, 6> present_;
  std::array<std::size_t, 6> counts_{};
};

// Plain undirected graph with symmetric weights; input of antisymmetrize.
struct UndirectedEdge {
  int u;
  int v;
  std::int64_t w;
  bool operator==(const UndirectedEdge&) const = default;
};

struct UndirectedWeightedGraph {
  int n = 0;
  std::int64_t weight_bound = 0;
  std::vector<UndirectedEdge> edges;
};

// Node of a reduction output: (part, base node, two auxiliary coordinates).
// Unused aux fields are zero.
struct NodeLabel {
  int part = 0;
  std::int64_t base = 0;
  std::int64_t aux1 = 0;
  std::int64_t aux2 = 0;
  auto operator<=>(const NodeLabel&) const = default;
};

// Triangle of an unweighted tripartite graph as node ids, one per part.
struct Triangle {
  int a;
  int b;
  int c;
  auto operator<=>(const Triangle&) const = default;
};

class UnweightedTripartiteGraph {
 public:
  UnweightedTripartiteGraph() = default;

  int node_count() const { return static_cast<int>(labels_.size()); }
  std::size_t edge_count() const { return m_; }
  const NodeLabel& label(int v) const { return labels_[v]; }
  int part(int v) const { return labels_[v].part; }
  std::span<const int> neighbors(int v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  int degree(int v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
  int max_degree() const;
  const std::vector<int>& part_nodes(int part) const { return parts_[part]; }
  bool has_edge(int u, int v) const;
  std::optional<int> find(const NodeLabel& label) const;
  // All edges as (u, v) with u < v, sorted.
  std::vector<std::pair<int, int>> edges() const;

  // Subgraph induced by the nodes with keep[v] != 0. Node ids are reassigned
  // in increasing order of the original id.
  struct Induced;
  Induced induced(std::span<const std::uint8_t> keep) const;

  bool operator==(const UnweightedTripartiteGraph&) const = default;

 private:
  friend class UnweightedGraphBuilder;
  std::vector<NodeLabel> labels_;
  std::vector<std::size_t> offsets_{0};
  std::vector<int> adj_;
  std::array<std::vector<int>, 3> parts_;
  std::size_t m_ = 0;
};

struct UnweightedTripartiteGraph::Induced {
  UnweightedTripartiteGraph graph;
  std::vector<int> origin;  // new id -> id in the parent graph
};

// Collects labeled edges, then produces a canonical graph: nodes sorted by
// label, adjacency sorted, duplicate edges merged. Only labels touched by an
// edge (or added explicitly) become nodes.
class UnweightedGraphBuilder {
 public:
  UnweightedGraphBuilder() = default;

  int node(const NodeLabel& label);
  void add_edge(const NodeLabel& u, const NodeLabel& v);
  void add_edge_ids(int u, int v);
  std::size_t pending_edges() const { return edges_.size(); }

  UnweightedTripartiteGraph build() &&;

 private:
  struct LabelHash {
    std::size_t operator()(const NodeLabel& l) const noexcept;
  };
  std::vector<NodeLabel> labels_;
  std::vector<std::pair<int, int>> edges_;
  std::unordered_map<NodeLabel, int, LabelHash> ids_;
};

struct ThreeSumInstance {
  std::array<std::vector<std::int64_t>, 3> arrays;
  std::int64_t weight_bound = 0;

  const std::vector<std::int64_t>& A() const { return arrays[0]; }
  const std::vector<std::int64_t>& B() const { return arrays[1]; }
  const std::vector<std::int64_t>& C() const { return arrays[2]; }
  std::size_t max_size() const;
  void validate() const;
  bool operator==(const ThreeSumInstance&) const = default;
};

struct TriangleWitness {
  int a;
  int b;
  int c;
  Weight3 total;
  bool operator==(const TriangleWitness&) const = default;
};

struct IndexTriple {
  int i;
  int j;
  int k;
  auto operator<=>(const IndexTriple&) const = default;
};

// Per (a, b) in A x B: an optional third node c and the achieved sum.
struct Witness {
  int c;
  std::int64_t sum;
  bool operator==(const Witness&) const = default;
};

class WitnessTable {
 public:
  WitnessTable() = default;
  WitnessTable(int n_a, int n_b) : n_a_(n_a), n_b_(n_b), cells_(static_cast<std::size_t>(n_a) * n_b) {}

  int rows() const { return n_a_; }
  int cols() const { return n_b_; }
  const std::optional<Witness>& at(int a, int b) const { return cells_[static_cast<std::size_t>(a) * n_b_ + b]; }
  void set(int a, int b, Witness w) { cells_[static_cast<std::size_t>(a) * n_b_ + b] = w; }
  std::size_t filled() const;
  bool same_support(const WitnessTable& other) const;

  nlohmann::json to_json() const;
  bool operator==(const WitnessTable&) const = default;

 private:
  int n_a_ = 0;
  int n_b_ = 0;
  std::vector<std::optional<Witness>> cells_;
};

// Dense directed view of a weight_dim 1 tripartite graph on global node ids
// (part A first, then B, then C). Used by the 4-cycle machinery, where edges
// are removed in place.
class DirectedWeightedGraph {
 public:
  DirectedWeightedGraph() = default;
  static DirectedWeightedGraph from_tripartite(const WeightedTripartiteGraph& g);
  WeightedTripartiteGraph to_tripartite() const;

  int node_count() const { return n_; }
  const std::array<int, 3>& part_sizes() const { return sizes_; }
  int part(int v) const { return v < sizes_[0] ? 0 : (v < sizes_[0] + sizes_[1] ? 1 : 2); }
  int local(int v) const { return v - offset(part(v)); }
  int global(int part, int i) const { return offset(part) + i; }
  int offset(int part) const { return part == 0 ? 0 : (part == 1 ? sizes_[0] : sizes_[0] + sizes_[1]); }

  bool has_edge(int u, int v) const { return present_[static_cast<std::size_t>(u) * n_ + v] != 0; }
  std::int64_t w(int u, int v) const { return w_[static_cast<std::size_t>(u) * n_ + v]; }
  void remove_edge(int u, int v);
  std::size_t edge_count() const { return m_; }
  std::int64_t weight_bound() const { return bound_; }
  // Out-degree; equals in-degree under antisymmetry.
  int degree(int v) const { return deg_[v]; }
  bool is_antisymmetric() const;
  std::vector<std::pair<int, int>> edges() const;

 private:
  int n_ = 0;
  std::array<int, 3> sizes_{0, 0, 0};
  std::int64_t bound_ = 0;
  std::vector<std::int64_t> w_;
  std::vector<std::uint8_t> present_;
  std::vector<int> deg_;
  std::size_t m_ = 0;
};

// Three copies V1, V2, V3 of the node set with edges directed
// V1 -> V2 -> V3 -> V1 carrying w and reverse edges carrying -w.
WeightedTripartiteGraph antisymmetrize(const UndirectedWeightedGraph& g);

WeightedTripartiteGraph gen_exact_tri(std::array<int, 3> parts, std::int64_t weight_bound, double density,
                                      std::size_t planted, std::uint64_t seed);
UndirectedWeightedGraph gen_undirected(int n, std::int64_t weight_bound, double density, std::size_t planted,
                                       std::uint64_t seed);
ThreeSumInstance gen_3sum(std::size_t n, std::int64_t weight_bound, std::size_t planted, std::uint64_t seed);
// Random unweighted tripartite graph with each cross-part pair present with
// probability density. Labels are (part, index, 0, 0).
UnweightedTripartiteGraph gen_sparse_tri(std::array<int, 3> parts, double density, std::uint64_t seed);

nlohmann::json to_json(const WeightedTripartiteGraph& g);
nlohmann::json to_json(const ThreeSumInstance& inst);
nlohmann::json to_json(const UnweightedTripartiteGraph& g);
WeightedTripartiteGraph exact_tri_from_json(const nlohmann::json& j);
ThreeSumInstance three_sum_from_json(const nlohmann::json& j);
UnweightedTripartiteGraph sparse_tri_from_json(const nlohmann::json& j);

std::string serialize(const WeightedTripartiteGraph& g);
std::string serialize(const ThreeSumInstance& inst);
std::string serialize(const UnweightedTripartiteGraph& g);

}  // namespace fgr
