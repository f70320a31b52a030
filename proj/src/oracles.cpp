#include "fgr/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "fgr/errors.hpp"

namespace fgr {

namespace {

std::uint64_t pack_pair(std::int64_t x, std::int64_t y) {
  return (static_cast<std::uint64_t>(x) << 32) ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(y));
}

}  // namespace

bool EdgeFlagTable::flag(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair<int, int>{u, v});
  if (it == edges_.end() || *it != std::pair<int, int>{u, v}) return false;
  return flags_[static_cast<std::size_t>(it - edges_.begin())] != 0;
}

std::size_t EdgeFlagTable::count() const { return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), 1)); }

std::size_t NodeFlagTable::count() const { return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), 1)); }

WitnessList brute_exact_triangles(const WeightedTripartiteGraph& g, const Weight3& target, std::size_t cap) {
  WitnessList out;
  const auto [na, nb, nc] = g.part_sizes();
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) {
      if (!g.has_edge(PartPair::AB, a, b)) continue;
      for (int c = 0; c < nc; ++c) {
        auto tw = g.triangle_weight(a, b, c);
        if (!tw || *tw != target) continue;
        if (out.items.size() == cap) {
          out.truncated = true;
          return out;
        }
        out.items.push_back({a, b, c, *tw});
      }
    }
  return out;
}

IndexTripleList brute_3sum(const ThreeSumInstance& inst, std::size_t cap) {
  IndexTripleList out;
  const auto& A = inst.A();
  const auto& B = inst.B();
  const auto& C = inst.C();
  // Value -> sorted indices of C, so the scan is quadratic plus output.
  std::unordered_map<std::int64_t, std::vector<int>> by_value;
  for (int k = 0; k < static_cast<int>(C.size()); ++k) by_value[C[k]].push_back(k);
  for (int i = 0; i < static_cast<int>(A.size()); ++i)
    for (int j = 0; j < static_cast<int>(B.size()); ++j) {
      auto it = by_value.find(-(A[i] + B[j]));
      if (it == by_value.end()) continue;
      for (int k : it->second) {
        if (out.items.size() == cap) {
          out.truncated = true;
          return out;
        }
        out.items.push_back({i, j, k});
      }
    }
  return out;
}

TriangleList list_triangles(const UnweightedTripartiteGraph& g, std::size_t cap) {
  TriangleList out;
  const int n = g.node_count();
  // rank[v]: position in nonincreasing-degree order. Edges point from the
  // higher-degree endpoint to the lower one, so out-degrees are O(sqrt m).
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return g.degree(x) > g.degree(y); });
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) rank[order[r]] = r;

  std::vector<std::vector<int>> fwd(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    for (int u : g.neighbors(v))
      if (rank[u] > rank[v]) fwd[v].push_back(u);

  std::vector<int> mark(static_cast<std::size_t>(n), -1);
  for (int u : order) {
    for (int v : fwd[u]) mark[v] = u;
    for (int v : fwd[u])
      for (int w : fwd[v]) {
        if (mark[w] != u) continue;
        std::array<int, 3> tri{u, v, w};
        std::sort(tri.begin(), tri.end(), [&](int x, int y) { return g.part(x) < g.part(y); });
        FGR_CHECK(g.part(tri[0]) == 0 && g.part(tri[1]) == 1 && g.part(tri[2]) == 2, "triangle spans three parts");
        FGR_CHECK(g.has_edge(tri[0], tri[1]) && g.has_edge(tri[1], tri[2]) && g.has_edge(tri[0], tri[2]),
                  "listed triangle closed under adjacency");
        if (out.triangles.size() == cap) {
          out.truncated = true;
          std::sort(out.triangles.begin(), out.triangles.end());
          return out;
        }
        out.triangles.push_back({tri[0], tri[1], tri[2]});
      }
  }
  std::sort(out.triangles.begin(), out.triangles.end());
  return out;
}

bool detect_triangle(const UnweightedTripartiteGraph& g) { return !list_triangles(g, 1).triangles.empty(); }

EdgeFlagTable all_edges_triangle(const UnweightedTripartiteGraph& g) {
  EdgeFlagTable table(g.edges());
  const auto& es = table.edges();
  auto set = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(es.begin(), es.end(), std::pair<int, int>{u, v});
    table.set_at(static_cast<std::size_t>(it - es.begin()), true);
  };
  for (const auto& t : list_triangles(g).triangles) {
    set(t.a, t.b);
    set(t.b, t.c);
    set(t.a, t.c);
  }
  return table;
}

NodeFlagTable all_nodes_triangle(const UnweightedTripartiteGraph& g) {
  NodeFlagTable table(g.node_count());
  for (const auto& t : list_triangles(g).triangles) {
    table.set(t.a, true);
    table.set(t.b, true);
    table.set(t.c, true);
  }
  return table;
}

std::vector<std::optional<int>> equality_product_queries(const PartialMatrix& A, const PartialMatrix& B,
                                                         std::span<const std::pair<int, int>> queries) {
  if (A.cols() != B.rows()) throw DimensionMismatch("equality product: inner dimensions differ");
  std::vector<std::optional<int>> answer(queries.size());
  if (queries.empty()) return answer;

  // Query slots per (i, k), so duplicates share one answer.
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> pending;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const auto [i, k] = queries[q];
    if (i < 0 || i >= A.rows() || k < 0 || k >= B.cols()) throw DimensionMismatch("equality product: query out of range");
    pending[pack_pair(i, k)].push_back(q);
  }
  std::vector<std::uint8_t> queried_row(static_cast<std::size_t>(A.rows()), 0);
  for (const auto& [i, k] : queries) queried_row[i] = 1;

  // Group B by (j, value) -> columns k.
  std::vector<std::unordered_map<std::int64_t, std::vector<int>>> groups(static_cast<std::size_t>(B.rows()));
  for (int j = 0; j < B.rows(); ++j)
    for (int k = 0; k < B.cols(); ++k)
      if (B.defined(j, k)) groups[j][B.get(j, k)].push_back(k);

  // Ascending j per row makes every first hit the smallest witness.
  for (int i = 0; i < A.rows(); ++i) {
    if (!queried_row[i]) continue;
    for (int j = 0; j < A.cols(); ++j) {
      if (!A.defined(i, j)) continue;
      auto it = groups[j].find(A.get(i, j));
      if (it == groups[j].end()) continue;
      for (int k : it->second) {
        auto p = pending.find(pack_pair(i, k));
        if (p == pending.end()) continue;
        for (std::size_t q : p->second) answer[q] = j;
        pending.erase(p);
      }
    }
  }
  return answer;
}

std::uint64_t count_zero_4cycles_brute(const DirectedWeightedGraph& g) {
  const int n = g.node_count();
  std::uint64_t total = 0;
  // For each (i, k): match half-paths i -> j -> k against k -> l -> i.
  std::unordered_map<std::int64_t, std::uint64_t> firsts;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      firsts.clear();
      for (int j = 0; j < n; ++j)
        if (g.has_edge(i, j) && g.has_edge(j, k)) ++firsts[g.w(i, j) + g.w(j, k)];
      if (firsts.empty()) continue;
      for (int l = 0; l < n; ++l) {
        if (!g.has_edge(k, l) || !g.has_edge(l, i)) continue;
        auto it = firsts.find(-(g.w(k, l) + g.w(l, i)));
        if (it != firsts.end()) total += it->second;
      }
    }
  return total;
}

std::uint64_t count_zero_4cycles_brute(const WeightedTripartiteGraph& g) {
  return count_zero_4cycles_brute(DirectedWeightedGraph::from_tripartite(g));
}

WitnessTable near_zero_witness_table_brute(const WeightedTripartiteGraph& g, std::int64_t tol) {
  const auto [na, nb, nc] = g.part_sizes();
  WitnessTable table(na, nb);
  g.for_each_edge(PartPair::AB, [&](int a, int b, const Weight3&) {
    for (int c = 0; c < nc; ++c) {
      auto tw = g.triangle_weight(a, b, c);
      if (tw && std::abs((*tw)[0]) <= tol) {
        table.set(a, b, {c, (*tw)[0]});
        return;
      }
    }
  });
  return table;
}

}  // namespace fgr
