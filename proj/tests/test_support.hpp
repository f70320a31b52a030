#pragma once

// Independent slow oracles used to cross-check the library.

#include <cstdint>
#include <vector>

#include "fgr/instances.hpp"

namespace fgr::testing {

inline std::vector<IndexTriple> naive_zero_triangles(const WeightedTripartiteGraph& g) {
  std::vector<IndexTriple> out;
  for (int a = 0; a < g.part_size(0); ++a)
    for (int b = 0; b < g.part_size(1); ++b)
      for (int c = 0; c < g.part_size(2); ++c) {
        if (!g.has_edge(PartPair::AB, a, b) || !g.has_edge(PartPair::BC, b, c) || !g.has_edge(PartPair::CA, c, a))
          continue;
        const Weight3 s = g.weight(PartPair::AB, a, b) + g.weight(PartPair::BC, b, c) + g.weight(PartPair::CA, c, a);
        if (s == Weight3{0, 0, 0}) out.push_back({a, b, c});
      }
  return out;
}

inline std::vector<Triangle> naive_triangles(const UnweightedTripartiteGraph& g) {
  std::vector<Triangle> out;
  for (int a : g.part_nodes(0))
    for (int b : g.part_nodes(1))
      for (int c : g.part_nodes(2))
        if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, a)) out.push_back({a, b, c});
  return out;
}

inline std::uint64_t naive_zero_4cycles(const DirectedWeightedGraph& g) {
  const int n = g.node_count();
  std::uint64_t count = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!g.has_edge(i, j)) continue;
      for (int k = 0; k < n; ++k) {
        if (!g.has_edge(j, k)) continue;
        for (int l = 0; l < n; ++l)
          if (g.has_edge(k, l) && g.has_edge(l, i) && g.w(i, j) + g.w(j, k) + g.w(k, l) + g.w(l, i) == 0) ++count;
      }
    }
  return count;
}

// Tripartite graph from explicit forward edges (pair, i, j, w).
struct EdgeSpec {
  PartPair pp;
  int i;
  int j;
  std::int64_t w;
};

inline WeightedTripartiteGraph make_graph(std::array<int, 3> parts, std::int64_t bound,
                                          std::initializer_list<EdgeSpec> edges) {
  WeightedTripartiteGraph g(parts, 1, bound);
  for (const auto& e : edges) g.set_edge(e.pp, e.i, e.j, e.w);
  return g;
}

}  // namespace fgr::testing
