#include "fgr/digitred/an_listing.hpp"

#include <algorithm>

#include "fgr/errors.hpp"

namespace fgr {

namespace {

struct Recursion {
  const AllNodesBackend& backend;
  AnListing& out;

  void add_level(std::size_t level, std::size_t edges) {
    if (out.stats.level_edges.size() <= level) out.stats.level_edges.resize(level + 1, 0);
    out.stats.level_edges[level] += edges;
  }

  // cur holds A_cur + B_cur + C; origin maps its ids to the input graph.
  void run(const UnweightedTripartiteGraph& cur, const std::vector<int>& origin, std::size_t level) {
    const auto& as = cur.part_nodes(0);
    if (as.empty()) return;
    if (as.size() == 1) {
      for (const auto& t : list_triangles(cur).triangles) out.triangles.push_back({origin[t.a], origin[t.b], origin[t.c]});
      return;
    }
    const std::size_t half = as.size() / 2;
    for (int j = 0; j < 2; ++j) {
      const std::size_t lo = j == 0 ? 0 : half;
      const std::size_t hi = j == 0 ? half : as.size();
      std::vector<std::uint8_t> keep(static_cast<std::size_t>(cur.node_count()), 0);
      for (int v = 0; v < cur.node_count(); ++v) keep[v] = cur.part(v) != 0;
      for (std::size_t i = lo; i < hi; ++i) keep[as[i]] = 1;
      const auto sub = cur.induced(keep);
      add_level(level + 1, sub.graph.edge_count());
      ++out.stats.oracle_calls;
      const NodeFlagTable flags = backend(sub.graph);
      FGR_CHECK(flags.size() == sub.graph.node_count(), "oracle covers every node");

      std::vector<std::uint8_t> next_keep(static_cast<std::size_t>(sub.graph.node_count()), 0);
      bool any_b = false;
      for (int v = 0; v < sub.graph.node_count(); ++v) {
        const int part = sub.graph.part(v);
        const bool b_hit = part == 1 && flags.flag(v);
        any_b = any_b || b_hit;
        next_keep[v] = part != 1 || b_hit;
      }
      if (!any_b) continue;
      const auto next = sub.graph.induced(next_keep);
      std::vector<int> next_origin(next.origin.size());
      for (std::size_t v = 0; v < next.origin.size(); ++v) next_origin[v] = origin[sub.origin[next.origin[v]]];
      run(next.graph, next_origin, level + 1);
    }
  }
};

}  // namespace

double AnStats::bound_ratio() const {
  const double denom = static_cast<double>(input_edges) + static_cast<double>(triangles) * d_max;
  if (denom <= 0) return 0.0;
  std::size_t peak = 0;
  for (auto e : level_edges) peak = std::max(peak, e);
  return static_cast<double>(peak) / denom;
}

AnListing list_via_an_oracle(const UnweightedTripartiteGraph& g, const AllNodesBackend& backend) {
  AnListing out;
  out.stats.input_edges = g.edge_count();
  out.stats.d_max = g.max_degree();
  out.stats.level_edges.push_back(g.edge_count());
  std::vector<int> origin(static_cast<std::size_t>(g.node_count()));
  for (int v = 0; v < g.node_count(); ++v) origin[v] = v;
  Recursion{backend, out}.run(g, origin, 0);
  std::sort(out.triangles.begin(), out.triangles.end());
  out.stats.triangles = out.triangles.size();
  return out;
}

}  // namespace fgr
