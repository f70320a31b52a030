#pragma once

#include <cstddef>
#include <vector>

#include "fgr/instances.hpp"
#include "fgr/oracles.hpp"

namespace fgr {

struct AnStats {
  // level_edges[0] is the input; level l > 0 sums the edges of every graph
  // handed to the oracle at recursion depth l.
  std::vector<std::size_t> level_edges;
  std::size_t oracle_calls = 0;
  std::size_t input_edges = 0;
  int d_max = 0;
  std::size_t triangles = 0;

  // max over levels of level_edges / (m + t * d_max).
  double bound_ratio() const;
};

struct AnListing {
  std::vector<Triangle> triangles;  // ids of the input graph, sorted
  AnStats stats;
};

// Triangle listing from an All-Nodes oracle: split A in halves, ask the
// oracle which B-nodes lie in triangles of A_j + B + C, recurse on
// A_j + B_j + C; a single A-node is enumerated directly.
AnListing list_via_an_oracle(const UnweightedTripartiteGraph& g, const AllNodesBackend& backend);

}  // namespace fgr
