#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "fgr/instances.hpp"
#include "fgr/oracles.hpp"
#include "fgr/report.hpp"

namespace fgr {

inline constexpr std::size_t kUnlimited = kNoCap;

struct ExactTriResult {
  bool found = false;
  // Lexicographically smallest verified zero-weight triangle, when one was
  // listed. Empty with found = true means the budget ran out (inferred yes).
  std::optional<TriangleWitness> witness;
  ReductionReport report;
};

struct ThreeSumResult {
  bool found = false;
  std::optional<IndexTriple> witness;
  ReductionReport report;
};

ListingBackend default_listing_backend();
AllNodesBackend default_all_nodes_backend();
DetectBackend default_detect_backend();

// Residues mod a random prime, one pass per residue target in {0, p, 2p},
// digit split with q^3 >= 2p, one sparse graph per carry pattern, listing,
// decoding, verification against the original weights. If the prime range
// for (node count, t) is empty the mod-p step is skipped and the digits
// cover the original weights. A budget overrun stops early and reports an
// inferred yes.
ExactTriResult exact_tri_via_listing(const WeightedTripartiteGraph& g, double t, const ListingBackend& backend,
                                     std::size_t budget, std::uint64_t seed);

// Same front end, then per carry pattern degree_bounded_sparse (rounds <= 0
// selects default_rounds(node count)) and list_via_an_oracle on every pruned
// graph.
ExactTriResult exact_tri_via_an(const WeightedTripartiteGraph& g, double t, const AllNodesBackend& backend,
                                std::uint64_t seed, int rounds = 0);

// q = ceil(W^{1/3}), one detection call per carry pattern.
bool detect_via_sparse(const WeightedTripartiteGraph& g, const DetectBackend& backend,
                       ReductionReport* report = nullptr);

// 3SUM analog of exact_tri_via_listing; n is the longest array.
ThreeSumResult threesum_via_listing(const ThreeSumInstance& inst, double t, const ListingBackend& backend,
                                    std::size_t budget, std::uint64_t seed);

}  // namespace fgr
