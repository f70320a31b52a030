#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "fgr/instances.hpp"

namespace fgr {

struct PrimeDraw {
  std::uint64_t p = 0;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t seed = 0;
};

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

// Uniform prime in [lo, hi] by rejection sampling. Throws NoPrimeInRange.
PrimeDraw random_prime(std::uint64_t lo, std::uint64_t hi, std::uint64_t seed);

// [ceil(n^3 / (2t)), floor(n^3 / t)] with lo raised to 2. May be empty
// (lo > hi); callers then get NoPrimeInRange from random_prime.
std::pair<std::uint64_t, std::uint64_t> prime_range(std::uint64_t n, double t);

// Weights replaced by residues in [0, p). Every zero-weight triangle then
// has residue sum 0, p or 2p.
struct ModPResult {
  WeightedTripartiteGraph graph;
  PrimeDraw prime;
};

// n is the total node count.
ModPResult mod_p_reduce(const WeightedTripartiteGraph& g, double t, std::uint64_t seed);
WeightedTripartiteGraph residues(const WeightedTripartiteGraph& g, std::uint64_t p);

std::int64_t mod_floor(std::int64_t x, std::uint64_t p);

// Triangles of nonzero weight whose weight is divisible by p.
std::size_t modp_false_positives(const WeightedTripartiteGraph& g, std::uint64_t p);

}  // namespace fgr
