#include "fgr/digitred/modp.hpp"

#include <algorithm>
#include <cmath>

#include "fgr/errors.hpp"
#include "fgr/rng.hpp"

namespace fgr {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases decide primality for all n < 3.3e24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeDraw random_prime(std::uint64_t lo, std::uint64_t hi, std::uint64_t seed) {
  const auto fail = [&] {
    return NoPrimeInRange("no prime in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  };
  if (lo > hi) throw fail();
  // Existence first, so the sampling loop below terminates.
  for (std::uint64_t c = lo; !is_prime(c); ++c)
    if (c == hi) throw fail();
  Rng rng(derive_seed(seed, Stream::prime));
  for (;;) {
    const std::uint64_t c = rng.uniform_u64(lo, hi);
    if (is_prime(c)) return {c, lo, hi, seed};
  }
}

std::pair<std::uint64_t, std::uint64_t> prime_range(std::uint64_t n, double t) {
  if (!(t > 0)) throw PreconditionError("t must be positive");
  const long double cube = static_cast<long double>(n) * n * n;
  const long double lo = std::ceil(cube / (2.0L * t));
  const long double hi = std::floor(cube / t);
  const auto clamp = [](long double v) {
    if (v < 0) return std::uint64_t{0};
    if (v > 1.0e18L) return std::uint64_t{1000000000000000000ULL};
    return static_cast<std::uint64_t>(v);
  };
  return {std::max<std::uint64_t>(2, clamp(lo)), clamp(hi)};
}

std::int64_t mod_floor(std::int64_t x, std::uint64_t p) {
  const auto m = static_cast<std::int64_t>(p);
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

WeightedTripartiteGraph residues(const WeightedTripartiteGraph& g, std::uint64_t p) {
  if (g.weight_dim() != 1) throw PreconditionError("mod-p reduction needs weight_dim 1");
  if (p < 2 || p > static_cast<std::uint64_t>(kMaxWeightBound)) throw RangeError("modulus out of range");
  WeightedTripartiteGraph out(g.part_sizes(), 1, static_cast<std::int64_t>(p - 1), false);
  for (PartPair pp : kForwardPairs)
    g.for_each_edge(pp, [&](int i, int j, const Weight3& w) { out.set_edge(pp, i, j, mod_floor(w[0], p)); });
  return out;
}

ModPResult mod_p_reduce(const WeightedTripartiteGraph& g, double t, std::uint64_t seed) {
  const auto [lo, hi] = prime_range(static_cast<std::uint64_t>(g.node_count()), t);
  const PrimeDraw draw = random_prime(lo, hi, seed);
  return {residues(g, draw.p), draw};
}

std::size_t modp_false_positives(const WeightedTripartiteGraph& g, std::uint64_t p) {
  std::size_t fp = 0;
  const auto [na, nb, nc] = g.part_sizes();
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) {
      if (!g.has_edge(PartPair::AB, a, b)) continue;
      for (int c = 0; c < nc; ++c) {
        const auto tw = g.triangle_weight(a, b, c);
        if (tw && (*tw)[0] != 0 && mod_floor((*tw)[0], p) == 0) ++fp;
      }
    }
  return fp;
}

}  // namespace fgr
