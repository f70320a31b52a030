#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "fgr/instances.hpp"

namespace fgr {

// x = x1*q2*q3 + x2*q3 + x3 with x2 in [0, q2) and x3 in [0, q3). With
// q1 = q2 = q3 = q this is the base-q split x1*q^2 + x2*q + x3.
struct Radix {
  std::int64_t q1 = 1;
  std::int64_t q2 = 1;
  std::int64_t q3 = 1;

  static Radix uniform(std::int64_t q) { return {q, q, q}; }
  std::int64_t capacity() const { return q1 * q2 * q3; }
  std::int64_t base(int k) const { return k == 0 ? q1 : (k == 1 ? q2 : q3); }
  bool operator==(const Radix&) const = default;
};

struct DigitTriple {
  std::int64_t x1 = 0;
  std::int64_t x2 = 0;
  std::int64_t x3 = 0;

  Weight3 as_weight() const { return {x1, x2, x3}; }
  auto operator<=>(const DigitTriple&) const = default;
};

// Smallest q >= 1 with q^3 >= x.
std::int64_t ceil_cbrt(std::int64_t x);

// Euclidean digits; x1 lands in [-q1, q1]. Throws RangeError when
// |x| > q1*q2*q3.
DigitTriple digit_decompose(std::int64_t x, const Radix& r);
inline DigitTriple digit_decompose(std::int64_t x, std::int64_t q) { return digit_decompose(x, Radix::uniform(q)); }
std::int64_t digit_compose(const DigitTriple& d, const Radix& r);
inline std::int64_t digit_compose(const DigitTriple& d, std::int64_t q) { return digit_compose(d, Radix::uniform(q)); }

// The nine carry patterns (-j, j*q2 - i, i*q3), i, j in {0, 1, 2}, sorted.
// Three decomposed numbers sum to zero iff their digit sum lies here.
std::vector<Weight3> delta_set(const Radix& r);
inline std::vector<Weight3> delta_set(std::int64_t q) { return delta_set(Radix::uniform(q)); }

// weight_dim 1 -> weight_dim 3, every stored weight replaced by its digits.
WeightedTripartiteGraph decompose_graph(const WeightedTripartiteGraph& g, const Radix& r);

// Subtracts delta from every A-B weight, so triangles of weight delta
// become zero-weight triangles. Clears the antisymmetric flag when delta
// is nonzero.
WeightedTripartiteGraph retarget(const WeightedTripartiteGraph& g, const Weight3& delta);

// Subtracts target from every A-B weight of a weight_dim 1 graph.
WeightedTripartiteGraph shift_ab(const WeightedTripartiteGraph& g, std::int64_t target);

}  // namespace fgr
