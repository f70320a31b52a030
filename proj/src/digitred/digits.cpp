#include "fgr/digitred/digits.hpp"

#include <algorithm>
#include <cmath>

#include "fgr/errors.hpp"

namespace fgr {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void check_radix(const Radix& r) {
  if (r.q1 < 1 || r.q2 < 1 || r.q3 < 1) throw PreconditionError("radix bases must be >= 1");
  if (static_cast<__int128>(r.q1) * r.q2 * r.q3 > kMaxWeightBound)
    throw RangeError("radix capacity exceeds 2^40");
}

}  // namespace

std::int64_t ceil_cbrt(std::int64_t x) {
  if (x <= 1) return 1;
  auto q = static_cast<std::int64_t>(std::cbrt(static_cast<double>(x)));
  if (q < 1) q = 1;
  auto cube = [](std::int64_t v) { return static_cast<__int128>(v) * v * v; };
  while (q > 1 && cube(q - 1) >= x) --q;
  while (cube(q) < x) ++q;
  return q;
}

DigitTriple digit_decompose(std::int64_t x, const Radix& r) {
  check_radix(r);
  const std::int64_t cap = r.capacity();
  if (x > cap || x < -cap)
    throw RangeError("|" + std::to_string(x) + "| exceeds digit capacity " + std::to_string(cap));
  const std::int64_t hi = floor_div(x, r.q3);
  const std::int64_t x3 = x - hi * r.q3;
  const std::int64_t x1 = floor_div(hi, r.q2);
  const std::int64_t x2 = hi - x1 * r.q2;
  return {x1, x2, x3};
}

std::int64_t digit_compose(const DigitTriple& d, const Radix& r) {
  return d.x1 * r.q2 * r.q3 + d.x2 * r.q3 + d.x3;
}

std::vector<Weight3> delta_set(const Radix& r) {
  check_radix(r);
  std::vector<Weight3> out;
  for (std::int64_t i = 0; i <= 2; ++i)
    for (std::int64_t j = 0; j <= 2; ++j) out.push_back({-j, j * r.q2 - i, i * r.q3});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

WeightedTripartiteGraph decompose_graph(const WeightedTripartiteGraph& g, const Radix& r) {
  if (g.weight_dim() != 1) throw PreconditionError("decompose_graph needs weight_dim 1");
  check_radix(r);
  const std::int64_t bound = std::max({r.q1, r.q2, r.q3});
  WeightedTripartiteGraph out(g.part_sizes(), 3, bound, g.antisymmetric());
  for (PartPair pp : kAllPairs)
    g.for_each_edge(pp, [&](int i, int j, const Weight3& w) {
      out.set_edge(pp, i, j, digit_decompose(w[0], r).as_weight());
    });
  // Digits of -x are not the negated digits of x.
  out.set_antisymmetric(false);
  return out;
}

WeightedTripartiteGraph retarget(const WeightedTripartiteGraph& g, const Weight3& delta) {
  std::int64_t grow = 0;
  for (auto d : delta) grow = std::max<std::int64_t>(grow, d < 0 ? -d : d);
  if (g.weight_bound() + grow > kMaxWeightBound) throw RangeError("retarget overflows the weight cap");
  const bool zero = delta == Weight3{0, 0, 0};
  WeightedTripartiteGraph out(g.part_sizes(), g.weight_dim(), g.weight_bound() + grow,
                              g.antisymmetric() && zero);
  for (PartPair pp : kAllPairs)
    g.for_each_edge(pp, [&](int i, int j, const Weight3& w) {
      out.set_edge(pp, i, j, pp == PartPair::AB ? w - delta : w);
    });
  return out;
}

WeightedTripartiteGraph shift_ab(const WeightedTripartiteGraph& g, std::int64_t target) {
  if (g.weight_dim() != 1) throw PreconditionError("shift_ab needs weight_dim 1");
  return retarget(g, {target, 0, 0});
}

}  // namespace fgr
