#include "fgr/detred.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "fgr/errors.hpp"

namespace fgr {

namespace {

std::int64_t floor_half(std::int64_t x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

WeightedTripartiteGraph map_weights(const WeightedTripartiteGraph& g, std::int64_t bound,
                                    std::int64_t (*f)(std::int64_t)) {
  if (g.weight_dim() != 1) throw PreconditionError("weight_dim 1 required");
  WeightedTripartiteGraph out(g.part_sizes(), 1, bound, g.antisymmetric());
  for (PartPair pp : kAllPairs)
    g.for_each_edge(pp, [&](int i, int j, const Weight3& w) { out.set_edge(pp, i, j, f(w[0])); });
  return out;
}

std::int64_t w_ab(const WeightedTripartiteGraph& g, int a, int b) { return g.w(PartPair::AB, a, b); }
std::int64_t w_bc(const WeightedTripartiteGraph& g, int b, int c) { return g.w(PartPair::BC, b, c); }
std::int64_t w_ac(const WeightedTripartiteGraph& g, int a, int c) { return g.w(PartPair::CA, c, a); }
bool has_bc(const WeightedTripartiteGraph& g, int b, int c) { return g.has_edge(PartPair::BC, b, c); }
bool has_ac(const WeightedTripartiteGraph& g, int a, int c) { return g.has_edge(PartPair::CA, c, a); }

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

// Recomputes every witness against g.
void check_table(const WeightedTripartiteGraph& g, const WitnessTable& t) {
  for (int a = 0; a < t.rows(); ++a)
    for (int b = 0; b < t.cols(); ++b) {
      const auto& w = t.at(a, b);
      if (!w) continue;
      const auto tw = g.triangle_weight(a, b, w->c);
      FGR_CHECK(tw && (*tw)[0] == w->sum && abs64(w->sum) <= kTolerance, "witness sound at its level");
    }
}

}  // namespace

WeightedTripartiteGraph scale_by_4(const WeightedTripartiteGraph& g) {
  if (g.weight_bound() > kMaxWeightBound / 4) throw RangeError("scaling by 4 overflows the weight cap");
  return map_weights(g, 4 * g.weight_bound(), [](std::int64_t x) { return 4 * x; });
}

WeightedTripartiteGraph halve(const WeightedTripartiteGraph& g) {
  return map_weights(g, (g.weight_bound() + 1) / 2, floor_half);
}

WitnessTable base_case(const WeightedTripartiteGraph& g) {
  if (g.weight_dim() != 1) throw PreconditionError("weight_dim 1 required");
  if (g.max_abs_component() > kBaseBound) throw PreconditionError("base case weights exceed the base bound");
  const auto [na, nb, nc] = g.part_sizes();
  WitnessTable table(na, nb);
  const std::size_t words = (static_cast<std::size_t>(nc) + 63) / 64;
  constexpr int kValues = 2 * kBaseBound + 1;
  // bits[node][w + 4][word]: C-neighbors reached with weight w.
  auto index = [&](int node, std::int64_t w) { return (static_cast<std::size_t>(node) * kValues + (w + kBaseBound)) * words; };
  std::vector<std::uint64_t> bits_b(static_cast<std::size_t>(nb) * kValues * words, 0);
  std::vector<std::uint64_t> bits_a(static_cast<std::size_t>(na) * kValues * words, 0);
  g.for_each_edge(PartPair::BC, [&](int b, int c, const Weight3& w) {
    bits_b[index(b, w[0]) + c / 64] |= std::uint64_t{1} << (c % 64);
  });
  g.for_each_edge(PartPair::CA, [&](int c, int a, const Weight3& w) {
    bits_a[index(a, w[0]) + c / 64] |= std::uint64_t{1} << (c % 64);
  });
  g.for_each_edge(PartPair::AB, [&](int a, int b, const Weight3& wab) {
    const std::int64_t z = wab[0];
    int best = nc;
    for (std::int64_t x = -kBaseBound; x <= kBaseBound; ++x)
      for (std::int64_t y = -kBaseBound; y <= kBaseBound; ++y) {
        if (abs64(z + x + y) > kTolerance) continue;
        const std::uint64_t* pb = &bits_b[index(b, x)];
        const std::uint64_t* pa = &bits_a[index(a, y)];
        for (std::size_t i = 0; i < words && static_cast<int>(i * 64) < best; ++i)
          if (const std::uint64_t v = pb[i] & pa[i]) {
            best = std::min(best, static_cast<int>(i * 64) + std::countr_zero(v));
            break;
          }
      }
    if (best < nc) table.set(a, b, {best, z + w_bc(g, b, best) + w_ac(g, a, best)});
  });
  return table;
}

UnweightedTripartiteGraph build_instance(std::span<const std::pair<int, int>> pairs, int k, int delta, int delta_p,
                                         std::span<const int> cs, const WeightedTripartiteGraph& g) {
  std::vector<int> as;
  std::vector<int> bs;
  UnweightedGraphBuilder builder;
  for (const auto& [a, b] : pairs) {
    if (!g.has_edge(PartPair::AB, a, b) || !has_bc(g, b, k) || !has_ac(g, a, k) ||
        w_ab(g, a, b) + w_bc(g, b, k) + w_ac(g, a, k) != delta)
      throw PreconditionError("pair does not reach k with sum delta");
    as.push_back(a);
    bs.push_back(b);
    builder.add_edge({0, a, 0, 0}, {1, b, 0, 0});
  }
  std::sort(as.begin(), as.end());
  as.erase(std::unique(as.begin(), as.end()), as.end());
  std::sort(bs.begin(), bs.end());
  bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  for (int c : cs) {
    for (int a : as)
      if (has_ac(g, a, c)) builder.add_edge({0, a, 0, 0}, {2, c, w_ac(g, a, c) - w_ac(g, a, k) + delta - delta_p, 0});
    for (int b : bs)
      if (has_bc(g, b, c)) builder.add_edge({1, b, 0, 0}, {2, c, w_bc(g, b, k) - w_bc(g, b, c), 0});
  }
  return std::move(builder).build();
}

nlohmann::json DetStats::to_json() const {
  return {{"levels", levels},
          {"base_calls", base_calls},
          {"backend_calls", backend_calls},
          {"pieces", pieces},
          {"max_piece", max_piece},
          {"piece_cap", piece_cap},
          {"max_level_pieces", max_level_pieces},
          {"piece_bound", piece_bound},
          {"scans", scans},
          {"max_scans_per_pair", max_scans_per_pair},
          {"triangles_checked", triangles_checked}};
}

WitnessTable lift_level(const WeightedTripartiteGraph& g, const WitnessTable& prev, double epsilon,
                        const AllEdgesBackend& backend, DetStats* stats) {
  const auto [na, nb, nc] = g.part_sizes();
  if (prev.rows() != na || prev.cols() != nb) throw DimensionMismatch("witness table shape differs from graph");
  DetStats local;
  DetStats& st = stats ? *stats : local;
  WitnessTable out(na, nb);
  if (nc == 0 || na == 0) return out;

  const auto n = static_cast<double>(na);
  const auto cap = static_cast<std::size_t>(std::max(1.0, std::ceil(std::pow(n, 1.5))));
  const int chunks = std::clamp(static_cast<int>(std::ceil(std::pow(n, epsilon))), 1, nc);
  std::vector<std::vector<int>> cs(static_cast<std::size_t>(chunks));
  for (int i = 0; i < chunks; ++i)
    for (int c = static_cast<int>(static_cast<long>(i) * nc / chunks); c < static_cast<long>(i + 1) * nc / chunks; ++c)
      cs[i].push_back(c);

  // L_{k, delta}: pairs whose previous-level witness is k, with delta the sum
  // through k at this level.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> buckets;
  g.for_each_edge(PartPair::AB, [&](int a, int b, const Weight3&) {
    const auto& w = prev.at(a, b);
    if (!w) return;
    const int k = w->c;
    FGR_CHECK(has_bc(g, b, k) && has_ac(g, a, k), "previous witness edges survive");
    const std::int64_t delta = w_ab(g, a, b) + w_bc(g, b, k) + w_ac(g, a, k);
    FGR_CHECK(delta >= kDeltaMin && delta <= kDeltaMax, "lifted sum within [-6, 9]");
    buckets[{k, static_cast<int>(delta)}].push_back({a, b});
  });

  std::vector<std::uint8_t> scans(static_cast<std::size_t>(na) * nb, 0);
  std::size_t level_pieces = 0;
  for (const auto& [key, all_pairs] : buckets) {
    const auto [k, delta] = key;
    for (std::size_t start = 0; start < all_pairs.size(); start += cap) {
      const std::size_t end = std::min(all_pairs.size(), start + cap);
      ++level_pieces;
      st.max_piece = std::max(st.max_piece, end - start);
      for (int delta_p = -static_cast<int>(kTolerance); delta_p <= kTolerance; ++delta_p)
        for (const auto& chunk : cs) {
          std::vector<std::pair<int, int>> open;
          for (std::size_t i = start; i < end; ++i) {
            const auto [a, b] = all_pairs[i];
            if (!scans[static_cast<std::size_t>(a) * nb + b]) open.push_back(all_pairs[i]);
          }
          if (open.empty()) continue;
          const auto inst = build_instance(open, k, delta, delta_p, chunk, g);
          ++st.backend_calls;
          const EdgeFlagTable flags = backend(inst);
          FGR_CHECK(flags.size() == inst.edge_count(), "backend covers every edge");
          for (std::size_t e = 0; e < flags.size(); ++e) {
            if (!flags.flag_at(e)) continue;
            const auto [u, v] = flags.edges()[e];
            if (inst.part(u) != 0 || inst.part(v) != 1) continue;
            const int a = static_cast<int>(inst.label(u).base);
            const int b = static_cast<int>(inst.label(v).base);
            auto& count = scans[static_cast<std::size_t>(a) * nb + b];
            if (count) continue;

            // Each common U-neighbor is a triangle; check the identity on it.
            bool any = false;
            const auto nu = inst.neighbors(u);
            const auto nv = inst.neighbors(v);
            for (std::size_t i = 0, j = 0; i < nu.size() && j < nv.size();) {
              if (nu[i] < nv[j]) {
                ++i;
              } else if (nv[j] < nu[i]) {
                ++j;
              } else {
                const auto& lab = inst.label(nu[i]);
                const int c = static_cast<int>(lab.base);
                FGR_CHECK(w_ac(g, a, c) - w_ac(g, a, k) + delta - delta_p == lab.aux1 &&
                              w_bc(g, b, k) - w_bc(g, b, c) == lab.aux1,
                          "Fredman identity");
                FGR_CHECK(w_ab(g, a, b) + w_bc(g, b, c) + w_ac(g, a, c) == delta_p, "triangle sum equals delta'");
                ++st.triangles_checked;
                any = true;
                ++i;
                ++j;
              }
            }
            FGR_CHECK(any, "flagged edge lies in a triangle");

            ++count;
            ++st.scans;
            st.max_scans_per_pair = std::max<std::size_t>(st.max_scans_per_pair, count);
            for (int c : chunk) {
              if (!has_bc(g, b, c) || !has_ac(g, a, c)) continue;
              const std::int64_t s = w_ab(g, a, b) + w_bc(g, b, c) + w_ac(g, a, c);
              if (abs64(s) <= kTolerance) {
                out.set(a, b, {c, s});
                break;
              }
            }
            FGR_CHECK(out.at(a, b).has_value(), "scan finds the flagged witness");
          }
        }
    }
  }
  st.pieces += level_pieces;
  st.piece_cap = cap;
  st.max_level_pieces = std::max(st.max_level_pieces, level_pieces);
  const std::size_t span = static_cast<std::size_t>(na) * nb;
  st.piece_bound = static_cast<std::size_t>(kDeltaMax - kDeltaMin + 1) * nc + (span + cap - 1) / cap;
  FGR_CHECK(level_pieces <= st.piece_bound, "piece count bound");
  return out;
}

DetResult det_reduce(const WeightedTripartiteGraph& g, const AllEdgesBackend& backend, double epsilon) {
  if (g.weight_dim() != 1) throw PreconditionError("det_reduce needs weight_dim 1");
  std::vector<WeightedTripartiteGraph> levels{g};
  while (levels.back().max_abs_component() > kBaseBound) levels.push_back(halve(levels.back()));
  DetResult res;
  res.table = base_case(levels.back());
  ++res.stats.base_calls;
  check_table(levels.back(), res.table);
  for (std::size_t i = levels.size() - 1; i-- > 0;) {
    res.table = lift_level(levels[i], res.table, epsilon, backend, &res.stats);
    ++res.stats.levels;
    check_table(levels[i], res.table);
  }
  return res;
}

AllEdgesBackend default_all_edges_backend() {
  return [](const UnweightedTripartiteGraph& g) { return all_edges_triangle(g); };
}

}  // namespace fgr
