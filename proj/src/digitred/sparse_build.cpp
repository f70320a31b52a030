#include "fgr/digitred/sparse_build.hpp"

#include <algorithm>

#include "fgr/errors.hpp"

namespace fgr {

namespace {

using Limits = std::array<std::int64_t, 3>;

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

Limits label_limits(const Radix& r) { return {2 * r.q1, 2 * r.q2, 2 * r.q3}; }

void widen(Limits& L, const Weight3& w) {
  for (int k = 0; k < 3; ++k) L[k] = std::max(L[k], abs64(w[k]));
}

// The three rules, shared by the graph and the 3SUM builds. base_* is the
// source node (always 0 in the 3SUM build).
void add_ab(UnweightedGraphBuilder& b, const Limits& L, std::int64_t base_a, std::int64_t base_b, const Weight3& w) {
  for (std::int64_t y3 = -L[2]; y3 <= L[2]; ++y3) {
    const std::int64_t z3 = -w[2] - y3;
    if (abs64(z3) > L[2]) continue;
    b.add_edge({0, base_a, w[0], z3}, {1, base_b, y3, w[1]});
  }
}

void add_bc(UnweightedGraphBuilder& b, const Limits& L, std::int64_t base_b, std::int64_t base_c, const Weight3& w) {
  for (std::int64_t x2 = -L[1]; x2 <= L[1]; ++x2) {
    const std::int64_t z2 = -w[1] - x2;
    if (abs64(z2) > L[1]) continue;
    b.add_edge({1, base_b, w[2], x2}, {2, base_c, z2, w[0]});
  }
}

void add_ca(UnweightedGraphBuilder& b, const Limits& L, std::int64_t base_c, std::int64_t base_a, const Weight3& w) {
  for (std::int64_t y1 = -L[0]; y1 <= L[0]; ++y1) {
    const std::int64_t x1 = -w[0] - y1;
    if (abs64(x1) > L[0]) continue;
    b.add_edge({2, base_c, w[1], y1}, {0, base_a, x1, w[2]});
  }
}

}  // namespace

UnweightedTripartiteGraph build_sparse_unbalanced(const WeightedTripartiteGraph& g3, const Radix& r) {
  if (g3.weight_dim() != 3) throw PreconditionError("sparse build needs weight_dim 3");
  Limits L = label_limits(r);
  for (PartPair pp : kForwardPairs) g3.for_each_edge(pp, [&](int, int, const Weight3& w) { widen(L, w); });

  UnweightedGraphBuilder b;
  g3.for_each_edge(PartPair::AB, [&](int a, int bb, const Weight3& w) { add_ab(b, L, a, bb, w); });
  g3.for_each_edge(PartPair::BC, [&](int bb, int c, const Weight3& w) { add_bc(b, L, bb, c, w); });
  g3.for_each_edge(PartPair::CA, [&](int c, int a, const Weight3& w) { add_ca(b, L, c, a, w); });
  return std::move(b).build();
}

IndexTriple decode(const UnweightedTripartiteGraph& g, const Triangle& t) {
  return {static_cast<int>(g.label(t.a).base), static_cast<int>(g.label(t.b).base),
          static_cast<int>(g.label(t.c).base)};
}

std::vector<IndexTriple> decode_all(const UnweightedTripartiteGraph& g, const TriangleList& list) {
  std::vector<IndexTriple> out;
  out.reserve(list.triangles.size());
  for (const auto& t : list.triangles) out.push_back(decode(g, t));
  return out;
}

std::vector<IndexTriple> digit_zero_triangles(const WeightedTripartiteGraph& g, const Radix& r) {
  const auto g3 = decompose_graph(g, r);
  std::vector<IndexTriple> out;
  for (const auto& delta : delta_set(r)) {
    const auto sparse = build_sparse_unbalanced(retarget(g3, delta), r);
    for (const auto& t : decode_all(sparse, list_triangles(sparse))) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SparseThreeSum build_sparse_3sum(const std::array<std::vector<Weight3>, 3>& elements, std::int64_t q) {
  if (q < 1) throw PreconditionError("q must be >= 1");
  Limits L = label_limits(Radix::uniform(q));
  SparseThreeSum out;
  for (int part = 0; part < 3; ++part)
    for (int i = 0; i < static_cast<int>(elements[part].size()); ++i) {
      widen(L, elements[part][i]);
      out.index[part][elements[part][i]].push_back(i);
    }
  UnweightedGraphBuilder b;
  for (const auto& [w, idx] : out.index[0]) add_ab(b, L, 0, 0, w);
  for (const auto& [w, idx] : out.index[1]) add_bc(b, L, 0, 0, w);
  for (const auto& [w, idx] : out.index[2]) add_ca(b, L, 0, 0, w);
  out.graph = std::move(b).build();
  return out;
}

std::vector<IndexTriple> decode_3sum(const SparseThreeSum& s, const TriangleList& list) {
  std::vector<IndexTriple> out;
  for (const auto& t : list.triangles) {
    const auto& la = s.graph.label(t.a);
    const auto& lb = s.graph.label(t.b);
    const auto& lc = s.graph.label(t.c);
    // la = (x1, z3), lb = (y3, x2), lc = (z2, y1).
    const Weight3 x{la.aux1, lb.aux2, -lb.aux1 - la.aux2};
    const Weight3 y{lc.aux2, -lb.aux2 - lc.aux1, lb.aux1};
    const Weight3 z{-la.aux1 - lc.aux2, lc.aux1, la.aux2};
    const auto ia = s.index[0].find(x);
    const auto ib = s.index[1].find(y);
    const auto ic = s.index[2].find(z);
    FGR_CHECK(ia != s.index[0].end() && ib != s.index[1].end() && ic != s.index[2].end(),
              "3SUM triangle decodes to stored elements");
    for (int i : ia->second)
      for (int j : ib->second)
        for (int k : ic->second) out.push_back({i, j, k});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::array<std::vector<Weight3>, 3> decompose_3sum(const ThreeSumInstance& inst, std::int64_t q, const Weight3& delta) {
  std::array<std::vector<Weight3>, 3> out;
  for (int part = 0; part < 3; ++part)
    for (auto x : inst.arrays[part]) {
      Weight3 d = digit_decompose(x, q).as_weight();
      out[part].push_back(part == 0 ? d - delta : d);
    }
  return out;
}

std::vector<IndexTriple> digit_zero_triples(const ThreeSumInstance& inst, std::int64_t q) {
  std::vector<IndexTriple> out;
  for (const auto& delta : delta_set(q)) {
    const auto s = build_sparse_3sum(decompose_3sum(inst, q, delta), q);
    for (const auto& t : decode_3sum(s, list_triangles(s.graph))) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fgr
