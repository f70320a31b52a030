#include "doctest.h"

#include <algorithm>

#include "fgr/digitred/degree.hpp"
#include "fgr/digitred/digits.hpp"
#include "fgr/digitred/sparse_build.hpp"
#include "fgr/errors.hpp"
#include "fgr/instances.hpp"
#include "fgr/oracles.hpp"

using namespace fgr;

TEST_CASE("shift with q = 1 leaves weights unchanged") {
  const auto g3 = decompose_graph(gen_exact_tri({4, 4, 4}, 27, 0.8, 1, 2), Radix::uniform(3));
  const auto s = random_shift(g3, 1, 5).graph;
  for (PartPair pp : kAllPairs) g3.for_each_edge(pp, [&](int i, int j, const Weight3& w) { CHECK(s.weight(pp, i, j) == w); });
}

TEST_CASE("shift preserves triangle totals and stays in range") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::int64_t q = 4;
    const auto g3 = decompose_graph(gen_exact_tri({5, 5, 5}, q * q * q, 0.8, 2, seed), Radix::uniform(q));
    const auto res = random_shift(g3, q, seed + 100);
    for (const auto& h : res.shift.h)
      for (auto x : h) {
        CHECK(x >= 1);
        CHECK(x <= q);
      }
    CHECK(res.graph.max_abs_component() <= 2 * q);
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b)
        for (int c = 0; c < 5; ++c) CHECK(res.graph.triangle_weight(a, b, c) == g3.triangle_weight(a, b, c));
  }
}

TEST_CASE("threshold and rounds") {
  CHECK(degree_threshold(100, 10) == 60);
  CHECK(degree_threshold(3, 100) == 1);
  CHECK_THROWS_AS(degree_threshold(3, 0), PreconditionError);
  CHECK(default_rounds(1) == 1);
  CHECK(default_rounds(16) == 8);
  CHECK(default_rounds(17) == 9);
}

TEST_CASE("pruning enforces the degree bound") {
  const auto s = gen_sparse_tri({10, 10, 10}, 0.5, 3);
  for (int threshold : {0, 1, 3, 8, 100}) {
    PruneStats st;
    const auto p = prune_degree(s, threshold, &st);
    CHECK(p.max_degree() <= threshold);
    CHECK(st.threshold == threshold);
    CHECK(st.built_edges == s.edge_count());
    int removed = 0;
    for (int v = 0; v < s.node_count(); ++v) removed += s.degree(v) > threshold;
    CHECK(st.removed_nodes == static_cast<std::size_t>(removed));
  }
  CHECK(prune_degree(s, 1000) == s);
}

TEST_CASE("degree bounded graphs are deterministic and bounded") {
  const std::int64_t q = 4;
  const auto g3 = decompose_graph(gen_exact_tri({6, 6, 6}, q * q * q, 1.0, 1, 8), Radix::uniform(q));
  std::vector<PruneStats> stats;
  const auto a = degree_bounded_sparse(g3, q, 11, 3, &stats);
  const auto b = degree_bounded_sparse(g3, q, 11, 3);
  CHECK(a == b);
  CHECK(a.size() == 3);
  CHECK(stats.size() == 3);
  for (const auto& s : a) CHECK(s.max_degree() <= degree_threshold(18, q));
  CHECK_THROWS_AS(degree_bounded_sparse(g3, q, 11, 0), PreconditionError);
}

TEST_CASE("every triangle of a pruned graph is a zero triangle") {
  const std::int64_t q = 4;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto g3 = decompose_graph(gen_exact_tri({6, 6, 6}, q * q * q, 0.9, 2, seed), Radix::uniform(q));
    for (const auto& s : degree_bounded_sparse(g3, q, seed, 2))
      for (const auto& t : decode_all(s, list_triangles(s))) CHECK(*g3.triangle_weight(t.i, t.j, t.k) == Weight3{0, 0, 0});
  }
}
