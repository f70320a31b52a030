#include "doctest.h"

#include <algorithm>

#include "fgr/digitred/digits.hpp"
#include "fgr/digitred/sparse_build.hpp"
#include "fgr/errors.hpp"
#include "fgr/instances.hpp"
#include "fgr/oracles.hpp"
#include "fgr/rng.hpp"
#include "test_support.hpp"

using namespace fgr;
using fgr::testing::naive_zero_triangles;

TEST_CASE("empty triple-weight graph gives an empty sparse graph") {
  const WeightedTripartiteGraph g3({3, 3, 3}, 3, 8);
  const auto s = build_sparse_exact(g3, 2);
  CHECK(s.node_count() == 0);
  CHECK(s.edge_count() == 0);
  CHECK_THROWS_AS(build_sparse_exact(WeightedTripartiteGraph({1, 1, 1}, 1, 1), 2), PreconditionError);
}

TEST_CASE("one planted zero triangle with q = 2") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen_exact_tri({3, 3, 3}, 8, 0.5, 1, seed);
    const auto brute = naive_zero_triangles(g);
    REQUIRE_FALSE(brute.empty());
    const auto got = digit_zero_triangles(g, Radix::uniform(2));
    CHECK(got == brute);
  }
}

TEST_CASE("every output triangle decodes to a zero triangle of the digit graph") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen_exact_tri({5, 5, 5}, 27, 0.9, 3, seed);
    const auto g3 = decompose_graph(g, Radix::uniform(3));
    for (const auto& delta : delta_set(3)) {
      const auto h = retarget(g3, delta);
      const auto s = build_sparse_exact(h, 3);
      const auto decoded = decode_all(s, list_triangles(s));
      for (const auto& t : decoded) CHECK(*h.triangle_weight(t.i, t.j, t.k) == Weight3{0, 0, 0});
      auto sorted = decoded;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == naive_zero_triangles(h));
    }
  }
}

TEST_CASE("only labels with an incident edge are materialized") {
  const auto g = gen_exact_tri({4, 4, 4}, 64, 0.7, 1, 5);
  const auto s = build_sparse_exact(decompose_graph(g, Radix::uniform(4)), 4);
  for (int v = 0; v < s.node_count(); ++v) CHECK(s.degree(v) > 0);
}

TEST_CASE("edge count roughly doubles with q") {
  const auto g = gen_exact_tri({6, 6, 6}, 64, 1.0, 0, 3);
  const auto g3 = decompose_graph(g, Radix::uniform(4));
  for (std::int64_t q = 4; q <= 32; q *= 2) {
    const double small = static_cast<double>(build_sparse_exact(g3, q).edge_count());
    const double big = static_cast<double>(build_sparse_exact(g3, 2 * q).edge_count());
    CHECK(big / small >= 1.3);
    CHECK(big / small <= 2.7);
  }
}

TEST_CASE("unbalanced build specializes to the exact build") {
  const auto g = gen_exact_tri({4, 5, 3}, 64, 0.8, 2, 17);
  const auto g3 = decompose_graph(g, Radix::uniform(4));
  CHECK(build_sparse_unbalanced(g3, Radix{4, 4, 4}) == build_sparse_exact(g3, 4));
}

TEST_CASE("unbalanced edge counts stay within the pairwise bound") {
  double worst = 0.0;
  for (std::int64_t n = 3; n <= 9; n += 3)
    for (const Radix r : {Radix{2, 4, 8}, Radix{8, 4, 2}, Radix{4, 8, 2}, Radix{3, 3, 3}, Radix{1, 8, 8}}) {
      const auto g = gen_exact_tri({static_cast<int>(n), static_cast<int>(n + 1), static_cast<int>(n + 2)},
                                   r.capacity(), 1.0, 0, static_cast<std::uint64_t>(n));
      const auto s = build_sparse_unbalanced(decompose_graph(g, r), r);
      const double n1 = static_cast<double>(n), n2 = n1 + 1, n3 = n1 + 2;
      const double bound = n1 * n2 * static_cast<double>(r.q3) + n1 * n3 * static_cast<double>(r.q2) +
                           n2 * n3 * static_cast<double>(r.q1);
      worst = std::max(worst, static_cast<double>(s.edge_count()) / bound);
    }
  CHECK(worst <= 6.0);
}

TEST_CASE("unbalanced correspondence on random small instances") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const Radix r{rng.uniform(1, 4), rng.uniform(1, 4), rng.uniform(1, 4)};
    const auto g = gen_exact_tri({4, 4, 4}, r.capacity(), 0.8, 2 * (seed % 2), seed);
    CHECK(digit_zero_triangles(g, r) == naive_zero_triangles(g));
  }
}

TEST_CASE("3SUM singleton zero") {
  std::array<std::vector<Weight3>, 3> el{std::vector<Weight3>{{0, 0, 0}}, {{0, 0, 0}}, {{0, 0, 0}}};
  const auto s = build_sparse_3sum(el, 1);
  const auto tris = list_triangles(s.graph);
  CHECK(tris.triangles.size() == 1);
  const auto decoded = decode_3sum(s, tris);
  REQUIRE(decoded.size() == 1);
  CHECK(decoded[0] == IndexTriple{0, 0, 0});
}

TEST_CASE("3SUM duplicates are expanded") {
  ThreeSumInstance inst;
  inst.weight_bound = 8;
  inst.arrays = {std::vector<std::int64_t>{1, 1}, {2}, {-3, 5, -3}};
  const auto got = digit_zero_triples(inst, 2);
  CHECK(got == std::vector<IndexTriple>{{0, 0, 0}, {0, 0, 2}, {1, 0, 0}, {1, 0, 2}});
}

TEST_CASE("3SUM correspondence on random instances") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 1 + seed % 24;
    const auto W = static_cast<std::int64_t>(std::max<std::size_t>(1, n * n * n / 8));
    const auto inst = gen_3sum(n, W, seed % 2, seed);
    CHECK(digit_zero_triples(inst, ceil_cbrt(W)) == brute_3sum(inst).items);
  }
}

TEST_CASE("3SUM edge count grows linearly in q") {
  const auto inst = gen_3sum(12, 4096, 0, 1);
  std::vector<double> edges;
  for (std::int64_t q = 16; q <= 128; q *= 2)
    edges.push_back(static_cast<double>(build_sparse_3sum(decompose_3sum(inst, q), q).graph.edge_count()));
  for (std::size_t i = 1; i < edges.size(); ++i) {
    CHECK(edges[i] / edges[i - 1] >= 1.3);
    CHECK(edges[i] / edges[i - 1] <= 2.7);
  }
}
