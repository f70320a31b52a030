#include "doctest.h"

#include <algorithm>
#include <set>

#include "fgr/errors.hpp"
#include "fgr/instances.hpp"
#include "fgr/oracles.hpp"
#include "fgr/rng.hpp"
#include "test_support.hpp"

using namespace fgr;
using fgr::testing::make_graph;
using fgr::testing::naive_triangles;
using fgr::testing::naive_zero_4cycles;
using fgr::testing::naive_zero_triangles;

namespace {

UnweightedTripartiteGraph graph_from(std::initializer_list<std::pair<NodeLabel, NodeLabel>> edges) {
  UnweightedGraphBuilder b;
  for (const auto& [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

UnweightedTripartiteGraph single_triangle() {
  return graph_from({{{0, 0, 0, 0}, {1, 0, 0, 0}}, {{1, 0, 0, 0}, {2, 0, 0, 0}}, {{2, 0, 0, 0}, {0, 0, 0, 0}}});
}

}  // namespace

TEST_CASE("brute exact triangles on a single triangle") {
  const auto g = make_graph({1, 1, 1}, 3, {{PartPair::AB, 0, 0, 1}, {PartPair::BC, 0, 0, 2}, {PartPair::CA, 0, 0, -3}});
  const auto list = brute_exact_triangles(g);
  REQUIRE(list.items.size() == 1);
  CHECK(list.items[0] == TriangleWitness{0, 0, 0, {0, 0, 0}});
  CHECK(brute_exact_triangles(g, {1, 0, 0}).items.empty());
  CHECK(brute_exact_triangles(WeightedTripartiteGraph({0, 0, 0}, 1, 0)).items.empty());
}

TEST_CASE("brute exact triangles equal a triple loop and respect the cap") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_exact_tri({6, 6, 6}, 10, 0.8, 2, seed);
    const auto list = brute_exact_triangles(g);
    std::vector<IndexTriple> got;
    for (const auto& w : list.items) got.push_back({w.a, w.b, w.c});
    CHECK(got == naive_zero_triangles(g));
    CHECK_FALSE(list.truncated);
    if (got.size() > 1) {
      const auto capped = brute_exact_triangles(g, {0, 0, 0}, 1);
      CHECK(capped.items.size() == 1);
      CHECK(capped.truncated);
    }
  }
}

TEST_CASE("brute 3SUM basics") {
  ThreeSumInstance inst;
  inst.weight_bound = 1;
  inst.arrays = {std::vector<std::int64_t>{0}, {0}, {0}};
  const auto r = brute_3sum(inst);
  REQUIRE(r.items.size() == 1);
  CHECK(r.items[0] == IndexTriple{0, 0, 0});
  inst.arrays = {std::vector<std::int64_t>{1}, {1}, {1}};
  CHECK(brute_3sum(inst).items.empty());
}

TEST_CASE("brute 3SUM equals sort-and-scan") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = gen_3sum(16, 40, seed % 3, seed);
    std::set<IndexTriple> brute;
    for (const auto& t : brute_3sum(inst).items) brute.insert(t);
    // For each i, two pointers over B and C sorted by value.
    std::vector<int> bi(16), ci(16);
    for (int k = 0; k < 16; ++k) bi[k] = ci[k] = k;
    std::sort(bi.begin(), bi.end(), [&](int x, int y) { return inst.B()[x] < inst.B()[y]; });
    std::sort(ci.begin(), ci.end(), [&](int x, int y) { return inst.C()[x] > inst.C()[y]; });
    std::set<IndexTriple> scan;
    for (int i = 0; i < 16; ++i) {
      std::size_t p = 0, q = 0;
      while (p < 16 && q < 16) {
        const auto s = inst.A()[i] + inst.B()[bi[p]] + inst.C()[ci[q]];
        if (s < 0) {
          ++p;
        } else if (s > 0) {
          ++q;
        } else {
          const auto bv = inst.B()[bi[p]];
          const auto cv = inst.C()[ci[q]];
          std::size_t p2 = p, q2 = q;
          while (p2 < 16 && inst.B()[bi[p2]] == bv) ++p2;
          while (q2 < 16 && inst.C()[ci[q2]] == cv) ++q2;
          for (std::size_t x = p; x < p2; ++x)
            for (std::size_t y = q; y < q2; ++y) scan.insert({i, bi[x], ci[y]});
          p = p2;
          q = q2;
        }
      }
    }
    CHECK(brute == scan);
  }
}

TEST_CASE("list_triangles small cases") {
  CHECK(list_triangles(single_triangle()).triangles.size() == 1);
  const auto k222 = gen_sparse_tri({2, 2, 2}, 1.0, 1);
  const auto list = list_triangles(k222);
  CHECK(list.triangles.size() == 8);
  CHECK(std::is_sorted(list.triangles.begin(), list.triangles.end()));
  const auto capped = list_triangles(k222, 3);
  CHECK(capped.triangles.size() == 3);
  CHECK(capped.truncated);
}

TEST_CASE("list_triangles equals a cubic loop on random graphs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 5 + static_cast<int>(seed % 20);
    const auto g = gen_sparse_tri({n, n + 1, n + 2}, 0.35, seed);
    REQUIRE(g.edge_count() <= 2000);
    CHECK(list_triangles(g).triangles == naive_triangles(g));
  }
}

TEST_CASE("detection and flag oracles") {
  const auto path = graph_from({{{0, 0, 0, 0}, {1, 0, 0, 0}}, {{1, 0, 0, 0}, {2, 0, 0, 0}}});
  CHECK_FALSE(detect_triangle(path));
  CHECK(all_edges_triangle(path).count() == 0);
  CHECK(all_nodes_triangle(path).count() == 0);

  const auto tri = single_triangle();
  CHECK(detect_triangle(tri));
  CHECK(all_edges_triangle(tri).count() == 3);
  CHECK(all_nodes_triangle(tri).count() == 3);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_sparse_tri({7, 8, 9}, 0.25, seed);
    const auto tris = naive_triangles(g);
    std::set<std::pair<int, int>> in_tri_edges;
    std::set<int> in_tri_nodes;
    for (const auto& t : tris) {
      for (auto [u, v] : {std::pair{t.a, t.b}, std::pair{t.b, t.c}, std::pair{t.a, t.c}})
        in_tri_edges.insert({std::min(u, v), std::max(u, v)});
      in_tri_nodes.insert({t.a, t.b, t.c});
    }
    const auto ef = all_edges_triangle(g);
    for (std::size_t i = 0; i < ef.size(); ++i) CHECK(ef.flag_at(i) == (in_tri_edges.count(ef.edges()[i]) != 0));
    const auto nf = all_nodes_triangle(g);
    for (int v = 0; v < g.node_count(); ++v) CHECK(nf.flag(v) == (in_tri_nodes.count(v) != 0));
    CHECK(detect_triangle(g) == !tris.empty());
    CHECK((ef.count() > 0) == (nf.count() > 0));
  }
}

TEST_CASE("equality product basics") {
  PartialMatrix A(2, 2), B(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      A.set(i, j, 0);
      B.set(i, j, 0);
    }
  const std::vector<std::pair<int, int>> q{{0, 0}};
  const auto r = equality_product_queries(A, B, q);
  REQUIRE(r[0].has_value());
  CHECK(*r[0] == 0);

  PartialMatrix A5(2, 2), B7(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      A5.set(i, j, 5);
      B7.set(i, j, 7);
    }
  CHECK_FALSE(equality_product_queries(A5, B7, q)[0].has_value());
  CHECK_THROWS_AS(equality_product_queries(A, PartialMatrix(3, 2), q), DimensionMismatch);
}

TEST_CASE("equality product equals the naive definition") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const int n = 1 + static_cast<int>(seed % 10);
    PartialMatrix A(n, n), B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (rng.bernoulli(0.8)) A.set(i, j, rng.uniform(-3, 3));
        if (rng.bernoulli(0.8)) B.set(i, j, rng.uniform(-3, 3));
      }
    std::vector<std::pair<int, int>> queries;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) queries.push_back({i, k});
    const auto got = equality_product_queries(A, B, queries);
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
      const auto [i, k] = queries[qi];
      std::optional<int> expect;
      for (int j = 0; j < n && !expect; ++j)
        if (A.defined(i, j) && B.defined(j, k) && A.get(i, j) == B.get(j, k)) expect = j;
      CHECK(got[qi] == expect);
    }
  }
}

TEST_CASE("zero 4-cycle counting") {
  WeightedTripartiteGraph g({1, 1, 0}, 1, 5, true);
  g.set_edge(PartPair::AB, 0, 0, 4);
  g.set_edge(PartPair::BA, 0, 0, -4);
  CHECK(count_zero_4cycles_brute(g) >= 1);
  CHECK(count_zero_4cycles_brute(WeightedTripartiteGraph({0, 0, 0}, 1, 0)) == 0);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto a = antisymmetrize(gen_undirected(4, 3, 0.7, 0, seed));
    const auto d = DirectedWeightedGraph::from_tripartite(a);
    CHECK(count_zero_4cycles_brute(d) == naive_zero_4cycles(d));
    CHECK(count_zero_4cycles_brute(a) == naive_zero_4cycles(d));
  }
}

TEST_CASE("zero 4-cycle count is invariant under relabeling within a part") {
  const auto a = antisymmetrize(gen_undirected(5, 3, 0.8, 1, 77));
  // Reverse the node order inside every part.
  WeightedTripartiteGraph r(a.part_sizes(), 1, a.weight_bound(), true);
  for (PartPair pp : kAllPairs)
    a.for_each_edge(pp, [&](int i, int j, const Weight3& w) {
      r.set_edge(pp, a.part_size(source_part(pp)) - 1 - i, a.part_size(target_part(pp)) - 1 - j, w);
    });
  CHECK(count_zero_4cycles_brute(r) == count_zero_4cycles_brute(a));
}

TEST_CASE("near-zero witness tables") {
  WeightedTripartiteGraph zeros({2, 2, 3}, 1, 1);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) zeros.set_edge(PartPair::AB, a, b, 0);
  for (int b = 0; b < 2; ++b)
    for (int c = 0; c < 3; ++c) zeros.set_edge(PartPair::BC, b, c, 0);
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 2; ++a) zeros.set_edge(PartPair::CA, c, a, 0);
  const auto t = near_zero_witness_table_brute(zeros, 3);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(t.at(a, b) == Witness{0, 0});

  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto g = gen_exact_tri({5, 5, 4}, 8, 0.8, 1, seed);
    const auto t3 = near_zero_witness_table_brute(g, 3);
    const auto t0 = near_zero_witness_table_brute(g, 0);
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) {
        std::optional<Witness> expect3, expect0;
        for (int c = 0; c < 4; ++c) {
          const auto tw = g.triangle_weight(a, b, c);
          if (!tw) continue;
          if (!expect3 && std::llabs((*tw)[0]) <= 3) expect3 = Witness{c, (*tw)[0]};
          if (!expect0 && (*tw)[0] == 0) expect0 = Witness{c, 0};
        }
        CHECK(t3.at(a, b) == expect3);
        CHECK(t0.at(a, b) == expect0);
      }
  }
}
