#include "doctest.h"

#include "fgr/errors.hpp"
#include "fgr/instances.hpp"
#include "fgr/oracles.hpp"
#include "test_support.hpp"

using namespace fgr;
using fgr::testing::make_graph;
using fgr::testing::naive_zero_triangles;

TEST_CASE("weights outside the bound are rejected") {
  WeightedTripartiteGraph g({2, 2, 2}, 1, 10);
  CHECK_THROWS_AS(g.set_edge(PartPair::AB, 0, 0, 11), RangeError);
  CHECK_THROWS_AS(WeightedTripartiteGraph({1, 1, 1}, 1, kMaxWeightBound + 1), RangeError);
  WeightedTripartiteGraph g1({1, 1, 1}, 1, 10);
  CHECK_THROWS_AS(g1.set_edge(PartPair::AB, 0, 0, Weight3{1, 1, 0}), RangeError);
  g.set_edge(PartPair::AB, 0, 0, -10);
  CHECK(g.w(PartPair::AB, 0, 0) == -10);
  CHECK(g.max_abs_component() == 10);
  CHECK_THROWS_AS(g.set_weight_bound(9), RangeError);
}

TEST_CASE("antisymmetrize negates reverse edges") {
  UndirectedWeightedGraph u;
  u.n = 2;
  u.weight_bound = 5;
  u.edges.push_back({0, 1, 5});
  const auto g = antisymmetrize(u);
  CHECK(g.antisymmetric());
  CHECK(g.w(PartPair::AB, 0, 1) == 5);
  CHECK(g.w(PartPair::BA, 1, 0) == -5);
  CHECK(g.w(PartPair::CA, 1, 0) == 5);
  CHECK(g.w(PartPair::AC, 0, 1) == -5);
  CHECK_NOTHROW(g.validate());
}

TEST_CASE("antisymmetrize of the empty graph") {
  UndirectedWeightedGraph u;
  const auto g = antisymmetrize(u);
  CHECK(g.antisymmetric());
  CHECK(g.edge_count() == 0);
  CHECK(g.node_count() == 0);
}

TEST_CASE("antisymmetrize keeps a zero triangle zero") {
  UndirectedWeightedGraph u;
  u.n = 3;
  u.weight_bound = 3;
  u.edges = {{0, 1, 1}, {1, 2, 2}, {0, 2, -3}};
  const auto g = antisymmetrize(u);
  const auto tw = g.triangle_weight(0, 1, 2);
  REQUIRE(tw.has_value());
  CHECK((*tw)[0] == 0);
  // One undirected triangle, six orderings.
  CHECK(naive_zero_triangles(g).size() == 6);
}

TEST_CASE("antisymmetrize preserves zero triangles on random graphs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto u = gen_undirected(9, 4, 0.6, seed % 3, seed);
    std::size_t undirected_zero = 0;
    std::vector<std::vector<std::optional<std::int64_t>>> w(9, std::vector<std::optional<std::int64_t>>(9));
    for (const auto& e : u.edges) w[e.u][e.v] = w[e.v][e.u] = e.w;
    for (int a = 0; a < 9; ++a)
      for (int b = a + 1; b < 9; ++b)
        for (int c = b + 1; c < 9; ++c)
          if (w[a][b] && w[b][c] && w[a][c] && *w[a][b] + *w[b][c] + *w[a][c] == 0) ++undirected_zero;
    const auto g = antisymmetrize(u);
    CHECK(naive_zero_triangles(g).size() == 6 * undirected_zero);
    CHECK(brute_exact_triangles(g).items.size() == 6 * undirected_zero);
  }
}

TEST_CASE("antisymmetry is validated") {
  WeightedTripartiteGraph g({1, 1, 1}, 1, 5, true);
  g.set_edge(PartPair::AB, 0, 0, 3);
  CHECK_THROWS_AS(g.validate(), InvariantViolation);
  g.set_edge(PartPair::BA, 0, 0, -3);
  CHECK_NOTHROW(g.validate());
}

TEST_CASE("planted exact triangles exist") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen_exact_tri({5, 6, 7}, 1000, 0.5, 1, seed);
    CHECK_FALSE(brute_exact_triangles(g).items.empty());
  }
  const auto g = gen_exact_tri({8, 8, 8}, 100, 1.0, 8, 3);
  CHECK(brute_exact_triangles(g).items.size() >= 8);
}

TEST_CASE("density zero and no planting gives no edges") {
  const auto g = gen_exact_tri({5, 5, 5}, 10, 0.0, 0, 1);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("infeasible planting throws") {
  CHECK_THROWS_AS(gen_exact_tri({1, 1, 1}, 10, 1.0, 2, 1), InfeasiblePlanting);
  CHECK_THROWS_AS(gen_3sum(2, 10, 3, 1), InfeasiblePlanting);
}

TEST_CASE("generators are deterministic") {
  CHECK(serialize(gen_exact_tri({4, 5, 6}, 99, 0.7, 2, 42)) == serialize(gen_exact_tri({4, 5, 6}, 99, 0.7, 2, 42)));
  CHECK(serialize(gen_exact_tri({4, 5, 6}, 99, 0.7, 2, 42)) != serialize(gen_exact_tri({4, 5, 6}, 99, 0.7, 2, 43)));
  CHECK(gen_3sum(10, 1000, 1, 5) == gen_3sum(10, 1000, 1, 5));
  CHECK(serialize(gen_sparse_tri({6, 6, 6}, 0.3, 9)) == serialize(gen_sparse_tri({6, 6, 6}, 0.3, 9)));
}

TEST_CASE("planted 3SUM triple exists") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK_FALSE(brute_3sum(gen_3sum(8, 1000, 1, seed)).items.empty());
  const auto empty = gen_3sum(0, 10, 0, 1);
  CHECK(empty.A().empty());
  CHECK(empty.B().empty());
  CHECK(empty.C().empty());
}

TEST_CASE("serialization round-trips") {
  const auto g = gen_exact_tri({3, 4, 5}, 1 << 20, 0.6, 2, 11);
  CHECK(exact_tri_from_json(nlohmann::json::parse(serialize(g))) == g);

  const auto anti = antisymmetrize(gen_undirected(5, 7, 0.5, 1, 2));
  CHECK(exact_tri_from_json(nlohmann::json::parse(serialize(anti))) == anti);

  WeightedTripartiteGraph g3({2, 2, 2}, 3, 9);
  g3.set_edge(PartPair::BC, 1, 0, Weight3{-9, 4, 2});
  CHECK(exact_tri_from_json(nlohmann::json::parse(serialize(g3))) == g3);

  const auto inst = gen_3sum(7, 500, 1, 4);
  CHECK(three_sum_from_json(nlohmann::json::parse(serialize(inst))) == inst);

  const auto s = gen_sparse_tri({5, 4, 3}, 0.4, 8);
  CHECK(sparse_tri_from_json(nlohmann::json::parse(serialize(s))) == s);
}

TEST_CASE("malformed instance files are rejected") {
  CHECK_THROWS_AS(exact_tri_from_json(nlohmann::json::parse(R"({"kind":"3sum"})")), ParseError);
  CHECK_THROWS_AS(exact_tri_from_json(nlohmann::json::parse(R"({"kind":"exact-tri","parts":[1,1,1]})")), ParseError);
  CHECK_THROWS_AS(
      three_sum_from_json(nlohmann::json::parse(R"({"kind":"3sum","arrays":[[5],[0],[0]],"weight_bound":1})")),
      RangeError);
}

TEST_CASE("builder produces a canonical unweighted graph") {
  UnweightedGraphBuilder b;
  b.add_edge({1, 0, 0, 0}, {0, 0, 0, 0});
  b.add_edge({0, 0, 0, 0}, {1, 0, 0, 0});
  b.add_edge({2, 3, 1, -1}, {0, 0, 0, 0});
  const auto g = std::move(b).build();
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  const int a = *g.find({0, 0, 0, 0});
  CHECK(g.degree(a) == 2);
  CHECK(g.part_nodes(2).size() == 1);
  CHECK(g.label(g.part_nodes(2)[0]) == NodeLabel{2, 3, 1, -1});
  std::size_t degree_sum = 0;
  for (int v = 0; v < g.node_count(); ++v) degree_sum += static_cast<std::size_t>(g.degree(v));
  CHECK(degree_sum == 2 * g.edge_count());
}

TEST_CASE("directed view round-trips") {
  const auto g = antisymmetrize(gen_undirected(6, 9, 0.5, 1, 3));
  const auto d = DirectedWeightedGraph::from_tripartite(g);
  CHECK(d.is_antisymmetric());
  CHECK(d.edge_count() == g.edge_count());
  CHECK(d.to_tripartite() == g);
}

TEST_CASE("witness table support comparison") {
  WitnessTable a(2, 2), b(2, 2);
  a.set(0, 1, {3, 0});
  CHECK_FALSE(a.same_support(b));
  b.set(0, 1, {2, 1});
  CHECK(a.same_support(b));
  CHECK(a.filled() == 1);
  CHECK_FALSE(a == b);
}

TEST_CASE("3SUM elements outside the bound are invalid") {
  ThreeSumInstance inst;
  inst.weight_bound = 3;
  inst.arrays = {std::vector<std::int64_t>{4}, {}, {}};
  CHECK_THROWS_AS(inst.validate(), RangeError);
  auto g = make_graph({1, 1, 1}, 3, {{PartPair::AB, 0, 0, 1}});
  CHECK_FALSE(g.triangle_weight(0, 0, 0).has_value());
}
