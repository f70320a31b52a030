#include "doctest.h"

#include <cstdlib>

#include "fgr/detred.hpp"
#include "fgr/errors.hpp"
#include "fgr/instances.hpp"
#include "fgr/oracles.hpp"
#include "test_support.hpp"

using namespace fgr;
using fgr::testing::make_graph;

namespace {

void check_sound(const WeightedTripartiteGraph& g, const WitnessTable& t) {
  for (int a = 0; a < t.rows(); ++a)
    for (int b = 0; b < t.cols(); ++b)
      if (const auto& w = t.at(a, b)) {
        const auto tw = g.triangle_weight(a, b, w->c);
        REQUIRE(tw.has_value());
        CHECK((*tw)[0] == w->sum);
        CHECK(std::abs(w->sum) <= kTolerance);
      }
}

}  // namespace

TEST_CASE("scaling and halving") {
  const auto g = make_graph({1, 1, 1}, 7, {{PartPair::AB, 0, 0, 5}, {PartPair::BC, 0, 0, -5}, {PartPair::CA, 0, 0, 7}});
  const auto s = scale_by_4(g);
  CHECK(s.w(PartPair::AB, 0, 0) == 20);
  CHECK(s.w(PartPair::BC, 0, 0) == -20);
  CHECK(s.weight_bound() == 28);
  const auto h = halve(g);
  CHECK(h.w(PartPair::AB, 0, 0) == 2);
  CHECK(h.w(PartPair::BC, 0, 0) == -3);
  CHECK(h.w(PartPair::CA, 0, 0) == 3);
  CHECK(h.weight_bound() >= 4);
  CHECK_THROWS_AS(scale_by_4(WeightedTripartiteGraph({1, 1, 1}, 1, kMaxWeightBound)), RangeError);
}

TEST_CASE("halving moves triangle totals by at most 3") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen_exact_tri({5, 5, 5}, 1000, 1.0, 1, seed);
    const auto h = halve(g);
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b)
        for (int c = 0; c < 5; ++c) {
          const auto full = (*g.triangle_weight(a, b, c))[0];
          const auto half = (*h.triangle_weight(a, b, c))[0];
          CHECK(std::llabs(full - 2 * half) <= 3);
        }
  }
}

TEST_CASE("base case matches the brute near-zero table") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_exact_tri({6, 7, 70}, kBaseBound, 0.6, seed % 3, seed);
    const auto table = base_case(g);
    CHECK(table == near_zero_witness_table_brute(g, kTolerance));
  }
  CHECK_THROWS_AS(base_case(gen_exact_tri({2, 2, 2}, 100, 1.0, 0, 1)), PreconditionError);
}

TEST_CASE("build_instance triangles are pairs of sum delta'") {
  const auto g = gen_exact_tri({6, 6, 6}, 6, 1.0, 0, 5);
  const int k = 2;
  for (int delta = -6; delta <= 6; delta += 3) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        if ((*g.triangle_weight(a, b, k))[0] == delta) pairs.emplace_back(a, b);
    const std::vector<int> cs{0, 1, 2, 3, 4, 5};
    for (int delta_p : {-1, 0, 2}) {
      const auto inst = build_instance(pairs, k, delta, delta_p, cs, g);
      const auto flags = all_edges_triangle(inst);
      for (const auto& [a, b] : pairs) {
        bool expect = false;
        for (int c : cs) expect = expect || (*g.triangle_weight(a, b, c))[0] == delta_p;
        CHECK(flags.flag(*inst.find({0, a, 0, 0}), *inst.find({1, b, 0, 0})) == expect);
      }
    }
  }
  const std::vector<std::pair<int, int>> bad{{0, 0}};
  const std::vector<int> cs{0};
  const int wrong = static_cast<int>((*g.triangle_weight(0, 0, k))[0]) + 1;
  CHECK_THROWS_AS(build_instance(bad, k, wrong, 0, cs, g), PreconditionError);
}

TEST_CASE("det_reduce agrees with brute force") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto g = gen_exact_tri({8, 8, 4}, 1 << 12, 0.9, seed % 4, seed);
    const auto res = det_reduce(g, default_all_edges_backend());
    CHECK(res.table.same_support(near_zero_witness_table_brute(g, kTolerance)));
    check_sound(g, res.table);
    CHECK(res.stats.levels > 0);
    CHECK(res.stats.base_calls == 1);
    CHECK(res.stats.max_scans_per_pair <= 1);
    CHECK(res.stats.max_level_pieces <= res.stats.piece_bound);
  }
}

TEST_CASE("scaled instance recovers exact zero pairs") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto g = gen_exact_tri({7, 7, 4}, 1 << 10, 0.9, 3, seed);
    const auto res = det_reduce(scale_by_4(g), default_all_edges_backend());
    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b) {
        bool zero = false;
        for (int c = 0; c < 4; ++c) {
          const auto tw = g.triangle_weight(a, b, c);
          zero = zero || (tw && (*tw)[0] == 0);
        }
        CHECK(res.table.at(a, b).has_value() == zero);
      }
  }
}

TEST_CASE("det_reduce is deterministic") {
  const auto g = gen_exact_tri({10, 10, 4}, 1 << 16, 0.9, 2, 3);
  const auto a = det_reduce(g, default_all_edges_backend());
  const auto b = det_reduce(g, default_all_edges_backend());
  CHECK(a.table == b.table);
  CHECK(a.stats.to_json() == b.stats.to_json());
  CHECK_THROWS_AS(lift_level(g, WitnessTable(1, 1), 0.25, default_all_edges_backend()), DimensionMismatch);
}
