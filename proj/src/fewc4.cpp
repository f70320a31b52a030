#include "fgr/fewc4.hpp"

#include <algorithm>
#include <cmath>

#include "fgr/errors.hpp"
#include "fgr/oracles.hpp"
#include "fgr/rng.hpp"

namespace fgr {

namespace {

bool zero_cycle(const DirectedWeightedGraph& g, int i, int j, int k, int l) {
  return g.has_edge(i, j) && g.has_edge(j, k) && g.has_edge(k, l) && g.has_edge(l, i) &&
         g.w(i, j) + g.w(j, k) + g.w(k, l) + g.w(l, i) == 0;
}

double sample_budget(double space, double error_target, int n) {
  return std::ceil(20.0 * (space / error_target) * std::log(static_cast<double>(n) + 2.0));
}

// Sub-instance on the given original nodes (sorted), with pad isolated
// nodes appended to part A.
SubInstance make_sub(const DirectedWeightedGraph& g, const std::vector<int>& nodes, int pad) {
  std::array<int, 3> sizes{pad, 0, 0};
  for (int v : nodes) ++sizes[g.part(v)];
  SubInstance sub{WeightedTripartiteGraph(sizes, 1, g.weight_bound(), true), {}, pad, {0, 0, 0}};
  std::array<std::vector<int>, 3> members;
  for (int v : nodes) members[g.part(v)].push_back(v);
  for (int v : members[0]) sub.origin.push_back(v);
  for (int i = 0; i < pad; ++i) sub.origin.push_back(-1);
  for (int p = 1; p < 3; ++p)
    for (int v : members[p]) sub.origin.push_back(v);
  for (PartPair pp : kAllPairs) {
    const auto& from = members[source_part(pp)];
    const auto& to = members[target_part(pp)];
    for (std::size_t i = 0; i < from.size(); ++i)
      for (std::size_t j = 0; j < to.size(); ++j)
        if (g.has_edge(from[i], to[j]))
          sub.graph.set_edge(pp, static_cast<int>(i), static_cast<int>(j), g.w(from[i], to[j]));
  }
  sub.graph.set_antisymmetric(g.is_antisymmetric());
  return sub;
}

// Forward-oriented witness for a directed zero cycle u -> v -> w -> u, or
// nullopt when the forward triangle is not zero-weight.
std::optional<TriangleWitness> orient(const DirectedWeightedGraph& g, int u, int v, int w) {
  std::array<int, 3> by_part{-1, -1, -1};
  for (int x : {u, v, w}) by_part[g.part(x)] = x;
  if (by_part[0] < 0 || by_part[1] < 0 || by_part[2] < 0) return std::nullopt;
  const int a = by_part[0], b = by_part[1], c = by_part[2];
  if (!g.has_edge(a, b) || !g.has_edge(b, c) || !g.has_edge(c, a)) return std::nullopt;
  const std::int64_t total = g.w(a, b) + g.w(b, c) + g.w(c, a);
  if (total != 0) return std::nullopt;
  return TriangleWitness{g.local(a), g.local(b), g.local(c), {0, 0, 0}};
}

}  // namespace

std::uint64_t repeated_zero_4cycles(const DirectedWeightedGraph& g) {
  const int n = g.node_count();
  std::uint64_t ik = 0;
  std::uint64_t both = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!g.has_edge(i, j) || !g.has_edge(j, i)) continue;
      if (2 * (g.w(i, j) + g.w(j, i)) == 0) ++both;
      for (int l = 0; l < n; ++l)
        if (zero_cycle(g, i, j, i, l)) ++ik;
    }
  // Tuples with j = l are rotations of tuples with i = k.
  return 2 * ik - both;
}

Estimate estimate_zero_4cycles(const DirectedWeightedGraph& g, double error_target, std::uint64_t seed,
                               TupleMode mode) {
  if (!(error_target >= 1.0)) throw PreconditionError("error target must be >= 1");
  const auto n = static_cast<std::uint64_t>(g.node_count());
  Estimate est;
  est.tuple_space = mode == TupleMode::all ? n * n * n * n : (n < 2 ? 0 : n * n * (n - 1) * (n - 1));
  if (est.tuple_space == 0) {
    est.exact = true;
    return est;
  }
  const double s = sample_budget(static_cast<double>(est.tuple_space), error_target, g.node_count());
  if (s >= static_cast<double>(est.tuple_space)) {
    const std::uint64_t all = count_zero_4cycles_brute(g);
    est.value = static_cast<double>(mode == TupleMode::all ? all : all - repeated_zero_4cycles(g));
    est.exact = true;
    return est;
  }
  est.samples = static_cast<std::uint64_t>(s);
  Rng rng(seed);
  const auto last = static_cast<std::int64_t>(n) - 1;
  for (std::uint64_t t = 0; t < est.samples; ++t) {
    int i, j, k, l;
    i = static_cast<int>(rng.uniform(0, last));
    j = static_cast<int>(rng.uniform(0, last));
    if (mode == TupleMode::all) {
      k = static_cast<int>(rng.uniform(0, last));
      l = static_cast<int>(rng.uniform(0, last));
    } else {
      // Uniform over the other n - 1 nodes.
      k = static_cast<int>(rng.uniform(0, last - 1));
      if (k >= i) ++k;
      l = static_cast<int>(rng.uniform(0, last - 1));
      if (l >= j) ++l;
    }
    if (zero_cycle(g, i, j, k, l)) ++est.hits;
  }
  est.value = static_cast<double>(est.hits) * static_cast<double>(est.tuple_space) / static_cast<double>(est.samples);
  return est;
}

std::vector<std::pair<int, int>> brute_partners(const DirectedWeightedGraph& g, int i0, int k0) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < g.node_count(); ++i)
    for (int k = 0; k < g.node_count(); ++k)
      if (zero_cycle(g, i0, k0, i, k)) out.emplace_back(i, k);
  return out;
}

std::optional<HeavyPairContext> heavy_pair(const DirectedWeightedGraph& g, double threshold, std::uint64_t seed) {
  if (!(threshold > 0)) throw PreconditionError("threshold must be positive");
  const int n = g.node_count();
  const double target = std::max(1.0, threshold / 2.0);
  const auto space = static_cast<std::uint64_t>(n) * n;
  const double s = sample_budget(static_cast<double>(space), target, n);
  const bool exhaustive = s >= static_cast<double>(space);
  std::uint64_t index = 0;
  for (const auto& [i0, k0] : g.edges()) {
    double estimate = 0.0;
    if (exhaustive) {
      estimate = static_cast<double>(brute_partners(g, i0, k0).size());
    } else {
      Rng rng(derive_seed(seed, Stream::heavy, index));
      std::uint64_t hits = 0;
      const auto samples = static_cast<std::uint64_t>(s);
      for (std::uint64_t t = 0; t < samples; ++t) {
        const int i = static_cast<int>(rng.uniform(0, n - 1));
        const int k = static_cast<int>(rng.uniform(0, n - 1));
        if (zero_cycle(g, i0, k0, i, k)) ++hits;
      }
      estimate = static_cast<double>(hits) * static_cast<double>(space) / static_cast<double>(samples);
    }
    ++index;
    if (estimate >= threshold / 2.0) {
      HeavyPairContext ctx{i0, k0, std::vector<std::optional<std::int64_t>>(static_cast<std::size_t>(n)), estimate};
      for (int k = 0; k < n; ++k)
        if (g.has_edge(i0, k)) ctx.r[k] = g.w(i0, k) - g.w(i0, k0);
      return ctx;
    }
  }
  return std::nullopt;
}

std::vector<std::pair<int, int>> fredman_e0(const DirectedWeightedGraph& g, const HeavyPairContext& ctx) {
  std::vector<std::pair<int, int>> e0;
  for (const auto& [i, k] : g.edges()) {
    if (!ctx.r[k] || !g.has_edge(i, ctx.k0)) continue;
    if (g.w(i, k) - g.w(i, ctx.k0) == *ctx.r[k]) e0.emplace_back(i, k);
  }
  return e0;
}

std::optional<TriangleWitness> zero_tri_through_e0(const DirectedWeightedGraph& g, const HeavyPairContext& ctx,
                                                   const std::vector<std::pair<int, int>>& e0) {
  if (e0.empty()) return std::nullopt;
  const int n = g.node_count();
  PartialMatrix A(n, n);
  PartialMatrix B(n, n);
  for (int i = 0; i < n; ++i) {
    if (!g.has_edge(i, ctx.k0)) continue;
    for (int j = 0; j < n; ++j)
      if (g.has_edge(j, i)) A.set(i, j, g.w(i, ctx.k0) + g.w(j, i));
  }
  for (int k = 0; k < n; ++k) {
    if (!ctx.r[k]) continue;
    for (int j = 0; j < n; ++j)
      if (g.has_edge(k, j)) B.set(j, k, -g.w(k, j) - *ctx.r[k]);
  }
  const auto hits = equality_product_queries(A, B, e0);
  for (std::size_t q = 0; q < e0.size(); ++q) {
    if (!hits[q]) continue;
    const auto [i, k] = e0[q];
    const int j = *hits[q];
    FGR_CHECK(g.has_edge(i, k) && g.has_edge(k, j) && g.has_edge(j, i) && g.w(i, k) + g.w(k, j) + g.w(j, i) == 0,
              "equality product hit is a zero-weight triangle");
    if (auto w = orient(g, i, k, j)) return w;
  }
  return std::nullopt;
}

std::vector<int> bucket_assignment(int n, int bucket_count, std::uint64_t seed) {
  if (bucket_count < 1) throw PreconditionError("bucket_count must be >= 1");
  Rng rng(seed);
  std::vector<int> out(static_cast<std::size_t>(n));
  for (auto& b : out) b = bucket_count == 1 ? 0 : static_cast<int>(rng.uniform(0, bucket_count - 1));
  return out;
}

std::vector<SubInstance> bucket_split(const DirectedWeightedGraph& g, int bucket_count, std::uint64_t seed) {
  const auto assign = bucket_assignment(g.node_count(), bucket_count, seed);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(bucket_count));
  for (int v = 0; v < g.node_count(); ++v) members[assign[v]].push_back(v);
  std::vector<SubInstance> out;
  for (int b1 = 0; b1 < bucket_count; ++b1)
    for (int b2 = b1; b2 < bucket_count; ++b2)
      for (int b3 = b2; b3 < bucket_count; ++b3) {
        std::vector<int> nodes = members[b1];
        if (b2 != b1) nodes.insert(nodes.end(), members[b2].begin(), members[b2].end());
        if (b3 != b2) nodes.insert(nodes.end(), members[b3].begin(), members[b3].end());
        if (nodes.empty()) continue;
        std::sort(nodes.begin(), nodes.end());
        out.push_back(make_sub(g, nodes, 0));
        out.back().buckets = {b1, b2, b3};
      }
  return out;
}

int padded_size(int n, std::uint64_t count) {
  auto m = static_cast<std::uint64_t>(std::max(n, 0));
  while (m * m * m < count) ++m;
  return static_cast<int>(m);
}

SubInstance pad_to_bound(const SubInstance& sub, std::uint64_t count) {
  const int n = sub.graph.node_count();
  const int extra = padded_size(n, count) - n;
  if (extra == 0) return sub;
  auto sizes = sub.graph.part_sizes();
  sizes[0] += extra;
  SubInstance out{WeightedTripartiteGraph(sizes, 1, sub.graph.weight_bound(), sub.graph.antisymmetric()),
                  {}, sub.padding + extra, sub.buckets};
  for (PartPair pp : kAllPairs)
    sub.graph.for_each_edge(pp, [&](int i, int j, const Weight3& w) { out.graph.set_edge(pp, i, j, w); });
  const int a = sub.graph.part_size(0);
  out.origin.assign(sub.origin.begin(), sub.origin.begin() + a);
  out.origin.insert(out.origin.end(), static_cast<std::size_t>(extra), -1);
  out.origin.insert(out.origin.end(), sub.origin.begin() + a, sub.origin.end());
  return out;
}

bool property1_holds(const WeightedTripartiteGraph& g) {
  const auto d = DirectedWeightedGraph::from_tripartite(g);
  if (!d.is_antisymmetric()) return false;
  const auto n = static_cast<std::uint64_t>(d.node_count());
  return count_zero_4cycles_brute(d) <= n * n * n;
}

Fewc4Backend brute_fewc4_backend() {
  return [](const WeightedTripartiteGraph& g) -> std::optional<TriangleWitness> {
    if (g.node_count() <= 12) FGR_CHECK(property1_holds(g), "backend input is antisymmetric with at most n^3 zero 4-cycles");
    const auto found = brute_exact_triangles(g, {0, 0, 0}, 1);
    if (found.items.empty()) return std::nullopt;
    return found.items.front();
  };
}

nlohmann::json Fewc4Stats::to_json() const {
  return {{"dense", dense},
          {"dense_iterations", dense_iterations},
          {"removed_edges", removed_edges},
          {"bucket_count", bucket_count},
          {"sub_instances", sub_instances},
          {"backend_calls", backend_calls},
          {"brute_fallbacks", brute_fallbacks},
          {"padding", padding},
          {"global_estimate", global_estimate}};
}

Fewc4Result solve_with_fewc4_oracle(const WeightedTripartiteGraph& g, const Fewc4Backend& backend, double delta,
                                    double x, std::uint64_t seed, const Fewc4Trace* trace) {
  if (!g.antisymmetric()) throw PreconditionError("driver needs an antisymmetric instance");
  g.validate();
  Fewc4Result res;
  auto& st = res.stats;
  DirectedWeightedGraph d = DirectedWeightedGraph::from_tripartite(g);
  const int n = d.node_count();
  const double nd = std::max(1.0, static_cast<double>(n));
  const double global_target = std::max(1.0, std::pow(nd, 4.0 - delta) / 2.0);
  const double heavy_threshold = std::pow(nd, 2.0 - delta);

  // Re-checks a candidate against the input before surfacing it.
  auto surface = [&](int a, int b, int c) {
    const auto tw = g.triangle_weight(a, b, c);
    FGR_CHECK(tw && (*tw)[0] == 0, "surfaced witness is a zero-weight triangle of the input");
    res.witness = TriangleWitness{a, b, c, *tw};
  };

  for (std::uint64_t iter = 0;; ++iter) {
    const auto est = estimate_zero_4cycles(d, global_target, derive_seed(seed, Stream::estimate, iter));
    if (iter == 0) st.global_estimate = est.value;
    if (est.value <= global_target) break;
    const auto ctx = heavy_pair(d, heavy_threshold, derive_seed(seed, Stream::heavy, iter));
    if (!ctx) break;
    st.dense = true;
    ++st.dense_iterations;
    const auto e0 = fredman_e0(d, *ctx);
    FGR_CHECK(!e0.empty(), "a heavy pair is its own partner");
    if (trace && trace->on_dense_iteration) trace->on_dense_iteration(d, *ctx, e0);
    if (const auto w = zero_tri_through_e0(d, *ctx, e0)) {
      surface(w->a, w->b, w->c);
      return res;
    }
    const std::size_t before = d.edge_count();
    for (const auto& [i, k] : e0) {
      d.remove_edge(i, k);
      d.remove_edge(k, i);
    }
    FGR_CHECK(d.edge_count() < before, "dense iteration removes edges");
    FGR_CHECK(d.is_antisymmetric(), "residual graph stays antisymmetric");
    st.removed_edges += before - d.edge_count();
  }

  st.bucket_count = std::max(1, static_cast<int>(std::lround(std::pow(nd, 1.0 - x))));
  const auto subs = bucket_split(d, st.bucket_count, derive_seed(seed, Stream::bucket));
  st.sub_instances = subs.size();
  const std::uint64_t sub_seed = derive_seed(seed, Stream::bucket, 1);
  std::uint64_t index = 0;
  for (const auto& sub : subs) {
    const auto sd = DirectedWeightedGraph::from_tripartite(sub.graph);
    const int size = sub.graph.node_count();
    const double size2 = std::max(1.0, static_cast<double>(size) * size);
    const auto est = estimate_zero_4cycles(sd, size2, derive_seed(sub_seed, Stream::estimate, index++),
                                           TupleMode::distinct);
    std::optional<TriangleWitness> local;
    SubInstance used = sub;
    if (est.value >= 2.0 * size2) {
      ++st.brute_fallbacks;
      const auto found = brute_exact_triangles(sub.graph, {0, 0, 0}, 1);
      if (!found.items.empty()) local = found.items.front();
    } else {
      const auto bound = repeated_zero_4cycles(sd) + static_cast<std::uint64_t>(std::ceil(est.value + size2));
      used = pad_to_bound(sub, bound);
      st.padding += static_cast<std::size_t>(used.padding);
      if (trace && trace->on_backend_call) trace->on_backend_call(used);
      ++st.backend_calls;
      local = backend(used.graph);
    }
    if (!local) continue;
    const auto& sg = used.graph;
    const int ga = used.origin[local->a];
    const int gb = used.origin[sg.part_size(0) + local->b];
    const int gc = used.origin[sg.part_size(0) + sg.part_size(1) + local->c];
    FGR_CHECK(ga >= 0 && gb >= 0 && gc >= 0, "witness avoids padding nodes");
    surface(d.local(ga), d.local(gb), d.local(gc));
    return res;
  }
  return res;
}

}  // namespace fgr
