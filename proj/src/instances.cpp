#include "fgr/instances.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <tuple>

#include "fgr/errors.hpp"
#include "fgr/rng.hpp"

namespace fgr {

namespace {

constexpr std::array<int, 6> kSource{0, 1, 2, 1, 2, 0};
constexpr std::array<int, 6> kTarget{1, 2, 0, 0, 1, 2};
constexpr std::array<const char*, 6> kNames{"AB", "BC", "CA", "BA", "CB", "AC"};

void check_bound(std::int64_t bound) {
  if (bound < 0 || bound > kMaxWeightBound)
    throw RangeError("weight bound " + std::to_string(bound) + " outside [0, 2^40]");
}

void check_density(double density) {
  if (!(density >= 0.0 && density <= 1.0)) throw PreconditionError("density must lie in [0, 1]");
}

}  // namespace

int source_part(PartPair pp) { return kSource[static_cast<std::size_t>(pp)]; }
int target_part(PartPair pp) { return kTarget[static_cast<std::size_t>(pp)]; }

PartPair reverse(PartPair pp) {
  return static_cast<PartPair>((static_cast<int>(pp) + 3) % 6);
}

PartPair pair_of(int from_part, int to_part) {
  for (PartPair pp : kAllPairs)
    if (source_part(pp) == from_part && target_part(pp) == to_part) return pp;
  throw PreconditionError("no part pair " + std::to_string(from_part) + "->" + std::to_string(to_part));
}

const char* pair_name(PartPair pp) { return kNames[static_cast<std::size_t>(pp)]; }

PartPair pair_from_name(const std::string& name) {
  for (PartPair pp : kAllPairs)
    if (name == kNames[static_cast<std::size_t>(pp)]) return pp;
  throw ParseError("unknown part pair '" + name + "'");
}

// ---------------------------------------------------------------------------
// WeightedTripartiteGraph

WeightedTripartiteGraph::WeightedTripartiteGraph(std::array<int, 3> part_sizes, int weight_dim,
                                                 std::int64_t weight_bound, bool antisymmetric)
    : sizes_(part_sizes), dim_(weight_dim), bound_(weight_bound), antisymmetric_(antisymmetric) {
  if (weight_dim != 1 && weight_dim != 3) throw PreconditionError("weight_dim must be 1 or 3");
  for (int s : sizes_)
    if (s < 0) throw PreconditionError("negative part size");
  check_bound(weight_bound);
  for (PartPair pp : kAllPairs) {
    const std::size_t cells = static_cast<std::size_t>(sizes_[source_part(pp)]) * sizes_[target_part(pp)];
    w_[idx(pp)].assign(cells, Weight3{0, 0, 0});
    present_[idx(pp)].assign(cells, 0);
  }
}

void WeightedTripartiteGraph::set_edge(PartPair pp, int i, int j, const Weight3& weight) {
  if (i < 0 || i >= sizes_[source_part(pp)] || j < 0 || j >= sizes_[target_part(pp)])
    throw PreconditionError("edge endpoint out of range");
  for (int k = 0; k < 3; ++k) {
    if (k >= dim_ && weight[k] != 0) throw RangeError("nonzero unused weight component");
    if (std::llabs(weight[k]) > bound_)
      throw RangeError("weight component " + std::to_string(weight[k]) + " exceeds bound " +
                       std::to_string(bound_));
  }
  const std::size_t s = slot(pp, i, j);
  if (!present_[idx(pp)][s]) {
    present_[idx(pp)][s] = 1;
    ++counts_[idx(pp)];
  }
  w_[idx(pp)][s] = weight;
}

void WeightedTripartiteGraph::remove_edge(PartPair pp, int i, int j) {
  const std::size_t s = slot(pp, i, j);
  if (present_[idx(pp)][s]) {
    present_[idx(pp)][s] = 0;
    w_[idx(pp)][s] = Weight3{0, 0, 0};
    --counts_[idx(pp)];
  }
}

std::size_t WeightedTripartiteGraph::edge_count() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

std::optional<Weight3> WeightedTripartiteGraph::triangle_weight(int a, int b, int c) const {
  if (!has_edge(PartPair::AB, a, b) || !has_edge(PartPair::BC, b, c) || !has_edge(PartPair::CA, c, a))
    return std::nullopt;
  return weight(PartPair::AB, a, b) + weight(PartPair::BC, b, c) + weight(PartPair::CA, c, a);
}

std::int64_t WeightedTripartiteGraph::max_abs_component() const {
  std::int64_t m = 0;
  for (PartPair pp : kAllPairs)
    for_each_edge(pp, [&](int, int, const Weight3& w) {
      for (auto x : w) m = std::max<std::int64_t>(m, x < 0 ? -x : x);
    });
  return m;
}

void WeightedTripartiteGraph::set_weight_bound(std::int64_t bound) {
  check_bound(bound);
  if (bound < max_abs_component()) throw RangeError("new weight bound below a stored weight");
  bound_ = bound;
}

void WeightedTripartiteGraph::validate() const {
  check_bound(bound_);
  for (PartPair pp : kAllPairs)
    for_each_edge(pp, [&](int i, int j, const Weight3& w) {
      for (int k = 0; k < 3; ++k) {
        FGR_CHECK(std::llabs(w[k]) <= bound_, "weight within bound");
        FGR_CHECK(k < dim_ || w[k] == 0, "unused component is zero");
      }
      if (antisymmetric_) {
        const PartPair rp = reverse(pp);
        FGR_CHECK(has_edge(rp, j, i), "antisymmetric: reverse edge present");
        FGR_CHECK(weight(rp, j, i) == -w, "antisymmetric: reverse weight negated");
      }
    });
}

// ---------------------------------------------------------------------------
// UnweightedTripartiteGraph

int UnweightedTripartiteGraph::max_degree() const {
  int d = 0;
  for (int v = 0; v < node_count(); ++v) d = std::max(d, degree(v));
  return d;
}

bool UnweightedTripartiteGraph::has_edge(int u, int v) const {
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<int> UnweightedTripartiteGraph::find(const NodeLabel& label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

std::vector<std::pair<int, int>> UnweightedTripartiteGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(m_);
  for (int u = 0; u < node_count(); ++u)
    for (int v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

UnweightedTripartiteGraph::Induced UnweightedTripartiteGraph::induced(std::span<const std::uint8_t> keep) const {
  Induced out;
  std::vector<int> remap(labels_.size(), -1);
  for (int v = 0; v < node_count(); ++v)
    if (keep[v]) {
      remap[v] = static_cast<int>(out.origin.size());
      out.origin.push_back(v);
    }
  auto& g = out.graph;
  g.labels_.reserve(out.origin.size());
  g.offsets_.assign(1, 0);
  for (int v : out.origin) {
    g.labels_.push_back(labels_[v]);
    g.parts_[labels_[v].part].push_back(remap[v]);
    for (int u : neighbors(v))
      if (remap[u] >= 0) g.adj_.push_back(remap[u]);
    g.offsets_.push_back(g.adj_.size());
  }
  g.m_ = g.adj_.size() / 2;
  return out;
}

// ---------------------------------------------------------------------------
// UnweightedGraphBuilder

std::size_t UnweightedGraphBuilder::LabelHash::operator()(const NodeLabel& l) const noexcept {
  std::uint64_t h = static_cast<std::uint64_t>(l.part) * 0x9e3779b97f4a7c15ULL;
  h ^= static_cast<std::uint64_t>(l.base) + 0x7f4a7c159e3779b9ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::uint64_t>(l.aux1) * 0xc2b2ae3d27d4eb4fULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::uint64_t>(l.aux2) * 0x165667b19e3779f9ULL + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

int UnweightedGraphBuilder::node(const NodeLabel& label) {
  if (label.part < 0 || label.part > 2) throw PreconditionError("node part must be 0, 1 or 2");
  auto [it, inserted] = ids_.try_emplace(label, static_cast<int>(labels_.size()));
  if (inserted) labels_.push_back(label);
  return it->second;
}

void UnweightedGraphBuilder::add_edge(const NodeLabel& u, const NodeLabel& v) {
  add_edge_ids(node(u), node(v));
}

void UnweightedGraphBuilder::add_edge_ids(int u, int v) {
  if (labels_[u].part == labels_[v].part) throw PreconditionError("edge inside one part");
  edges_.emplace_back(std::min(u, v), std::max(u, v));
}

UnweightedTripartiteGraph UnweightedGraphBuilder::build() && {
  const int n = static_cast<int>(labels_.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return labels_[x] < labels_[y]; });
  std::vector<int> rank(n);
  for (int r = 0; r < n; ++r) rank[order[r]] = r;

  for (auto& [u, v] : edges_) {
    u = rank[u];
    v = rank[v];
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  UnweightedTripartiteGraph g;
  g.labels_.resize(n);
  for (int r = 0; r < n; ++r) g.labels_[r] = labels_[order[r]];
  std::vector<std::size_t> deg(n, 0);
  for (auto [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adj_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v): smaller neighbors first, then larger ones,
  // leaves every adjacency list sorted.
  for (auto [u, v] : edges_) g.adj_[fill[v]++] = u;
  for (auto [u, v] : edges_) g.adj_[fill[u]++] = v;
  for (int v = 0; v < n; ++v) g.parts_[g.labels_[v].part].push_back(v);
  g.m_ = edges_.size();

  labels_.clear();
  edges_.clear();
  ids_.clear();
  return g;
}

// ---------------------------------------------------------------------------
// ThreeSumInstance, WitnessTable

std::size_t ThreeSumInstance::max_size() const {
  return std::max({arrays[0].size(), arrays[1].size(), arrays[2].size()});
}

void ThreeSumInstance::validate() const {
  check_bound(weight_bound);
  for (const auto& arr : arrays)
    for (auto x : arr)
      if (std::llabs(x) > weight_bound) throw RangeError("3SUM entry exceeds weight bound");
}

std::size_t WitnessTable::filled() const {
  return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](const auto& c) { return c.has_value(); }));
}

bool WitnessTable::same_support(const WitnessTable& other) const {
  if (n_a_ != other.n_a_ || n_b_ != other.n_b_) return false;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i].has_value() != other.cells_[i].has_value()) return false;
  return true;
}

nlohmann::json WitnessTable::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int a = 0; a < n_a_; ++a)
    for (int b = 0; b < n_b_; ++b)
      if (const auto& w = at(a, b)) rows.push_back({a, b, w->c, w->sum});
  return {{"rows", n_a_}, {"cols", n_b_}, {"witnesses", rows}};
}

// ---------------------------------------------------------------------------
// DirectedWeightedGraph

DirectedWeightedGraph DirectedWeightedGraph::from_tripartite(const WeightedTripartiteGraph& g) {
  if (g.weight_dim() != 1) throw PreconditionError("directed view needs weight_dim 1");
  DirectedWeightedGraph d;
  d.sizes_ = g.part_sizes();
  d.n_ = g.node_count();
  d.bound_ = g.weight_bound();
  const std::size_t cells = static_cast<std::size_t>(d.n_) * d.n_;
  d.w_.assign(cells, 0);
  d.present_.assign(cells, 0);
  d.deg_.assign(d.n_, 0);
  for (PartPair pp : kAllPairs)
    g.for_each_edge(pp, [&](int i, int j, const Weight3& w) {
      const int u = d.global(source_part(pp), i);
      const int v = d.global(target_part(pp), j);
      const std::size_t s = static_cast<std::size_t>(u) * d.n_ + v;
      d.present_[s] = 1;
      d.w_[s] = w[0];
      ++d.deg_[u];
      ++d.m_;
    });
  return d;
}

WeightedTripartiteGraph DirectedWeightedGraph::to_tripartite() const {
  WeightedTripartiteGraph g(sizes_, 1, bound_, false);
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v)
      if (has_edge(u, v)) g.set_edge(pair_of(part(u), part(v)), local(u), local(v), w(u, v));
  g.set_antisymmetric(is_antisymmetric());
  return g;
}

void DirectedWeightedGraph::remove_edge(int u, int v) {
  const std::size_t s = static_cast<std::size_t>(u) * n_ + v;
  if (present_[s]) {
    present_[s] = 0;
    w_[s] = 0;
    --deg_[u];
    --m_;
  }
}

bool DirectedWeightedGraph::is_antisymmetric() const {
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v)
      if (has_edge(u, v) && (!has_edge(v, u) || w(v, u) != -w(u, v))) return false;
  return true;
}

std::vector<std::pair<int, int>> DirectedWeightedGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v)
      if (has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

// ---------------------------------------------------------------------------
// Transformations and generators

WeightedTripartiteGraph antisymmetrize(const UndirectedWeightedGraph& g) {
  check_bound(g.weight_bound);
  WeightedTripartiteGraph out({g.n, g.n, g.n}, 1, g.weight_bound, true);
  for (const auto& e : g.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= g.n || e.v >= g.n) throw PreconditionError("edge endpoint out of range");
    if (e.u == e.v) throw PreconditionError("self-loop in undirected graph");
    if (std::llabs(e.w) > g.weight_bound) throw RangeError("edge weight exceeds bound");
    for (PartPair pp : kForwardPairs) {
      out.set_edge(pp, e.u, e.v, e.w);
      out.set_edge(pp, e.v, e.u, e.w);
      out.set_edge(reverse(pp), e.v, e.u, -e.w);
      out.set_edge(reverse(pp), e.u, e.v, -e.w);
    }
  }
  return out;
}

namespace {

// Draws weights for the unfixed edges of a planted triangle so the three sum
// to zero. Returns false when no assignment inside [-W, W] was found.
bool plant_weights(Rng& rng, std::int64_t bound, std::array<std::optional<std::int64_t>, 3>& w) {
  std::array<int, 3> free_slots{};
  int n_free = 0;
  for (int k = 0; k < 3; ++k)
    if (!w[k]) free_slots[n_free++] = k;
  if (n_free == 0) return *w[0] + *w[1] + *w[2] == 0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::array<std::int64_t, 3> trial{};
    std::int64_t sum = 0;
    for (int k = 0; k < 3; ++k)
      if (w[k]) {
        trial[k] = *w[k];
        sum += trial[k];
      }
    for (int f = 0; f + 1 < n_free; ++f) {
      trial[free_slots[f]] = rng.uniform(-bound, bound);
      sum += trial[free_slots[f]];
    }
    const std::int64_t last = -sum;
    if (std::llabs(last) > bound) continue;
    trial[free_slots[n_free - 1]] = last;
    for (int f = 0; f < n_free; ++f) w[free_slots[f]] = trial[free_slots[f]];
    return true;
  }
  return false;
}

std::size_t attempt_budget(std::size_t planted) { return 1000 + 200 * planted; }

}  // namespace

WeightedTripartiteGraph gen_exact_tri(std::array<int, 3> parts, std::int64_t weight_bound, double density,
                                      std::size_t planted, std::uint64_t seed) {
  check_bound(weight_bound);
  check_density(density);
  const auto triples = static_cast<std::size_t>(parts[0]) * parts[1] * parts[2];
  if (planted > triples) throw InfeasiblePlanting("more planted triangles than node triples");

  Rng rng(derive_seed(seed, Stream::generate));
  WeightedTripartiteGraph g(parts, 1, weight_bound);
  for (PartPair pp : kForwardPairs)
    for (int i = 0; i < parts[source_part(pp)]; ++i)
      for (int j = 0; j < parts[target_part(pp)]; ++j)
        if (rng.bernoulli(density)) g.set_edge(pp, i, j, rng.uniform(-weight_bound, weight_bound));

  std::array<std::vector<std::uint8_t>, 3> fixed;
  for (PartPair pp : kForwardPairs)
    fixed[static_cast<std::size_t>(pp)].assign(
        static_cast<std::size_t>(parts[source_part(pp)]) * parts[target_part(pp)], 0);
  auto fixed_at = [&](PartPair pp, int i, int j) -> std::uint8_t& {
    return fixed[static_cast<std::size_t>(pp)][static_cast<std::size_t>(i) * parts[target_part(pp)] + j];
  };

  std::set<std::tuple<int, int, int>> chosen;
  std::size_t attempts = 0;
  while (chosen.size() < planted) {
    if (++attempts > attempt_budget(planted)) throw InfeasiblePlanting("could not plant requested triangles");
    const int a = static_cast<int>(rng.uniform(0, parts[0] - 1));
    const int b = static_cast<int>(rng.uniform(0, parts[1] - 1));
    const int c = static_cast<int>(rng.uniform(0, parts[2] - 1));
    if (chosen.count({a, b, c})) continue;
    const std::array<std::tuple<PartPair, int, int>, 3> tri{
        {{PartPair::AB, a, b}, {PartPair::BC, b, c}, {PartPair::CA, c, a}}};
    std::array<std::optional<std::int64_t>, 3> w;
    for (int k = 0; k < 3; ++k) {
      auto [pp, i, j] = tri[k];
      if (fixed_at(pp, i, j)) w[k] = g.w(pp, i, j);
    }
    if (!plant_weights(rng, weight_bound, w)) continue;
    for (int k = 0; k < 3; ++k) {
      auto [pp, i, j] = tri[k];
      g.set_edge(pp, i, j, *w[k]);
      fixed_at(pp, i, j) = 1;
    }
    chosen.insert({a, b, c});
  }
  return g;
}

UndirectedWeightedGraph gen_undirected(int n, std::int64_t weight_bound, double density, std::size_t planted,
                                       std::uint64_t seed) {
  check_bound(weight_bound);
  check_density(density);
  if (n < 0) throw PreconditionError("negative node count");
  const auto triples = n < 3 ? std::size_t{0} : static_cast<std::size_t>(n) * (n - 1) * (n - 2) / 6;
  if (planted > triples) throw InfeasiblePlanting("more planted triangles than node triples");

  Rng rng(derive_seed(seed, Stream::generate));
  const auto cell = [n](int u, int v) { return static_cast<std::size_t>(std::min(u, v)) * n + std::max(u, v); };
  std::vector<std::optional<std::int64_t>> w(static_cast<std::size_t>(n) * n);
  std::vector<std::uint8_t> fixed(w.size(), 0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(density)) w[cell(u, v)] = rng.uniform(-weight_bound, weight_bound);

  std::set<std::tuple<int, int, int>> chosen;
  std::size_t attempts = 0;
  while (chosen.size() < planted) {
    if (++attempts > attempt_budget(planted)) throw InfeasiblePlanting("could not plant requested triangles");
    std::array<int, 3> t{static_cast<int>(rng.uniform(0, n - 1)), static_cast<int>(rng.uniform(0, n - 1)),
                         static_cast<int>(rng.uniform(0, n - 1))};
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2] || chosen.count({t[0], t[1], t[2]})) continue;
    const std::array<std::size_t, 3> cells{cell(t[0], t[1]), cell(t[1], t[2]), cell(t[0], t[2])};
    std::array<std::optional<std::int64_t>, 3> tw;
    for (int k = 0; k < 3; ++k)
      if (fixed[cells[k]]) tw[k] = w[cells[k]];
    if (!plant_weights(rng, weight_bound, tw)) continue;
    for (int k = 0; k < 3; ++k) {
      w[cells[k]] = tw[k];
      fixed[cells[k]] = 1;
    }
    chosen.insert({t[0], t[1], t[2]});
  }

  UndirectedWeightedGraph g;
  g.n = n;
  g.weight_bound = weight_bound;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (w[cell(u, v)]) g.edges.push_back({u, v, *w[cell(u, v)]});
  return g;
}

ThreeSumInstance gen_3sum(std::size_t n, std::int64_t weight_bound, std::size_t planted, std::uint64_t seed) {
  check_bound(weight_bound);
  if (planted > n) throw InfeasiblePlanting("more planted triples than array slots");
  Rng rng(derive_seed(seed, Stream::generate));
  ThreeSumInstance inst;
  inst.weight_bound = weight_bound;
  for (auto& arr : inst.arrays) {
    arr.resize(n);
    for (auto& x : arr) x = rng.uniform(-weight_bound, weight_bound);
  }
  // Planted triples use disjoint slots so none overwrites another.
  std::array<std::vector<std::size_t>, 3> slots;
  for (auto& s : slots) {
    s.resize(n);
    std::iota(s.begin(), s.end(), std::size_t{0});
    for (std::size_t i = 0; i < planted; ++i)
      std::swap(s[i], s[static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(i), static_cast<std::int64_t>(n) - 1))]);
  }
  for (std::size_t p = 0; p < planted; ++p) {
    std::array<std::optional<std::int64_t>, 3> w;
    if (!plant_weights(rng, weight_bound, w)) throw InfeasiblePlanting("could not plant a zero triple");
    for (int k = 0; k < 3; ++k) inst.arrays[k][slots[k][p]] = *w[k];
  }
  return inst;
}

UnweightedTripartiteGraph gen_sparse_tri(std::array<int, 3> parts, double density, std::uint64_t seed) {
  check_density(density);
  Rng rng(derive_seed(seed, Stream::generate));
  UnweightedGraphBuilder builder;
  for (int p = 0; p < 3; ++p)
    for (int i = 0; i < parts[p]; ++i) builder.node({p, i, 0, 0});
  for (PartPair pp : kForwardPairs) {
    const int sp = source_part(pp), tp = target_part(pp);
    for (int i = 0; i < parts[sp]; ++i)
      for (int j = 0; j < parts[tp]; ++j)
        if (rng.bernoulli(density)) builder.add_edge({sp, i, 0, 0}, {tp, j, 0, 0});
  }
  return std::move(builder).build();
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json to_json(const WeightedTripartiteGraph& g) {
  std::array<PartPair, 6> by_name = kAllPairs;
  std::sort(by_name.begin(), by_name.end(),
            [](PartPair x, PartPair y) { return std::string(pair_name(x)) < pair_name(y); });
  nlohmann::json edges = nlohmann::json::array();
  for (PartPair pp : by_name)
    g.for_each_edge(pp, [&](int i, int j, const Weight3& w) {
      nlohmann::json row = {pair_name(pp), i, j};
      for (int k = 0; k < g.weight_dim(); ++k) row.push_back(w[k]);
      edges.push_back(std::move(row));
    });
  return {{"kind", "exact-tri"},
          {"parts", g.part_sizes()},
          {"weight_dim", g.weight_dim()},
          {"weight_bound", g.weight_bound()},
          {"antisymmetric", g.antisymmetric()},
          {"edges", std::move(edges)}};
}

nlohmann::json to_json(const ThreeSumInstance& inst) {
  return {{"kind", "3sum"}, {"arrays", inst.arrays}, {"weight_bound", inst.weight_bound}};
}

nlohmann::json to_json(const UnweightedTripartiteGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (int v = 0; v < g.node_count(); ++v) {
    const auto& l = g.label(v);
    nodes.push_back({l.part, l.base, l.aux1, l.aux2});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"kind", "sparse-tri"}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

namespace {

void expect_kind(const nlohmann::json& j, const char* kind) {
  if (!j.is_object() || !j.contains("kind") || j.at("kind") != kind)
    throw ParseError(std::string("expected an instance of kind '") + kind + "'");
}

}  // namespace

WeightedTripartiteGraph exact_tri_from_json(const nlohmann::json& j) {
  expect_kind(j, "exact-tri");
  try {
    const auto parts = j.at("parts").get<std::array<int, 3>>();
    const int dim = j.at("weight_dim").get<int>();
    WeightedTripartiteGraph g(parts, dim, j.at("weight_bound").get<std::int64_t>(),
                              j.value("antisymmetric", false));
    for (const auto& row : j.at("edges")) {
      if (!row.is_array() || row.size() != static_cast<std::size_t>(3 + dim))
        throw ParseError("edge row has wrong arity");
      Weight3 w{0, 0, 0};
      for (int k = 0; k < dim; ++k) w[k] = row.at(3 + k).get<std::int64_t>();
      g.set_edge(pair_from_name(row.at(0).get<std::string>()), row.at(1).get<int>(), row.at(2).get<int>(), w);
    }
    g.validate();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed exact-tri instance: ") + e.what());
  } catch (const InvariantViolation& e) {
    throw ParseError(std::string("invalid exact-tri instance: ") + e.what());
  }
}

ThreeSumInstance three_sum_from_json(const nlohmann::json& j) {
  expect_kind(j, "3sum");
  try {
    ThreeSumInstance inst;
    inst.arrays = j.at("arrays").get<std::array<std::vector<std::int64_t>, 3>>();
    inst.weight_bound = j.at("weight_bound").get<std::int64_t>();
    inst.validate();
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed 3sum instance: ") + e.what());
  }
}

UnweightedTripartiteGraph sparse_tri_from_json(const nlohmann::json& j) {
  expect_kind(j, "sparse-tri");
  try {
    UnweightedGraphBuilder builder;
    std::vector<int> ids;
    for (const auto& n : j.at("nodes")) {
      NodeLabel l{n.at(0).get<int>(), n.at(1).get<std::int64_t>(), n.at(2).get<std::int64_t>(),
                  n.at(3).get<std::int64_t>()};
      ids.push_back(builder.node(l));
    }
    for (const auto& e : j.at("edges")) builder.add_edge_ids(ids.at(e.at(0).get<std::size_t>()), ids.at(e.at(1).get<std::size_t>()));
    return std::move(builder).build();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed sparse-tri graph: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ParseError(std::string("sparse-tri edge references unknown node: ") + e.what());
  }
}

std::string serialize(const WeightedTripartiteGraph& g) { return to_json(g).dump(); }
std::string serialize(const ThreeSumInstance& inst) { return to_json(inst).dump(); }
std::string serialize(const UnweightedTripartiteGraph& g) { return to_json(g).dump(); }

}  // namespace fgr
