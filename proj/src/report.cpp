#include "fgr/report.hpp"

#include <algorithm>

#include "fgr/instances.hpp"

namespace fgr {

StageStats& ReductionReport::stage(const std::string& name) {
  auto it = std::find_if(stages_.begin(), stages_.end(), [&](const StageStats& s) { return s.name == name; });
  if (it != stages_.end()) return *it;
  stages_.push_back(StageStats{name});
  return stages_.back();
}

const StageStats* ReductionReport::find_stage(const std::string& name) const {
  auto it = std::find_if(stages_.begin(), stages_.end(), [&](const StageStats& s) { return s.name == name; });
  return it == stages_.end() ? nullptr : &*it;
}

void ReductionReport::record_graph(const std::string& stage_name, const UnweightedTripartiteGraph& g) {
  auto& s = stage(stage_name);
  ++s.graphs;
  s.nodes += static_cast<std::size_t>(g.node_count());
  s.edges += g.edge_count();
  s.max_edges = std::max(s.max_edges, g.edge_count());
  s.max_degree = std::max(s.max_degree, g.max_degree());
}

nlohmann::json ReductionReport::to_json(bool include_timing) const {
  nlohmann::json j;
  j["seed"] = seed;
  j["p"] = p ? nlohmann::json(*p) : nlohmann::json(nullptr);
  j["q"] = q ? nlohmann::json(*q) : nlohmann::json(nullptr);
  j["t"] = t ? nlohmann::json(*t) : nlohmann::json(nullptr);
  j["candidates"] = candidates;
  j["verified"] = verified;
  j["false_positives"] = false_positives;
  j["inferred_yes"] = inferred_yes;
  j["oracle_calls"] = oracle_calls;
  j["metrics"] = metrics;
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : stages_) {
    nlohmann::json row = {{"name", s.name},           {"graphs", s.graphs},         {"nodes", s.nodes},
                          {"edges", s.edges},         {"max_edges", s.max_edges},   {"max_degree", s.max_degree},
                          {"triangles", s.triangles}};
    if (include_timing) row["seconds"] = s.seconds;
    stages.push_back(std::move(row));
  }
  j["stages"] = std::move(stages);
  return j;
}

}  // namespace fgr
