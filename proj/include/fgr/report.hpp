#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace fgr {

class UnweightedTripartiteGraph;

struct StageStats {
  std::string name;
  std::size_t graphs = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t max_edges = 0;
  int max_degree = 0;
  std::size_t triangles = 0;
  double seconds = 0.0;
};

// Instrumentation for one reduction run: parameters, per-stage sizes,
// candidate/false-positive accounting and oracle-call tallies.
class ReductionReport {
 public:
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> p;
  std::optional<std::int64_t> q;
  std::optional<double> t;
  std::size_t candidates = 0;
  std::size_t verified = 0;
  std::size_t false_positives = 0;
  // The listing budget ran out and the answer was inferred, not verified.
  bool inferred_yes = false;
  std::map<std::string, std::size_t> oracle_calls;
  std::map<std::string, double> metrics;

  StageStats& stage(const std::string& name);
  const std::vector<StageStats>& stages() const { return stages_; }
  const StageStats* find_stage(const std::string& name) const;
  void record_graph(const std::string& stage_name, const UnweightedTripartiteGraph& g);
  void count_call(const std::string& oracle, std::size_t n = 1) { oracle_calls[oracle] += n; }

  // Timing is optional so correctness campaigns can emit byte-identical reports.
  nlohmann::json to_json(bool include_timing = true) const;

 private:
  std::vector<StageStats> stages_;
};

// Adds the scope's wall-clock time to a stage.
class StageTimer {
 public:
  StageTimer(ReductionReport& report, std::string stage)
      : report_(report), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    const auto dt = std::chrono::steady_clock::now() - start_;
    report_.stage(stage_).seconds += std::chrono::duration<double>(dt).count();
  }
  StageTimer(const StageTimer&) = delete;
  StageTimer& operator=(const StageTimer&) = delete;

 private:
  ReductionReport& report_;
  std::string stage_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace fgr
