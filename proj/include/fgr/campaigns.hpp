#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fgr/oracles.hpp"

#include "json.hpp"

namespace fgr {

// Parameters of one verification campaign. Unset fields take the campaign's
// own defaults; the effective values are echoed in the report.
struct CampaignConfig {
  std::string name;
  std::uint64_t seed = 1;
  std::optional<int> n;
  std::optional<std::array<int, 3>> parts;
  std::optional<std::int64_t> weight_bound;
  std::optional<double> density;
  std::optional<std::size_t> planted;
  std::optional<std::size_t> trials;
  std::optional<double> t_exponent;
  std::optional<std::int64_t> q;
  std::optional<double> x;
  double epsilon = 0.25;
  double delta = 0.1;
  std::size_t budget = kNoCap;

  nlohmann::json to_json() const;
};

struct CampaignResult {
  bool passed = false;
  std::size_t trials = 0;
  std::size_t mismatches = 0;
  // Configuration, per-trial rows and summary metrics; no timing, so two
  // runs with the same configuration serialize identically.
  nlohmann::json report;
};

const std::vector<std::string>& campaign_names();

// Runs one campaign serially, trial i seeded by derive_seed(seed, trial, i).
// Throws PreconditionError for an unknown name or zero trials.
CampaignResult run_campaign(const CampaignConfig& cfg);

// Benchmark ladders. Families:
//   exact-q  sparse exact graph vs q at fixed n (parts n, W = q^3)
//   exact-n  sparse exact graph vs n at fixed q
//   3sum-q   sparse 3SUM graph vs q at fixed n
//   3sum-n   sparse 3SUM graph vs n at fixed q
//   an       All-Nodes recursion on sparse graphs with m proportional to n
//   det      det_reduce with |A| = |B| = size and fixed |C|
struct BenchRow {
  std::string family;
  std::int64_t size = 0;
  std::int64_t n = 0;
  std::int64_t q = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  int max_degree = 0;
  std::size_t oracle_calls = 0;
  double ratio = 0.0;
  double seconds = 0.0;
};

struct BenchLadder {
  std::vector<BenchRow> rows;
  // Least-squares slope of log(edges) against log(size); present with two
  // or more rows.
  std::optional<double> slope;

  std::string to_csv() const;
  nlohmann::json to_json() const;
};

const std::vector<std::string>& bench_families();

// fixed is n for the -q families, q for the -n families and |C| for det;
// 0 selects the family default. Sizes must be ascending.
BenchLadder bench_ladder(const std::string& family, const std::vector<std::int64_t>& sizes, std::uint64_t seed,
                         std::int64_t fixed = 0);

// Least-squares slope of log(y) against log(x) over points with x, y > 0.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fgr
