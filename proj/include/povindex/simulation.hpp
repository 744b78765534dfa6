#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "povindex/distributions.hpp"
#include "povindex/inference.hpp"

namespace povindex {

struct MonteCarloConfig {
  std::string name;
  std::size_t reps = 10000;
  std::uint64_t seed = 0;
  std::vector<std::size_t> n_grid;
  double z = 0.0;
  double alpha = 0.05;
  std::vector<DistributionSpec> distributions;
  std::vector<std::pair<IndexKind, EstimatorMethod>> estimators;
  std::vector<std::pair<IndexKind, CiMethod>> intervals;
  // 0 means: POVINDEX_THREADS if set, else hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

// Parses the key = value simulation config. Keys: name, reps, seed, z, alpha,
// n_grid (comma list), distribution (repeatable), estimators and intervals
// (comma lists of index:method). '#' starts a comment. Errors carry the line
// number and throw kConfigError.
MonteCarloConfig parse_simulation_config(std::string_view text);
MonteCarloConfig load_simulation_config(const std::string& path);

struct SimulationCellReport {
  DistributionSpec dist;
  std::size_t n = 0;
  IndexKind index = IndexKind::kSen;
  std::string method;       // estimator tag or interval tag
  bool is_interval = false;
  double true_value = 0.0;
  std::optional<double> mean_estimate;
  std::optional<double> bias;
  std::optional<double> mse;
  std::optional<double> coverage;
  std::optional<double> avg_length;
  std::size_t reps_used = 0;
  std::size_t failures = 0;
  double mc_se = 0.0;  // sd/sqrt(reps) of the estimate, or of the coverage

  bool operator==(const SimulationCellReport&) const = default;
};

// Replication r of the cell (distribution d, sample size index j) draws from
// Philox stream (seed; cell id d * |n_grid| + j, r). The estimator and
// interval grids therefore see the same samples.
std::vector<SimulationCellReport> run_estimator_grid(const MonteCarloConfig& config);
std::vector<SimulationCellReport> run_ci_grid(const MonteCarloConfig& config);

unsigned resolve_thread_count(unsigned requested);

// Report serialisation. CSV columns:
// dist,params,n,index,method,bias,mse,coverage,avg_length,failures,mc_se
std::string simulation_csv(const std::vector<SimulationCellReport>& reports);
std::string simulation_json(const MonteCarloConfig& config,
                            const std::vector<SimulationCellReport>& reports);
// Human-readable tables, one per (family, index, estimator|interval) group.
std::string simulation_text(const MonteCarloConfig& config,
                            const std::vector<SimulationCellReport>& reports);

}  // namespace povindex
