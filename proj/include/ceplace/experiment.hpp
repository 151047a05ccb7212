#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "ceplace/baselines.hpp"
#include "ceplace/brute_force.hpp"
#include "ceplace/dag_generator.hpp"
#include "ceplace/genetic.hpp"

namespace ceplace {

/// Writes <out_dir>/dags/<id>.json for every suite entry plus a manifest
/// recording the seeds, so a suite can be regenerated or reloaded exactly.
std::string generate_suite_files(const std::string& out_dir, std::uint64_t master_seed,
                                 const BenchmarkDataset& dataset,
                                 const std::vector<int>& sizes = {4, 6, 8, 10, 12, 20, 30, 40,
                                                                  50},
                                 int instances = 3);

struct SuiteDag {
  SuiteEntry entry;
  QueryDag dag;
};

std::vector<SuiteDag> load_suite(const std::string& manifest_path,
                                 const std::vector<QueryVariant>& catalog);

struct ExperimentConfig {
  std::vector<std::string> dataset_paths;
  std::string suite_manifest;
  std::vector<double> rates{100.0, 1000.0};
  std::vector<PoolSetup> setups{PoolSetup::Liberal, PoolSetup::Centrist,
                                PoolSetup::Conservative};
  std::vector<std::string> solvers{"bf", "ga", "random", "cloud-only"};
  std::uint64_t seed = 42;

  double bf_budget_s = 300.0;
  int bf_max_unpinned = 12;
  /// Cells whose |R|^n exceeds this are skipped outright, which keeps the
  /// set of attempted cells independent of machine speed.
  double bf_max_assignments = 3e8;

  GaConfig ga;
  int random_trials = 15000;
  bool headroom = false;
  bool include_sink_compute = false;
  bool free_colocated_network = false;
  EnergyParams energy;
  int workers = 0;  // 0: CEPLACE_WORKERS env var, then hardware concurrency
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& j,
                                             const std::string& base_dir);
ExperimentConfig load_experiment_config(const std::string& path);

/// One runs.csv row. Quiet NaN marks an absent numeric value.
struct RunRecord {
  std::string dag_id;
  std::string dataset;
  double rate = 0.0;
  std::string setup;
  std::string solver;
  std::string status;  // ok | infeasible | budget_exceeded | skipped | error
  bool valid = false;
  double makespan_ms = std::numeric_limits<double>::quiet_NaN();
  int throughput_violations = 0;
  int energy_violations = 0;
  double edge_used_pct = std::numeric_limits<double>::quiet_NaN();
  double headroom_pct = std::numeric_limits<double>::quiet_NaN();
  int n_vertices = 0;
  int n_edges = 0;
  int n_sources = 0;
  int n_sinks = 0;
  int n_unpinned = 0;
  int pool_edges = 0;
  int pool_size = 0;
  long generations = -1;
  int population = 0;
  std::uint64_t evaluations = 0;
  double wall_ms = 0.0;
};

struct ExperimentResult {
  std::vector<RunRecord> runs;
  int failed_cells = 0;
};

/// Full cross product of suite x datasets x rates x setups x solvers. Every
/// solver in a cell sees the same sampled scenario, and the samples for one
/// (dag, dataset) pair are shared across rates and setups. Cells run on a
/// small worker pool; output order follows the cell key, not completion.
/// Writes runs.csv, summary.csv and per-run placement JSONs under out_dir.
ExperimentResult run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                                std::ostream& log);

void write_runs_csv(const std::string& path, const std::vector<RunRecord>& runs);
std::vector<RunRecord> read_runs_csv(const std::string& path);

/// Table of quality metrics per (dataset, rate, setup): pairwise latency
/// deviations, invalid fractions and average edge usage.
void write_summary_csv(const std::string& path, const std::vector<RunRecord>& runs);

struct RegressionStats {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int points = 0;
};

/// Log-log fit of observed wall time against the expected cost model:
/// (|V|+|E|) * |R|^n for the exhaustive solver, generations * population *
/// (|V|+|E|) for the genetic one. Throws InsufficientData below two points.
RegressionStats complexity_regression(const std::vector<RunRecord>& runs,
                                      const std::string& solver);

}  // namespace ceplace
