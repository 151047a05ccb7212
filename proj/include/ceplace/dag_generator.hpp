#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ceplace/benchmark_data.hpp"
#include "ceplace/query_dag.hpp"
#include "ceplace/rng.hpp"

namespace ceplace {

struct DagGenConfig {
  int n_vertices = 4;
  int n_sources = 1;
  int max_out_degree = 3;  // hard cap per vertex, 1..5
  /// Acceptance probability for each edge slot beyond the spanning ones.
  /// At 1.0 every vertex reaches its drawn out-degree target; lower values
  /// thin the graph and leave more emergent sinks.
  double extra_edge_prob = 0.9;
  int max_attempts = 10000;  // generate/screen retries before giving up
};

/// One random layered dag: every vertex is reachable from a source and
/// reaches a sink, edges only go forward in a shuffled order, out-degrees
/// stay within the cap. Non-source vertices draw a query kind uniformly from
/// the five types, then a uniform generation-eligible variant of that kind.
/// Sinks emerge from the topology. Deterministic per rng state.
QueryDag generate_dag(const DagGenConfig& cfg, const BenchmarkDataset& dataset, Rng& rng);

struct ScreenReject {
  enum class Reason { RateTooHigh, ZeroSelectivity } reason;
  std::string detail;
};

/// Feasibility screens at the given input rate: no query may need more than
/// the third-quartile peak rate of its variant on the cloud, and the overall
/// dataflow selectivity must be nonzero.
std::optional<ScreenReject> screen_dag(const QueryDag& dag, const BenchmarkDataset& dataset,
                                       double omega_in = 1000.0);

/// Generate-and-screen loop; throws GiveUp after cfg.max_attempts rejections.
QueryDag generate_screened_dag(const DagGenConfig& cfg, const BenchmarkDataset& dataset,
                               Rng& rng);

struct SuiteEntry {
  std::string id;  // "<vertices>_<sources>_<instance>"
  DagGenConfig cfg;
  std::uint64_t seed = 0;
};

/// The simulation study's dag suite: sizes 4..50, three instances per
/// (size, source-count) configuration, four sources only from size 10 up.
std::vector<SuiteEntry> suite_manifest(std::uint64_t master_seed,
                                       const std::vector<int>& sizes = {4, 6, 8, 10, 12, 20, 30,
                                                                        40, 50},
                                       int instances = 3);

}  // namespace ceplace
