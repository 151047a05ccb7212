#pragma once

#include <vector>

#include "json.hpp"

#include "ceplace/benchmark_data.hpp"
#include "ceplace/query_dag.hpp"
#include "ceplace/rng.hpp"

namespace ceplace {

/// Sampled per-vertex runtime costs. Sources carry zeros: they generate
/// events but perform no computation.
struct VertexCosts {
  double lambda_edge_s = 0.0;    // seconds per event on an edge device
  double lambda_cloud_s = 0.0;   // seconds per event on the cloud VM
  double epsilon_edge_mah = 0.0; // incremental mAh per event on an edge device
};

/// Sampled per-dataflow-edge network costs. Which pair applies is decided at
/// evaluation time from the endpoints' resource classes.
struct EdgeCosts {
  double latency_ee_s = 0.0;
  double latency_ec_s = 0.0;
  double bandwidth_ee_bps = 0.0;
  double bandwidth_ec_bps = 0.0;
};

/// One concrete draw of all runtime parameters for a dag, shared by every
/// solver that evaluates placements against it. Immutable once built.
struct RuntimeScenario {
  std::vector<VertexCosts> vertex;  // per dag vertex index
  std::vector<EdgeCosts> edge;      // per dag edge index
  RateMap rates;
  double omega_in = 0.0;
  OverheadFit edge_overhead{-1.12, -5.68};
  OverheadFit cloud_overhead{-0.35, -3.80};

  const OverheadFit& overhead(ResourceClass c) const {
    return c == ResourceClass::Edge ? edge_overhead : cloud_overhead;
  }
};

/// Draws one compute/energy sample per vertex and one network tuple per edge
/// from the dataset, and fixes the rate map for the given input rate. The
/// draw sequence does not depend on omega_in, so the same seed yields the
/// same cost samples at different rates. All edge devices share a vertex's
/// sampled edge latency, and likewise for the cloud.
RuntimeScenario materialize(const QueryDag& dag, const BenchmarkDataset& dataset,
                            double omega_in, Rng& rng);

/// Dump/restore for reproducible experiment replays.
nlohmann::json scenario_to_json(const QueryDag& dag, const RuntimeScenario& sc);
RuntimeScenario scenario_from_json(const QueryDag& dag, const nlohmann::json& j);

}  // namespace ceplace
