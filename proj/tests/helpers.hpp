#pragma once

#include <string>
#include <vector>

#include "ceplace/benchmark_data.hpp"
#include "ceplace/query_dag.hpp"
#include "ceplace/scenario.hpp"

namespace testutil {

inline std::string data_file(const std::string& name) {
  return std::string(CEPLACE_DATA_DIR) + "/" + name;
}

inline const ceplace::BenchmarkDataset& campus() {
  static const ceplace::BenchmarkDataset ds = ceplace::load_dataset(data_file("campus-lan.json"));
  return ds;
}

inline const ceplace::BenchmarkDataset& planetlab() {
  static const ceplace::BenchmarkDataset ds =
      ceplace::load_dataset(data_file("planetlab-wan.json"));
  return ds;
}

inline ceplace::QueryVariant variant(const std::string& id) { return campus().at(id).variant; }

/// src -> q0 -> q1 -> ... -> q{n-1}, with the given variants.
inline ceplace::QueryDag chain(const std::vector<std::string>& variant_ids) {
  std::vector<std::pair<std::string, ceplace::QueryVariant>> vertices;
  vertices.emplace_back("src", ceplace::source_variant());
  std::vector<std::pair<std::string, std::string>> edges;
  std::string prev = "src";
  for (std::size_t i = 0; i < variant_ids.size(); ++i) {
    const std::string id = "q" + std::to_string(i);
    vertices.emplace_back(id, variant(variant_ids[i]));
    edges.emplace_back(prev, id);
    prev = id;
  }
  return ceplace::make_query_dag(std::move(vertices), edges);
}

/// A hand-built scenario with uniform values, for exact arithmetic tests.
struct ScenarioSpec {
  double lambda_edge_s = 0.0;
  double lambda_cloud_s = 0.0;
  double epsilon_mah = 0.0;
  double latency_ee_s = 0.0;
  double latency_ec_s = 0.0;
  double bandwidth_bps = 1e18;  // effectively free transfers
};

inline ceplace::RuntimeScenario uniform_scenario(const ceplace::QueryDag& dag, double omega_in,
                                                 const ScenarioSpec& spec) {
  ceplace::RuntimeScenario sc;
  sc.omega_in = omega_in;
  sc.vertex.resize(dag.vertex_count());
  for (int v = 0; v < dag.vertex_count(); ++v) {
    if (dag.is_source(v)) continue;
    sc.vertex[v] = {spec.lambda_edge_s, spec.lambda_cloud_s, spec.epsilon_mah};
  }
  sc.edge.assign(dag.edge_count(),
                 {spec.latency_ee_s, spec.latency_ec_s, spec.bandwidth_bps, spec.bandwidth_bps});
  sc.rates = ceplace::propagate_rates(dag, omega_in);
  return sc;
}

}  // namespace testutil
