#include "ceplace/scenario.hpp"

#include "ceplace/errors.hpp"

namespace ceplace {

RuntimeScenario materialize(const QueryDag& dag, const BenchmarkDataset& dataset,
                            double omega_in, Rng& rng) {
  RuntimeScenario sc;
  sc.omega_in = omega_in;
  sc.edge_overhead = dataset.edge_overhead;
  sc.cloud_overhead = dataset.cloud_overhead;
  sc.vertex.resize(dag.vertex_count());
  sc.edge.resize(dag.edge_count());

  for (int v = 0; v < dag.vertex_count(); ++v) {
    if (dag.is_source(v)) continue;  // no-op generators: all costs stay zero
    const VariantProfile& prof = dataset.at(dag.variants[v].id);
    const double peak_edge = sample(prof.peak_rate_edge, rng);
    const double peak_cloud = sample(prof.peak_rate_cloud, rng);
    const double current_ma = sample(prof.peak_current_ma, rng);
    VertexCosts& c = sc.vertex[v];
    c.lambda_edge_s = 1.0 / peak_edge;
    c.lambda_cloud_s = 1.0 / peak_cloud;
    c.epsilon_edge_mah = prof.energy_per_event_override
                             ? *prof.energy_per_event_override
                             : energy_per_event(current_ma, dataset.base_load_ma, peak_edge);
  }

  for (int e = 0; e < dag.edge_count(); ++e) {
    EdgeCosts& c = sc.edge[e];
    c.latency_ee_s = sample(dataset.latency_edge_edge_s, rng);
    c.latency_ec_s = sample(dataset.latency_edge_cloud_s, rng);
    c.bandwidth_ee_bps = sample(dataset.bandwidth_edge_edge_bps, rng);
    c.bandwidth_ec_bps = sample(dataset.bandwidth_edge_cloud_bps, rng);
  }

  sc.rates = propagate_rates(dag, omega_in);
  return sc;
}

nlohmann::json scenario_to_json(const QueryDag& dag, const RuntimeScenario& sc) {
  nlohmann::json j;
  j["omega_in"] = sc.omega_in;
  j["overhead_pct"] = {
      {"edge",
       {{"slope", sc.edge_overhead.slope_pct}, {"intercept", sc.edge_overhead.intercept_pct}}},
      {"cloud",
       {{"slope", sc.cloud_overhead.slope_pct}, {"intercept", sc.cloud_overhead.intercept_pct}}}};
  j["vertices"] = nlohmann::json::array();
  for (int v = 0; v < dag.vertex_count(); ++v) {
    const VertexCosts& c = sc.vertex[v];
    j["vertices"].push_back({{"id", dag.vertex_ids[v]},
                             {"lambda_edge_s", c.lambda_edge_s},
                             {"lambda_cloud_s", c.lambda_cloud_s},
                             {"epsilon_edge_mah", c.epsilon_edge_mah}});
  }
  j["edges"] = nlohmann::json::array();
  for (int e = 0; e < dag.edge_count(); ++e) {
    const EdgeCosts& c = sc.edge[e];
    j["edges"].push_back({{"from", dag.vertex_ids[dag.edges[e].first]},
                          {"to", dag.vertex_ids[dag.edges[e].second]},
                          {"latency_ee_s", c.latency_ee_s},
                          {"latency_ec_s", c.latency_ec_s},
                          {"bandwidth_ee_bps", c.bandwidth_ee_bps},
                          {"bandwidth_ec_bps", c.bandwidth_ec_bps}});
  }
  return j;
}

RuntimeScenario scenario_from_json(const QueryDag& dag, const nlohmann::json& j) {
  RuntimeScenario sc;
  try {
    sc.omega_in = j.at("omega_in").get<double>();
    if (j.contains("overhead_pct")) {
      const auto& o = j.at("overhead_pct");
      sc.edge_overhead = {o.at("edge").at("slope").get<double>(),
                          o.at("edge").at("intercept").get<double>()};
      sc.cloud_overhead = {o.at("cloud").at("slope").get<double>(),
                           o.at("cloud").at("intercept").get<double>()};
    }
    sc.vertex.resize(dag.vertex_count());
    for (const auto& vj : j.at("vertices")) {
      const int v = dag.index_of(vj.at("id").get<std::string>());
      if (v < 0) fail(Errc::ParseError, "scenario references unknown vertex");
      sc.vertex[v] = {vj.at("lambda_edge_s").get<double>(),
                      vj.at("lambda_cloud_s").get<double>(),
                      vj.at("epsilon_edge_mah").get<double>()};
    }
    sc.edge.resize(dag.edge_count());
    for (const auto& ej : j.at("edges")) {
      const int from = dag.index_of(ej.at("from").get<std::string>());
      const int to = dag.index_of(ej.at("to").get<std::string>());
      int index = -1;
      for (int e = 0; e < dag.edge_count(); ++e)
        if (dag.edges[e].first == from && dag.edges[e].second == to) {
          index = e;
          break;
        }
      if (index < 0) fail(Errc::ParseError, "scenario references unknown edge");
      sc.edge[index] = {ej.at("latency_ee_s").get<double>(), ej.at("latency_ec_s").get<double>(),
                        ej.at("bandwidth_ee_bps").get<double>(),
                        ej.at("bandwidth_ec_bps").get<double>()};
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("scenario json: ") + e.what());
  }
  sc.rates = propagate_rates(dag, sc.omega_in);
  return sc;
}

}  // namespace ceplace
