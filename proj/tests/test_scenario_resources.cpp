#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ceplace/dag_generator.hpp"
#include "ceplace/errors.hpp"
#include "ceplace/resource_pool.hpp"
#include "ceplace/scenario.hpp"
#include "helpers.hpp"

using namespace ceplace;
using testutil::campus;
using testutil::chain;

TEST_CASE("pool sizes per availability setup") {
  CHECK(build_pool(PoolSetup::Liberal, 12).edge_count() == 11);
  CHECK(build_pool(PoolSetup::Centrist, 12).edge_count() == 6);
  CHECK(build_pool(PoolSetup::Conservative, 12).edge_count() == 3);
  CHECK(build_pool(PoolSetup::Conservative, 10).edge_count() == 3);  // ceil(10/4)
  CHECK(build_pool(PoolSetup::Centrist, 9).edge_count() == 5);       // ceil(9/2)
  for (PoolSetup s : {PoolSetup::Liberal, PoolSetup::Centrist, PoolSetup::Conservative})
    CHECK(build_pool(s, 12).cloud_count() == 1);
}

TEST_CASE("pool ordering: liberal >= centrist >= conservative") {
  for (int n = 4; n <= 50; ++n) {
    const int lib = build_pool(PoolSetup::Liberal, n).edge_count();
    const int cen = build_pool(PoolSetup::Centrist, n).edge_count();
    const int con = build_pool(PoolSetup::Conservative, n).edge_count();
    CHECK(lib >= cen);
    CHECK(cen >= con);
  }
}

TEST_CASE("pool defaults and ids") {
  const ResourcePool pool = build_pool(PoolSetup::Centrist, 8);
  CHECK(pool.edges[0].capacity_mah == doctest::Approx(8600.0));
  CHECK(pool.edges[0].recharge_period_s == doctest::Approx(86400.0));
  CHECK(pool.edges[0].base_load_ma == doctest::Approx(233.0));
  CHECK(pool.edges[0].id == "edge-0");
  CHECK(pool.clouds[0].id == "cloud-0");
  CHECK(pool.is_edge(0));
  CHECK(!pool.is_edge(pool.edge_count()));
}

TEST_CASE("alternative energy configurations are honoured") {
  EnergyParams alt{17200.0, 24.0 * 3600.0, 233.0};
  const ResourcePool pool = build_pool(PoolSetup::Liberal, 6, alt);
  CHECK(pool.edges[0].capacity_mah == doctest::Approx(17200.0));
}

TEST_CASE("materialized compute samples invert the sampled peak rates") {
  const QueryDag dag = chain({"Fil 1.0"});
  Rng rng(5);
  const RuntimeScenario sc = materialize(dag, campus(), 1000.0, rng);
  const int q = dag.index_of("q0");
  const auto& prof = campus().at("Fil 1.0");
  CHECK(sc.vertex[q].lambda_edge_s >= 1.0 / prof.peak_rate_edge.q3);
  CHECK(sc.vertex[q].lambda_edge_s <= 1.0 / prof.peak_rate_edge.q1);
  CHECK(sc.vertex[q].lambda_cloud_s >= 1.0 / prof.peak_rate_cloud.q3);
  CHECK(sc.vertex[q].lambda_cloud_s <= 1.0 / prof.peak_rate_cloud.q1);
  // Energy: (sampled current - base) / (3600 * sampled edge peak).
  CHECK(sc.vertex[q].epsilon_edge_mah > 0.0);
  CHECK(sc.vertex[q].epsilon_edge_mah <=
        (prof.peak_current_ma.q3 - 233.0) * sc.vertex[q].lambda_edge_s / 3600.0);
}

TEST_CASE("source vertices cost nothing") {
  const QueryDag dag = chain({"Seq3 1.0"});
  Rng rng(6);
  const RuntimeScenario sc = materialize(dag, campus(), 100.0, rng);
  const int src = dag.index_of("src");
  CHECK(sc.vertex[src].lambda_edge_s == 0.0);
  CHECK(sc.vertex[src].lambda_cloud_s == 0.0);
  CHECK(sc.vertex[src].epsilon_edge_mah == 0.0);
}

TEST_CASE("network samples stay within their quartile ranges") {
  Rng gen_rng(77);
  DagGenConfig cfg;
  cfg.n_vertices = 10;
  cfg.n_sources = 1;
  const QueryDag dag = generate_dag(cfg, campus(), gen_rng);
  Rng rng(8);
  const RuntimeScenario sc = materialize(dag, campus(), 1000.0, rng);
  const auto& ds = campus();
  for (int e = 0; e < dag.edge_count(); ++e) {
    CHECK(sc.edge[e].latency_ee_s >= ds.latency_edge_edge_s.q1);
    CHECK(sc.edge[e].latency_ee_s <= ds.latency_edge_edge_s.q3);
    CHECK(sc.edge[e].latency_ec_s >= ds.latency_edge_cloud_s.q1);
    CHECK(sc.edge[e].latency_ec_s <= ds.latency_edge_cloud_s.q3);
    CHECK(sc.edge[e].bandwidth_ee_bps >= ds.bandwidth_edge_edge_bps.q1);
    CHECK(sc.edge[e].bandwidth_ee_bps <= ds.bandwidth_edge_edge_bps.q3);
    CHECK(sc.edge[e].bandwidth_ec_bps >= ds.bandwidth_edge_cloud_bps.q1);
    CHECK(sc.edge[e].bandwidth_ec_bps <= ds.bandwidth_edge_cloud_bps.q3);
  }
}

TEST_CASE("same seed, same scenario; costs do not depend on the rate") {
  const QueryDag dag = chain({"Fil 0.5", "Agg S 60"});
  Rng a(123), b(123), c(123);
  const RuntimeScenario s1 = materialize(dag, campus(), 100.0, a);
  const RuntimeScenario s2 = materialize(dag, campus(), 100.0, b);
  const RuntimeScenario s3 = materialize(dag, campus(), 1000.0, c);
  for (int v = 0; v < dag.vertex_count(); ++v) {
    CHECK(s1.vertex[v].lambda_edge_s == s2.vertex[v].lambda_edge_s);
    CHECK(s1.vertex[v].lambda_edge_s == s3.vertex[v].lambda_edge_s);
    CHECK(s1.vertex[v].epsilon_edge_mah == s3.vertex[v].epsilon_edge_mah);
  }
  for (int e = 0; e < dag.edge_count(); ++e) {
    CHECK(s1.edge[e].latency_ec_s == s2.edge[e].latency_ec_s);
    CHECK(s1.edge[e].latency_ec_s == s3.edge[e].latency_ec_s);
  }
  CHECK(s1.rates.dag_in == 100.0);
  CHECK(s3.rates.dag_in == 1000.0);
}

TEST_CASE("scenario json round-trip") {
  const QueryDag dag = chain({"Fil 0.5", "Pat3 1.0"});
  Rng rng(9);
  const RuntimeScenario sc = materialize(dag, campus(), 250.0, rng);
  const RuntimeScenario back = scenario_from_json(dag, scenario_to_json(dag, sc));
  CHECK(back.omega_in == sc.omega_in);
  for (int v = 0; v < dag.vertex_count(); ++v) {
    CHECK(back.vertex[v].lambda_edge_s == sc.vertex[v].lambda_edge_s);
    CHECK(back.vertex[v].lambda_cloud_s == sc.vertex[v].lambda_cloud_s);
    CHECK(back.vertex[v].epsilon_edge_mah == sc.vertex[v].epsilon_edge_mah);
  }
  for (int e = 0; e < dag.edge_count(); ++e) {
    CHECK(back.edge[e].latency_ee_s == sc.edge[e].latency_ee_s);
    CHECK(back.edge[e].bandwidth_ec_bps == sc.edge[e].bandwidth_ec_bps);
  }
  CHECK(back.edge_overhead == sc.edge_overhead);
}

TEST_CASE("materialize rejects dags with unknown variants") {
  QueryVariant ghost{"Ghost 1.0", QueryKind::Filter, 1.0, 0, 4.0};
  const QueryDag dag = make_query_dag(
      {{"src", source_variant()}, {"q", ghost}}, {{"src", "q"}});
  Rng rng(1);
  try {
    materialize(dag, campus(), 100.0, rng);
    FAIL("expected MissingVariant");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingVariant);
  }
}
