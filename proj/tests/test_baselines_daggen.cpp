#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "ceplace/baselines.hpp"
#include "ceplace/dag_generator.hpp"
#include "ceplace/errors.hpp"
#include "helpers.hpp"

using namespace ceplace;
using testutil::campus;
using testutil::chain;
using testutil::ScenarioSpec;
using testutil::uniform_scenario;
using testutil::variant;

TEST_CASE("random search covers tiny spaces") {
  const QueryDag dag = chain({"Fil 1.0", "Fil 1.0"});
  ScenarioSpec spec;
  spec.lambda_edge_s = 0.5;
  spec.lambda_cloud_s = 1e-6;
  spec.latency_ec_s = 0.076;
  const RuntimeScenario sc = uniform_scenario(dag, 1.0, spec);
  const ResourcePool pool = make_pool(1);
  Rng rng(1);
  const RandomSolveResult result = solve_random(dag, sc, pool, 15000, rng);
  REQUIRE(result.best);
  CHECK(result.evaluation->makespan_s == doctest::Approx(0.076));
}

TEST_CASE("random search reports infeasible pools") {
  const QueryDag dag = chain({"Fil 1.0", "Fil 1.0"});
  ScenarioSpec spec;
  spec.lambda_edge_s = 1e-2;
  spec.lambda_cloud_s = 1e-2;
  const RuntimeScenario sc = uniform_scenario(dag, 1000.0, spec);
  const ResourcePool pool = make_pool(2);
  Rng rng(2);
  CHECK(solve_random(dag, sc, pool, 500, rng).status == SolveStatus::Infeasible);
}

TEST_CASE("random search is deterministic per seed") {
  Rng gen(3);
  DagGenConfig cfg;
  cfg.n_vertices = 8;
  const QueryDag dag = generate_dag(cfg, campus(), gen);
  const RuntimeScenario sc = materialize(dag, campus(), 1000.0, gen);
  const ResourcePool pool = build_pool(PoolSetup::Centrist, 8);
  Rng a(9), b(9);
  const auto ra = solve_random(dag, sc, pool, 2000, a);
  const auto rb = solve_random(dag, sc, pool, 2000, b);
  REQUIRE(ra.best);
  CHECK(ra.best->assignment == rb.best->assignment);
}

TEST_CASE("cloud-only keeps sources on edges and all else on the VM") {
  Rng gen(4);
  DagGenConfig cfg;
  cfg.n_vertices = 10;
  cfg.n_sources = 4;
  const QueryDag dag = generate_dag(cfg, campus(), gen);
  const RuntimeScenario sc = materialize(dag, campus(), 100.0, gen);
  const ResourcePool pool = build_pool(PoolSetup::Liberal, 10);
  const CloudOnlyResult result = solve_cloud_only(dag, sc, pool);
  for (int v = 0; v < dag.vertex_count(); ++v) {
    if (dag.is_source(v))
      CHECK(pool.is_edge(result.placement.assignment[v]));
    else
      CHECK(result.placement.assignment[v] == pool.edge_count());
  }
  // Exactly the source-hosting edges are used.
  CHECK(edge_used_pct(result.placement, pool) ==
        doctest::Approx(100.0 * 4.0 / pool.edge_count()));
}

TEST_CASE("generated dags are structurally valid and within degree caps") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    DagGenConfig cfg;
    cfg.n_vertices = 4 + static_cast<int>(rng.below(20));
    cfg.n_sources = cfg.n_vertices >= 10 && rng.bernoulli(0.5) ? 4 : 1;
    cfg.max_out_degree = 1 + static_cast<int>(rng.below(5));
    const QueryDag dag = generate_dag(cfg, campus(), rng);
    CHECK_NOTHROW(validate_dag(dag));
    CHECK(static_cast<int>(dag.sources.size()) == cfg.n_sources);
    CHECK(!dag.sinks.empty());
    for (int v = 0; v < dag.vertex_count(); ++v)
      CHECK(static_cast<int>(dag.out_adj[v].size()) <= cfg.max_out_degree);
    for (int s : dag.sources) CHECK(dag.variants[s].kind == QueryKind::Source);
    for (int v = 0; v < dag.vertex_count(); ++v)
      if (!dag.is_source(v)) {
        CHECK(dag.variants[v].kind != QueryKind::Source);
        // Only generation-eligible variants are assigned.
        bool found = false;
        for (const auto& g : campus().generation_catalog()) found |= g.id == dag.variants[v].id;
        CHECK(found);
      }
  }
}

TEST_CASE("query kinds are drawn uniformly") {
  Rng rng(6);
  std::map<QueryKind, int> histogram;
  int total = 0;
  while (total < 10000) {
    DagGenConfig cfg;
    cfg.n_vertices = 20;
    const QueryDag dag = generate_dag(cfg, campus(), rng);
    for (int v = 0; v < dag.vertex_count(); ++v) {
      if (dag.is_source(v)) continue;
      ++histogram[dag.variants[v].kind];
      ++total;
    }
  }
  for (const auto& [kind, count] : histogram)
    CHECK(std::abs(count / static_cast<double>(total) - 0.2) < 0.02);
}

TEST_CASE("screens: zero selectivity and over-the-cloud rates") {
  const QueryDag zero = chain({"Fil 1.0", "Fil 0.0"});
  const auto reject = screen_dag(zero, campus());
  REQUIRE(reject);
  CHECK(reject->reason == ScreenReject::Reason::ZeroSelectivity);

  // Stacked diamonds double the rate at each stage: 1000 * 2^9 = 512,000
  // e/s, above every cloud q3.
  std::vector<std::pair<std::string, QueryVariant>> vertices{{"src", source_variant()}};
  std::vector<std::pair<std::string, std::string>> edges;
  std::string prev = "src";
  for (int stage = 0; stage < 9; ++stage) {
    const std::string a = "a" + std::to_string(stage);
    const std::string b = "b" + std::to_string(stage);
    const std::string join = "j" + std::to_string(stage);
    vertices.emplace_back(a, variant("Fil 1.0"));
    vertices.emplace_back(b, variant("Fil 1.0"));
    vertices.emplace_back(join, variant("Fil 1.0"));
    edges.emplace_back(prev, a);
    edges.emplace_back(prev, b);
    edges.emplace_back(a, join);
    edges.emplace_back(b, join);
    prev = join;
  }
  const QueryDag amplifier = make_query_dag(std::move(vertices), edges);
  const auto high = screen_dag(amplifier, campus());
  REQUIRE(high);
  CHECK(high->reason == ScreenReject::Reason::RateTooHigh);

  CHECK(!screen_dag(chain({"Fil 0.5", "Agg S 60"}), campus()));
}

TEST_CASE("screened generation retries until acceptance") {
  Rng rng(7);
  DagGenConfig cfg;
  cfg.n_vertices = 12;
  cfg.n_sources = 4;
  for (int i = 0; i < 10; ++i) {
    const QueryDag dag = generate_screened_dag(cfg, campus(), rng);
    CHECK(!screen_dag(dag, campus()));
  }
}

TEST_CASE("generation gives up against an impossible screen") {
  BenchmarkDataset hopeless = campus();
  for (auto& v : hopeless.variants)
    v.peak_rate_cloud = {0.5, 0.5, 0.5, 0.5, 0.5};  // nothing passes on the cloud
  DagGenConfig cfg;
  cfg.n_vertices = 6;
  cfg.max_attempts = 50;
  Rng rng(8);
  try {
    generate_screened_dag(cfg, hopeless, rng);
    FAIL("expected GiveUp");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::GiveUp);
  }
}

TEST_CASE("suite manifest shape") {
  const auto entries = suite_manifest(42);
  CHECK(entries.size() == 45);
  std::map<int, int> per_size;
  for (const auto& e : entries) {
    ++per_size[e.cfg.n_vertices];
    CHECK(e.cfg.max_out_degree >= 1);
    CHECK(e.cfg.max_out_degree <= 5);
    if (e.cfg.n_vertices < 10) CHECK(e.cfg.n_sources == 1);
  }
  CHECK(per_size[4] == 3);
  CHECK(per_size[8] == 3);
  CHECK(per_size[10] == 6);  // both source counts
  CHECK(per_size[50] == 6);
  // Seeds are distinct so instances differ.
  const auto again = suite_manifest(42);
  for (std::size_t i = 0; i < entries.size(); ++i) CHECK(entries[i].seed == again[i].seed);
  CHECK(suite_manifest(43)[0].seed != entries[0].seed);
}
