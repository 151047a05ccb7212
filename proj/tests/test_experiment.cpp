#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ceplace/errors.hpp"
#include "ceplace/experiment.hpp"
#include "helpers.hpp"

using namespace ceplace;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

/// CSV content with the wall-time column blanked, for determinism diffs.
std::string without_wall_times(const fs::path& csv) {
  std::ifstream in(csv);
  std::string line, out;
  bool header = true;
  int wall_col = -1;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string f;
    std::istringstream ls(line);
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (header) {
      for (std::size_t i = 0; i < fields.size(); ++i)
        if (fields[i] == "wall_ms") wall_col = static_cast<int>(i);
      header = false;
    } else if (wall_col >= 0 && wall_col < static_cast<int>(fields.size())) {
      fields[wall_col] = "";
    }
    for (std::size_t i = 0; i < fields.size(); ++i) out += fields[i] + (i + 1 < fields.size() ? "," : "");
    out += '\n';
  }
  return out;
}

}  // namespace

TEST_CASE("suite files round-trip through the manifest") {
  TempDir dir("ceplace_suite_test");
  const std::string manifest =
      generate_suite_files(dir.path.string(), 11, testutil::campus(), {4, 6}, 2);
  const auto suite = load_suite(manifest, testutil::campus().catalog());
  REQUIRE(suite.size() == 4);  // sizes {4,6} x 1 source x 2 instances
  for (const auto& sd : suite) {
    CHECK_NOTHROW(validate_dag(sd.dag));
    CHECK(!screen_dag(sd.dag, testutil::campus()));
    CHECK(sd.dag.vertex_count() == sd.entry.cfg.n_vertices);
  }
  CHECK(suite[0].entry.id == "4_1_1");
}

TEST_CASE("experiment sweep: full cross product, deterministic csv output") {
  TempDir dir("ceplace_experiment_test");
  const std::string manifest =
      generate_suite_files((dir.path / "suite").string(), 11, testutil::campus(), {4, 6}, 1);

  ExperimentConfig cfg;
  cfg.dataset_paths = {testutil::data_file("campus-lan.json")};
  cfg.suite_manifest = manifest;
  cfg.rates = {100.0, 1000.0};
  cfg.setups = {PoolSetup::Liberal, PoolSetup::Centrist, PoolSetup::Conservative};
  cfg.solvers = {"bf", "ga", "random", "cloud-only"};
  cfg.seed = 7;
  cfg.ga.min_generations = 200;
  cfg.ga.max_generations = 1000;
  cfg.random_trials = 800;
  cfg.headroom = true;
  cfg.workers = 2;

  const ExperimentResult first = run_experiment(cfg, (dir.path / "out1").string(), std::cout);
  CHECK(first.failed_cells == 0);
  // 2 dags x 2 rates x 3 setups x 4 solvers
  CHECK(first.runs.size() == 48);
  for (const auto& r : first.runs) {
    CHECK(!r.status.empty());
    if (r.solver == "ga") CHECK(r.generations >= 200);
  }
  CHECK(fs::exists(dir.path / "out1" / "runs.csv"));
  CHECK(fs::exists(dir.path / "out1" / "summary.csv"));
  CHECK(!fs::is_empty(dir.path / "out1" / "placements"));

  const ExperimentResult second = run_experiment(cfg, (dir.path / "out2").string(), std::cout);
  CHECK(without_wall_times(dir.path / "out1" / "runs.csv") ==
        without_wall_times(dir.path / "out2" / "runs.csv"));
  CHECK(without_wall_times(dir.path / "out1" / "summary.csv") ==
        without_wall_times(dir.path / "out2" / "summary.csv"));

  // Reading the csv back reproduces the records.
  const auto parsed = read_runs_csv((dir.path / "out1" / "runs.csv").string());
  REQUIRE(parsed.size() == first.runs.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].dag_id == first.runs[i].dag_id);
    CHECK(parsed[i].solver == first.runs[i].solver);
    CHECK(parsed[i].valid == first.runs[i].valid);
  }

  // Summary in the quality-table shape: 2 rates x 3 setups = 6 rows.
  std::ifstream sf(dir.path / "out1" / "summary.csv");
  std::string line;
  int rows = 0;
  while (std::getline(sf, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 1 + 6);
}

TEST_CASE("complexity regression on real solver timings") {
  // Exhaustive solver: |R|^n growth over n = 3..7 on a pinned pool.
  Rng rng(71);
  std::vector<RunRecord> bf_runs;
  const ResourcePool pool = make_pool(3);  // |R| = 4
  int n_target = 3;
  while (n_target <= 7) {
    DagGenConfig cfg;
    cfg.n_vertices = n_target + 3;
    cfg.n_sources = 1;
    cfg.max_out_degree = 2;
    const QueryDag dag = generate_dag(cfg, testutil::campus(), rng);
    const int n = static_cast<int>(unpinned_vertices(dag).size());
    if (n != n_target) continue;
    const RuntimeScenario sc = materialize(dag, testutil::campus(), 100.0, rng);
    BfOptions opts;
    opts.prune = false;
    double wall = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 3; ++rep) wall = std::min(wall, solve_bf(dag, sc, pool, opts).wall_s);
    RunRecord r;
    r.solver = "bf";
    r.status = "ok";
    r.n_vertices = dag.vertex_count();
    r.n_edges = dag.edge_count();
    r.n_unpinned = n;
    r.pool_size = pool.size();
    r.wall_ms = wall * 1e3;
    bf_runs.push_back(r);
    ++n_target;
  }
  const RegressionStats bf_stats = complexity_regression(bf_runs, "bf");
  CHECK(bf_stats.slope == doctest::Approx(1.0).epsilon(0.35));
  CHECK(bf_stats.r2 > 0.9);

  // Genetic solver: generations x population x (V+E); spread the generation
  // counts so the expected-cost axis spans more than an order of magnitude.
  std::vector<RunRecord> ga_runs;
  for (long gens : {200L, 500L, 1200L, 3000L, 7000L}) {
    DagGenConfig cfg;
    cfg.n_vertices = 10;
    const QueryDag dag = generate_dag(cfg, testutil::campus(), rng);
    const RuntimeScenario sc = materialize(dag, testutil::campus(), 100.0, rng);
    const ResourcePool ga_pool = build_pool(PoolSetup::Centrist, 10);
    GaConfig gcfg;
    gcfg.min_generations = gens;
    gcfg.max_generations = gens;
    gcfg.seed = 5;
    double wall = std::numeric_limits<double>::infinity();
    long observed = 0;
    for (int rep = 0; rep < 3; ++rep) {
      const GaResult res = solve_ga(dag, sc, ga_pool, gcfg);
      wall = std::min(wall, res.stats.wall_s);
      observed = res.stats.generations;
    }
    RunRecord r;
    r.solver = "ga";
    r.status = "ok";
    r.n_vertices = dag.vertex_count();
    r.n_edges = dag.edge_count();
    r.generations = observed;
    r.population = gcfg.population;
    r.wall_ms = wall * 1e3;
    ga_runs.push_back(r);
  }
  const RegressionStats ga_stats = complexity_regression(ga_runs, "ga");
  CHECK(ga_stats.r2 > 0.9);
}

TEST_CASE("bf cells beyond the caps are skipped deterministically") {
  TempDir dir("ceplace_skip_test");
  const std::string manifest =
      generate_suite_files((dir.path / "suite").string(), 13, testutil::campus(), {12}, 1);
  ExperimentConfig cfg;
  cfg.dataset_paths = {testutil::data_file("campus-lan.json")};
  cfg.suite_manifest = manifest;
  cfg.rates = {100.0};
  cfg.setups = {PoolSetup::Liberal};
  cfg.solvers = {"bf"};
  cfg.bf_max_assignments = 1000.0;  // far below 12^n
  cfg.workers = 1;
  const ExperimentResult result = run_experiment(cfg, (dir.path / "out").string(), std::cout);
  REQUIRE(result.runs.size() == 2);  // size 12 comes in 1-source and 4-source flavours
  for (const auto& r : result.runs) CHECK(r.status == "skipped");
}

TEST_CASE("complexity regression recovers a linear model") {
  std::vector<RunRecord> runs;
  for (int n = 1; n <= 6; ++n) {
    RunRecord r;
    r.solver = "bf";
    r.status = "ok";
    r.n_vertices = 8;
    r.n_edges = 10;
    r.n_unpinned = n;
    r.pool_size = 4;
    r.wall_ms = 2.5e-4 * (r.n_vertices + r.n_edges) * std::pow(4.0, n);  // exact model
    runs.push_back(r);
  }
  const RegressionStats stats = complexity_regression(runs, "bf");
  CHECK(stats.points == 6);
  CHECK(stats.slope == doctest::Approx(1.0));
  CHECK(stats.r2 == doctest::Approx(1.0));

  std::vector<RunRecord> ga_runs;
  for (int g = 1; g <= 5; ++g) {
    RunRecord r;
    r.solver = "ga";
    r.status = "ok";
    r.n_vertices = 10;
    r.n_edges = 12;
    r.generations = g * 1000;
    r.population = 50;
    r.wall_ms = 3.0e-6 * r.generations * r.population * (r.n_vertices + r.n_edges);
    ga_runs.push_back(r);
  }
  const RegressionStats ga_stats = complexity_regression(ga_runs, "ga");
  CHECK(ga_stats.slope == doctest::Approx(1.0));
  CHECK(ga_stats.r2 == doctest::Approx(1.0));
}

TEST_CASE("complexity regression needs at least two points") {
  std::vector<RunRecord> runs;
  RunRecord r;
  r.solver = "bf";
  r.status = "ok";
  r.n_vertices = 4;
  r.n_edges = 3;
  r.n_unpinned = 2;
  r.pool_size = 3;
  r.wall_ms = 1.0;
  runs.push_back(r);
  try {
    complexity_regression(runs, "bf");
    FAIL("expected InsufficientData");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InsufficientData);
  }
}
