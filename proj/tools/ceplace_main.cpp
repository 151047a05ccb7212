// Command-line front end: dag suite generation, single solves, full
// experiment sweeps and complexity checks over the emitted CSVs.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "ceplace/experiment.hpp"
#include "ceplace/scenario.hpp"

using namespace ceplace;

namespace {

struct GaFlags {
  GaConfig cfg;
  std::string selection = "roulette";
  double fitness_constant_ms = 1e6;

  void attach(CLI::App* app) {
    app->add_option("--population", cfg.population, "chromosomes per generation");
    app->add_option("--crossover-prob", cfg.crossover_prob, "crossover probability");
    app->add_option("--mutation-prob", cfg.mutation_prob, "per-gene mutation probability");
    app->add_option("--min-generations", cfg.min_generations, "generations before convergence");
    app->add_option("--max-generations", cfg.max_generations, "hard generation cap");
    app->add_option("--convergence-window", cfg.convergence_window_frac,
                    "trailing fraction of generations the best must be stable for");
    app->add_option("--convergence-tolerance", cfg.convergence_tolerance,
                    "fitness change treated as unchanged");
    app->add_option("--fitness-constant-ms", fitness_constant_ms,
                    "constant the makespan is subtracted from");
    app->add_option("--penalty-gamma", cfg.penalty_gamma, "penalty scaling factor");
    app->add_flag("--penalty-per-violation", cfg.penalty_per_violation,
                  "penalise each violating query/device, not each constraint class");
    app->add_option("--selection", selection, "roulette | rank | tournament");
    app->add_option("--rank-pressure", cfg.rank_pressure, "linear ranking pressure");
  }

  GaConfig resolve(std::uint64_t seed) {
    cfg.selection = selection_from_string(selection);
    cfg.fitness_constant_s = fitness_constant_ms * 1e-3;
    cfg.seed = seed;
    return cfg;
  }
};

int cmd_gen_suite(const std::string& dataset_path, const std::string& out_dir,
                  std::uint64_t seed, std::vector<int> sizes, int instances) {
  const BenchmarkDataset ds = load_dataset(dataset_path);
  if (sizes.empty()) sizes = {4, 6, 8, 10, 12, 20, 30, 40, 50};
  const std::string manifest = generate_suite_files(out_dir, seed, ds, sizes, instances);
  std::cout << "suite manifest: " << manifest << "\n";
  return 0;
}

int cmd_gen_dag(const std::string& dataset_path, const std::string& out_path, int size,
                int sources, int max_out, std::uint64_t seed) {
  const BenchmarkDataset ds = load_dataset(dataset_path);
  DagGenConfig cfg;
  cfg.n_vertices = size;
  cfg.n_sources = sources;
  cfg.max_out_degree = max_out;
  Rng rng(seed);
  const QueryDag dag = generate_screened_dag(cfg, ds, rng);
  save_dag(dag, out_path);
  const RateMap rates = propagate_rates(dag, 1000.0);
  std::cout << "wrote " << out_path << " (" << dag.vertex_count() << " vertices, "
            << dag.edge_count() << " edges, selectivity " << rates.dag_selectivity << ")\n";
  return 0;
}

int cmd_solve(const std::string& dag_path, const std::string& dataset_path, double rate,
              const std::string& setup_name, int explicit_edges, const EnergyParams& energy,
              const std::string& solver,
              std::uint64_t seed, GaFlags& ga_flags, double budget_s, bool no_prune,
              int random_trials, bool headroom, bool include_sink_compute,
              bool free_colocated_network, const std::string& trace_path,
              const std::string& out_path, const std::string& scenario_in,
              const std::string& scenario_out) {
  const BenchmarkDataset ds = load_dataset(dataset_path);
  const QueryDag dag = load_dag(dag_path, ds.catalog());
  validate_dag(dag);

  const ResourcePool pool = explicit_edges > 0
                                ? make_pool(explicit_edges, 1, energy)
                                : build_pool(pool_setup_from_string(setup_name),
                                             dag.vertex_count(), energy);

  RuntimeScenario scenario;
  if (!scenario_in.empty()) {
    std::ifstream in(scenario_in);
    nlohmann::json j;
    in >> j;
    scenario = scenario_from_json(dag, j);
  } else {
    Rng rng(mix_seed(seed, hash64("scenario")));
    scenario = materialize(dag, ds, rate, rng);
  }
  if (!scenario_out.empty()) {
    std::ofstream out(scenario_out);
    out << scenario_to_json(dag, scenario).dump(2) << "\n";
  }

  EvalOptions eval_opts{include_sink_compute, free_colocated_network};
  nlohmann::json result;
  result["dag"] = dag_path;
  result["dataset"] = ds.name;
  result["rate_eps"] = rate;
  result["solver"] = solver;

  const Placement* placement = nullptr;
  BfResult bf;
  GaResult ga;
  RandomSolveResult rnd;
  CloudOnlyResult co;

  if (solver == "bf") {
    BfOptions opts;
    if (budget_s > 0) opts.budget_s = budget_s;
    opts.prune = !no_prune;
    bf = solve_bf(dag, scenario, pool, opts, eval_opts);
    result["status"] = to_string(bf.status);
    result["evaluations"] = bf.assignments_evaluated;
    result["wall_s"] = bf.wall_s;
    if (bf.best) {
      placement = &*bf.best;
      result["evaluation"] = evaluation_to_json(dag, *bf.evaluation);
    }
  } else if (solver == "ga") {
    ga = solve_ga(dag, scenario, pool, ga_flags.resolve(seed), eval_opts);
    result["status"] = "ok";
    result["generations"] = ga.stats.generations;
    result["wall_s"] = ga.stats.wall_s;
    result["fitness"] = ga.fitness;
    placement = &ga.best;
    result["evaluation"] = evaluation_to_json(dag, ga.evaluation);
    if (headroom && ga.evaluation.valid)
      result["headroom_pct"] = rate_headroom(dag, scenario, ga.best, pool);
    if (!trace_path.empty()) {
      std::ofstream tf(trace_path);
      tf << "generation,best_fitness,best_valid\n";
      for (std::size_t g = 0; g < ga.stats.best_trace.size(); ++g)
        tf << g << ',' << ga.stats.best_trace[g].first << ','
           << (ga.stats.best_trace[g].second ? 1 : 0) << '\n';
    }
  } else if (solver == "random") {
    Rng rng(mix_seed(seed, hash64("random")));
    rnd = solve_random(dag, scenario, pool, random_trials, rng, eval_opts);
    result["status"] = rnd.best ? "ok" : "infeasible";
    result["trials"] = rnd.trials;
    result["wall_s"] = rnd.wall_s;
    if (rnd.best) {
      placement = &*rnd.best;
      result["evaluation"] = evaluation_to_json(dag, *rnd.evaluation);
    }
  } else if (solver == "cloud-only") {
    co = solve_cloud_only(dag, scenario, pool, eval_opts);
    result["status"] = "ok";
    result["wall_s"] = co.wall_s;
    placement = &co.placement;
    result["evaluation"] = evaluation_to_json(dag, co.evaluation);
  } else {
    std::cerr << "unknown solver '" << solver << "'\n";
    return 2;
  }

  if (placement) result["assignment"] = placement_to_json(dag, *placement, pool);

  if (out_path.empty()) {
    std::cout << result.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << result.dump(2) << "\n";
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  const ExperimentConfig config = load_experiment_config(config_path);
  const ExperimentResult result = run_experiment(config, out_dir, std::cout);
  if (result.failed_cells > 0) {
    std::cerr << result.failed_cells << " cells failed\n";
    return 1;
  }
  return 0;
}

int cmd_verify_complexity(const std::string& runs_path, const std::string& solver) {
  const auto runs = read_runs_csv(runs_path);
  const RegressionStats stats = complexity_regression(runs, solver);
  std::cout << "solver=" << solver << " points=" << stats.points << " slope=" << stats.slope
            << " intercept=" << stats.intercept << " r2=" << stats.r2 << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Placement of CEP query dataflows across edge devices and cloud VMs"};
  app.require_subcommand(1);

  // gen-suite
  std::string dataset_path = "data/campus-lan.json";
  std::string out_dir = "suite";
  std::uint64_t seed = 42;
  std::vector<int> sizes;
  int instances = 3;
  auto* gen_suite = app.add_subcommand("gen-suite", "generate the dag suite with its manifest");
  gen_suite->add_option("--dataset", dataset_path, "benchmark dataset file");
  gen_suite->add_option("--out", out_dir, "output directory");
  gen_suite->add_option("--seed", seed, "master seed");
  gen_suite->add_option("--sizes", sizes, "dag sizes to generate");
  gen_suite->add_option("--instances", instances, "instances per configuration");

  // gen-dag
  std::string dag_out = "dag.json";
  int size = 8, sources = 1, max_out = 3;
  std::uint64_t dag_seed = 1;
  auto* gen_dag = app.add_subcommand("gen-dag", "generate one random screened dag");
  gen_dag->add_option("--dataset", dataset_path, "benchmark dataset file");
  gen_dag->add_option("--out", dag_out, "output dag file");
  gen_dag->add_option("--size", size, "vertex count")->required();
  gen_dag->add_option("--sources", sources, "source count");
  gen_dag->add_option("--max-out", max_out, "maximum vertex out-degree");
  gen_dag->add_option("--seed", dag_seed, "seed");

  // solve
  std::string dag_path, solver = "ga", setup_name = "liberal", trace_path, out_path;
  std::string scenario_in, scenario_out;
  double rate = 1000.0, budget_s = 0.0;
  int explicit_edges = 0, random_trials = 15000;
  bool no_prune = false, headroom = false, include_sink_compute = false;
  bool free_colocated_network = false;
  EnergyParams energy;
  std::uint64_t solve_seed = 42;
  GaFlags ga_flags;
  auto* solve = app.add_subcommand("solve", "place one dag with one solver");
  solve->add_option("--dag", dag_path, "dag file")->required();
  solve->add_option("--dataset", dataset_path, "benchmark dataset file");
  solve->add_option("--rate", rate, "dataflow input rate, events/s");
  solve->add_option("--setup", setup_name, "liberal | centrist | conservative");
  solve->add_option("--edges", explicit_edges, "explicit edge device count (overrides --setup)");
  solve->add_option("--capacity-mah", energy.capacity_mah, "edge battery capacity");
  solve->add_option("--recharge-secs", energy.recharge_period_s, "edge recharge period");
  solve->add_option("--base-load-ma", energy.base_load_ma, "edge idle current draw");
  solve->add_option("--solver", solver, "bf | ga | random | cloud-only");
  solve->add_option("--seed", solve_seed, "seed");
  solve->add_option("--budget-secs", budget_s, "wall-clock budget for bf");
  solve->add_flag("--no-prune", no_prune, "disable bf prefix pruning");
  solve->add_option("--random-trials", random_trials, "trials for the random solver");
  solve->add_flag("--headroom", headroom, "report the input-rate headroom of a valid placement");
  solve->add_flag("--include-sink-compute", include_sink_compute,
                  "add the sink's compute time to path latencies");
  solve->add_flag("--free-colocated-network", free_colocated_network,
                  "treat same-resource hand-offs as free instead of charging the class profile");
  solve->add_option("--trace", trace_path, "write the best-fitness trace CSV here");
  solve->add_option("--out", out_path, "write the result JSON here (default: stdout)");
  solve->add_option("--scenario-in", scenario_in, "replay a dumped scenario");
  solve->add_option("--scenario-out", scenario_out, "dump the sampled scenario");
  ga_flags.attach(solve);

  // run
  std::string config_path, run_out = "results";
  auto* run = app.add_subcommand("run", "run a full experiment from a config file");
  run->add_option("--config", config_path, "experiment config JSON")->required();
  run->add_option("--out", run_out, "results directory");

  // verify-complexity
  std::string runs_path, vc_solver = "bf";
  auto* vc = app.add_subcommand("verify-complexity",
                                "regress observed against expected solver cost");
  vc->add_option("--runs", runs_path, "runs.csv from an experiment")->required();
  vc->add_option("--solver", vc_solver, "bf | ga");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_suite->parsed())
      return cmd_gen_suite(dataset_path, out_dir, seed, sizes, instances);
    if (gen_dag->parsed())
      return cmd_gen_dag(dataset_path, dag_out, size, sources, max_out, dag_seed);
    if (solve->parsed())
      return cmd_solve(dag_path, dataset_path, rate, setup_name, explicit_edges, energy,
                       solver, solve_seed, ga_flags, budget_s, no_prune, random_trials,
                       headroom, include_sink_compute, free_colocated_network, trace_path,
                       out_path, scenario_in, scenario_out);
    if (run->parsed()) return cmd_run(config_path, run_out);
    if (vc->parsed()) return cmd_verify_complexity(runs_path, vc_solver);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
