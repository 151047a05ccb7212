#include "ceplace/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "ceplace/errors.hpp"
#include "ceplace/scenario.hpp"

namespace ceplace {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string generate_suite_files(const std::string& out_dir, std::uint64_t master_seed,
                                 const BenchmarkDataset& dataset, const std::vector<int>& sizes,
                                 int instances) {
  fs::create_directories(fs::path(out_dir) / "dags");
  nlohmann::json manifest;
  manifest["seed"] = master_seed;
  manifest["dataset"] = dataset.name;
  manifest["entries"] = nlohmann::json::array();
  for (const SuiteEntry& entry : suite_manifest(master_seed, sizes, instances)) {
    Rng rng(entry.seed);
    QueryDag dag = generate_screened_dag(entry.cfg, dataset, rng);
    const std::string rel = "dags/" + entry.id + ".json";
    save_dag(dag, (fs::path(out_dir) / rel).string());
    manifest["entries"].push_back({{"id", entry.id},
                                   {"file", rel},
                                   {"n_vertices", entry.cfg.n_vertices},
                                   {"n_sources", entry.cfg.n_sources},
                                   {"max_out_degree", entry.cfg.max_out_degree},
                                   {"extra_edge_prob", entry.cfg.extra_edge_prob},
                                   {"seed", entry.seed}});
  }
  const std::string manifest_path = (fs::path(out_dir) / "manifest.json").string();
  std::ofstream out(manifest_path);
  out << manifest.dump(2) << "\n";
  return manifest_path;
}

std::vector<SuiteDag> load_suite(const std::string& manifest_path,
                                 const std::vector<QueryVariant>& catalog) {
  std::ifstream in(manifest_path);
  if (!in) fail(Errc::ParseError, "cannot open suite manifest '" + manifest_path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("suite manifest: ") + e.what());
  }
  const fs::path base = fs::path(manifest_path).parent_path();
  std::vector<SuiteDag> suite;
  for (const auto& ej : j.at("entries")) {
    SuiteDag sd;
    sd.entry.id = ej.at("id").get<std::string>();
    sd.entry.cfg.n_vertices = ej.value("n_vertices", 0);
    sd.entry.cfg.n_sources = ej.value("n_sources", 1);
    sd.entry.cfg.max_out_degree = ej.value("max_out_degree", 3);
    sd.entry.cfg.extra_edge_prob = ej.value("extra_edge_prob", sd.entry.cfg.extra_edge_prob);
    sd.entry.seed = ej.value("seed", std::uint64_t{0});
    sd.dag = load_dag((base / ej.at("file").get<std::string>()).string(), catalog);
    suite.push_back(std::move(sd));
  }
  return suite;
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j,
                                             const std::string& base_dir) {
  ExperimentConfig cfg;
  const fs::path base(base_dir);
  auto resolve = [&](const std::string& p) {
    return fs::path(p).is_absolute() ? p : (base / p).string();
  };
  try {
    for (const auto& d : j.at("datasets")) cfg.dataset_paths.push_back(resolve(d));
    cfg.suite_manifest = resolve(j.at("suite").get<std::string>());
    if (j.contains("rates")) {
      cfg.rates.clear();
      for (const auto& r : j.at("rates")) cfg.rates.push_back(r.get<double>());
    }
    if (j.contains("setups")) {
      cfg.setups.clear();
      for (const auto& s : j.at("setups"))
        cfg.setups.push_back(pool_setup_from_string(s.get<std::string>()));
    }
    if (j.contains("solvers")) {
      cfg.solvers.clear();
      for (const auto& s : j.at("solvers")) cfg.solvers.push_back(s.get<std::string>());
    }
    cfg.seed = j.value("seed", std::uint64_t{42});
    if (j.contains("bf")) {
      const auto& b = j.at("bf");
      cfg.bf_budget_s = b.value("budget_secs", cfg.bf_budget_s);
      cfg.bf_max_unpinned = b.value("max_unpinned", cfg.bf_max_unpinned);
      cfg.bf_max_assignments = b.value("max_assignments", cfg.bf_max_assignments);
    }
    if (j.contains("ga")) {
      const auto& g = j.at("ga");
      cfg.ga.population = g.value("population", cfg.ga.population);
      cfg.ga.crossover_prob = g.value("crossover_prob", cfg.ga.crossover_prob);
      cfg.ga.mutation_prob = g.value("mutation_prob", cfg.ga.mutation_prob);
      cfg.ga.min_generations = g.value("min_generations", cfg.ga.min_generations);
      cfg.ga.max_generations = g.value("max_generations", cfg.ga.max_generations);
      cfg.ga.convergence_window_frac =
          g.value("convergence_window_frac", cfg.ga.convergence_window_frac);
      cfg.ga.convergence_tolerance =
          g.value("convergence_tolerance", cfg.ga.convergence_tolerance);
      cfg.ga.fitness_constant_s = g.value("fitness_constant_ms", 1e6) * 1e-3;
      cfg.ga.penalty_gamma = g.value("penalty_gamma", cfg.ga.penalty_gamma);
      cfg.ga.penalty_per_violation =
          g.value("penalty_per_violation", cfg.ga.penalty_per_violation);
      if (g.contains("selection"))
        cfg.ga.selection = selection_from_string(g.at("selection").get<std::string>());
      cfg.ga.rank_pressure = g.value("rank_pressure", cfg.ga.rank_pressure);
    }
    cfg.random_trials = j.value("random_trials", cfg.random_trials);
    cfg.headroom = j.value("headroom", cfg.headroom);
    cfg.include_sink_compute = j.value("include_sink_compute", cfg.include_sink_compute);
    cfg.free_colocated_network = j.value("free_colocated_network", cfg.free_colocated_network);
    if (j.contains("energy")) {
      const auto& e = j.at("energy");
      cfg.energy.capacity_mah = e.value("capacity_mah", cfg.energy.capacity_mah);
      cfg.energy.recharge_period_s = e.value("recharge_period_s", cfg.energy.recharge_period_s);
      cfg.energy.base_load_ma = e.value("base_load_ma", cfg.energy.base_load_ma);
    }
    cfg.workers = j.value("workers", 0);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ConfigError, std::string("experiment config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ConfigError, "cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ConfigError, std::string("experiment config: ") + e.what());
  }
  return experiment_config_from_json(j, fs::path(path).parent_path().string());
}

namespace {

struct Cell {
  int suite_index;
  int dataset_index;
  double rate;
  PoolSetup setup;
};

RunRecord base_record(const SuiteDag& sd, const std::string& dataset, double rate,
                      PoolSetup setup, const ResourcePool& pool, const std::string& solver) {
  RunRecord r;
  r.dag_id = sd.entry.id;
  r.dataset = dataset;
  r.rate = rate;
  r.setup = to_string(setup);
  r.solver = solver;
  r.n_vertices = sd.dag.vertex_count();
  r.n_edges = sd.dag.edge_count();
  r.n_sources = static_cast<int>(sd.dag.sources.size());
  r.n_sinks = static_cast<int>(sd.dag.sinks.size());
  r.n_unpinned = static_cast<int>(unpinned_vertices(sd.dag).size());
  r.pool_edges = pool.edge_count();
  r.pool_size = pool.size();
  return r;
}

void note_evaluation(RunRecord& r, const Evaluation& eval, const Placement& placement,
                     const ResourcePool& pool) {
  r.valid = eval.valid;
  r.makespan_ms = eval.makespan_s * 1e3;
  for (const auto& v : eval.violations)
    (v.kind == ViolationKind::Throughput ? r.throughput_violations : r.energy_violations)++;
  r.edge_used_pct = edge_used_pct(placement, pool);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                                std::ostream& log) {
  std::vector<BenchmarkDataset> datasets;
  for (const auto& path : config.dataset_paths) datasets.push_back(load_dataset(path));
  if (datasets.empty()) fail(Errc::ConfigError, "experiment needs at least one dataset");

  const std::vector<SuiteDag> suite = load_suite(config.suite_manifest, datasets[0].catalog());
  if (suite.empty()) fail(Errc::ConfigError, "suite is empty");

  std::vector<Cell> cells;
  for (int d = 0; d < static_cast<int>(datasets.size()); ++d)
    for (int s = 0; s < static_cast<int>(suite.size()); ++s)
      for (double rate : config.rates)
        for (PoolSetup setup : config.setups)
          cells.push_back({s, d, rate, setup});

  fs::create_directories(fs::path(out_dir) / "placements");

  const int per_cell = static_cast<int>(config.solvers.size());
  std::vector<RunRecord> runs(cells.size() * per_cell);
  std::atomic<int> next_cell{0};
  std::atomic<int> failed{0};
  std::mutex log_mutex;

  int workers = config.workers;
  if (workers <= 0) {
    if (const char* env = std::getenv("CEPLACE_WORKERS")) workers = std::atoi(env);
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = std::min<int>(workers, static_cast<int>(cells.size()) == 0 ? 1 : static_cast<int>(cells.size()));

  EvalOptions eval_opts{config.include_sink_compute, config.free_colocated_network};

  auto run_cell = [&](const Cell& cell, RunRecord* out) {
    const SuiteDag& sd = suite[cell.suite_index];
    const BenchmarkDataset& dataset = datasets[cell.dataset_index];
    const ResourcePool pool = build_pool(cell.setup, sd.dag.vertex_count(), config.energy);

    const std::uint64_t scenario_seed =
        mix_seed(config.seed, hash64(dataset.name + "|" + sd.entry.id));
    Rng scenario_rng(scenario_seed);
    const RuntimeScenario scenario = materialize(sd.dag, dataset, cell.rate, scenario_rng);

    const std::string cell_tag = sd.entry.id + "__" + dataset.name + "__" +
                                 fmt(cell.rate) + "__" + to_string(cell.setup);

    for (int si = 0; si < per_cell; ++si) {
      const std::string& solver = config.solvers[si];
      RunRecord r = base_record(sd, dataset.name, cell.rate, cell.setup, pool, solver);
      const Placement* placement = nullptr;
      BfResult bf;
      GaResult ga;
      RandomSolveResult rnd;
      CloudOnlyResult co;

      if (solver == "bf") {
        const double space = std::pow(static_cast<double>(pool.size()), r.n_unpinned);
        if (r.n_unpinned > config.bf_max_unpinned || space > config.bf_max_assignments) {
          r.status = "skipped";
        } else {
          BfOptions opts;
          opts.budget_s = config.bf_budget_s;
          bf = solve_bf(sd.dag, scenario, pool, opts, eval_opts);
          r.status = bf.status == SolveStatus::Optimal ? "ok" : to_string(bf.status);
          r.evaluations = bf.assignments_evaluated;
          r.wall_ms = bf.wall_s * 1e3;
          if (bf.best) {
            placement = &*bf.best;
            note_evaluation(r, *bf.evaluation, *bf.best, pool);
          }
        }
      } else if (solver == "ga") {
        GaConfig ga_cfg = config.ga;
        ga_cfg.seed = mix_seed(scenario_seed, hash64(std::string(to_string(cell.setup)) + "|ga|" +
                                                     fmt(cell.rate)));
        ga = solve_ga(sd.dag, scenario, pool, ga_cfg, eval_opts);
        r.status = "ok";
        r.generations = ga.stats.generations;
        r.population = ga_cfg.population;
        r.wall_ms = ga.stats.wall_s * 1e3;
        placement = &ga.best;
        note_evaluation(r, ga.evaluation, ga.best, pool);
        if (config.headroom && ga.evaluation.valid)
          r.headroom_pct = rate_headroom(sd.dag, scenario, ga.best, pool);
      } else if (solver == "random") {
        Rng rng(mix_seed(scenario_seed, hash64(std::string(to_string(cell.setup)) + "|rnd|" +
                                               fmt(cell.rate))));
        rnd = solve_random(sd.dag, scenario, pool, config.random_trials, rng, eval_opts);
        r.status = rnd.best ? "ok" : "infeasible";
        r.evaluations = static_cast<std::uint64_t>(rnd.trials);
        r.wall_ms = rnd.wall_s * 1e3;
        if (rnd.best) {
          placement = &*rnd.best;
          note_evaluation(r, *rnd.evaluation, *rnd.best, pool);
        }
      } else if (solver == "cloud-only") {
        co = solve_cloud_only(sd.dag, scenario, pool, eval_opts);
        r.status = "ok";
        r.wall_ms = co.wall_s * 1e3;
        placement = &co.placement;
        note_evaluation(r, co.evaluation, co.placement, pool);
      } else {
        fail(Errc::ConfigError, "unknown solver '" + solver + "'");
      }

      if (placement) {
        nlohmann::json pj;
        pj["dag"] = sd.entry.id;
        pj["dataset"] = dataset.name;
        pj["rate"] = cell.rate;
        pj["setup"] = to_string(cell.setup);
        pj["solver"] = solver;
        pj["valid"] = r.valid;
        pj["makespan_ms"] = r.makespan_ms;
        pj["assignment"] = placement_to_json(sd.dag, *placement, pool);
        std::ofstream pf((fs::path(out_dir) / "placements" / (cell_tag + "__" + solver + ".json"))
                             .string());
        pf << pj.dump(2) << "\n";
      }
      out[si] = std::move(r);
    }
  };

  auto worker_fn = [&]() {
    for (;;) {
      const int i = next_cell.fetch_add(1);
      if (i >= static_cast<int>(cells.size())) return;
      try {
        run_cell(cells[i], &runs[static_cast<std::size_t>(i) * per_cell]);
      } catch (const std::exception& e) {
        ++failed;
        const SuiteDag& sd = suite[cells[i].suite_index];
        for (int si = 0; si < per_cell; ++si) {
          RunRecord r;
          r.dag_id = sd.entry.id;
          r.dataset = datasets[cells[i].dataset_index].name;
          r.rate = cells[i].rate;
          r.setup = to_string(cells[i].setup);
          r.solver = config.solvers[si];
          r.status = "error";
          runs[static_cast<std::size_t>(i) * per_cell + si] = std::move(r);
        }
        std::lock_guard<std::mutex> lock(log_mutex);
        log << "cell failed: " << e.what() << "\n";
      }
    }
  };

  std::vector<std::thread> threads;
  for (int t = 0; t < workers; ++t) threads.emplace_back(worker_fn);
  for (auto& t : threads) t.join();

  write_runs_csv((fs::path(out_dir) / "runs.csv").string(), runs);
  write_summary_csv((fs::path(out_dir) / "summary.csv").string(), runs);
  log << "wrote " << runs.size() << " runs over " << cells.size() << " cells to " << out_dir
      << "\n";

  return {std::move(runs), failed.load()};
}

void write_runs_csv(const std::string& path, const std::vector<RunRecord>& runs) {
  std::ofstream out(path);
  if (!out) fail(Errc::ConfigError, "cannot write '" + path + "'");
  out << "dag_id,dataset,rate_eps,setup,solver,status,valid,makespan_ms,"
         "throughput_violations,energy_violations,edge_used_pct,headroom_pct,"
         "n_vertices,n_edges,n_sources,n_sinks,n_unpinned,pool_edges,pool_size,"
         "generations,population,evaluations,wall_ms\n";
  for (const RunRecord& r : runs) {
    out << r.dag_id << ',' << r.dataset << ',' << fmt(r.rate) << ',' << r.setup << ','
        << r.solver << ',' << r.status << ',' << (r.valid ? 1 : 0) << ',' << fmt(r.makespan_ms)
        << ',' << r.throughput_violations << ',' << r.energy_violations << ','
        << fmt(r.edge_used_pct) << ',' << fmt(r.headroom_pct) << ',' << r.n_vertices << ','
        << r.n_edges << ',' << r.n_sources << ',' << r.n_sinks << ',' << r.n_unpinned << ','
        << r.pool_edges << ',' << r.pool_size << ',' << r.generations << ',' << r.population
        << ',' << r.evaluations << ',' << fmt(r.wall_ms) << '\n';
  }
}

std::vector<RunRecord> read_runs_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) fail(Errc::ParseError, "empty csv");
  const std::vector<std::string> header = split_csv_line(line);
  auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    fail(Errc::ParseError, "runs csv lacks column '" + name + "'");
  };
  const int c_dag = col("dag_id"), c_ds = col("dataset"), c_rate = col("rate_eps"),
            c_setup = col("setup"), c_solver = col("solver"), c_status = col("status"),
            c_valid = col("valid"), c_mk = col("makespan_ms"), c_tv = col("throughput_violations"),
            c_ev = col("energy_violations"), c_eu = col("edge_used_pct"),
            c_hr = col("headroom_pct"), c_nv = col("n_vertices"), c_ne = col("n_edges"),
            c_ns = col("n_sources"), c_nk = col("n_sinks"), c_nu = col("n_unpinned"),
            c_pe = col("pool_edges"), c_ps = col("pool_size"), c_g = col("generations"),
            c_p = col("population"), c_evals = col("evaluations"), c_w = col("wall_ms");

  auto num = [](const std::string& s) {
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(s);
  };

  std::vector<RunRecord> runs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    RunRecord r;
    r.dag_id = f[c_dag];
    r.dataset = f[c_ds];
    r.rate = num(f[c_rate]);
    r.setup = f[c_setup];
    r.solver = f[c_solver];
    r.status = f[c_status];
    r.valid = f[c_valid] == "1";
    r.makespan_ms = num(f[c_mk]);
    r.throughput_violations = static_cast<int>(num(f[c_tv]));
    r.energy_violations = static_cast<int>(num(f[c_ev]));
    r.edge_used_pct = num(f[c_eu]);
    r.headroom_pct = num(f[c_hr]);
    r.n_vertices = static_cast<int>(num(f[c_nv]));
    r.n_edges = static_cast<int>(num(f[c_ne]));
    r.n_sources = static_cast<int>(num(f[c_ns]));
    r.n_sinks = static_cast<int>(num(f[c_nk]));
    r.n_unpinned = static_cast<int>(num(f[c_nu]));
    r.pool_edges = static_cast<int>(num(f[c_pe]));
    r.pool_size = static_cast<int>(num(f[c_ps]));
    r.generations = static_cast<long>(num(f[c_g]));
    r.population = static_cast<int>(num(f[c_p]));
    r.evaluations = static_cast<std::uint64_t>(num(f[c_evals]));
    r.wall_ms = num(f[c_w]);
    runs.push_back(std::move(r));
  }
  return runs;
}

void write_summary_csv(const std::string& path, const std::vector<RunRecord>& runs) {
  // Group rows by (dataset, rate, setup) preserving first-seen order.
  std::vector<std::tuple<std::string, double, std::string>> keys;
  auto key_of = [](const RunRecord& r) {
    return std::make_tuple(r.dataset, r.rate, r.setup);
  };
  for (const auto& r : runs) {
    const auto k = key_of(r);
    bool seen = false;
    for (const auto& existing : keys) seen = seen || existing == k;
    if (!seen) keys.push_back(k);
  }

  std::ofstream out(path);
  if (!out) fail(Errc::ConfigError, "cannot write '" + path + "'");
  out << "dataset,rate_eps,setup,n_dags,e_bf_ga,e_bf_rnd,e_ga_rnd,e_ga_co,"
         "invalid_ga_pct,invalid_rnd_pct,invalid_co_pct,"
         "edge_used_bf_pct,edge_used_ga_pct,edge_used_rnd_pct,edge_used_co_pct,"
         "bf_pairs\n";

  for (const auto& key : keys) {
    // Index this group's rows by (dag, solver).
    std::map<std::pair<std::string, std::string>, const RunRecord*> by;
    std::vector<std::string> dags;
    for (const auto& r : runs) {
      if (key_of(r) != key) continue;
      by[{r.dag_id, r.solver}] = &r;
      if (std::find(dags.begin(), dags.end(), r.dag_id) == dags.end()) dags.push_back(r.dag_id);
    }

    auto deviation = [&](const std::string& better, const std::string& worse) {
      std::vector<double> b, w;
      for (const auto& dag : dags) {
        const auto bi = by.find({dag, better});
        const auto wi = by.find({dag, worse});
        if (bi == by.end() || wi == by.end()) continue;
        if (bi->second->status != "ok" || wi->second->status != "ok") continue;
        if (!bi->second->valid || !wi->second->valid) continue;
        b.push_back(bi->second->makespan_ms);
        w.push_back(wi->second->makespan_ms);
      }
      if (b.empty()) return std::make_pair(std::numeric_limits<double>::quiet_NaN(), 0);
      return std::make_pair(latency_deviation(b, w), static_cast<int>(b.size()));
    };
    auto invalid = [&](const std::string& solver) {
      std::size_t total = 0, bad = 0;
      for (const auto& dag : dags) {
        const auto it = by.find({dag, solver});
        if (it == by.end() || it->second->status == "skipped" || it->second->status == "error")
          continue;
        ++total;
        if (!it->second->valid) ++bad;
      }
      return total == 0 ? std::numeric_limits<double>::quiet_NaN() : invalid_pct(bad, total);
    };
    auto edge_used = [&](const std::string& solver) {
      double sum = 0.0;
      int n = 0;
      for (const auto& dag : dags) {
        const auto it = by.find({dag, solver});
        if (it == by.end() || !it->second->valid || std::isnan(it->second->edge_used_pct))
          continue;
        sum += it->second->edge_used_pct;
        ++n;
      }
      return n == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / n;
    };

    const auto [e_bf_ga, bf_pairs] = deviation("bf", "ga");
    const auto [e_bf_rnd, bf_pairs2] = deviation("bf", "random");
    const auto [e_ga_rnd, p3] = deviation("ga", "random");
    const auto [e_ga_co, p4] = deviation("ga", "cloud-only");
    (void)bf_pairs2;
    (void)p3;
    (void)p4;

    out << std::get<0>(key) << ',' << fmt(std::get<1>(key)) << ',' << std::get<2>(key) << ','
        << dags.size() << ',' << fmt(e_bf_ga) << ',' << fmt(e_bf_rnd) << ',' << fmt(e_ga_rnd)
        << ',' << fmt(e_ga_co) << ',' << fmt(invalid("ga")) << ',' << fmt(invalid("random"))
        << ',' << fmt(invalid("cloud-only")) << ',' << fmt(edge_used("bf")) << ','
        << fmt(edge_used("ga")) << ',' << fmt(edge_used("random")) << ','
        << fmt(edge_used("cloud-only")) << ',' << bf_pairs << '\n';
  }
}

RegressionStats complexity_regression(const std::vector<RunRecord>& runs,
                                      const std::string& solver) {
  std::vector<double> xs, ys;
  for (const auto& r : runs) {
    if (r.solver != solver || r.status != "ok") continue;
    if (!(r.wall_ms > 0.0)) continue;
    double expected = 0.0;
    if (solver == "bf") {
      expected = (r.n_vertices + r.n_edges) *
                 std::pow(static_cast<double>(r.pool_size), r.n_unpinned);
    } else if (solver == "ga") {
      if (r.generations <= 0) continue;
      expected = static_cast<double>(r.generations) * r.population * (r.n_vertices + r.n_edges);
    } else {
      fail(Errc::ConfigError, "complexity model knows only 'bf' and 'ga'");
    }
    if (!(expected > 0.0)) continue;
    xs.push_back(std::log(expected));
    ys.push_back(std::log(r.wall_ms * 1e-3));
  }
  const int n = static_cast<int>(xs.size());
  if (n < 2) fail(Errc::InsufficientData, "need at least two timed runs");

  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) fail(Errc::InsufficientData, "expected-cost values are all identical");

  RegressionStats stats;
  stats.points = n;
  stats.slope = sxy / sxx;
  stats.intercept = my - stats.slope * mx;
  stats.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return stats;
}

}  // namespace ceplace
