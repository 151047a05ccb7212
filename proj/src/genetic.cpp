#include "ceplace/genetic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "ceplace/errors.hpp"

namespace ceplace {

const char* to_string(SelectionScheme s) {
  switch (s) {
    case SelectionScheme::Roulette: return "roulette";
    case SelectionScheme::Rank: return "rank";
    case SelectionScheme::Tournament: return "tournament";
  }
  return "unknown";
}

SelectionScheme selection_from_string(const std::string& s) {
  if (s == "roulette") return SelectionScheme::Roulette;
  if (s == "rank") return SelectionScheme::Rank;
  if (s == "tournament") return SelectionScheme::Tournament;
  fail(Errc::ConfigError, "unknown selection scheme '" + s + "'");
}

double penalized_fitness(double makespan_s, int penalty_count, const GaConfig& cfg) {
  double f = cfg.fitness_constant_s - makespan_s;
  if (penalty_count > 0)
    f -= penalty_count * std::log2(1.0 + cfg.penalty_gamma * std::max(f, 0.0));
  return std::max(f, 1e-6);
}

namespace {

/// p draws against a cumulative distribution over `weights`.
std::vector<int> cdf_draws(std::span<const double> weights, int draws, Rng& rng) {
  std::vector<double> cdf(weights.size());
  double total = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    total += weights[j];
    cdf[j] = total;
  }
  std::vector<int> picks(draws);
  for (int d = 0; d < draws; ++d) {
    const double x = rng.real01() * total;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), x);
    picks[d] = static_cast<int>(std::min<std::size_t>(it - cdf.begin(), weights.size() - 1));
  }
  return picks;
}

}  // namespace

std::vector<int> roulette_indices(std::span<const double> fitness, int draws, Rng& rng) {
  return cdf_draws(fitness, draws, rng);
}

std::vector<int> rank_indices(std::span<const double> fitness, int draws, double pressure,
                              Rng& rng) {
  const std::size_t p = fitness.size();
  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return fitness[a] < fitness[b]; });
  // Baker's linear ranking: weight grows with rank (0 = worst).
  std::vector<double> weight(p);
  for (std::size_t rank = 0; rank < p; ++rank) {
    const double w =
        p == 1 ? 1.0
               : (2.0 - pressure) + 2.0 * (pressure - 1.0) * static_cast<double>(rank) /
                                        static_cast<double>(p - 1);
    weight[order[rank]] = w;
  }
  return cdf_draws(weight, draws, rng);
}

std::vector<int> tournament_indices(std::span<const double> fitness, int draws, Rng& rng) {
  std::vector<int> picks(draws);
  for (int d = 0; d < draws; ++d) {
    const int a = static_cast<int>(rng.below(fitness.size()));
    const int b = static_cast<int>(rng.below(fitness.size()));
    picks[d] = fitness[b] > fitness[a] ? b : a;
  }
  return picks;
}

void crossover_population(std::vector<std::vector<int>>& genes, double chi, Rng& rng) {
  if (genes.empty() || genes.front().empty()) return;
  const int n = static_cast<int>(genes.front().size());

  std::vector<int> set;
  for (std::size_t i = 0; i < genes.size(); ++i)
    if (rng.bernoulli(chi)) set.push_back(static_cast<int>(i));
  if (set.size() % 2 == 1) set.pop_back();  // the last added member is dropped

  for (std::size_t i = set.size(); i > 1; --i)
    std::swap(set[i - 1], set[rng.below(i)]);

  for (std::size_t k = 0; k + 1 < set.size(); k += 2) {
    auto& a = genes[set[k]];
    auto& b = genes[set[k + 1]];
    const int m = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    for (int g = 0; g <= m; ++g) std::swap(a[g], b[g]);
  }
}

void mutate_population(std::vector<std::vector<int>>& genes, double mu, int n_resources,
                       Rng& rng) {
  for (auto& chromosome : genes)
    for (int& gene : chromosome)
      if (rng.bernoulli(mu)) gene = static_cast<int>(rng.below(n_resources));
}

GaResult solve_ga(const QueryDag& dag, const RuntimeScenario& scenario, const ResourcePool& pool,
                  const GaConfig& cfg, EvalOptions eval_opts) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  if (cfg.population < 2) fail(Errc::ConfigError, "population must be at least 2");
  if (cfg.min_generations > cfg.max_generations)
    fail(Errc::ConfigError, "min_generations exceeds max_generations");

  PlacementEvaluator ev(dag, scenario, pool, eval_opts);
  PlacementEvaluator::Workspace ws;
  Placement skeleton = pinned_assignment(dag, pool);
  const std::vector<int> free_vertices = unpinned_vertices(dag);
  const int n = static_cast<int>(free_vertices.size());
  const int nr = pool.size();
  const int p = cfg.population;

  GaResult result;
  auto finish = [&](const std::vector<int>& genes, long generations,
                    std::vector<std::pair<double, bool>> trace) {
    Placement best = skeleton;
    for (int i = 0; i < n; ++i) best.assignment[free_vertices[i]] = genes[i];
    result.best = std::move(best);
    result.evaluation = ev.evaluate(result.best);
    result.valid = result.evaluation.valid;
    result.stats.generations = generations;
    result.stats.best_trace = std::move(trace);
    result.stats.wall_s = std::chrono::duration<double>(Clock::now() - start).count();
  };

  if (n == 0) {  // everything is pinned; the search space is a single point
    const auto q = ev.quick(skeleton.assignment, ws);
    const int count = cfg.penalty_per_violation ? q.total_violations() : q.violated_classes();
    result.fitness = penalized_fitness(q.makespan_s, count, cfg);
    finish({}, 0, {{result.fitness, q.valid()}});
    return result;
  }

  Rng rng(cfg.seed);
  std::vector<std::vector<int>> genes(p, std::vector<int>(n));
  for (auto& chromosome : genes)
    for (int& g : chromosome) g = static_cast<int>(rng.below(nr));

  std::vector<double> fitness(p);
  std::vector<char> valid(p);
  std::vector<int> assignment = skeleton.assignment;

  double best_fitness = -1.0;
  bool best_valid = false;
  std::vector<int> best_genes;
  long last_change = 0;

  auto evaluate_population = [&](long generation) {
    for (int j = 0; j < p; ++j) {
      for (int i = 0; i < n; ++i) assignment[free_vertices[i]] = genes[j][i];
      const auto q = ev.quick(assignment, ws);
      const int count = cfg.penalty_per_violation ? q.total_violations() : q.violated_classes();
      fitness[j] = penalized_fitness(q.makespan_s, count, cfg);
      valid[j] = q.valid() ? 1 : 0;
      const bool better = (valid[j] && !best_valid) ||
                          (static_cast<bool>(valid[j]) == best_valid && fitness[j] > best_fitness);
      if (better) {
        const bool significant = static_cast<bool>(valid[j]) != best_valid ||
                                 fitness[j] - best_fitness > cfg.convergence_tolerance;
        best_fitness = fitness[j];
        best_valid = valid[j];
        best_genes = genes[j];
        if (significant) last_change = generation;
      }
    }
  };

  std::vector<std::pair<double, bool>> trace;
  evaluate_population(0);
  trace.emplace_back(best_fitness, best_valid);

  long g = 0;
  while (g < cfg.max_generations) {
    ++g;
    std::vector<int> picks;
    switch (cfg.selection) {
      case SelectionScheme::Roulette: picks = roulette_indices(fitness, p, rng); break;
      case SelectionScheme::Rank: picks = rank_indices(fitness, p, cfg.rank_pressure, rng); break;
      case SelectionScheme::Tournament: picks = tournament_indices(fitness, p, rng); break;
    }
    std::vector<std::vector<int>> next(p);
    for (int j = 0; j < p; ++j) next[j] = genes[picks[j]];
    genes = std::move(next);

    crossover_population(genes, cfg.crossover_prob, rng);
    mutate_population(genes, cfg.mutation_prob, nr, rng);
    evaluate_population(g);
    trace.emplace_back(best_fitness, best_valid);

    if (g >= cfg.min_generations &&
        static_cast<double>(g - last_change) >= cfg.convergence_window_frac * static_cast<double>(g))
      break;
  }

  result.fitness = best_fitness;
  finish(best_genes, g, std::move(trace));
  return result;
}

}  // namespace ceplace
