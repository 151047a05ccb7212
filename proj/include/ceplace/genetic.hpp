#pragma once

#include <cstdint>
#include <vector>

#include "ceplace/brute_force.hpp"
#include "ceplace/placement.hpp"
#include "ceplace/rng.hpp"

namespace ceplace {

enum class SelectionScheme { Roulette, Rank, Tournament };

const char* to_string(SelectionScheme s);
SelectionScheme selection_from_string(const std::string& s);

struct GaConfig {
  int population = 50;
  double crossover_prob = 0.50;
  double mutation_prob = 0.15;
  long min_generations = 15000;
  long max_generations = 1000000;
  /// Stop once the best fitness has not changed over this trailing fraction
  /// of all generations run so far.
  double convergence_window_frac = 0.5;
  /// Best-fitness changes no larger than this do not reset convergence.
  double convergence_tolerance = 0.0;
  double fitness_constant_s = 1000.0;  // the large constant the makespan is subtracted from
  double penalty_gamma = 1.5;
  /// Penalties are counted once per violated constraint class by default;
  /// alternatively once per violating query or device.
  bool penalty_per_violation = false;
  SelectionScheme selection = SelectionScheme::Roulette;
  double rank_pressure = 1.5;  // linear ranking selection pressure
  std::uint64_t seed = 0;
};

/// Fitness of a solution with the given makespan and penalty count: the
/// makespan is subtracted from a large constant, then log2(1 + gamma * F)
/// is subtracted once per counted violation. Clamped to a small positive
/// floor so selection probabilities stay well defined.
double penalized_fitness(double makespan_s, int penalty_count, const GaConfig& cfg);

/// Fitness-proportionate selection: p independent draws from the cumulative
/// fitness distribution; duplicates are expected.
std::vector<int> roulette_indices(std::span<const double> fitness, int draws, Rng& rng);

/// Linear ranking with the configured selection pressure.
std::vector<int> rank_indices(std::span<const double> fitness, int draws, double pressure,
                              Rng& rng);

/// Binary tournament: two uniform picks, the fitter one wins.
std::vector<int> tournament_indices(std::span<const double> fitness, int draws, Rng& rng);

/// In-place recombination: each chromosome joins the crossover set with
/// probability chi; set members are shuffled into pairs (an odd leftover is
/// dropped) and each pair swaps the gene prefix up to a random point.
void crossover_population(std::vector<std::vector<int>>& genes, double chi, Rng& rng);

/// Each gene independently mutates with probability mu to a uniform resource
/// index, which may equal the old value.
void mutate_population(std::vector<std::vector<int>>& genes, double mu, int n_resources,
                       Rng& rng);

struct GaStats {
  long generations = 0;
  double wall_s = 0.0;
  /// Best fitness and validity after each generation; non-decreasing under
  /// the (valid, fitness) ordering used for best-of-run updates.
  std::vector<std::pair<double, bool>> best_trace;
};

struct GaResult {
  Placement best;
  Evaluation evaluation;
  bool valid = false;
  double fitness = 0.0;
  GaStats stats;
};

/// Genetic-algorithm search over the unpinned vertices. Generation zero is
/// random; each step applies selection, crossover, mutation and best-of-run
/// tracking. A valid best is never displaced by an invalid one. Stops after
/// the convergence window or max_generations. Bit-reproducible per seed.
GaResult solve_ga(const QueryDag& dag, const RuntimeScenario& scenario, const ResourcePool& pool,
                  const GaConfig& cfg = {}, EvalOptions eval_opts = {});

}  // namespace ceplace
