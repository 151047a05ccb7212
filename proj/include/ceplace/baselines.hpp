#pragma once

#include "ceplace/brute_force.hpp"
#include "ceplace/placement.hpp"
#include "ceplace/rng.hpp"

namespace ceplace {

struct RandomSolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Placement> best;
  std::optional<Evaluation> evaluation;
  int trials = 0;
  double wall_s = 0.0;
};

/// Uniformly random assignments of the unpinned vertices, keeping the best
/// valid trial by makespan (earlier trial wins ties). Deterministic per seed.
RandomSolveResult solve_random(const QueryDag& dag, const RuntimeScenario& scenario,
                               const ResourcePool& pool, int trials, Rng& rng,
                               EvalOptions eval_opts = {});

struct CloudOnlyResult {
  Placement placement;
  Evaluation evaluation;
  double wall_s = 0.0;
};

/// Sources stay pinned to the edges; every other query goes to the first
/// cloud VM. No search; the evaluation may well be invalid.
CloudOnlyResult solve_cloud_only(const QueryDag& dag, const RuntimeScenario& scenario,
                                 const ResourcePool& pool, EvalOptions eval_opts = {});

}  // namespace ceplace
