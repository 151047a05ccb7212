#include "ceplace/baselines.hpp"

#include <chrono>

namespace ceplace {

RandomSolveResult solve_random(const QueryDag& dag, const RuntimeScenario& scenario,
                               const ResourcePool& pool, int trials, Rng& rng,
                               EvalOptions eval_opts) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  PlacementEvaluator ev(dag, scenario, pool, eval_opts);
  PlacementEvaluator::Workspace ws;

  Placement current = pinned_assignment(dag, pool);
  const std::vector<int> free_vertices = unpinned_vertices(dag);
  const int nr = pool.size();

  RandomSolveResult result;
  result.trials = trials;
  double best_makespan = std::numeric_limits<double>::infinity();
  std::vector<int> best_assignment;

  for (int t = 0; t < trials; ++t) {
    for (int v : free_vertices) current.assignment[v] = static_cast<int>(rng.below(nr));
    const auto q = ev.quick(current.assignment, ws);
    if (q.valid() && q.makespan_s < best_makespan) {
      best_makespan = q.makespan_s;
      best_assignment = current.assignment;
    }
  }

  if (!best_assignment.empty()) {
    result.best = Placement{std::move(best_assignment)};
    result.evaluation = ev.evaluate(*result.best);
    result.status = SolveStatus::Optimal;
  }
  result.wall_s = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

CloudOnlyResult solve_cloud_only(const QueryDag& dag, const RuntimeScenario& scenario,
                                 const ResourcePool& pool, EvalOptions eval_opts) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  CloudOnlyResult result;
  result.placement = pinned_assignment(dag, pool);
  for (int v = 0; v < dag.vertex_count(); ++v)
    if (!dag.is_source(v)) result.placement.assignment[v] = pool.edge_count();
  result.evaluation =
      PlacementEvaluator(dag, scenario, pool, eval_opts).evaluate(result.placement);
  result.wall_s = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace ceplace
