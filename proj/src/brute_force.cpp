#include "ceplace/brute_force.hpp"

#include <chrono>
#include <cmath>

#include "ceplace/errors.hpp"

namespace ceplace {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::BudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

Placement pinned_assignment(const QueryDag& dag, const ResourcePool& pool) {
  if (!dag.sources.empty() && pool.edge_count() == 0)
    fail(Errc::ConfigError, "pool has no edge devices for the source queries");
  Placement p;
  p.assignment.assign(dag.vertex_count(), -1);
  int e = 0;
  for (int s : dag.sources) p.assignment[s] = e++ % pool.edge_count();
  int c = 0;
  for (int s : dag.sinks) p.assignment[s] = pool.edge_count() + c++ % pool.cloud_count();
  return p;
}

std::vector<int> unpinned_vertices(const QueryDag& dag) {
  std::vector<int> out;
  for (int v = 0; v < dag.vertex_count(); ++v)
    if (!dag.is_source(v) && !dag.is_sink(v)) out.push_back(v);
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

/// Per-resource load tallies updated as the enumeration assigns vertices.
/// A prefix that violates a constraint can only stay violated when more
/// vertices join, so the subtree below it is skipped when pruning.
class IncrementalLoads {
public:
  IncrementalLoads(const PlacementEvaluator& ev) : ev_(ev) {
    const int nr = ev.pool().size();
    lambda_sum_.assign(nr, 0.0);
    computing_.assign(nr, 0);
    placed_.assign(nr, 0);
    max_rate_.assign(nr, 0.0);
    energy_.assign(nr, 0.0);
  }

  struct Undo {
    double prev_max_rate = 0.0;
  };

  void add_source(int r) { ++placed_[r]; }

  Undo add(int v, int r) {
    Undo undo{max_rate_[r]};
    ++placed_[r];
    lambda_sum_[r] += ev_.lambda_on(v, r);
    ++computing_[r];
    max_rate_[r] = std::max(max_rate_[r], ev_.in_rate(v));
    if (ev_.pool().is_edge(r))
      energy_[r] += ev_.in_rate(v) * ev_.pool().edges[r].recharge_period_s * ev_.epsilon(v);
    return undo;
  }

  void remove(int v, int r, const Undo& undo) {
    --placed_[r];
    lambda_sum_[r] -= ev_.lambda_on(v, r);
    --computing_[r];
    max_rate_[r] = undo.prev_max_rate;
    if (ev_.pool().is_edge(r))
      energy_[r] -= ev_.in_rate(v) * ev_.pool().edges[r].recharge_period_s * ev_.epsilon(v);
  }

  /// Constraints on resource r for the vertices placed so far. The busiest
  /// query is the binding one, since all co-located queries share one cap.
  bool ok(int r) const {
    if (computing_[r] > 0) {
      const double cap = ev_.overhead_factor(r, computing_[r]) / lambda_sum_[r];
      if (!(max_rate_[r] < cap)) return false;
    }
    if (placed_[r] > 0 && ev_.pool().is_edge(r)) {
      const EdgeDevice& dev = ev_.pool().edges[r];
      if (dev.base_load_ma * dev.recharge_period_s / 3600.0 + energy_[r] > dev.capacity_mah)
        return false;
    }
    return true;
  }

private:
  const PlacementEvaluator& ev_;
  std::vector<double> lambda_sum_;
  std::vector<int> computing_;
  std::vector<int> placed_;
  std::vector<double> max_rate_;
  std::vector<double> energy_;
};

}  // namespace

BfResult solve_bf(const QueryDag& dag, const RuntimeScenario& scenario, const ResourcePool& pool,
                  const BfOptions& options, EvalOptions eval_opts) {
  const auto start = Clock::now();
  PlacementEvaluator ev(dag, scenario, pool, eval_opts);
  PlacementEvaluator::Workspace ws;

  Placement current = pinned_assignment(dag, pool);
  const std::vector<int> free_vertices = unpinned_vertices(dag);
  const int n = static_cast<int>(free_vertices.size());
  const int nr = pool.size();

  BfResult result;
  double best_makespan = std::numeric_limits<double>::infinity();
  std::vector<int> best_assignment;
  bool out_of_budget = false;

  const auto deadline =
      options.budget_s
          ? std::optional<Clock::time_point>(
                start + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(*options.budget_s)))
          : std::nullopt;
  std::uint64_t since_budget_check = 0;
  auto budget_hit = [&]() {
    if (!deadline) return false;
    if (++since_budget_check < 1024) return false;
    since_budget_check = 0;
    return Clock::now() >= *deadline;
  };

  IncrementalLoads loads(ev);
  for (int v = 0; v < dag.vertex_count(); ++v) {
    if (current.assignment[v] < 0) continue;
    if (dag.is_source(v))
      loads.add_source(current.assignment[v]);
    else
      loads.add(v, current.assignment[v]);
  }
  if (options.prune) {
    bool pins_ok = true;
    for (int r = 0; r < nr && pins_ok; ++r) pins_ok = loads.ok(r);
    if (!pins_ok) {
      // The pinned skeleton alone violates; no completion can recover.
      result.wall_s = std::chrono::duration<double>(Clock::now() - start).count();
      return result;
    }
  }

  auto evaluate_leaf = [&]() {
    ++result.assignments_evaluated;
    double makespan;
    if (options.prune) {
      makespan = ev.makespan_only(current.assignment, ws);
    } else {
      const auto q = ev.quick(current.assignment, ws);
      if (!q.valid()) return;
      makespan = q.makespan_s;
    }
    if (makespan < best_makespan) {
      best_makespan = makespan;
      best_assignment = current.assignment;
    }
  };

  // Depth-first odometer over the free vertices, resource 0..|R|-1 at each
  // level, which makes the first optimum the lexicographically smallest.
  auto walk = [&](auto&& self, int depth) -> void {
    if (out_of_budget) return;
    if (depth == n) {
      evaluate_leaf();
      if (budget_hit()) out_of_budget = true;
      return;
    }
    const int v = free_vertices[depth];
    for (int r = 0; r < nr; ++r) {
      current.assignment[v] = r;
      if (options.prune) {
        const auto undo = loads.add(v, r);
        if (loads.ok(r)) self(self, depth + 1);
        loads.remove(v, r, undo);
      } else {
        self(self, depth + 1);
      }
      if (out_of_budget) break;
    }
    current.assignment[v] = -1;
  };
  walk(walk, 0);

  result.wall_s = std::chrono::duration<double>(Clock::now() - start).count();
  if (!best_assignment.empty()) {
    result.best = Placement{std::move(best_assignment)};
    result.evaluation = ev.evaluate(*result.best);
    result.status = out_of_budget ? SolveStatus::BudgetExceeded : SolveStatus::Optimal;
  } else {
    result.status = out_of_budget ? SolveStatus::BudgetExceeded : SolveStatus::Infeasible;
  }
  return result;
}

}  // namespace ceplace
