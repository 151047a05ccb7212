#pragma once

#include <cstdint>
#include <optional>

#include "ceplace/placement.hpp"

namespace ceplace {

enum class SolveStatus { Optimal, Infeasible, BudgetExceeded };

const char* to_string(SolveStatus s);

/// Source vertices are assigned round-robin over distinct edge devices and
/// sinks round-robin over the cloud VMs; every other vertex is left at -1.
Placement pinned_assignment(const QueryDag& dag, const ResourcePool& pool);

/// Vertices that remain free after pinning, in canonical order.
std::vector<int> unpinned_vertices(const QueryDag& dag);

struct BfOptions {
  std::optional<double> budget_s;  // wall-clock cap; best-so-far is returned
  /// Abandon an assignment prefix as soon as it violates a constraint.
  /// Violations only worsen as vertices are added, so this never changes the
  /// returned optimum; disable it to make the evaluation count exactly |R|^n.
  bool prune = true;
};

struct BfResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Placement> best;
  std::optional<Evaluation> evaluation;
  std::uint64_t assignments_evaluated = 0;
  double wall_s = 0.0;
};

/// Exhaustive sweep over all |R|^n assignments of the unpinned vertices, in
/// lexicographic order. Returns the valid placement with the smallest
/// makespan; ties keep the first one encountered. Deterministic.
BfResult solve_bf(const QueryDag& dag, const RuntimeScenario& scenario, const ResourcePool& pool,
                  const BfOptions& options = {}, EvalOptions eval_opts = {});

}  // namespace ceplace
