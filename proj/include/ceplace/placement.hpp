#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "ceplace/query_dag.hpp"
#include "ceplace/resource_pool.hpp"
#include "ceplace/scenario.hpp"

namespace ceplace {

/// A mapping of every dag vertex to a resource index in the pool.
struct Placement {
  std::vector<int> assignment;
};

enum class ViolationKind { Throughput, Energy };

struct Violation {
  ViolationKind kind;
  std::string resource_id;
  std::string detail;
};

struct ResourceLoad {
  std::string resource_id;
  int placed = 0;             // queries on the resource, sources included
  int computing = 0;          // non-source queries (the m of the overhead fit)
  double consumed_mah = 0.0;  // base load plus per-event energy; edges only
};

struct Evaluation {
  double makespan_s = 0.0;
  std::vector<int> critical_path;  // vertex indices, source to sink
  std::vector<Violation> violations;
  std::vector<ResourceLoad> per_resource;
  bool valid = false;
};

struct EvalOptions {
  /// The path latency sum ranges over dataflow edges, so the last vertex's
  /// compute time is normally excluded; this adds it back.
  bool include_sink_compute = false;
  /// By default every hop is charged the network profile of its endpoints'
  /// resource classes, co-located queries included. Setting this treats
  /// same-resource hand-offs as free in-memory transfers instead.
  bool free_colocated_network = false;
};

/// Evaluates placements of one dag against one scenario and pool. All methods
/// are const and safe to call concurrently; callers own the workspaces.
///
/// The latency of a path edge (u, v) with u on r_m and v on r_n is the
/// round-robin-inflated compute time of u on r_m (the sum of the per-event
/// latencies of all non-source queries on r_m; zero when u is a source) plus
/// the dataflow edge's sampled network latency and transfer time d_u / beta
/// for the endpoints' class pair. The makespan is the maximum path latency,
/// found in one topological pass.
class PlacementEvaluator {
public:
  PlacementEvaluator(const QueryDag& dag, const RuntimeScenario& scenario,
                     const ResourcePool& pool, EvalOptions opts = {});

  struct Workspace {
    std::vector<double> lambda_sum;   // per resource
    std::vector<int> computing;      // per resource
    std::vector<int> placed;         // per resource
    std::vector<double> energy_mah;  // per resource
    std::vector<double> dist;        // per vertex
    std::vector<int> parent;         // per vertex
  };

  struct Quick {
    double makespan_s = 0.0;
    int throughput_violations = 0;
    int energy_violations = 0;
    bool valid() const { return throughput_violations == 0 && energy_violations == 0; }
    int violated_classes() const {
      return (throughput_violations > 0 ? 1 : 0) + (energy_violations > 0 ? 1 : 0);
    }
    int total_violations() const { return throughput_violations + energy_violations; }
  };

  /// Makespan plus violation counts; the hot path for solvers.
  Quick quick(std::span<const int> assignment, Workspace& ws) const;

  /// Makespan alone, for callers that already know the constraints hold.
  double makespan_only(std::span<const int> assignment, Workspace& ws) const;

  /// Constraint check only, with every vertex input rate scaled.
  bool constraints_ok(std::span<const int> assignment, double rate_scale, Workspace& ws) const;

  /// Full evaluation with violation details, per-resource loads and the
  /// critical path. Always computes the makespan, valid or not.
  Evaluation evaluate(const Placement& placement) const;

  const QueryDag& dag() const { return *dag_; }
  const RuntimeScenario& scenario() const { return *sc_; }
  const ResourcePool& pool() const { return *pool_; }
  const EvalOptions& options() const { return opts_; }

  bool vertex_is_source(int v) const { return is_source_[v] != 0; }
  double lambda_on(int v, int r) const {
    return pool_->is_edge(r) ? sc_->vertex[v].lambda_edge_s : sc_->vertex[v].lambda_cloud_s;
  }
  double epsilon(int v) const { return sc_->vertex[v].epsilon_edge_mah; }
  double in_rate(int v) const { return sc_->rates.in_rate[v]; }
  double overhead_factor(int r, int colocated) const {
    return 1.0 + parallelism_overhead(sc_->overhead(pool_->class_of(r)), colocated);
  }

private:
  void check_placement(std::span<const int> assignment) const;
  void fill_loads(std::span<const int> assignment, Workspace& ws) const;
  double longest_path(std::span<const int> assignment, Workspace& ws, bool track_parents) const;

  const QueryDag* dag_;
  const RuntimeScenario* sc_;
  const ResourcePool* pool_;
  EvalOptions opts_;

  std::vector<int> topo_;
  std::vector<std::vector<std::pair<int, int>>> edges_by_tail_;  // (head vertex, edge index)
  std::vector<char> is_source_;
  std::vector<double> out_bits_;  // 8 * d_i per vertex
};

std::pair<double, std::vector<int>> end_to_end_latency(const QueryDag& dag,
                                                       const RuntimeScenario& scenario,
                                                       const Placement& placement,
                                                       const ResourcePool& pool,
                                                       EvalOptions opts = {});

std::vector<Violation> check_constraints(const QueryDag& dag, const RuntimeScenario& scenario,
                                         const Placement& placement, const ResourcePool& pool);

Evaluation evaluate(const QueryDag& dag, const RuntimeScenario& scenario,
                    const Placement& placement, const ResourcePool& pool, EvalOptions opts = {});

/// Largest percentage increase of the dataflow input rate that keeps the
/// placement violation-free, found by bisection to 0.1% resolution. Latency
/// is not re-evaluated: rate changes affect only the constraints. Returns
/// +infinity when no finite rate violates. Throws InvalidBase when the
/// placement already violates at the base rate.
double rate_headroom(const QueryDag& dag, const RuntimeScenario& scenario,
                     const Placement& placement, const ResourcePool& pool);

/// Mean latency excess of the worse solutions over the better ones,
/// normalised by the mean of the better latencies, in percent.
double latency_deviation(std::span<const double> better, std::span<const double> worse);

/// Share of edge devices hosting at least one query, in percent.
double edge_used_pct(const Placement& placement, const ResourcePool& pool);

/// Share of runs without a valid solution, in percent.
double invalid_pct(std::size_t invalid, std::size_t total);

nlohmann::json evaluation_to_json(const QueryDag& dag, const Evaluation& eval);
nlohmann::json placement_to_json(const QueryDag& dag, const Placement& placement,
                                 const ResourcePool& pool);

}  // namespace ceplace
