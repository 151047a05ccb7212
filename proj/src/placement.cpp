#include "ceplace/placement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ceplace/errors.hpp"

namespace ceplace {
namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

PlacementEvaluator::PlacementEvaluator(const QueryDag& dag, const RuntimeScenario& scenario,
                                       const ResourcePool& pool, EvalOptions opts)
    : dag_(&dag), sc_(&scenario), pool_(&pool), opts_(opts) {
  topo_ = topological_order(dag);
  const int n = dag.vertex_count();
  edges_by_tail_.resize(n);
  for (int e = 0; e < dag.edge_count(); ++e)
    edges_by_tail_[dag.edges[e].first].emplace_back(dag.edges[e].second, e);
  is_source_.assign(n, 0);
  for (int s : dag.sources) is_source_[s] = 1;
  out_bits_.resize(n);
  for (int v = 0; v < n; ++v) out_bits_[v] = 8.0 * dag.variants[v].out_event_bytes;
}

void PlacementEvaluator::check_placement(std::span<const int> assignment) const {
  if (static_cast<int>(assignment.size()) != dag_->vertex_count())
    fail(Errc::UnplacedVertex, "assignment covers " + std::to_string(assignment.size()) +
                                   " of " + std::to_string(dag_->vertex_count()) + " vertices");
  for (int v = 0; v < dag_->vertex_count(); ++v) {
    const int r = assignment[v];
    if (r < 0 || r >= pool_->size())
      fail(Errc::UnplacedVertex, "vertex '" + dag_->vertex_ids[v] + "' has no resource");
    if (is_source_[v] && !pool_->is_edge(r))
      fail(Errc::UnplacedVertex,
           "source '" + dag_->vertex_ids[v] + "' must be on an edge device");
    if (dag_->is_sink(v) && pool_->is_edge(r))
      fail(Errc::UnplacedVertex, "sink '" + dag_->vertex_ids[v] + "' must be on the cloud");
  }
}

void PlacementEvaluator::fill_loads(std::span<const int> assignment, Workspace& ws) const {
  const int nr = pool_->size();
  ws.lambda_sum.assign(nr, 0.0);
  ws.computing.assign(nr, 0);
  ws.placed.assign(nr, 0);
  for (int v = 0; v < dag_->vertex_count(); ++v) {
    const int r = assignment[v];
    ++ws.placed[r];
    if (is_source_[v]) continue;
    ws.lambda_sum[r] += lambda_on(v, r);
    ++ws.computing[r];
  }
}

double PlacementEvaluator::longest_path(std::span<const int> assignment, Workspace& ws,
                                        bool track_parents) const {
  const int n = dag_->vertex_count();
  ws.dist.assign(n, -std::numeric_limits<double>::infinity());
  if (track_parents) ws.parent.assign(n, -1);
  for (int s : dag_->sources) ws.dist[s] = 0.0;

  for (int u : topo_) {
    const double du = ws.dist[u];
    if (du == -std::numeric_limits<double>::infinity()) continue;
    const int ru = assignment[u];
    const double compute = is_source_[u] ? 0.0 : ws.lambda_sum[ru];
    for (const auto& [v, e] : edges_by_tail_[u]) {
      const int rv = assignment[v];
      double w = compute;
      if (!(opts_.free_colocated_network && ru == rv)) {
        // Same-class pairs use the intra-class profile, mixed pairs the
        // edge-to-cloud one.
        if (pool_->is_edge(ru) == pool_->is_edge(rv))
          w += sc_->edge[e].latency_ee_s + out_bits_[u] / sc_->edge[e].bandwidth_ee_bps;
        else
          w += sc_->edge[e].latency_ec_s + out_bits_[u] / sc_->edge[e].bandwidth_ec_bps;
      }
      if (du + w > ws.dist[v]) {
        ws.dist[v] = du + w;
        if (track_parents) ws.parent[v] = u;
      }
    }
  }

  double best = 0.0;
  for (int s : dag_->sinks) {
    double total = ws.dist[s];
    if (opts_.include_sink_compute && !is_source_[s]) total += ws.lambda_sum[assignment[s]];
    best = std::max(best, total);
  }
  return best;
}

double PlacementEvaluator::makespan_only(std::span<const int> assignment, Workspace& ws) const {
  fill_loads(assignment, ws);
  return longest_path(assignment, ws, false);
}

PlacementEvaluator::Quick PlacementEvaluator::quick(std::span<const int> assignment,
                                                    Workspace& ws) const {
  fill_loads(assignment, ws);
  Quick q;
  q.makespan_s = longest_path(assignment, ws, false);

  for (int v = 0; v < dag_->vertex_count(); ++v) {
    if (is_source_[v]) continue;
    const int r = assignment[v];
    const double cap = overhead_factor(r, ws.computing[r]) / ws.lambda_sum[r];
    if (!(sc_->rates.in_rate[v] < cap)) ++q.throughput_violations;
  }
  ws.energy_mah.assign(pool_->size(), 0.0);
  for (int v = 0; v < dag_->vertex_count(); ++v) {
    const int r = assignment[v];
    if (!is_source_[v] && pool_->is_edge(r))
      ws.energy_mah[r] += sc_->rates.in_rate[v] * pool_->edges[r].recharge_period_s *
                          sc_->vertex[v].epsilon_edge_mah;
  }
  for (int r = 0; r < pool_->edge_count(); ++r) {
    if (ws.placed[r] == 0) continue;
    const EdgeDevice& dev = pool_->edges[r];
    if (dev.base_load_ma * dev.recharge_period_s / 3600.0 + ws.energy_mah[r] > dev.capacity_mah)
      ++q.energy_violations;
  }
  return q;
}

bool PlacementEvaluator::constraints_ok(std::span<const int> assignment, double rate_scale,
                                        Workspace& ws) const {
  fill_loads(assignment, ws);
  for (int v = 0; v < dag_->vertex_count(); ++v) {
    if (is_source_[v]) continue;
    const int r = assignment[v];
    const double cap = overhead_factor(r, ws.computing[r]) / ws.lambda_sum[r];
    if (!(rate_scale * sc_->rates.in_rate[v] < cap)) return false;
  }
  const int nr = pool_->size();
  ws.energy_mah.assign(nr, 0.0);
  for (int v = 0; v < dag_->vertex_count(); ++v) {
    const int r = assignment[v];
    if (!is_source_[v] && pool_->is_edge(r))
      ws.energy_mah[r] += rate_scale * sc_->rates.in_rate[v] * pool_->edges[r].recharge_period_s *
                          sc_->vertex[v].epsilon_edge_mah;
  }
  for (int r = 0; r < pool_->edge_count(); ++r) {
    if (ws.placed[r] == 0) continue;
    const EdgeDevice& dev = pool_->edges[r];
    if (dev.base_load_ma * dev.recharge_period_s / 3600.0 + ws.energy_mah[r] > dev.capacity_mah)
      return false;
  }
  return true;
}

Evaluation PlacementEvaluator::evaluate(const Placement& placement) const {
  check_placement(placement.assignment);
  Workspace ws;
  std::span<const int> assignment(placement.assignment);
  fill_loads(assignment, ws);

  Evaluation eval;
  eval.makespan_s = longest_path(assignment, ws, true);

  // Critical path: best sink, then walk the relaxation parents backwards.
  int best_sink = -1;
  double best = -1.0;
  for (int s : dag_->sinks) {
    double total = ws.dist[s];
    if (opts_.include_sink_compute && !is_source_[s]) total += ws.lambda_sum[assignment[s]];
    if (total > best) {
      best = total;
      best_sink = s;
    }
  }
  for (int v = best_sink; v != -1; v = ws.parent[v]) eval.critical_path.push_back(v);
  std::reverse(eval.critical_path.begin(), eval.critical_path.end());

  for (int v = 0; v < dag_->vertex_count(); ++v) {
    if (is_source_[v]) continue;
    const int r = assignment[v];
    const int m = ws.computing[r];
    const double cap = overhead_factor(r, m) / ws.lambda_sum[r];
    if (!(sc_->rates.in_rate[v] < cap))
      eval.violations.push_back(
          {ViolationKind::Throughput, pool_->id_of(r),
           "'" + dag_->vertex_ids[v] + "' input rate " + fmt(sc_->rates.in_rate[v]) +
               " e/s reaches the " + fmt(cap) + " e/s cap (m=" + std::to_string(m) + ")"});
  }

  ws.energy_mah.assign(pool_->size(), 0.0);
  for (int v = 0; v < dag_->vertex_count(); ++v) {
    const int r = assignment[v];
    if (!is_source_[v] && pool_->is_edge(r))
      ws.energy_mah[r] += sc_->rates.in_rate[v] * pool_->edges[r].recharge_period_s *
                          sc_->vertex[v].epsilon_edge_mah;
  }
  for (int r = 0; r < pool_->edge_count(); ++r) {
    if (ws.placed[r] == 0) continue;
    const EdgeDevice& dev = pool_->edges[r];
    const double total = dev.base_load_ma * dev.recharge_period_s / 3600.0 + ws.energy_mah[r];
    if (total > dev.capacity_mah)
      eval.violations.push_back({ViolationKind::Energy, dev.id,
                                 "draws " + fmt(total) + " mAh of the " + fmt(dev.capacity_mah) +
                                     " mAh budget per recharge period"});
  }

  for (int r = 0; r < pool_->size(); ++r) {
    if (ws.placed[r] == 0) continue;
    ResourceLoad load;
    load.resource_id = pool_->id_of(r);
    load.placed = ws.placed[r];
    load.computing = ws.computing[r];
    if (pool_->is_edge(r))
      load.consumed_mah = pool_->edges[r].base_load_ma * pool_->edges[r].recharge_period_s / 3600.0 +
                          ws.energy_mah[r];
    eval.per_resource.push_back(std::move(load));
  }

  eval.valid = eval.violations.empty();
  return eval;
}

std::pair<double, std::vector<int>> end_to_end_latency(const QueryDag& dag,
                                                       const RuntimeScenario& scenario,
                                                       const Placement& placement,
                                                       const ResourcePool& pool,
                                                       EvalOptions opts) {
  Evaluation eval = PlacementEvaluator(dag, scenario, pool, opts).evaluate(placement);
  return {eval.makespan_s, std::move(eval.critical_path)};
}

std::vector<Violation> check_constraints(const QueryDag& dag, const RuntimeScenario& scenario,
                                         const Placement& placement, const ResourcePool& pool) {
  return PlacementEvaluator(dag, scenario, pool).evaluate(placement).violations;
}

Evaluation evaluate(const QueryDag& dag, const RuntimeScenario& scenario,
                    const Placement& placement, const ResourcePool& pool, EvalOptions opts) {
  return PlacementEvaluator(dag, scenario, pool, opts).evaluate(placement);
}

double rate_headroom(const QueryDag& dag, const RuntimeScenario& scenario,
                     const Placement& placement, const ResourcePool& pool) {
  PlacementEvaluator ev(dag, scenario, pool);
  ev.evaluate(placement);  // structural checks
  PlacementEvaluator::Workspace ws;
  std::span<const int> assignment(placement.assignment);
  if (!ev.constraints_ok(assignment, 1.0, ws))
    fail(Errc::InvalidBase, "placement violates constraints at the base rate");

  double lo = 1.0;
  double hi = 2.0;
  while (ev.constraints_ok(assignment, hi, ws)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) return std::numeric_limits<double>::infinity();
  }
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (ev.constraints_ok(assignment, mid, ws) ? lo : hi) = mid;
  }
  return (lo - 1.0) * 100.0;
}

double latency_deviation(std::span<const double> better, std::span<const double> worse) {
  if (better.empty() || better.size() != worse.size())
    fail(Errc::EmptyInput, "latency deviation needs two equal-length nonempty lists");
  double diff = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < better.size(); ++i) {
    diff += worse[i] - better[i];
    mean += better[i];
  }
  mean /= static_cast<double>(better.size());
  return diff / (static_cast<double>(better.size()) * mean) * 100.0;
}

double edge_used_pct(const Placement& placement, const ResourcePool& pool) {
  if (pool.edge_count() == 0) return 0.0;
  std::vector<char> used(pool.edge_count(), 0);
  for (int r : placement.assignment)
    if (r >= 0 && pool.is_edge(r)) used[r] = 1;
  const auto count = std::count(used.begin(), used.end(), char{1});
  return 100.0 * static_cast<double>(count) / static_cast<double>(pool.edge_count());
}

double invalid_pct(std::size_t invalid, std::size_t total) {
  if (total == 0) fail(Errc::EmptyInput, "no runs to aggregate");
  return 100.0 * static_cast<double>(invalid) / static_cast<double>(total);
}

nlohmann::json evaluation_to_json(const QueryDag& dag, const Evaluation& eval) {
  nlohmann::json j;
  j["makespan_ms"] = eval.makespan_s * 1e3;
  j["valid"] = eval.valid;
  j["critical_path"] = nlohmann::json::array();
  for (int v : eval.critical_path) j["critical_path"].push_back(dag.vertex_ids[v]);
  j["violations"] = nlohmann::json::array();
  for (const auto& viol : eval.violations)
    j["violations"].push_back(
        {{"kind", viol.kind == ViolationKind::Throughput ? "throughput" : "energy"},
         {"resource", viol.resource_id},
         {"detail", viol.detail}});
  j["per_resource"] = nlohmann::json::array();
  for (const auto& load : eval.per_resource)
    j["per_resource"].push_back({{"resource", load.resource_id},
                                 {"queries", load.placed},
                                 {"computing", load.computing},
                                 {"consumed_mah", load.consumed_mah}});
  return j;
}

nlohmann::json placement_to_json(const QueryDag& dag, const Placement& placement,
                                 const ResourcePool& pool) {
  nlohmann::json j = nlohmann::json::object();
  for (int v = 0; v < dag.vertex_count(); ++v)
    j[dag.vertex_ids[v]] = pool.id_of(placement.assignment[v]);
  return j;
}

}  // namespace ceplace
