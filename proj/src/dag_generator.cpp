#include "ceplace/dag_generator.hpp"

#include <algorithm>
#include <array>

#include "ceplace/errors.hpp"

namespace ceplace {
namespace {

constexpr std::array<QueryKind, 5> kPlaceableKinds = {
    QueryKind::Filter, QueryKind::Sequence, QueryKind::Pattern, QueryKind::AggregateBatch,
    QueryKind::AggregateSliding};

}  // namespace

QueryDag generate_dag(const DagGenConfig& cfg, const BenchmarkDataset& dataset, Rng& rng) {
  if (cfg.n_vertices < 4) fail(Errc::UnsatisfiableShape, "need at least 4 vertices");
  if (cfg.n_sources < 1 || cfg.n_sources >= cfg.n_vertices)
    fail(Errc::UnsatisfiableShape, "source count must be in [1, vertices)");
  if (cfg.max_out_degree < 1) fail(Errc::UnsatisfiableShape, "max out-degree must be positive");

  const int n = cfg.n_vertices;
  const int s = cfg.n_sources;

  // Variants the generator may assign, bucketed by kind.
  std::array<std::vector<const QueryVariant*>, kPlaceableKinds.size()> by_kind;
  const auto eligible = dataset.generation_catalog();
  for (const auto& v : eligible)
    for (std::size_t k = 0; k < kPlaceableKinds.size(); ++k)
      if (v.kind == kPlaceableKinds[k]) by_kind[k].push_back(&v);
  for (std::size_t k = 0; k < kPlaceableKinds.size(); ++k)
    if (by_kind[k].empty())
      fail(Errc::UnsatisfiableShape,
           std::string("dataset has no eligible variant of kind ") +
               to_string(kPlaceableKinds[k]));

  // Positions 0..s-1 are the sources; the rest is a random topological order.
  // Edges only ever point forward in this order, so the graph is acyclic.
  std::vector<int> out_deg(n, 0);
  std::vector<std::vector<char>> has_edge(n, std::vector<char>(n, 0));
  std::vector<std::pair<int, int>> edges;  // positions

  auto add_edge = [&](int u, int w) {
    edges.emplace_back(u, w);
    has_edge[u][w] = 1;
    ++out_deg[u];
  };

  // Spanning pass: each non-source picks one earlier vertex with spare
  // out-degree, which keeps every vertex reachable from a source.
  for (int w = s; w < n; ++w) {
    std::vector<int> candidates;
    for (int u = 0; u < w; ++u)
      if (out_deg[u] < cfg.max_out_degree) candidates.push_back(u);
    if (candidates.empty()) fail(Errc::UnsatisfiableShape, "out-degree cap too tight");
    add_edge(candidates[rng.below(candidates.size())], w);
  }
  // A source nobody picked still has to feed the dataflow.
  for (int u = 0; u < s; ++u) {
    if (out_deg[u] > 0) continue;
    std::vector<int> candidates;
    for (int w = s; w < n; ++w)
      if (!has_edge[u][w]) candidates.push_back(w);
    add_edge(u, candidates[rng.below(candidates.size())]);
  }

  // Density pass: forward edges up to a per-vertex target drawn from
  // [1, max_out_degree]. Each edge slot is accepted with the configured
  // probability, so late-order vertices that nobody targets become sinks.
  for (int u = 0; u < n; ++u) {
    const int target = 1 + static_cast<int>(rng.below(cfg.max_out_degree));
    std::vector<int> candidates;
    for (int w = std::max(u + 1, s); w < n; ++w)
      if (!has_edge[u][w]) candidates.push_back(w);
    while (out_deg[u] < target && !candidates.empty()) {
      if (rng.bernoulli(cfg.extra_edge_prob)) {
        const std::size_t pick = rng.below(candidates.size());
        add_edge(u, candidates[pick]);
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
      } else {
        break;
      }
    }
  }

  // Assign queries: a uniform kind, then a uniform eligible variant of it.
  std::vector<std::pair<std::string, QueryVariant>> vertices;
  vertices.reserve(n);
  for (int i = 0; i < s; ++i)
    vertices.emplace_back("src" + std::to_string(i), source_variant());
  for (int i = s; i < n; ++i) {
    const auto& bucket = by_kind[rng.below(kPlaceableKinds.size())];
    vertices.emplace_back("q" + std::to_string(i), *bucket[rng.below(bucket.size())]);
  }

  std::vector<std::pair<std::string, std::string>> edge_ids;
  edge_ids.reserve(edges.size());
  for (const auto& [u, w] : edges)
    edge_ids.emplace_back(vertices[u].first, vertices[w].first);

  QueryDag dag = make_query_dag(std::move(vertices), edge_ids);
  validate_dag(dag);
  return dag;
}

std::optional<ScreenReject> screen_dag(const QueryDag& dag, const BenchmarkDataset& dataset,
                                       double omega_in) {
  const RateMap rates = propagate_rates(dag, omega_in);
  for (int v = 0; v < dag.vertex_count(); ++v) {
    if (dag.is_source(v)) continue;
    const double cloud_q3 = dataset.at(dag.variants[v].id).peak_rate_cloud.q3;
    if (rates.in_rate[v] > cloud_q3)
      return ScreenReject{ScreenReject::Reason::RateTooHigh,
                          "'" + dag.vertex_ids[v] + "' needs " + std::to_string(rates.in_rate[v]) +
                              " e/s, above the cloud q3 of " + std::to_string(cloud_q3)};
  }
  if (rates.dag_selectivity == 0.0)
    return ScreenReject{ScreenReject::Reason::ZeroSelectivity,
                        "dataflow selectivity is zero"};
  return std::nullopt;
}

QueryDag generate_screened_dag(const DagGenConfig& cfg, const BenchmarkDataset& dataset,
                               Rng& rng) {
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    QueryDag dag = generate_dag(cfg, dataset, rng);
    if (!screen_dag(dag, dataset)) return dag;
  }
  fail(Errc::GiveUp,
       "no dag passed the screens in " + std::to_string(cfg.max_attempts) + " attempts");
}

std::vector<SuiteEntry> suite_manifest(std::uint64_t master_seed, const std::vector<int>& sizes,
                                       int instances) {
  std::vector<SuiteEntry> entries;
  Rng rng(mix_seed(master_seed, hash64("suite")));
  std::uint64_t counter = 0;
  for (int size : sizes) {
    for (int sources : {1, 4}) {
      if (sources >= size) continue;
      if (sources == 4 && size < 10) continue;  // multi-stream dags start at 10 vertices
      for (int instance = 1; instance <= instances; ++instance) {
        SuiteEntry e;
        e.id = std::to_string(size) + "_" + std::to_string(sources) + "_" +
               std::to_string(instance);
        e.cfg.n_vertices = size;
        e.cfg.n_sources = sources;
        e.cfg.max_out_degree = 1 + static_cast<int>(rng.below(5));
        e.seed = mix_seed(master_seed, ++counter);
        entries.push_back(std::move(e));
      }
    }
  }
  return entries;
}

}  // namespace ceplace
