#include "ceplace/query_dag.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "ceplace/errors.hpp"

namespace ceplace {

const char* to_string(QueryKind k) {
  switch (k) {
    case QueryKind::Source: return "source";
    case QueryKind::Filter: return "filter";
    case QueryKind::Sequence: return "sequence";
    case QueryKind::Pattern: return "pattern";
    case QueryKind::AggregateBatch: return "aggregate_batch";
    case QueryKind::AggregateSliding: return "aggregate_sliding";
  }
  return "unknown";
}

QueryKind query_kind_from_string(const std::string& s) {
  if (s == "source") return QueryKind::Source;
  if (s == "filter") return QueryKind::Filter;
  if (s == "sequence") return QueryKind::Sequence;
  if (s == "pattern") return QueryKind::Pattern;
  if (s == "aggregate_batch") return QueryKind::AggregateBatch;
  if (s == "aggregate_sliding") return QueryKind::AggregateSliding;
  fail(Errc::ParseError, "unknown query kind '" + s + "'");
}

const QueryVariant& source_variant() {
  static const QueryVariant v{"Src", QueryKind::Source, 1.0, 0, 4.0};
  return v;
}

bool QueryDag::is_source(int v) const {
  return std::binary_search(sources.begin(), sources.end(), v);
}

bool QueryDag::is_sink(int v) const {
  return std::binary_search(sinks.begin(), sinks.end(), v);
}

int QueryDag::index_of(const std::string& id) const {
  for (int i = 0; i < vertex_count(); ++i)
    if (vertex_ids[i] == id) return i;
  return -1;
}

QueryDag make_query_dag(std::vector<std::pair<std::string, QueryVariant>> vertices,
                        const std::vector<std::pair<std::string, std::string>>& edges,
                        const std::vector<std::string>& explicit_sinks) {
  QueryDag dag;
  std::unordered_map<std::string, int> index;
  for (auto& [id, variant] : vertices) {
    if (index.count(id)) fail(Errc::ParseError, "duplicate vertex id '" + id + "'");
    index[id] = dag.vertex_count();
    dag.vertex_ids.push_back(id);
    dag.variants.push_back(std::move(variant));
  }
  const int n = dag.vertex_count();
  dag.out_adj.resize(n);
  dag.in_adj.resize(n);
  for (const auto& [from, to] : edges) {
    auto fi = index.find(from);
    auto ti = index.find(to);
    if (fi == index.end() || ti == index.end())
      fail(Errc::ParseError, "edge references unknown vertex '" +
                                 (fi == index.end() ? from : to) + "'");
    dag.edges.emplace_back(fi->second, ti->second);
    dag.out_adj[fi->second].push_back(ti->second);
    dag.in_adj[ti->second].push_back(fi->second);
  }
  for (int v = 0; v < n; ++v)
    if (dag.in_adj[v].empty()) dag.sources.push_back(v);
  for (int v = 0; v < n; ++v)
    if (dag.out_adj[v].empty()) dag.sinks.push_back(v);
  for (const auto& id : explicit_sinks) {
    auto it = index.find(id);
    if (it == index.end()) fail(Errc::ParseError, "sink references unknown vertex '" + id + "'");
    if (!std::binary_search(dag.sinks.begin(), dag.sinks.end(), it->second))
      dag.sinks.push_back(it->second);
  }
  std::sort(dag.sinks.begin(), dag.sinks.end());
  return dag;
}

std::vector<int> topological_order(const QueryDag& dag) {
  const int n = dag.vertex_count();
  std::vector<int> indegree(n, 0);
  for (const auto& [from, to] : dag.edges) {
    (void)from;
    ++indegree[to];
  }
  std::vector<int> order;
  order.reserve(n);
  std::queue<int> ready;
  for (int v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop();
    order.push_back(v);
    for (int w : dag.out_adj[v])
      if (--indegree[w] == 0) ready.push(w);
  }
  if (static_cast<int>(order.size()) != n)
    fail(Errc::CyclicGraph, "dataflow contains a cycle");
  return order;
}

void validate_dag(const QueryDag& dag) {
  const auto order = topological_order(dag);  // throws on cycles
  if (dag.sources.empty() || dag.sinks.empty())
    fail(Errc::EmptySourceOrSink, "dataflow needs at least one source and one sink");
  for (int s : dag.sources) {
    if (dag.variants[s].selectivity != 1.0)
      fail(Errc::ParseError,
           "source vertex '" + dag.vertex_ids[s] + "' must be a no-op with selectivity 1");
  }
  for (int s : dag.sinks) {
    if (dag.is_source(s))
      fail(Errc::OrphanVertex,
           "vertex '" + dag.vertex_ids[s] + "' is both source and sink");
  }

  const int n = dag.vertex_count();
  // Forward pass: reachable from some source. Backward: reaches some sink.
  std::vector<char> from_src(n, 0), to_snk(n, 0);
  for (int s : dag.sources) from_src[s] = 1;
  for (int v : order)
    if (from_src[v])
      for (int w : dag.out_adj[v]) from_src[w] = 1;
  for (int s : dag.sinks) to_snk[s] = 1;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (to_snk[*it])
      for (int u : dag.in_adj[*it]) to_snk[u] = 1;
  for (int v = 0; v < n; ++v)
    if (!from_src[v] || !to_snk[v])
      fail(Errc::OrphanVertex,
           "vertex '" + dag.vertex_ids[v] + "' lies on no source-to-sink path");
}

RateMap propagate_rates(const QueryDag& dag, double omega_in) {
  if (omega_in <= 0.0) fail(Errc::NonPositiveRate, "dataflow input rate must be positive");
  const int n = dag.vertex_count();
  RateMap rates;
  rates.in_rate.assign(n, 0.0);
  rates.out_rate.assign(n, 0.0);
  rates.dag_in = omega_in;

  const double per_source = omega_in / static_cast<double>(dag.sources.size());
  for (int v : topological_order(dag)) {
    if (dag.is_source(v)) {
      rates.in_rate[v] = per_source;
      rates.out_rate[v] = per_source;
    } else {
      double in = 0.0;
      for (int u : dag.in_adj[v]) in += rates.out_rate[u];
      rates.in_rate[v] = in;
      rates.out_rate[v] = in * dag.variants[v].selectivity;
    }
  }
  for (int s : dag.sinks) rates.dag_out += rates.out_rate[s];
  rates.dag_selectivity = rates.dag_out / rates.dag_in;
  return rates;
}

std::vector<std::vector<int>> enumerate_paths(const QueryDag& dag, std::size_t max_paths) {
  std::vector<std::vector<int>> paths;
  std::vector<int> current;
  std::function<void(int)> walk = [&](int v) {
    current.push_back(v);
    if (dag.is_sink(v)) {
      if (paths.size() >= max_paths)
        fail(Errc::PathExplosion, "path count exceeds cap of " + std::to_string(max_paths));
      paths.push_back(current);
    }
    for (int w : dag.out_adj[v]) walk(w);
    current.pop_back();
  };
  for (int s : dag.sources) walk(s);
  return paths;
}

QueryDag dag_from_json(const nlohmann::json& j, const std::vector<QueryVariant>& catalog) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    fail(Errc::ParseError, "dag json needs 'vertices' and 'edges'");
  auto lookup = [&](const std::string& id) -> const QueryVariant& {
    for (const auto& v : catalog)
      if (v.id == id) return v;
    if (id == source_variant().id) return source_variant();
    fail(Errc::MissingVariant, "variant '" + id + "' not in dataset");
  };
  std::vector<std::pair<std::string, QueryVariant>> vertices;
  for (const auto& v : j.at("vertices"))
    vertices.emplace_back(v.at("id").get<std::string>(),
                          lookup(v.at("variant").get<std::string>()));
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.at("edges"))
    edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  std::vector<std::string> sinks;
  if (j.contains("sinks"))
    for (const auto& s : j.at("sinks")) sinks.push_back(s.get<std::string>());
  return make_query_dag(std::move(vertices), edges, sinks);
}

nlohmann::json dag_to_json(const QueryDag& dag) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (int v = 0; v < dag.vertex_count(); ++v)
    j["vertices"].push_back({{"id", dag.vertex_ids[v]}, {"variant", dag.variants[v].id}});
  j["edges"] = nlohmann::json::array();
  for (const auto& [from, to] : dag.edges)
    j["edges"].push_back({dag.vertex_ids[from], dag.vertex_ids[to]});
  // Only sinks that are not implied by the topology need recording.
  nlohmann::json extra = nlohmann::json::array();
  for (int s : dag.sinks)
    if (!dag.out_adj[s].empty()) extra.push_back(dag.vertex_ids[s]);
  if (!extra.empty()) j["sinks"] = extra;
  return j;
}

QueryDag load_dag(const std::string& path, const std::vector<QueryVariant>& catalog) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open dag file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, "dag file '" + path + "': " + e.what());
  }
  return dag_from_json(j, catalog);
}

void save_dag(const QueryDag& dag, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::ParseError, "cannot write dag file '" + path + "'");
  out << dag_to_json(dag).dump(2) << "\n";
}

}  // namespace ceplace
