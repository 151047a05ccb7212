#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ceplace {

enum class QueryKind { Source, Filter, Sequence, Pattern, AggregateBatch, AggregateSliding };

const char* to_string(QueryKind k);
QueryKind query_kind_from_string(const std::string& s);

/// One query configuration: the unit placed on a vertex of the dataflow.
/// Selectivity is the average number of output events per input event.
struct QueryVariant {
  std::string id;
  QueryKind kind = QueryKind::Filter;
  double selectivity = 1.0;
  int window_or_pattern_length = 0;  // 0 = not applicable
  double out_event_bytes = 4.0;      // d_i

  bool operator==(const QueryVariant&) const = default;
};

/// The built-in no-op generator assigned to source vertices. It forwards
/// events unchanged and consumes no compute or energy.
const QueryVariant& source_variant();

/// Dataflow of CEP queries. Vertices are kept in construction order, which is
/// the canonical index used by rate maps, scenarios and placements.
/// Sources are the in-degree-0 vertices; sinks are the vertices whose output
/// leaves the dataflow (by default those with no out-edges).
struct QueryDag {
  std::vector<std::string> vertex_ids;
  std::vector<QueryVariant> variants;        // aligned with vertex_ids
  std::vector<std::pair<int, int>> edges;    // (from, to) vertex indices
  std::vector<int> sources;                  // ascending vertex indices
  std::vector<int> sinks;                    // ascending vertex indices

  std::vector<std::vector<int>> out_adj;
  std::vector<std::vector<int>> in_adj;

  int vertex_count() const { return static_cast<int>(vertex_ids.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  bool is_source(int v) const;
  bool is_sink(int v) const;
  int index_of(const std::string& id) const;  // -1 when absent
};

/// Assembles a dag from (id, variant) pairs and id-based edges. Sinks default
/// to the out-degree-0 vertices; pass explicit ids to mark additional ones.
QueryDag make_query_dag(std::vector<std::pair<std::string, QueryVariant>> vertices,
                        const std::vector<std::pair<std::string, std::string>>& edges,
                        const std::vector<std::string>& explicit_sinks = {});

/// Structural checks: acyclicity, nonempty source and sink sets, sources with
/// in-degree 0 and unit selectivity, and a source-to-sink path through every
/// vertex. Throws Error with CyclicGraph / OrphanVertex / EmptySourceOrSink.
void validate_dag(const QueryDag& dag);

/// Vertex indices in a topological order. Throws CyclicGraph.
std::vector<int> topological_order(const QueryDag& dag);

/// Event rates per vertex for a given dataflow input rate.
struct RateMap {
  std::vector<double> in_rate;   // events/s per vertex
  std::vector<double> out_rate;  // events/s per vertex
  double dag_in = 0.0;
  double dag_out = 0.0;
  double dag_selectivity = 0.0;
};

/// One topological pass. Each out-edge carries the full output stream
/// (duplicate semantics); in-edges merge additively (interleave semantics).
/// Multiple sources split the input rate evenly.
RateMap propagate_rates(const QueryDag& dag, double omega_in);

/// All maximal source-to-sink vertex sequences. Intended for small dags;
/// throws PathExplosion beyond max_paths.
std::vector<std::vector<int>> enumerate_paths(const QueryDag& dag,
                                              std::size_t max_paths = 1u << 20);

/// File format: {"vertices":[{"id","variant"}], "edges":[[from,to]],
/// "sinks": [ids] (optional)}. Variant ids are resolved against the given
/// catalog; "Src" resolves to the built-in source variant.
QueryDag dag_from_json(const nlohmann::json& j, const std::vector<QueryVariant>& catalog);
nlohmann::json dag_to_json(const QueryDag& dag);

QueryDag load_dag(const std::string& path, const std::vector<QueryVariant>& catalog);
void save_dag(const QueryDag& dag, const std::string& path);

}  // namespace ceplace
