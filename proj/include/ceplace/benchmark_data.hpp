#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ceplace/query_dag.hpp"
#include "ceplace/rng.hpp"

namespace ceplace {

class Rng;

enum class ResourceClass { Edge, Cloud };

/// Five-number summary of a measured quantity. Sampling only ever draws from
/// the inter-quartile halves [q1,q2] and [q2,q3].
struct QuartileDistribution {
  double min = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;  // median
  double q3 = 0.0;
  double max = 0.0;

  bool operator==(const QuartileDistribution&) const = default;
};

/// Picks one of the two quartile ranges with equal chance, then a uniform
/// value within it. Results always lie in [q1, q3].
double sample(const QuartileDistribution& dist, Rng& rng);

/// Linear fit of the throughput penalty for m co-located queries, as a
/// percentage: pi_m = slope * (m - 1) + intercept.
struct OverheadFit {
  double slope_pct = 0.0;
  double intercept_pct = 0.0;

  bool operator==(const OverheadFit&) const = default;
};

/// Throughput penalty as a fraction <= 0. An exclusively placed query (m = 1)
/// pays no penalty; the fitted intercept applies only from m = 2.
double parallelism_overhead(const OverheadFit& fit, int colocated);

/// Incremental energy per processed event in mAh, from the total current draw
/// under load and the idle base load, both in mA, at the given event rate.
double energy_per_event(double query_ma, double base_ma, double rate_eps);

/// Measured behaviour of one query variant: peak sustainable input rates per
/// resource class (events/s) and total current draw at peak on the edge (mA).
struct VariantProfile {
  QueryVariant variant;
  bool generation_eligible = true;
  QuartileDistribution peak_rate_edge;
  QuartileDistribution peak_rate_cloud;
  QuartileDistribution peak_current_ma;
  std::optional<double> energy_per_event_override;  // mAh/event

  bool operator==(const VariantProfile&) const = default;
};

/// Benchmark distributions backing a simulation: per-variant compute and
/// energy, network profiles per class pair, base load, and the parallelism
/// overhead fits. Internally everything is SI (seconds, events/s, bits/s,
/// mAh); dataset files use ms, events/s, Mbps and mA.
struct BenchmarkDataset {
  std::string name;
  double base_load_ma = 233.0;
  double quartile_spread = 0.05;  // used when a file gives only a median

  std::vector<VariantProfile> variants;

  QuartileDistribution latency_edge_edge_s;
  QuartileDistribution latency_edge_cloud_s;
  QuartileDistribution bandwidth_edge_edge_bps;
  QuartileDistribution bandwidth_edge_cloud_bps;

  OverheadFit edge_overhead{-1.12, -5.68};
  OverheadFit cloud_overhead{-0.35, -3.80};

  const VariantProfile* find(const std::string& variant_id) const;
  const VariantProfile& at(const std::string& variant_id) const;  // throws MissingVariant
  const OverheadFit& overhead(ResourceClass c) const {
    return c == ResourceClass::Edge ? edge_overhead : cloud_overhead;
  }

  /// Variant definitions, for resolving dag files.
  std::vector<QueryVariant> catalog() const;
  /// Variants the random dag generator may assign.
  std::vector<QueryVariant> generation_catalog() const;

  bool operator==(const BenchmarkDataset&) const = default;
};

BenchmarkDataset dataset_from_json(const nlohmann::json& j);
nlohmann::json dataset_to_json(const BenchmarkDataset& ds);

BenchmarkDataset load_dataset(const std::string& path);
void save_dataset(const BenchmarkDataset& ds, const std::string& path);

}  // namespace ceplace
