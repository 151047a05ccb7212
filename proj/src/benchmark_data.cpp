#include "ceplace/benchmark_data.hpp"

#include <cmath>
#include <fstream>

#include "ceplace/errors.hpp"

namespace ceplace {
namespace {

void check_monotone(const QuartileDistribution& d, const std::string& what) {
  if (!(d.min <= d.q1 && d.q1 <= d.q2 && d.q2 <= d.q3 && d.q3 <= d.max))
    fail(Errc::NonMonotoneQuartiles, what + " quartiles must be non-decreasing");
}

/// File-unit to SI conversion as an exact pair of factors: si = v * mul /
/// div, serialised back as v = si * div / mul. Keeping one factor at 1.0
/// makes the round trip bit-exact for ordinary decimal inputs.
struct Unit {
  double mul = 1.0;
  double div = 1.0;
  double to_si(double v) const { return v * mul / div; }
  double to_file(double si) const { return si * div / mul; }
};

constexpr Unit kIdentity{1.0, 1.0};
constexpr Unit kMs{1.0, 1000.0};    // milliseconds to seconds
constexpr Unit kMbps{1e6, 1.0};     // megabits/s to bits/s

/// Accepts {"median": m} (expanded around the median by the dataset's
/// quartile spread) or an explicit five-number summary.
QuartileDistribution parse_dist(const nlohmann::json& j, const Unit& unit, double spread,
                                const std::string& what) {
  QuartileDistribution d;
  if (j.contains("median") && !j.contains("q2")) {
    const double m = unit.to_si(j.at("median").get<double>());
    d.q1 = (1.0 - spread) * m;
    d.q2 = m;
    d.q3 = (1.0 + spread) * m;
    d.min = d.q1;
    d.max = d.q3;
  } else {
    d.min = unit.to_si(j.at("min").get<double>());
    d.q1 = unit.to_si(j.at("q1").get<double>());
    d.q2 = unit.to_si(j.at("q2").get<double>());
    d.q3 = unit.to_si(j.at("q3").get<double>());
    d.max = unit.to_si(j.at("max").get<double>());
  }
  check_monotone(d, what);
  return d;
}

nlohmann::json dump_dist(const QuartileDistribution& d, const Unit& unit) {
  return {{"min", unit.to_file(d.min)}, {"q1", unit.to_file(d.q1)}, {"q2", unit.to_file(d.q2)},
          {"q3", unit.to_file(d.q3)},   {"max", unit.to_file(d.max)}};
}

}  // namespace

double sample(const QuartileDistribution& dist, Rng& rng) {
  const bool lower = rng.bernoulli(0.5);
  const double lo = lower ? dist.q1 : dist.q2;
  const double hi = lower ? dist.q2 : dist.q3;
  return rng.real_in(lo, hi);
}

double parallelism_overhead(const OverheadFit& fit, int colocated) {
  if (colocated <= 1) return 0.0;
  return (fit.slope_pct * (colocated - 1) + fit.intercept_pct) / 100.0;
}

double energy_per_event(double query_ma, double base_ma, double rate_eps) {
  if (rate_eps <= 0.0) fail(Errc::NonPositiveRate, "event rate must be positive");
  return (query_ma - base_ma) / (3600.0 * rate_eps);
}

const VariantProfile* BenchmarkDataset::find(const std::string& variant_id) const {
  for (const auto& v : variants)
    if (v.variant.id == variant_id) return &v;
  return nullptr;
}

const VariantProfile& BenchmarkDataset::at(const std::string& variant_id) const {
  const VariantProfile* p = find(variant_id);
  if (!p) fail(Errc::MissingVariant, "variant '" + variant_id + "' not in dataset '" + name + "'");
  return *p;
}

std::vector<QueryVariant> BenchmarkDataset::catalog() const {
  std::vector<QueryVariant> out;
  out.reserve(variants.size());
  for (const auto& v : variants) out.push_back(v.variant);
  return out;
}

std::vector<QueryVariant> BenchmarkDataset::generation_catalog() const {
  std::vector<QueryVariant> out;
  for (const auto& v : variants)
    if (v.generation_eligible) out.push_back(v.variant);
  return out;
}

BenchmarkDataset dataset_from_json(const nlohmann::json& j) {
  BenchmarkDataset ds;
  try {
    ds.name = j.value("name", "");
    ds.base_load_ma = j.value("base_load_ma", 233.0);
    ds.quartile_spread = j.value("quartile_spread", 0.05);

    if (j.contains("overhead_pct")) {
      const auto& o = j.at("overhead_pct");
      ds.edge_overhead = {o.at("edge").at("slope").get<double>(),
                          o.at("edge").at("intercept").get<double>()};
      ds.cloud_overhead = {o.at("cloud").at("slope").get<double>(),
                           o.at("cloud").at("intercept").get<double>()};
    }

    const auto& net = j.at("network");
    ds.latency_edge_edge_s =
        parse_dist(net.at("edge_edge").at("latency_ms"), kMs, ds.quartile_spread,
                   "edge-edge latency");
    ds.bandwidth_edge_edge_bps =
        parse_dist(net.at("edge_edge").at("bandwidth_mbps"), kMbps, ds.quartile_spread,
                   "edge-edge bandwidth");
    ds.latency_edge_cloud_s =
        parse_dist(net.at("edge_cloud").at("latency_ms"), kMs, ds.quartile_spread,
                   "edge-cloud latency");
    ds.bandwidth_edge_cloud_bps =
        parse_dist(net.at("edge_cloud").at("bandwidth_mbps"), kMbps, ds.quartile_spread,
                   "edge-cloud bandwidth");

    for (const auto& vj : j.at("variants")) {
      VariantProfile p;
      p.variant.id = vj.at("id").get<std::string>();
      p.variant.kind = query_kind_from_string(vj.at("kind").get<std::string>());
      p.variant.window_or_pattern_length = vj.value("window_or_pattern_length", 0);
      switch (p.variant.kind) {
        case QueryKind::AggregateBatch:
          if (p.variant.window_or_pattern_length <= 0)
            fail(Errc::ParseError, "variant '" + p.variant.id + "' needs a window length");
          p.variant.selectivity = 1.0 / p.variant.window_or_pattern_length;
          break;
        case QueryKind::AggregateSliding:
          if (p.variant.window_or_pattern_length <= 0)
            fail(Errc::ParseError, "variant '" + p.variant.id + "' needs a window length");
          p.variant.selectivity = 1.0;
          break;
        case QueryKind::Source:
          fail(Errc::ParseError, "datasets may not declare source variants");
        default:
          p.variant.selectivity = vj.at("selectivity").get<double>();
      }
      if (p.variant.selectivity < 0.0)
        fail(Errc::ParseError, "variant '" + p.variant.id + "' has negative selectivity");
      p.variant.out_event_bytes = vj.value("out_event_bytes", 4.0);
      if (p.variant.out_event_bytes <= 0.0)
        fail(Errc::ParseError, "variant '" + p.variant.id + "' needs a positive event size");
      p.generation_eligible = vj.value("eligible", true);
      if (!vj.contains("peak_rate_edge") || !vj.contains("peak_rate_cloud") ||
          !vj.contains("peak_current_ma"))
        fail(Errc::MissingVariant,
             "variant '" + p.variant.id + "' lacks compute or energy entries");
      p.peak_rate_edge = parse_dist(vj.at("peak_rate_edge"), kIdentity, ds.quartile_spread,
                                    p.variant.id + " edge peak rate");
      p.peak_rate_cloud = parse_dist(vj.at("peak_rate_cloud"), kIdentity, ds.quartile_spread,
                                     p.variant.id + " cloud peak rate");
      p.peak_current_ma = parse_dist(vj.at("peak_current_ma"), kIdentity, ds.quartile_spread,
                                     p.variant.id + " peak current");
      if (vj.contains("energy_per_event_override"))
        p.energy_per_event_override = vj.at("energy_per_event_override").get<double>();
      ds.variants.push_back(std::move(p));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("dataset json: ") + e.what());
  }
  if (ds.variants.empty()) fail(Errc::ParseError, "dataset declares no variants");
  return ds;
}

nlohmann::json dataset_to_json(const BenchmarkDataset& ds) {
  nlohmann::json j;
  j["name"] = ds.name;
  j["base_load_ma"] = ds.base_load_ma;
  j["quartile_spread"] = ds.quartile_spread;
  j["overhead_pct"] = {
      {"edge", {{"slope", ds.edge_overhead.slope_pct}, {"intercept", ds.edge_overhead.intercept_pct}}},
      {"cloud",
       {{"slope", ds.cloud_overhead.slope_pct}, {"intercept", ds.cloud_overhead.intercept_pct}}}};
  j["network"] = {
      {"edge_edge",
       {{"latency_ms", dump_dist(ds.latency_edge_edge_s, kMs)},
        {"bandwidth_mbps", dump_dist(ds.bandwidth_edge_edge_bps, kMbps)}}},
      {"edge_cloud",
       {{"latency_ms", dump_dist(ds.latency_edge_cloud_s, kMs)},
        {"bandwidth_mbps", dump_dist(ds.bandwidth_edge_cloud_bps, kMbps)}}}};
  j["variants"] = nlohmann::json::array();
  for (const auto& p : ds.variants) {
    nlohmann::json vj;
    vj["id"] = p.variant.id;
    vj["kind"] = to_string(p.variant.kind);
    if (p.variant.kind != QueryKind::AggregateBatch &&
        p.variant.kind != QueryKind::AggregateSliding)
      vj["selectivity"] = p.variant.selectivity;
    if (p.variant.window_or_pattern_length > 0)
      vj["window_or_pattern_length"] = p.variant.window_or_pattern_length;
    if (p.variant.out_event_bytes != 4.0) vj["out_event_bytes"] = p.variant.out_event_bytes;
    if (!p.generation_eligible) vj["eligible"] = false;
    vj["peak_rate_edge"] = dump_dist(p.peak_rate_edge, kIdentity);
    vj["peak_rate_cloud"] = dump_dist(p.peak_rate_cloud, kIdentity);
    vj["peak_current_ma"] = dump_dist(p.peak_current_ma, kIdentity);
    if (p.energy_per_event_override) vj["energy_per_event_override"] = *p.energy_per_event_override;
    j["variants"].push_back(std::move(vj));
  }
  return j;
}

BenchmarkDataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open dataset file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, "dataset file '" + path + "': " + e.what());
  }
  return dataset_from_json(j);
}

void save_dataset(const BenchmarkDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::ParseError, "cannot write dataset file '" + path + "'");
  out << dataset_to_json(ds).dump(2) << "\n";
}

}  // namespace ceplace
