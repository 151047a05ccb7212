#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "ceplace/benchmark_data.hpp"
#include "ceplace/errors.hpp"
#include "helpers.hpp"

using namespace ceplace;
using testutil::campus;
using testutil::planetlab;

namespace {

/// CDF of the sampling rule: half the mass uniform on [q1,q2], half on
/// [q2,q3].
double mixture_cdf(const QuartileDistribution& d, double x) {
  if (x <= d.q1) return 0.0;
  if (x >= d.q3) return 1.0;
  if (x <= d.q2) return 0.5 * (x - d.q1) / (d.q2 - d.q1);
  return 0.5 + 0.5 * (x - d.q2) / (d.q3 - d.q2);
}

}  // namespace

TEST_CASE("bundled campus dataset carries the benchmark medians") {
  const BenchmarkDataset& ds = campus();
  CHECK(ds.latency_edge_cloud_s.q2 == doctest::Approx(76.77e-3));
  CHECK(ds.at("Fil 1.0").peak_rate_edge.q2 == doctest::Approx(114334.0));
  CHECK(ds.at("Fil 1.0").peak_rate_cloud.q2 == doctest::Approx(337357.0));
  CHECK(ds.base_load_ma == doctest::Approx(233.0));
  CHECK(ds.edge_overhead.slope_pct == doctest::Approx(-1.12));
  CHECK(ds.edge_overhead.intercept_pct == doctest::Approx(-5.68));
  CHECK(ds.cloud_overhead.slope_pct == doctest::Approx(-0.35));
  CHECK(ds.cloud_overhead.intercept_pct == doctest::Approx(-3.80));
  CHECK(ds.variants.size() == 21);
  CHECK(ds.generation_catalog().size() == 17);
  // Batch aggregation selectivity comes from the window length.
  CHECK(ds.at("Agg B 60").variant.selectivity == doctest::Approx(1.0 / 60.0));
  CHECK(ds.at("Agg S 600").variant.selectivity == 1.0);
}

TEST_CASE("planetlab dataset shares compute but differs on the network") {
  const BenchmarkDataset& pl = planetlab();
  CHECK(pl.at("Fil 1.0").peak_rate_edge.q2 == campus().at("Fil 1.0").peak_rate_edge.q2);
  CHECK(pl.latency_edge_cloud_s.q2 > campus().latency_edge_cloud_s.q2);
  CHECK(pl.bandwidth_edge_edge_bps.q2 < campus().bandwidth_edge_edge_bps.q2);
}

TEST_CASE("non-monotone quartiles are rejected") {
  nlohmann::json j = dataset_to_json(campus());
  j["network"]["edge_edge"]["latency_ms"] = {
      {"min", 1.0}, {"q1", 9.0}, {"q2", 5.0}, {"q3", 3.0}, {"max", 10.0}};
  try {
    dataset_from_json(j);
    FAIL("expected NonMonotoneQuartiles");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonMonotoneQuartiles);
  }
}

TEST_CASE("missing compute entries are rejected") {
  nlohmann::json j = dataset_to_json(campus());
  j["variants"][0].erase("peak_rate_cloud");
  try {
    dataset_from_json(j);
    FAIL("expected MissingVariant");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingVariant);
  }
}

TEST_CASE("unknown variant lookups fail") {
  try {
    campus().at("Fil 9.9");
    FAIL("expected MissingVariant");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingVariant);
  }
}

TEST_CASE("dataset round-trip is the identity") {
  const BenchmarkDataset& ds = campus();
  const BenchmarkDataset again = dataset_from_json(dataset_to_json(ds));
  CHECK(again == ds);
  const BenchmarkDataset& pl = planetlab();
  CHECK(dataset_from_json(dataset_to_json(pl)) == pl);
}

TEST_CASE("sampling a degenerate distribution returns the point") {
  QuartileDistribution d{5, 5, 5, 5, 5};
  Rng rng(1);
  for (int i = 0; i < 100; ++i) CHECK(sample(d, rng) == doctest::Approx(5.0));
}

TEST_CASE("samples stay within the quartile range and split at the median") {
  QuartileDistribution d{10, 10, 20, 40, 40};
  Rng rng(42);
  const int n = 100000;
  int below = 0;
  for (int i = 0; i < n; ++i) {
    const double x = sample(d, rng);
    REQUIRE(x >= 10.0);
    REQUIRE(x <= 40.0);
    if (x < 20.0) ++below;
  }
  CHECK(std::abs(below / static_cast<double>(n) - 0.5) < 0.02);
}

TEST_CASE("sampling is deterministic per seed") {
  QuartileDistribution d{1, 2, 3, 5, 8};
  Rng a(99), b(99);
  for (int i = 0; i < 1000; ++i) CHECK(sample(d, a) == sample(d, b));
}

TEST_CASE("empirical distribution matches the two-half mixture") {
  // Kolmogorov-Smirnov against the piecewise-uniform CDF at alpha = 0.01.
  QuartileDistribution d{0.31e-3, 4.826e-3, 5.08e-3, 5.334e-3, 80e-3};
  Rng rng(7);
  const int n = 100000;
  std::vector<double> xs(n);
  for (auto& x : xs) x = sample(d, rng);
  std::sort(xs.begin(), xs.end());
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = mixture_cdf(d, xs[i]);
    worst = std::max(worst, std::abs(f - (i + 1.0) / n));
    worst = std::max(worst, std::abs(f - static_cast<double>(i) / n));
  }
  CHECK(worst < 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("energy per event from current draw") {
  CHECK(energy_per_event(337.04, 233.0, 114334.0) ==
        doctest::Approx((337.04 - 233.0) / (3600.0 * 114334.0)).epsilon(1e-12));
  CHECK(energy_per_event(337.04, 233.0, 114334.0) == doctest::Approx(2.528e-7).epsilon(1e-3));
  CHECK(energy_per_event(233.0, 233.0, 1000.0) == 0.0);
  CHECK(energy_per_event(393.0, 233.0, 100.0) == doctest::Approx(4.444e-4).epsilon(1e-3));
  CHECK_THROWS_AS(energy_per_event(300.0, 233.0, 0.0), Error);
}

TEST_CASE("parallelism overhead values") {
  const OverheadFit edge{-1.12, -5.68};
  const OverheadFit cloud{-0.35, -3.80};
  CHECK(parallelism_overhead(edge, 1) == 0.0);
  CHECK(parallelism_overhead(edge, 2) == doctest::Approx(-0.068));
  CHECK(parallelism_overhead(cloud, 3) == doctest::Approx(-0.045));
}

TEST_CASE("parallelism overhead never increases with co-location") {
  for (const OverheadFit& fit : {campus().edge_overhead, campus().cloud_overhead}) {
    double prev = parallelism_overhead(fit, 1);
    CHECK(prev == 0.0);
    for (int m = 2; m <= 16; ++m) {
      const double cur = parallelism_overhead(fit, m);
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}
