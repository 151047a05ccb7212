#include "ceplace/resource_pool.hpp"

#include "ceplace/errors.hpp"

namespace ceplace {

const char* to_string(PoolSetup s) {
  switch (s) {
    case PoolSetup::Liberal: return "liberal";
    case PoolSetup::Centrist: return "centrist";
    case PoolSetup::Conservative: return "conservative";
  }
  return "unknown";
}

PoolSetup pool_setup_from_string(const std::string& s) {
  if (s == "liberal") return PoolSetup::Liberal;
  if (s == "centrist") return PoolSetup::Centrist;
  if (s == "conservative") return PoolSetup::Conservative;
  fail(Errc::ConfigError, "unknown resource setup '" + s + "'");
}

ResourcePool make_pool(int n_edges, int n_clouds, const EnergyParams& energy) {
  if (n_clouds < 1) fail(Errc::ConfigError, "pool needs at least one cloud VM");
  ResourcePool pool;
  for (int i = 0; i < n_edges; ++i)
    pool.edges.push_back({"edge-" + std::to_string(i), energy.capacity_mah,
                          energy.recharge_period_s, energy.base_load_ma});
  for (int i = 0; i < n_clouds; ++i)
    pool.clouds.push_back({"cloud-" + std::to_string(i)});
  return pool;
}

ResourcePool build_pool(PoolSetup setup, int n_vertices, const EnergyParams& energy) {
  int n_edges = 0;
  switch (setup) {
    case PoolSetup::Liberal: n_edges = n_vertices - 1; break;
    case PoolSetup::Centrist: n_edges = (n_vertices + 1) / 2; break;      // ceil
    case PoolSetup::Conservative: n_edges = (n_vertices + 3) / 4; break;  // ceil
  }
  return make_pool(n_edges, 1, energy);
}

}  // namespace ceplace
