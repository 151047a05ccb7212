#pragma once

#include <string>
#include <vector>

#include "ceplace/benchmark_data.hpp"

namespace ceplace {

struct EdgeDevice {
  std::string id;
  double capacity_mah = 8600.0;       // C_k
  double recharge_period_s = 86400.0; // tau_k
  double base_load_ma = 233.0;        // mu_B
};

struct CloudVm {
  std::string id;
};

/// The machines a placement may use. Resource indices are global: edges first
/// (0 .. edge_count-1), then cloud VMs.
struct ResourcePool {
  std::vector<EdgeDevice> edges;
  std::vector<CloudVm> clouds;

  int size() const { return static_cast<int>(edges.size() + clouds.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int cloud_count() const { return static_cast<int>(clouds.size()); }
  bool is_edge(int r) const { return r < edge_count(); }
  ResourceClass class_of(int r) const {
    return is_edge(r) ? ResourceClass::Edge : ResourceClass::Cloud;
  }
  const std::string& id_of(int r) const {
    return is_edge(r) ? edges[r].id : clouds[r - edge_count()].id;
  }
};

enum class PoolSetup { Liberal, Centrist, Conservative };

const char* to_string(PoolSetup s);
PoolSetup pool_setup_from_string(const std::string& s);

struct EnergyParams {
  double capacity_mah = 8600.0;
  double recharge_period_s = 86400.0;
  double base_load_ma = 233.0;
};

/// One cloud VM plus an edge fleet sized from the dag: |V|-1 edges (liberal),
/// ceil(|V|/2) (centrist) or ceil(|V|/4) (conservative). Ids are stable
/// ("edge-0", ..., "cloud-0").
ResourcePool build_pool(PoolSetup setup, int n_vertices, const EnergyParams& energy = {});

/// Pool with an explicit edge count, for hand-built experiments.
ResourcePool make_pool(int n_edges, int n_clouds = 1, const EnergyParams& energy = {});

}  // namespace ceplace
