#pragma once
#include <cstdint>
#include <vector>

#include "axsat/config.hpp"
#include "axsat/engine.hpp"

namespace axsat::sim {

struct SimConfig {
  cfg::WlanConfig wlan;
  std::uint64_t seed = 1;
  double sim_time_s = 10.0;
  int replications = 20;
};

// Slot outcome classes, mirroring the analytical slot distribution.
enum SlotClass {
  kEmpty = 0,
  kSuDl,
  kSuUl,
  kMuDl,
  kMuUl,
  kColApSu,
  kColApMuDl,
  kColApMuUl,
  kColSta,
  kSlotClassCount
};

struct SimResult {
  double s_d_mbps = 0;  // mean over replications
  double s_u_mbps = 0;
  double s_d_std = 0;   // sample std over replications
  double s_u_std = 0;

  // Totals across all replications.
  std::int64_t slots = 0;  // contention slots; sounding rounds excluded
  std::int64_t counts[kSlotClassCount] = {};
  double air_empty_us = 0;
  double air_success_us = 0;
  double air_collision_us = 0;
  double air_sounding_us = 0;
  double duration_us = 0;
  std::vector<std::int64_t> served;  // MU selections per station id

  // Empirical attempt and collision rates.
  double tau_ap_hat = 0;
  double tau_sta_hat = 0;
  double pc_ap_hat = 0;
  double pc_sta_hat = 0;

  int replications = 0;
};

// One execution with the configured seed (replications field is ignored).
SimResult run(const SimConfig& sc);

// sc.replications independent executions with seeds derived from sc.seed.
SimResult run_replicated(const SimConfig& sc);

}  // namespace axsat::sim
