#pragma once
#include <random>
#include <vector>

#include "axsat/phy.hpp"

namespace axsat::sched {

struct AntennaConfig {
  int m_ap = 8;   // AP antennas = max spatial streams per RU
  int m_sta = 4;  // station antennas
};

// Amendment-dependent multi-user limits. 11ax allows OFDMA subchannels and
// MU-MIMO groups as large as the AP antenna count; 11ac has no OFDMA and
// caps a MU-MIMO group at 4 users.
struct AllocationPolicy {
  int max_users_per_ru = 8;
  bool allow_ofdma = true;

  static AllocationPolicy for_amendment(phy::Amendment a, const AntennaConfig& ant);
};

struct RuAllocation {
  int v_u = 0;       // users served per MU transmission
  int n_ru = 1;      // equal-width RUs the channel is split into
  int b_ru_mhz = 0;  // width of each RU
  int v_m = 0;       // users multiplexed per RU (MU-MIMO)
  int v_s = 1;       // spatial streams per served user
};

// Split the channel for a MU transmission serving as many of the n
// associated stations as the antenna budget allows.
RuAllocation allocate_mu(int n, const AntennaConfig& ant, int b_mhz,
                         const AllocationPolicy& policy);

int su_streams(const AntennaConfig& ant);  // min(m_sta, m_ap)

// Uniformly random v_u-subset of station ids {1..n}; sorted ascending.
std::vector<int> pick_stations(int n, int v_u, std::mt19937_64& rng);

}  // namespace axsat::sched
