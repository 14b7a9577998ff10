#include "axsat/scheduler.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "axsat/error.hpp"

namespace axsat::sched {

AllocationPolicy AllocationPolicy::for_amendment(phy::Amendment a, const AntennaConfig& ant) {
  AllocationPolicy p;
  if (a == phy::Amendment::Ac) {
    p.max_users_per_ru = std::min(ant.m_ap, 4);
    p.allow_ofdma = false;
  } else {
    p.max_users_per_ru = ant.m_ap;
    p.allow_ofdma = true;
  }
  return p;
}

RuAllocation allocate_mu(int n, const AntennaConfig& ant, int b_mhz,
                         const AllocationPolicy& policy) {
  if (n < 1) throw std::invalid_argument("allocate_mu: need at least one station");
  if (ant.m_ap < 1 || ant.m_sta < 1)
    throw ConfigError("antenna counts must be >= 1");
  if (b_mhz != 20 && b_mhz != 40 && b_mhz != 80 && b_mhz != 160)
    throw ConfigError("unsupported channel width: " + std::to_string(b_mhz) + " MHz");
  if (policy.max_users_per_ru < 1)
    throw ConfigError("allocation policy must admit at least one user per RU");

  RuAllocation out;
  const int cap = policy.max_users_per_ru;
  if (n < cap) {
    // Everyone fits in one MU-MIMO group on the full channel.
    out.v_u = n;
    out.n_ru = 1;
    out.v_m = n;
  } else {
    // Widest split whose RU count keeps every RU fully loaded with cap
    // users. RU widths are restricted to the standard channel widths, so
    // n_ru never exceeds b/20.
    int n_ru = 1;
    if (policy.allow_ofdma) {
      for (int k : {8, 4, 2}) {
        if (k * 20 <= b_mhz && cap * k <= n) {
          n_ru = k;
          break;
        }
      }
    }
    out.n_ru = n_ru;
    out.v_m = cap;
    out.v_u = cap * n_ru;
  }
  out.b_ru_mhz = b_mhz / out.n_ru;
  out.v_s = std::min(ant.m_sta, ant.m_ap / out.v_m);
  return out;
}

int su_streams(const AntennaConfig& ant) { return std::min(ant.m_sta, ant.m_ap); }

std::vector<int> pick_stations(int n, int v_u, std::mt19937_64& rng) {
  if (v_u < 0 || v_u > n) throw std::invalid_argument("pick_stations: v_u out of range");
  std::vector<int> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), 1);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(v_u));
  std::sample(ids.begin(), ids.end(), std::back_inserter(out), v_u, rng);
  return out;
}

}  // namespace axsat::sched
