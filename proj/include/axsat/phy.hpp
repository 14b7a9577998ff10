#pragma once
#include <cstdint>

#include "axsat/ratio.hpp"

namespace axsat::phy {

enum class Amendment { Ax, Ac, LegacyA };

const char* amendment_name(Amendment a);

// One row of the MCS table: constellation bits per subcarrier (y_m) and
// coding rate (y_c). DCM rows fold the duplicated carrier into y_c, which
// is why their throughput is exactly half of the plain row.
struct Mcs {
  int index = 6;
  int y_m = 6;
  Ratio y_c{3, 4};
  bool dcm = false;
};

// Data subcarriers Y_sc carried by a channel (or RU) of the given width.
int data_subcarriers(int width_mhz, Amendment a = Amendment::Ax);

const Mcs& mcs_row(int index, bool dcm, Amendment a = Amendment::Ax);

// Whether (index, dcm) is defined for the amendment and usable at the width.
bool mcs_valid(int index, bool dcm, int width_mhz, Amendment a);

struct PhyProfile {
  Amendment amendment = Amendment::Ax;
  int channel_width_mhz = 160;
  double sigma_us = 16.0;        // data OFDM symbol, GI included
  double sigma_legacy_us = 4.0;  // legacy OFDM symbol, used by control frames
  double t_phy_legacy_us = 20.0;
  double t_phy_he_su_us = 164.0;
  double t_phy_he_mu_us = 168.0;
  double t_phy_he_tb_us = 228.0;
  double t_ndp_us = 168.0;
  int r_legacy_bits_per_symbol = 24;

  void validate() const;  // throws ConfigError on nonsense values
};

PhyProfile default_profile(Amendment a, int width_mhz);

// r(V_s, B): bits carried per OFDM symbol, exact.
Ratio symbol_bits(const Mcs& mcs, int v_s, int width_mhz, Amendment a = Amendment::Ax);

// Same quantity floored to whole bits.
std::int64_t bits_per_symbol(const Mcs& mcs, int v_s, int width_mhz,
                             Amendment a = Amendment::Ax);

double phy_rate_mbps(const Mcs& mcs, int v_s, int width_mhz, const PhyProfile& profile);

}  // namespace axsat::phy
