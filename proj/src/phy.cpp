#include "axsat/phy.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "axsat/error.hpp"

namespace axsat::phy {

const char* amendment_name(Amendment a) {
  switch (a) {
    case Amendment::Ax: return "ax";
    case Amendment::Ac: return "ac";
    case Amendment::LegacyA: return "a";
  }
  return "?";
}

namespace {

// HE rows, in table order. DCM is only defined up to 16-QAM.
const std::array<Mcs, 16> kAxRows = {{
    {0, 1, Ratio{1, 4}, true},
    {0, 1, Ratio{1, 2}, false},
    {1, 2, Ratio{1, 4}, true},
    {1, 2, Ratio{1, 2}, false},
    {2, 2, Ratio{3, 4}, false},
    {3, 4, Ratio{1, 4}, true},
    {3, 4, Ratio{1, 2}, false},
    {4, 4, Ratio{3, 8}, true},
    {4, 4, Ratio{3, 4}, false},
    {5, 6, Ratio{2, 3}, false},
    {6, 6, Ratio{3, 4}, false},
    {7, 6, Ratio{5, 6}, false},
    {8, 8, Ratio{3, 4}, false},
    {9, 8, Ratio{5, 6}, false},
    {10, 10, Ratio{3, 4}, false},
    {11, 10, Ratio{5, 6}, false},
}};

const std::array<Mcs, 10> kAcRows = {{
    {0, 1, Ratio{1, 2}, false},
    {1, 2, Ratio{1, 2}, false},
    {2, 2, Ratio{3, 4}, false},
    {3, 4, Ratio{1, 2}, false},
    {4, 4, Ratio{3, 4}, false},
    {5, 6, Ratio{2, 3}, false},
    {6, 6, Ratio{3, 4}, false},
    {7, 6, Ratio{5, 6}, false},
    {8, 8, Ratio{3, 4}, false},
    {9, 8, Ratio{5, 6}, false},
}};

const std::array<Mcs, 7> kLegacyRows = {{
    {0, 1, Ratio{1, 2}, false},
    {1, 2, Ratio{1, 2}, false},
    {2, 2, Ratio{3, 4}, false},
    {3, 4, Ratio{1, 2}, false},
    {4, 4, Ratio{3, 4}, false},
    {5, 6, Ratio{2, 3}, false},
    {6, 6, Ratio{3, 4}, false},
}};

[[noreturn]] void bad_width(int width_mhz) {
  throw ConfigError("unsupported channel width: " + std::to_string(width_mhz) + " MHz");
}

}  // namespace

int data_subcarriers(int width_mhz, Amendment a) {
  switch (a) {
    case Amendment::Ax:
      switch (width_mhz) {
        case 20: return 234;
        case 40: return 468;
        case 80: return 980;
        case 160: return 1960;
        default: bad_width(width_mhz);
      }
    case Amendment::Ac:
      switch (width_mhz) {
        case 20: return 52;
        case 40: return 108;
        case 80: return 234;
        case 160: return 468;
        default: bad_width(width_mhz);
      }
    case Amendment::LegacyA:
      if (width_mhz == 20) return 48;
      bad_width(width_mhz);
  }
  bad_width(width_mhz);
}

const Mcs& mcs_row(int index, bool dcm, Amendment a) {
  if (a == Amendment::Ax) {
    for (const Mcs& m : kAxRows)
      if (m.index == index && m.dcm == dcm) return m;
  } else {
    const auto& rows = (a == Amendment::Ac) ? kAcRows.data() : kLegacyRows.data();
    const int count = (a == Amendment::Ac) ? 10 : 7;
    if (!dcm)
      for (int i = 0; i < count; ++i)
        if (rows[i].index == index) return rows[i];
  }
  throw ConfigError("no MCS " + std::to_string(index) + (dcm ? "+DCM" : "") +
                    " entry for 802.11" + amendment_name(a));
}

bool mcs_valid(int index, bool dcm, int width_mhz, Amendment a) {
  switch (a) {
    case Amendment::Ax:
      if (width_mhz != 20 && width_mhz != 40 && width_mhz != 80 && width_mhz != 160)
        return false;
      if (index < 0 || index > 11) return false;
      return !dcm || index == 0 || index == 1 || index == 3 || index == 4;
    case Amendment::Ac:
      if (width_mhz != 20 && width_mhz != 40 && width_mhz != 80 && width_mhz != 160)
        return false;
      if (dcm || index < 0 || index > 9) return false;
      return !(index == 9 && width_mhz == 20);  // single-stream MCS9 needs >= 40 MHz
    case Amendment::LegacyA:
      return !dcm && width_mhz == 20 && index >= 0 && index <= 6;
  }
  return false;
}

void PhyProfile::validate() const {
  if (sigma_us <= 0 || sigma_legacy_us <= 0 || t_phy_legacy_us <= 0)
    throw ConfigError("PHY durations must be positive");
  if (t_phy_he_su_us <= 0 || t_phy_he_mu_us <= 0 || t_phy_he_tb_us <= 0 || t_ndp_us <= 0)
    throw ConfigError("PHY preamble durations must be positive");
  if (r_legacy_bits_per_symbol <= 0)
    throw ConfigError("legacy bits per symbol must be positive");
  const double k = sigma_us / sigma_legacy_us;
  if (std::fabs(k - std::round(k)) > 1e-9)
    throw ConfigError("sigma must be an integer multiple of sigma_legacy");
  data_subcarriers(channel_width_mhz, amendment);  // throws on bad width
}

PhyProfile default_profile(Amendment a, int width_mhz) {
  PhyProfile p;
  p.amendment = a;
  p.channel_width_mhz = width_mhz;
  if (a != Amendment::Ax) p.sigma_us = 4.0;
  p.validate();
  return p;
}

Ratio symbol_bits(const Mcs& mcs, int v_s, int width_mhz, Amendment a) {
  if (v_s < 1) throw std::invalid_argument("spatial stream count must be >= 1");
  const std::int64_t y_sc = data_subcarriers(width_mhz, a);
  return (static_cast<std::int64_t>(v_s) * mcs.y_m * y_sc) * mcs.y_c;
}

std::int64_t bits_per_symbol(const Mcs& mcs, int v_s, int width_mhz, Amendment a) {
  const Ratio r = symbol_bits(mcs, v_s, width_mhz, a);
  return r.num / r.den;
}

double phy_rate_mbps(const Mcs& mcs, int v_s, int width_mhz, const PhyProfile& profile) {
  const Ratio r = symbol_bits(mcs, v_s, width_mhz, profile.amendment);
  return r.to_double() / profile.sigma_us;
}

}  // namespace axsat::phy
