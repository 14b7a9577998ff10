#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "axsat/phy.hpp"

namespace axsat::cfg {

// Complete description of one WLAN scenario. Single source of truth for
// both engines; every field can be set from a config file or --set flag
// under the key spelled in the field comment's margin.
struct WlanConfig {
  std::int64_t l_d = 12000;       // payload bits per MPDU
  std::int64_t max_ampdu = 256;   // MPDUs per aggregate, before the PPDU cap
  double max_ppdu = 5488.4;       // PPDU duration limit, us
  int cw_min_ap = 15;
  int cw_min_sta = 15;
  int cw_max_ap = 1023;
  int cw_max_sta = 1023;
  double aifs = 34.0;             // us, best-effort
  double aifs_csi = 25.0;         // us, sounding access category
  double sifs = 16.0;             // us
  double t_e = 9.0;               // empty slot, us
  int m_ap = 8;                   // AP antennas
  int m_sta = 4;                  // station antennas
  int b = 160;                    // channel width, MHz
  double sigma = 16.0;            // data OFDM symbol, us
  double sigma_legacy = 4.0;      // legacy OFDM symbol, us
  int mcs = 6;
  bool dcm = false;
  double lambda_csi = 20.0;       // sounding rounds per second
  int k = 1;                      // sounding groups per round
  int n_ang = 56;
  int b_psi = 8;
  int b_phi = 8;
  int n_sg = 16;
  int n = 16;                     // associated stations
  double alpha = 0.2;             // P(AP transmission is SU)
  double beta = 0.8;              // P(MU transmission is DL)
  std::string amendment = "ax";   // "ax" or "ac"
  bool no_contention = false;     // stations never contend (AP-only mode)

  phy::Amendment amendment_tag() const;

  // Backoff stages implied by the (cw_min, cw_max) pair of one role.
  static int backoff_stages(int cw_min, int cw_max);
  int stages_ap() const { return backoff_stages(cw_min_ap, cw_max_ap); }
  int stages_sta() const { return backoff_stages(cw_min_sta, cw_max_sta); }

  // Range and consistency checks; throws ConfigError, returns non-fatal
  // observations (e.g. antenna counts beyond the usual hardware).
  std::vector<std::string> validate() const;

  bool operator==(const WlanConfig&) const = default;
};

// Field registry; keys are the struct member names above.
std::vector<std::string> field_names();
bool field_is_numeric(const std::string& name);
void set_field(WlanConfig& c, const std::string& name, const std::string& value);
void set_field_numeric(WlanConfig& c, const std::string& name, double value);
double get_field_numeric(const WlanConfig& c, const std::string& name);

// Flat "key = value" text form; parse accepts blank lines and # comments.
std::string serialize(const WlanConfig& c);
WlanConfig parse(const std::string& text);
WlanConfig load_file(const std::string& path);

}  // namespace axsat::cfg
