#include "axsat/sounding.hpp"

#include <stdexcept>
#include <string>

#include "axsat/error.hpp"

namespace axsat::sounding {

void SoundingParams::validate() const {
  if (lambda_csi < 0) throw ConfigError("lambda_csi must be >= 0");
  if (k_groups < 1) throw ConfigError("sounding group count must be >= 1");
  if (n_ang < 0 || b_psi < 0 || b_phi < 0) throw ConfigError("negative sounding field size");
  if (n_sg < 1) throw ConfigError("subcarrier grouping must be >= 1");
}

std::int64_t breport_len(int b_mhz, const SoundingParams& sp, phy::Amendment a) {
  const std::int64_t y_sc = phy::data_subcarriers(b_mhz, a);
  const std::int64_t groups = (y_sc + sp.n_sg - 1) / sp.n_sg;
  const std::int64_t angle_bits = static_cast<std::int64_t>(sp.n_ang) * (sp.b_psi + sp.b_phi);
  return 64 + (angle_bits * groups + 1) / 2;  // half (psi, phi) pairs per angle set
}

double t_csi(int n, const SoundingParams& sp, const phy::Mcs& report_mcs,
             const sched::AntennaConfig& ant, const sched::AllocationPolicy& policy,
             const phy::PhyProfile& profile, const frames::FrameConstants& fc,
             const frames::TimingConstants& tc) {
  if (n < 1) throw std::invalid_argument("sounding needs at least one station");
  const int b = profile.channel_width_mhz;

  const double ndpa = frames::legacy_frame_duration(fc.ndpa_len(n), profile, fc);
  const double brp = frames::legacy_frame_duration(fc.brp_trigger_len(n), profile, fc);

  // Reports are trigger-based uplink frames; each reporter gets one RU of
  // the split that a data UL MU round with this group size would use.
  const int group = (n + sp.k_groups - 1) / sp.k_groups;
  const sched::RuAllocation alloc = sched::allocate_mu(group, ant, b, policy);
  const Ratio r = phy::symbol_bits(report_mcs, 1, alloc.b_ru_mhz, profile.amendment);
  const std::int64_t report_bits = fc.l_sf + fc.l_mh + breport_len(b, sp, profile.amendment) + fc.l_tb;
  const double t_report =
      profile.t_phy_he_tb_us + static_cast<double>(ceil_div(report_bits, r)) * profile.sigma_us;

  const double per_group = tc.sifs_us + brp + tc.sifs_us + t_report;
  return ndpa + tc.sifs_us + profile.t_ndp_us + sp.k_groups * per_group + tc.aifs_csi_us;
}

double csi_airtime_factor(double lambda_csi, double t_csi_us) {
  if (lambda_csi < 0) throw ConfigError("lambda_csi must be >= 0");
  if (lambda_csi == 0) return 1.0;
  const double period_us = 1e6 / lambda_csi;
  if (t_csi_us >= period_us)
    throw ConfigError("sounding round of " + std::to_string(t_csi_us) +
                      " us cannot fit its period of " + std::to_string(period_us) + " us");
  return (period_us - t_csi_us) / period_us;
}

}  // namespace axsat::sounding
