#pragma once
#include <cstdint>

#include "axsat/frames.hpp"
#include "axsat/phy.hpp"
#include "axsat/scheduler.hpp"

namespace axsat::sounding {

// Channel sounding schedule and compressed-beamforming report geometry.
struct SoundingParams {
  double lambda_csi = 20.0;  // sounding rounds per second; 0 disables sounding
  int k_groups = 1;          // station groups polled per round
  int n_ang = 56;            // feedback angles per subcarrier group
  int b_psi = 8;             // bits per psi angle
  int b_phi = 8;             // bits per phi angle
  int n_sg = 16;             // subcarrier grouping factor

  void validate() const;
};

// Compressed beamforming report length for a channel of width b. The report
// always covers the full channel, however narrow the RU it is sent on.
std::int64_t breport_len(int b_mhz, const SoundingParams& sp,
                         phy::Amendment a = phy::Amendment::Ax);

// Airtime of one full sounding round for n stations: NDPA, NDP, then per
// group a report poll and the triggered reports. Reporting stations share
// the channel the same way a data UL MU transmission would (V_s = 1 each).
double t_csi(int n, const SoundingParams& sp, const phy::Mcs& report_mcs,
             const sched::AntennaConfig& ant, const sched::AllocationPolicy& policy,
             const phy::PhyProfile& profile, const frames::FrameConstants& fc,
             const frames::TimingConstants& tc);

// Fraction of airtime left for data when sounding repeats every 1/lambda
// seconds. Errors out if a round cannot fit its own period.
double csi_airtime_factor(double lambda_csi, double t_csi_us);

}  // namespace axsat::sounding
