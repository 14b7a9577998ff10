#pragma once
#include <cstdint>

#include "axsat/phy.hpp"
#include "axsat/scheduler.hpp"

namespace axsat::frames {

// MAC frame and header sizes, all in bits. The parameterized control frames
// grow with the number of addressed users.
struct FrameConstants {
  std::int64_t l_sf = 16;     // A-MPDU service field
  std::int64_t l_md = 32;     // A-MPDU delimiter
  std::int64_t l_mh = 320;    // MAC header
  std::int64_t l_tb = 18;     // tail bits
  std::int64_t l_rts = 160;
  std::int64_t l_cts = 112;
  std::int64_t l_back = 256;
  std::int64_t l_d = 12000;   // data payload per MPDU

  std::int64_t mu_rts_len(int v_u) const { return 224 + 40 * v_u; }
  std::int64_t basic_trigger_len(int v_u) const { return 224 + 48 * v_u; }
  std::int64_t brp_trigger_len(int v_u) const { return 224 + 48 * v_u; }
  std::int64_t ms_back_len(int v_u) const { return 176 + 288 * v_u; }
  std::int64_t ndpa_len(int n) const { return 168 + 32 * n; }
};

struct TimingConstants {
  double sifs_us = 16.0;
  double aifs_us = 34.0;      // best-effort access category
  double aifs_csi_us = 25.0;  // higher-priority category used for sounding
  double t_e_us = 9.0;        // empty slot
  double max_ppdu_us = 5488.4;

  void validate() const;
};

enum class PpduKind { Su, MuDl, Tb };

// Control and management frames ride legacy OFDM at a fixed rate.
double legacy_frame_duration(std::int64_t len_bits, const phy::PhyProfile& profile,
                             const FrameConstants& fc);

// A-MPDU payload bits carried in a data PPDU. A single MPDU needs no
// delimiter; larger aggregates pay one delimiter per MPDU.
std::int64_t ampdu_bits(std::int64_t n_a, const FrameConstants& fc);

double data_ppdu_duration(PpduKind kind, std::int64_t n_a, int v_s, int b_ru_mhz,
                          const phy::Mcs& mcs, const phy::PhyProfile& profile,
                          const FrameConstants& fc);

struct Aggregation {
  std::int64_t n_a = 1;
  bool ppdu_capped = false;  // the duration limit, not the A-MPDU limit, bound n_a
  bool over_limit = false;   // even a single MPDU exceeds the duration limit
};

// Largest aggregate <= n_a_limit whose PPDU fits the duration budget.
Aggregation max_aggregation(PpduKind kind, int v_s, int b_ru_mhz, const phy::Mcs& mcs,
                            std::int64_t n_a_limit, const phy::PhyProfile& profile,
                            const FrameConstants& fc, double max_ppdu_us);

// Individual control frame durations.
double t_rts(const phy::PhyProfile& p, const FrameConstants& fc);
double t_cts(const phy::PhyProfile& p, const FrameConstants& fc);
double t_back(const phy::PhyProfile& p, const FrameConstants& fc);
double t_mu_rts(int v_u, const phy::PhyProfile& p, const FrameConstants& fc);
double t_basic_trigger(int v_u, const phy::PhyProfile& p, const FrameConstants& fc);
double t_ms_back(int v_u, const phy::PhyProfile& p, const FrameConstants& fc);

// Block ack returned inside a trigger-based PPDU. Defined for completeness;
// the default exchanges acknowledge UL MU data with a multi-station BACK.
double t_tb_back(int v_s, int b_ru_mhz, const phy::Mcs& mcs, const phy::PhyProfile& p,
                 const FrameConstants& fc);

// Full channel-access exchange durations, AIFS included.
struct ExchangeDurations {
  double t_su = 0;      // RTS/CTS protected single-user data + BACK
  double t_mu_d = 0;    // MU-RTS/CTS protected DL MU data + BACK
  double t_mu_u = 0;    // MU-RTS/CTS + trigger + UL MU data + MS-BACK
  double t_c_su = 0;    // collision involving only single-user attempts
  double t_c_mu = 0;    // collision where the AP sent a MU-RTS
};

struct NaPerKind {
  std::int64_t su = 1;
  std::int64_t mu_dl = 1;
  std::int64_t mu_ul = 1;
};

ExchangeDurations exchange_durations(const sched::RuAllocation& alloc, int su_streams,
                                     const NaPerKind& na, const phy::Mcs& mcs,
                                     const phy::PhyProfile& profile,
                                     const FrameConstants& fc, const TimingConstants& tc);

}  // namespace axsat::frames
