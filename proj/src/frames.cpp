#include "axsat/frames.hpp"

#include <stdexcept>

#include "axsat/error.hpp"

namespace axsat::frames {

void TimingConstants::validate() const {
  if (sifs_us <= 0 || aifs_us <= 0 || aifs_csi_us <= 0 || t_e_us <= 0)
    throw ConfigError("interframe spaces and slot time must be positive");
  if (!(sifs_us < aifs_csi_us && aifs_csi_us < aifs_us))
    throw ConfigError("expected sifs < aifs_csi < aifs");
  if (max_ppdu_us <= 0) throw ConfigError("max PPDU duration must be positive");
}

double legacy_frame_duration(std::int64_t len_bits, const phy::PhyProfile& profile,
                             const FrameConstants& fc) {
  if (len_bits < 0) throw std::invalid_argument("negative frame length");
  const std::int64_t bits = fc.l_sf + len_bits + fc.l_tb;
  const std::int64_t symbols =
      (bits + profile.r_legacy_bits_per_symbol - 1) / profile.r_legacy_bits_per_symbol;
  return profile.t_phy_legacy_us + static_cast<double>(symbols) * profile.sigma_legacy_us;
}

std::int64_t ampdu_bits(std::int64_t n_a, const FrameConstants& fc) {
  if (n_a < 1) throw std::invalid_argument("aggregate must hold at least one MPDU");
  if (n_a == 1) return fc.l_sf + fc.l_mh + fc.l_d + fc.l_tb;
  return fc.l_sf + n_a * (fc.l_md + fc.l_mh + fc.l_d) + fc.l_tb;
}

namespace {

double preamble_us(PpduKind kind, const phy::PhyProfile& p) {
  switch (kind) {
    case PpduKind::Su: return p.t_phy_he_su_us;
    case PpduKind::MuDl: return p.t_phy_he_mu_us;
    case PpduKind::Tb: return p.t_phy_he_tb_us;
  }
  return p.t_phy_he_su_us;
}

}  // namespace

double data_ppdu_duration(PpduKind kind, std::int64_t n_a, int v_s, int b_ru_mhz,
                          const phy::Mcs& mcs, const phy::PhyProfile& profile,
                          const FrameConstants& fc) {
  const Ratio r = phy::symbol_bits(mcs, v_s, b_ru_mhz, profile.amendment);
  const std::int64_t symbols = ceil_div(ampdu_bits(n_a, fc), r);
  return preamble_us(kind, profile) + static_cast<double>(symbols) * profile.sigma_us;
}

Aggregation max_aggregation(PpduKind kind, int v_s, int b_ru_mhz, const phy::Mcs& mcs,
                            std::int64_t n_a_limit, const phy::PhyProfile& profile,
                            const FrameConstants& fc, double max_ppdu_us) {
  if (n_a_limit < 1) throw std::invalid_argument("aggregation limit must be >= 1");
  for (std::int64_t n_a = n_a_limit; n_a >= 1; --n_a) {
    if (data_ppdu_duration(kind, n_a, v_s, b_ru_mhz, mcs, profile, fc) <= max_ppdu_us)
      return {n_a, n_a < n_a_limit, false};
  }
  // Even one MPDU busts the duration budget; send it anyway and flag it.
  return {1, false, true};
}

double t_rts(const phy::PhyProfile& p, const FrameConstants& fc) {
  return legacy_frame_duration(fc.l_rts, p, fc);
}

double t_cts(const phy::PhyProfile& p, const FrameConstants& fc) {
  return legacy_frame_duration(fc.l_cts, p, fc);
}

double t_back(const phy::PhyProfile& p, const FrameConstants& fc) {
  return legacy_frame_duration(fc.l_back, p, fc);
}

double t_mu_rts(int v_u, const phy::PhyProfile& p, const FrameConstants& fc) {
  return legacy_frame_duration(fc.mu_rts_len(v_u), p, fc);
}

double t_basic_trigger(int v_u, const phy::PhyProfile& p, const FrameConstants& fc) {
  return legacy_frame_duration(fc.basic_trigger_len(v_u), p, fc);
}

double t_ms_back(int v_u, const phy::PhyProfile& p, const FrameConstants& fc) {
  return legacy_frame_duration(fc.ms_back_len(v_u), p, fc);
}

double t_tb_back(int v_s, int b_ru_mhz, const phy::Mcs& mcs, const phy::PhyProfile& p,
                 const FrameConstants& fc) {
  const Ratio r = phy::symbol_bits(mcs, v_s, b_ru_mhz, p.amendment);
  const std::int64_t bits = fc.l_sf + fc.l_back + fc.l_tb;
  return p.t_phy_he_tb_us + static_cast<double>(ceil_div(bits, r)) * p.sigma_us;
}

ExchangeDurations exchange_durations(const sched::RuAllocation& alloc, int su_streams,
                                     const NaPerKind& na, const phy::Mcs& mcs,
                                     const phy::PhyProfile& profile,
                                     const FrameConstants& fc, const TimingConstants& tc) {
  const double sifs = tc.sifs_us;
  const double aifs = tc.aifs_us;
  const int b = profile.channel_width_mhz;

  const double rts = t_rts(profile, fc);
  const double cts = t_cts(profile, fc);
  const double back = t_back(profile, fc);
  const double mu_rts = t_mu_rts(alloc.v_u, profile, fc);

  ExchangeDurations d;
  const double d_su =
      data_ppdu_duration(PpduKind::Su, na.su, su_streams, b, mcs, profile, fc);
  d.t_su = rts + sifs + cts + sifs + d_su + sifs + back + aifs;

  const double d_mu_d = data_ppdu_duration(PpduKind::MuDl, na.mu_dl, alloc.v_s,
                                           alloc.b_ru_mhz, mcs, profile, fc);
  d.t_mu_d = mu_rts + sifs + cts + sifs + d_mu_d + sifs + back + aifs;

  const double trig = t_basic_trigger(alloc.v_u, profile, fc);
  const double msb = t_ms_back(alloc.v_u, profile, fc);
  const double d_mu_u = data_ppdu_duration(PpduKind::Tb, na.mu_ul, alloc.v_s,
                                           alloc.b_ru_mhz, mcs, profile, fc);
  d.t_mu_u = mu_rts + sifs + cts + sifs + trig + sifs + d_mu_u + sifs + msb + aifs;

  d.t_c_su = rts + sifs + cts + aifs;
  d.t_c_mu = mu_rts + sifs + cts + aifs;
  return d;
}

}  // namespace axsat::frames
