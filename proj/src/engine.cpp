#include "axsat/engine.hpp"

#include <algorithm>

namespace axsat::engine {

DerivedScenario derive(const cfg::WlanConfig& c) {
  c.validate();
  const phy::Amendment a = c.amendment_tag();

  DerivedScenario s;
  s.profile = phy::default_profile(a, c.b);
  s.profile.sigma_us = c.sigma;
  s.profile.sigma_legacy_us = c.sigma_legacy;
  s.profile.validate();
  s.mcs = phy::mcs_row(c.mcs, c.dcm, a);

  s.frame.l_d = c.l_d;
  s.timing.sifs_us = c.sifs;
  s.timing.aifs_us = c.aifs;
  s.timing.aifs_csi_us = c.aifs_csi;
  s.timing.t_e_us = c.t_e;
  s.timing.max_ppdu_us = c.max_ppdu;
  s.timing.validate();

  const sched::AntennaConfig ant{c.m_ap, c.m_sta};
  const sched::AllocationPolicy policy = sched::AllocationPolicy::for_amendment(a, ant);
  s.su_streams = sched::su_streams(ant);
  if (c.n >= 1) {
    s.alloc = sched::allocate_mu(c.n, ant, c.b, policy);
  } else {
    // No stations: MU transmissions address nobody but stay well defined.
    s.alloc = {0, 1, c.b, 0, s.su_streams};
  }

  s.na.su = frames::max_aggregation(frames::PpduKind::Su, s.su_streams, c.b, s.mcs,
                                    c.max_ampdu, s.profile, s.frame, c.max_ppdu)
                .n_a;
  s.na.mu_dl = frames::max_aggregation(frames::PpduKind::MuDl, s.alloc.v_s, s.alloc.b_ru_mhz,
                                       s.mcs, c.max_ampdu, s.profile, s.frame, c.max_ppdu)
                   .n_a;
  s.na.mu_ul = frames::max_aggregation(frames::PpduKind::Tb, s.alloc.v_s, s.alloc.b_ru_mhz,
                                       s.mcs, c.max_ampdu, s.profile, s.frame, c.max_ppdu)
                   .n_a;

  s.durs = frames::exchange_durations(s.alloc, s.su_streams, s.na, s.mcs, s.profile,
                                      s.frame, s.timing);

  if (c.n >= 1 && c.lambda_csi > 0) {
    sounding::SoundingParams sp;
    sp.lambda_csi = c.lambda_csi;
    sp.k_groups = c.k;
    sp.n_ang = c.n_ang;
    sp.b_psi = c.b_psi;
    sp.b_phi = c.b_phi;
    sp.n_sg = c.n_sg;
    sp.validate();
    s.t_csi_us = sounding::t_csi(c.n, sp, s.mcs, ant, policy, s.profile, s.frame, s.timing);
    s.csi_factor = sounding::csi_airtime_factor(c.lambda_csi, s.t_csi_us);
  }

  s.contention.cw_min_ap = c.cw_min_ap;
  s.contention.cw_min_sta = c.cw_min_sta;
  s.contention.stages_ap = c.stages_ap();
  s.contention.stages_sta = c.stages_sta();
  s.contention.n = c.n;
  s.contention.alpha = c.alpha;
  s.contention.beta = c.beta;
  s.contention.no_contention = c.no_contention;
  return s;
}

model::ThroughputReport analyze(const cfg::WlanConfig& c) {
  const DerivedScenario s = derive(c);
  const model::FixedPointSolution fp = model::solve_fixed_point(s.contention);
  const model::SlotDistribution slots = model::slot_distribution(fp, s.contention);
  return model::throughput(fp, slots, s.durs, c.t_e, s.na, c.l_d, s.alloc.v_u,
                           s.csi_factor);
}

}  // namespace axsat::engine
