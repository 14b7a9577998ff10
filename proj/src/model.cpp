#include "axsat/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "axsat/error.hpp"

namespace axsat::model {

FixedPointError::FixedPointError(const std::string& msg, const FixedPointSolution& l)
    : std::runtime_error(msg), last(l) {}

double expected_backoff_slots(double cw_min, int stages, double p_c) {
  if (cw_min < 0) throw std::invalid_argument("cw_min must be >= 0");
  if (stages < 0) throw std::invalid_argument("stage count must be >= 0");
  if (!(p_c >= 0.0 && p_c < 1.0))
    throw std::domain_error("collision probability must lie in [0, 1)");
  if (cw_min == 0) return 0.0;

  const double w = cw_min / 2.0;
  if (std::fabs(p_c - 0.5) < 1e-3) {
    // The closed form below divides by (1 - 2 p_c), which amplifies the
    // rounding of (1 - p_c) to above 1e-9 for windows around 1023 once
    // |p_c - 1/2| drops under a few 1e-4. Inside this band the stage-by-stage
    // sum is exact, so use it; outside, the closed form is good to ~1e-11.
    double geo = 0.0, term = 1.0;  // term = (2 p_c)^i
    for (int i = 0; i <= stages; ++i) {
      geo += term;
      term *= 2.0 * p_c;
    }
    const double tail = std::pow(2.0, stages) * std::pow(p_c, stages + 1);
    return w * ((1.0 - p_c) * geo + tail);
  }
  return w * (1.0 - p_c - p_c * std::pow(2.0 * p_c, stages)) / (1.0 - 2.0 * p_c);
}

namespace {

double tau_of(double cw_min, int stages, double p_c) {
  // Guard the degenerate all-collide regime (a window of zero keeps every
  // attempt probability at 1, which drives p_c to 1 exactly).
  const double p = std::min(p_c, 1.0 - 1e-15);
  return 1.0 / (expected_backoff_slots(cw_min, stages, p) + 1.0);
}

struct System {
  const ContentionParams& cp;

  double pc_ap_of(double tau_sta) const { return 1.0 - std::pow(1.0 - tau_sta, cp.n); }
  double pc_sta_of(double tau_ap, double tau_sta) const {
    return 1.0 - (1.0 - tau_ap) * std::pow(1.0 - tau_sta, cp.n - 1);
  }
  double tau_ap_of(double tau_sta) const {
    return tau_of(cp.cw_min_ap, cp.stages_ap, pc_ap_of(tau_sta));
  }
  // Residual of the scalar reduction in tau_sta alone.
  double residual_sta(double tau_sta) const {
    const double ta = tau_ap_of(tau_sta);
    return tau_sta - tau_of(cp.cw_min_sta, cp.stages_sta, pc_sta_of(ta, tau_sta));
  }
};

FixedPointSolution assemble(const System& sys, double tau_ap, double tau_sta, int iters,
                            double residual) {
  FixedPointSolution s;
  s.tau_ap = tau_ap;
  s.tau_sta = tau_sta;
  s.pc_ap = sys.pc_ap_of(tau_sta);
  s.pc_sta = sys.pc_sta_of(tau_ap, tau_sta);
  s.iterations = iters;
  s.residual = residual;
  return s;
}

}  // namespace

FixedPointSolution solve_fixed_point(const ContentionParams& cp, double tol, int max_iter) {
  if (cp.n < 0) throw ConfigError("station count must be >= 0");
  if (cp.alpha < 0 || cp.alpha > 1 || cp.beta < 0 || cp.beta > 1)
    throw ConfigError("alpha and beta must lie in [0, 1]");
  if (cp.cw_min_ap < 0 || cp.cw_min_sta < 0 || cp.stages_ap < 0 || cp.stages_sta < 0)
    throw ConfigError("contention window parameters must be >= 0");

  if (cp.no_contention || cp.n == 0) {
    FixedPointSolution s;
    s.tau_ap = tau_of(cp.cw_min_ap, cp.stages_ap, 0.0);
    s.tau_sta = 0.0;
    return s;
  }

  const System sys{cp};
  double tau_ap = tau_of(cp.cw_min_ap, cp.stages_ap, 0.0);
  double tau_sta = tau_of(cp.cw_min_sta, cp.stages_sta, 0.0);

  for (int it = 1; it <= max_iter; ++it) {
    const double next_ap = tau_of(cp.cw_min_ap, cp.stages_ap, sys.pc_ap_of(tau_sta));
    const double next_sta =
        tau_of(cp.cw_min_sta, cp.stages_sta, sys.pc_sta_of(tau_ap, tau_sta));
    const double residual =
        std::max(std::fabs(next_ap - tau_ap), std::fabs(next_sta - tau_sta));
    tau_ap = 0.5 * tau_ap + 0.5 * next_ap;
    tau_sta = 0.5 * tau_sta + 0.5 * next_sta;
    if (residual < tol) return assemble(sys, tau_ap, tau_sta, it, residual);
  }

  // The damped iteration stalled; fall back to bisection on the scalar
  // reduction. residual_sta is negative at 0 and non-negative at 1.
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (sys.residual_sta(mid) < 0)
      lo = mid;
    else
      hi = mid;
  }
  const double ts = 0.5 * (lo + hi);
  const double ta = sys.tau_ap_of(ts);
  const double resid = std::fabs(sys.residual_sta(ts));
  if (resid > 1e-6)
    throw FixedPointError("contention fixed point did not converge",
                          assemble(sys, ta, ts, max_iter, resid));
  return assemble(sys, ta, ts, max_iter, resid);
}

SlotDistribution slot_distribution(const FixedPointSolution& fp, const ContentionParams& cp) {
  const double ta = fp.tau_ap;
  const double ts = fp.tau_sta;
  const double a = cp.alpha;
  const double b = cp.beta;
  const double all_quiet = std::pow(1.0 - ts, cp.n);
  const double others_quiet = cp.n >= 1 ? std::pow(1.0 - ts, cp.n - 1) : 1.0;

  SlotDistribution s;
  s.a1 = a * ta * all_quiet;
  s.a2 = cp.n * ts * (1.0 - ta) * others_quiet;
  s.a3 = (1.0 - a) * b * ta * all_quiet;
  s.a4 = (1.0 - a) * (1.0 - b) * ta * all_quiet;
  s.b1 = (1.0 - ta) * all_quiet;
  const double ap_hit = ta * (1.0 - all_quiet);  // AP attempt meets >=1 station
  s.c1 = a * ap_hit;
  s.c2 = (1.0 - a) * b * ap_hit;
  s.c3 = (1.0 - a) * (1.0 - b) * ap_hit;
  s.c4 = 1.0 - (s.a1 + s.a2 + s.a3 + s.a4 + s.b1 + s.c1 + s.c2 + s.c3);
  if (s.c4 < 0) {
    if (s.c4 < -1e-12) throw std::logic_error("slot probabilities fell out of range");
    s.c4 = 0.0;  // station-only collisions can round a hair below zero
  }
  return s;
}

ThroughputReport throughput(const FixedPointSolution& fp, const SlotDistribution& s,
                            const frames::ExchangeDurations& d, double t_e_us,
                            const frames::NaPerKind& na, std::int64_t l_d, int v_u,
                            double csi_factor) {
  if (t_e_us <= 0) throw ConfigError("slot time must be positive");
  if (csi_factor <= 0 || csi_factor > 1) throw ConfigError("csi factor must lie in (0, 1]");

  const double denom = s.b1 * t_e_us + (s.a1 + s.a2) * (d.t_su + t_e_us) +
                       s.a3 * (d.t_mu_d + t_e_us) + s.a4 * (d.t_mu_u + t_e_us) +
                       (s.c1 + s.c4) * (d.t_c_su + t_e_us) +
                       (s.c2 + s.c3) * (d.t_c_mu + t_e_us);
  if (denom <= 0) throw ConfigError("degenerate configuration: expected slot time is zero");

  const double ld = static_cast<double>(l_d);
  const double dl_bits = s.a1 * static_cast<double>(na.su) * ld +
                         s.a3 * static_cast<double>(v_u) * static_cast<double>(na.mu_dl) * ld;
  const double ul_bits = s.a2 * static_cast<double>(na.su) * ld +
                         s.a4 * static_cast<double>(v_u) * static_cast<double>(na.mu_ul) * ld;

  ThroughputReport r;
  r.s_d_mbps = csi_factor * dl_bits / denom;
  r.s_u_mbps = csi_factor * ul_bits / denom;
  const double inf = std::numeric_limits<double>::infinity();
  r.e_d_d_us = r.s_d_mbps > 0 ? ld / r.s_d_mbps : inf;
  r.e_d_u_us = r.s_u_mbps > 0 ? ld / r.s_u_mbps : inf;
  r.slots = s;
  r.fp = fp;
  r.csi_factor = csi_factor;
  return r;
}

}  // namespace axsat::model
