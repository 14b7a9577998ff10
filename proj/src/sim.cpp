#include "axsat/sim.hpp"

#include <cmath>
#include <random>

#include "axsat/error.hpp"
#include "axsat/scheduler.hpp"

namespace axsat::sim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct Node {
  std::int64_t counter = 0;
  int stage = 0;
};

struct RunTotals {
  double dl_bits = 0;
  double ul_bits = 0;
  std::int64_t slots = 0;
  std::int64_t counts[kSlotClassCount] = {};
  double air_empty = 0;
  double air_success = 0;
  double air_collision = 0;
  double air_sounding = 0;
  double duration_us = 0;
  std::int64_t ap_attempts = 0;
  std::int64_t ap_collided = 0;
  std::int64_t sta_attempts = 0;
  std::int64_t sta_collided = 0;
  std::vector<std::int64_t> served;
};

class Backoff {
 public:
  Backoff(std::int64_t cw_min, int stages) : cw_min_(cw_min), stages_(stages) {}

  std::int64_t window(int stage) const { return cw_min_ << stage; }

  std::int64_t draw(int stage, std::mt19937_64& rng) const {
    const std::int64_t w = window(stage);
    if (w == 0) return 0;
    return std::uniform_int_distribution<std::int64_t>(0, w)(rng);
  }

  int advance(int stage) const { return stage < stages_ ? stage + 1 : stages_; }

 private:
  std::int64_t cw_min_;
  int stages_;
};

// Saturation throughput is a steady-state quantity, but every node starts at
// stage zero with a fresh draw; that cold start inflates early collisions and
// depresses AP successes by a few percent over a 10 s horizon. Let the
// contention state mix for one simulated second before counting anything.
constexpr double kWarmupUs = 1e6;

RunTotals run_once(const engine::DerivedScenario& s, const cfg::WlanConfig& c,
                   double horizon_us, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const Backoff bo_ap(c.cw_min_ap, s.contention.stages_ap);
  const Backoff bo_sta(c.cw_min_sta, s.contention.stages_sta);
  const double t_e = c.t_e;
  const double l_d = static_cast<double>(c.l_d);
  const double su_bits = static_cast<double>(s.na.su) * l_d;
  const double mu_dl_bits = static_cast<double>(s.alloc.v_u * s.na.mu_dl) * l_d;
  const double mu_ul_bits = static_cast<double>(s.alloc.v_u * s.na.mu_ul) * l_d;

  const bool csi_on = c.lambda_csi > 0 && c.n >= 1;
  const double csi_period = csi_on ? 1e6 / c.lambda_csi : 0;
  double next_csi = csi_period;

  Node ap;
  ap.counter = bo_ap.draw(0, rng);
  std::vector<Node> sta(c.no_contention ? 0 : static_cast<std::size_t>(c.n));
  for (Node& st : sta) st.counter = bo_sta.draw(0, rng);

  RunTotals tot;
  tot.served.assign(static_cast<std::size_t>(c.n), 0);

  double now = 0;
  double t_begin = -1;
  bool measuring = false;
  while (true) {
    if (!measuring && now >= kWarmupUs) {
      measuring = true;
      t_begin = now;
    }
    if (measuring && now - t_begin >= horizon_us) break;

    // A pending sounding round grabs the channel at the first idle boundary
    // after it falls due; contention state freezes for its whole duration.
    if (csi_on && now >= next_csi) {
      now += s.t_csi_us;
      if (measuring) tot.air_sounding += s.t_csi_us;
      next_csi += csi_period;
      continue;
    }

    const bool ap_tx = ap.counter == 0;
    int kind = 0;  // 0 = SU, 1 = DL MU, 2 = UL MU
    if (ap_tx) {
      if (unit(rng) < c.alpha)
        kind = 0;
      else
        kind = unit(rng) < c.beta ? 1 : 2;
    }
    int sta_tx = 0;
    for (const Node& st : sta)
      if (st.counter == 0) ++sta_tx;
    const int total = (ap_tx ? 1 : 0) + sta_tx;

    if (measuring) {
      tot.ap_attempts += ap_tx ? 1 : 0;
      tot.sta_attempts += sta_tx;
    }

    double dur = 0;
    if (total == 0) {
      dur = t_e;
      if (measuring) {
        tot.air_empty += dur;
        ++tot.counts[kEmpty];
      }
    } else if (total == 1) {
      double t_x = 0;
      if (ap_tx) {
        switch (kind) {
          case 0:
            t_x = s.durs.t_su;
            if (measuring) {
              tot.dl_bits += su_bits;
              ++tot.counts[kSuDl];
            }
            break;
          case 1:
            t_x = s.durs.t_mu_d;
            if (measuring) {
              tot.dl_bits += mu_dl_bits;
              ++tot.counts[kMuDl];
            }
            break;
          default:
            t_x = s.durs.t_mu_u;
            if (measuring) {
              tot.ul_bits += mu_ul_bits;
              ++tot.counts[kMuUl];
            }
            break;
        }
        if (measuring && kind != 0 && s.alloc.v_u >= 1) {
          for (int id : sched::pick_stations(c.n, s.alloc.v_u, rng))
            ++tot.served[static_cast<std::size_t>(id - 1)];
        }
      } else {
        t_x = s.durs.t_su;
        if (measuring) {
          tot.ul_bits += su_bits;
          ++tot.counts[kSuUl];
        }
      }
      dur = t_x + t_e;
      if (measuring) tot.air_success += dur;
    } else {
      const double t_c = (ap_tx && kind != 0) ? s.durs.t_c_mu : s.durs.t_c_su;
      if (measuring) {
        if (ap_tx)
          ++tot.counts[kind == 0 ? kColApSu : (kind == 1 ? kColApMuDl : kColApMuUl)];
        else
          ++tot.counts[kColSta];
        tot.ap_collided += ap_tx ? 1 : 0;
        tot.sta_collided += sta_tx;
      }
      dur = t_c + t_e;
      if (measuring) tot.air_collision += dur;
    }

    // Transmitters draw a fresh backoff; everyone else burns one slot.
    if (ap_tx) {
      ap.stage = total == 1 ? 0 : bo_ap.advance(ap.stage);
      ap.counter = bo_ap.draw(ap.stage, rng);
    } else if (ap.counter > 0) {
      --ap.counter;
    }
    for (Node& st : sta) {
      if (st.counter == 0) {
        st.stage = total == 1 ? 0 : bo_sta.advance(st.stage);
        st.counter = bo_sta.draw(st.stage, rng);
      } else {
        --st.counter;
      }
    }

    now += dur;
    if (measuring) ++tot.slots;
  }

  tot.duration_us = now - t_begin;
  return tot;
}

}  // namespace

SimResult run(const SimConfig& sc) {
  SimConfig one = sc;
  one.replications = 1;
  return run_replicated(one);
}

SimResult run_replicated(const SimConfig& sc) {
  if (sc.sim_time_s <= 0) throw ConfigError("sim_time_s must be positive");
  if (sc.replications < 1) throw ConfigError("replications must be >= 1");
  const engine::DerivedScenario s = engine::derive(sc.wlan);
  const double horizon_us = sc.sim_time_s * 1e6;

  SimResult out;
  out.replications = sc.replications;
  out.served.assign(static_cast<std::size_t>(sc.wlan.n), 0);

  std::vector<double> sd, su;
  sd.reserve(static_cast<std::size_t>(sc.replications));
  su.reserve(static_cast<std::size_t>(sc.replications));

  for (int rep = 0; rep < sc.replications; ++rep) {
    const std::uint64_t seed =
        splitmix64(sc.seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(rep + 1)));
    const RunTotals t = run_once(s, sc.wlan, horizon_us, seed);
    sd.push_back(t.dl_bits / t.duration_us);
    su.push_back(t.ul_bits / t.duration_us);
    out.slots += t.slots;
    for (int i = 0; i < kSlotClassCount; ++i) out.counts[i] += t.counts[i];
    out.air_empty_us += t.air_empty;
    out.air_success_us += t.air_success;
    out.air_collision_us += t.air_collision;
    out.air_sounding_us += t.air_sounding;
    out.duration_us += t.duration_us;
    for (std::size_t i = 0; i < t.served.size(); ++i) out.served[i] += t.served[i];
    out.tau_ap_hat += static_cast<double>(t.ap_attempts);
    out.tau_sta_hat += static_cast<double>(t.sta_attempts);
    out.pc_ap_hat += static_cast<double>(t.ap_collided);
    out.pc_sta_hat += static_cast<double>(t.sta_collided);
  }

  const double reps = static_cast<double>(sc.replications);
  double mean_d = 0, mean_u = 0;
  for (double v : sd) mean_d += v;
  for (double v : su) mean_u += v;
  mean_d /= reps;
  mean_u /= reps;
  double var_d = 0, var_u = 0;
  if (sc.replications > 1) {
    for (double v : sd) var_d += (v - mean_d) * (v - mean_d);
    for (double v : su) var_u += (v - mean_u) * (v - mean_u);
    var_d /= reps - 1;
    var_u /= reps - 1;
  }
  out.s_d_mbps = mean_d;
  out.s_u_mbps = mean_u;
  out.s_d_std = std::sqrt(var_d);
  out.s_u_std = std::sqrt(var_u);

  const double ap_attempts = out.tau_ap_hat;
  const double sta_attempts = out.tau_sta_hat;
  const double slots = static_cast<double>(out.slots);
  out.tau_ap_hat = slots > 0 ? ap_attempts / slots : 0;
  out.tau_sta_hat = (slots > 0 && sc.wlan.n > 0 && !sc.wlan.no_contention)
                        ? sta_attempts / (slots * sc.wlan.n)
                        : 0;
  out.pc_ap_hat = ap_attempts > 0 ? out.pc_ap_hat / ap_attempts : 0;
  out.pc_sta_hat = sta_attempts > 0 ? out.pc_sta_hat / sta_attempts : 0;
  return out;
}

}  // namespace axsat::sim
