#pragma once
#include <cstdint>
#include <stdexcept>

#include "axsat/frames.hpp"

namespace axsat::model {

// EDCA contention state shared by the analytical model and the simulator.
// A backoff window at stage i spans [0, 2^i * cw_min], capped after the
// last stage; retries continue indefinitely at the capped window.
struct ContentionParams {
  int cw_min_ap = 15;
  int cw_min_sta = 15;
  int stages_ap = 6;
  int stages_sta = 6;
  int n = 16;              // contending stations
  double alpha = 0.2;      // AP transmission is SU with probability alpha
  double beta = 0.8;       // MU transmission is DL with probability beta
  bool no_contention = false;  // stations never transmit (AP-only mode)
};

struct FixedPointSolution {
  double tau_ap = 0;   // AP attempt probability per slot
  double tau_sta = 0;  // per-station attempt probability per slot
  double pc_ap = 0;    // AP conditional collision probability
  double pc_sta = 0;
  int iterations = 0;
  double residual = 0;
};

struct FixedPointError : std::runtime_error {
  FixedPointError(const std::string& msg, const FixedPointSolution& last);
  FixedPointSolution last;
};

// Mean number of backoff slots a node waits per transmission attempt, with
// the window doubling each retry for `stages` stages and frozen afterwards.
double expected_backoff_slots(double cw_min, int stages, double p_c);

FixedPointSolution solve_fixed_point(const ContentionParams& cp, double tol = 1e-10,
                                     int max_iter = 10000);

// Probability of each slot outcome under the decoupling approximation.
struct SlotDistribution {
  double a1 = 0, a2 = 0, a3 = 0, a4 = 0;  // success: DL SU, UL SU, DL MU, UL MU
  double b1 = 0;                          // empty slot
  double c1 = 0, c2 = 0, c3 = 0, c4 = 0;  // collision: AP SU / AP DL MU / AP UL MU
                                          // attempt involved, or stations only
  double sum() const { return a1 + a2 + a3 + a4 + b1 + c1 + c2 + c3 + c4; }
};

SlotDistribution slot_distribution(const FixedPointSolution& fp, const ContentionParams& cp);

struct ThroughputReport {
  double s_d_mbps = 0;
  double s_u_mbps = 0;
  double e_d_d_us = 0;  // expected per-payload service time, DL
  double e_d_u_us = 0;
  SlotDistribution slots;
  FixedPointSolution fp;
  double csi_factor = 1.0;
};

ThroughputReport throughput(const FixedPointSolution& fp, const SlotDistribution& slots,
                            const frames::ExchangeDurations& durs, double t_e_us,
                            const frames::NaPerKind& na, std::int64_t l_d, int v_u,
                            double csi_factor);

}  // namespace axsat::model
