#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "axsat/error.hpp"
#include "axsat/model.hpp"

using namespace axsat;
using model::ContentionParams;
using model::FixedPointSolution;
using model::SlotDistribution;

namespace {

// Independent oracle for the mean backoff: sum the stage-by-stage series
// term by term instead of using any closed form. The window doubles for
// `stages` retries and then freezes; attempt j happens with weight p^j.
// Every attempt past `terms` sits at the frozen window, so the remaining
// probability mass p^terms contributes exactly that window; adding it makes
// the oracle exact for all p in [0, 1], not merely truncated.
double backoff_series(double cw_min, int stages, double p, int terms = 4000) {
  double sum = 0.0;
  double pj = 1.0;
  for (int j = 0; j < terms; ++j) {
    const double w = cw_min * std::pow(2.0, std::min(j, stages));
    sum += (1.0 - p) * pj * (w / 2.0);
    pj *= p;
  }
  return sum + pj * cw_min * std::pow(2.0, stages) / 2.0;
}

double tau_from(double cw_min, int stages, double p) {
  return 1.0 / (backoff_series(cw_min, stages, std::min(p, 1.0 - 1e-15)) + 1.0);
}

// Test-side scalar solver: substitute the AP response into the station
// equation and bisect. Shares no code with the library.
FixedPointSolution bisect_oracle(const ContentionParams& cp) {
  const auto pc_ap = [&](double ts) { return 1.0 - std::pow(1.0 - ts, cp.n); };
  const auto tau_ap = [&](double ts) {
    return tau_from(cp.cw_min_ap, cp.stages_ap, pc_ap(ts));
  };
  const auto residual = [&](double ts) {
    const double pc_sta = 1.0 - (1.0 - tau_ap(ts)) * std::pow(1.0 - ts, cp.n - 1);
    return ts - tau_from(cp.cw_min_sta, cp.stages_sta, pc_sta);
  };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) < 0 ? lo : hi) = mid;
  }
  FixedPointSolution s;
  s.tau_sta = 0.5 * (lo + hi);
  s.tau_ap = tau_ap(s.tau_sta);
  s.pc_ap = pc_ap(s.tau_sta);
  s.pc_sta = 1.0 - (1.0 - s.tau_ap) * std::pow(1.0 - s.tau_sta, cp.n - 1);
  return s;
}

}  // namespace

TEST_CASE("mean backoff: fixed values and the zero-window edge") {
  CHECK(model::expected_backoff_slots(15, 6, 0.0) == 7.5);
  CHECK(model::expected_backoff_slots(1023, 6, 0.0) == 511.5);
  CHECK(model::expected_backoff_slots(0, 6, 0.7) == 0.0);
  CHECK_THROWS_AS(model::expected_backoff_slots(15, 6, 1.0), std::domain_error);
  CHECK_THROWS_AS(model::expected_backoff_slots(15, 6, -0.1), std::domain_error);
  CHECK_THROWS_AS(model::expected_backoff_slots(-1, 6, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(model::expected_backoff_slots(15, -1, 0.1), std::invalid_argument);
}

TEST_CASE("mean backoff: closed form tracks the series everywhere, pole included") {
  std::vector<double> grid;
  for (double p = 0.0; p <= 0.9501; p += 0.01) grid.push_back(p);
  for (double p = 0.4999; p <= 0.50011; p += 1e-5) grid.push_back(p);
  for (int k = -20; k <= 20; ++k) grid.push_back(0.5 + k * 1e-7);
  for (double cw : {15.0, 31.0, 1023.0}) {
    for (int m : {0, 3, 6}) {
      for (double p : grid) {
        INFO("cw ", cw, " m ", m, " p ", p);
        const double closed = model::expected_backoff_slots(cw, m, p);
        REQUIRE(std::fabs(closed - backoff_series(cw, m, p)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("fixed point: degenerate modes") {
  ContentionParams cp;
  cp.n = 0;
  const FixedPointSolution s0 = model::solve_fixed_point(cp);
  CHECK(s0.tau_ap == doctest::Approx(1.0 / 8.5).epsilon(1e-12));
  CHECK(s0.tau_sta == 0.0);
  CHECK(s0.pc_ap == 0.0);
  CHECK(s0.pc_sta == 0.0);

  cp.n = 16;
  cp.no_contention = true;
  const FixedPointSolution s1 = model::solve_fixed_point(cp);
  CHECK(s1.tau_ap == doctest::Approx(1.0 / 8.5).epsilon(1e-12));
  CHECK(s1.tau_sta == 0.0);

  // Zero window means transmitting in every slot.
  cp.cw_min_ap = 0;
  CHECK(model::solve_fixed_point(cp).tau_ap == 1.0);
}

TEST_CASE("fixed point matches an independent scalar bisection") {
  for (int n : {1, 2, 4, 16, 64}) {
    ContentionParams cp;
    cp.n = n;
    const FixedPointSolution got = model::solve_fixed_point(cp);
    const FixedPointSolution want = bisect_oracle(cp);
    INFO("n ", n);
    REQUIRE(std::fabs(got.tau_ap - want.tau_ap) <= 1e-8);
    REQUIRE(std::fabs(got.tau_sta - want.tau_sta) <= 1e-8);
    REQUIRE(std::fabs(got.pc_ap - want.pc_ap) <= 1e-8);
    REQUIRE(std::fabs(got.pc_sta - want.pc_sta) <= 1e-8);
    REQUIRE(got.residual <= 1e-6);
  }

  // Asymmetric windows still agree with the oracle.
  ContentionParams cp;
  cp.n = 32;
  cp.cw_min_sta = 255;
  cp.stages_sta = 2;
  const FixedPointSolution got = model::solve_fixed_point(cp);
  const FixedPointSolution want = bisect_oracle(cp);
  CHECK(std::fabs(got.tau_sta - want.tau_sta) <= 1e-8);
  CHECK(std::fabs(got.tau_ap - want.tau_ap) <= 1e-8);
}

TEST_CASE("fixed point: one station with symmetric parameters is symmetric") {
  ContentionParams cp;
  cp.n = 1;
  const FixedPointSolution s = model::solve_fixed_point(cp);
  CHECK(std::fabs(s.tau_ap - s.tau_sta) <= 1e-9);
  CHECK(std::fabs(s.pc_ap - s.tau_sta) <= 1e-9);  // collides iff the peer fires
  CHECK(std::fabs(s.pc_sta - s.tau_ap) <= 1e-9);
}

TEST_CASE("fixed point: probabilities stay in range as load grows") {
  double prev_tau_sta = 1.0;
  for (int n = 1; n <= 128; n *= 2) {
    ContentionParams cp;
    cp.n = n;
    const FixedPointSolution s = model::solve_fixed_point(cp);
    CHECK(s.tau_ap > 0.0);
    CHECK(s.tau_ap <= 1.0);
    CHECK(s.tau_sta > 0.0);
    CHECK(s.tau_sta <= 1.0);
    CHECK(s.pc_ap >= 0.0);
    CHECK(s.pc_ap < 1.0);
    CHECK(s.pc_sta >= 0.0);
    CHECK(s.pc_sta < 1.0);
    // More contenders, more collisions, more caution per station.
    CHECK(s.tau_sta < prev_tau_sta);
    prev_tau_sta = s.tau_sta;
  }
  ContentionParams bad;
  bad.alpha = 1.5;
  CHECK_THROWS_AS(model::solve_fixed_point(bad), ConfigError);
}

TEST_CASE("slot distribution equals brute-force enumeration for two stations") {
  FixedPointSolution fp;
  fp.tau_ap = 0.1;
  fp.tau_sta = 0.07;
  ContentionParams cp;
  cp.n = 2;
  cp.alpha = 0.2;
  cp.beta = 0.8;
  const SlotDistribution got = model::slot_distribution(fp, cp);

  double a1 = 0, a2 = 0, a3 = 0, a4 = 0, b1 = 0, c1 = 0, c2 = 0, c3 = 0, c4 = 0;
  for (int ap = 0; ap < 2; ++ap) {
    for (int mask = 0; mask < 4; ++mask) {
      const int stas = (mask & 1) + (mask >> 1);
      double pr = ap ? fp.tau_ap : 1.0 - fp.tau_ap;
      pr *= std::pow(fp.tau_sta, stas) * std::pow(1.0 - fp.tau_sta, 2 - stas);
      if (!ap && stas == 0) {
        b1 += pr;
      } else if (ap && stas == 0) {
        a1 += cp.alpha * pr;
        a3 += (1 - cp.alpha) * cp.beta * pr;
        a4 += (1 - cp.alpha) * (1 - cp.beta) * pr;
      } else if (!ap && stas == 1) {
        a2 += pr;
      } else if (ap) {
        c1 += cp.alpha * pr;
        c2 += (1 - cp.alpha) * cp.beta * pr;
        c3 += (1 - cp.alpha) * (1 - cp.beta) * pr;
      } else {
        c4 += pr;
      }
    }
  }
  CHECK(got.a1 == doctest::Approx(a1).epsilon(1e-12));
  CHECK(got.a2 == doctest::Approx(a2).epsilon(1e-12));
  CHECK(got.a3 == doctest::Approx(a3).epsilon(1e-12));
  CHECK(got.a4 == doctest::Approx(a4).epsilon(1e-12));
  CHECK(got.b1 == doctest::Approx(b1).epsilon(1e-12));
  CHECK(got.c1 == doctest::Approx(c1).epsilon(1e-12));
  CHECK(got.c2 == doctest::Approx(c2).epsilon(1e-12));
  CHECK(got.c3 == doctest::Approx(c3).epsilon(1e-12));
  CHECK(std::fabs(got.c4 - c4) <= 1e-12);
  CHECK(std::fabs(got.sum() - 1.0) <= 1e-12);
}

TEST_CASE("slot distribution normalizes over a parameter grid") {
  for (double ta : {0.0, 0.01, 0.1, 0.5, 1.0}) {
    for (double ts : {0.0, 0.003, 0.05, 0.4}) {
      for (int n : {0, 1, 3, 16, 64}) {
        for (double alpha : {0.0, 0.2, 1.0}) {
          FixedPointSolution fp;
          fp.tau_ap = ta;
          fp.tau_sta = n > 0 ? ts : 0.0;
          ContentionParams cp;
          cp.n = n;
          cp.alpha = alpha;
          cp.beta = 0.8;
          const SlotDistribution s = model::slot_distribution(fp, cp);
          INFO("ta ", ta, " ts ", ts, " n ", n, " alpha ", alpha);
          REQUIRE(std::fabs(s.sum() - 1.0) <= 1e-12);
          for (double v : {s.a1, s.a2, s.a3, s.a4, s.b1, s.c1, s.c2, s.c3, s.c4}) {
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
          }
        }
      }
    }
  }
}

TEST_CASE("throughput assembly reconstructs by hand") {
  FixedPointSolution fp;
  SlotDistribution s;
  s.a1 = 0.05;
  s.a2 = 0.10;
  s.a3 = 0.04;
  s.a4 = 0.01;
  s.b1 = 0.70;
  s.c1 = 0.03;
  s.c2 = 0.02;
  s.c3 = 0.01;
  s.c4 = 0.04;
  frames::ExchangeDurations d;
  d.t_su = 1000;
  d.t_mu_d = 4000;
  d.t_mu_u = 5000;
  d.t_c_su = 150;
  d.t_c_mu = 250;
  frames::NaPerKind na;
  na.su = 2;
  na.mu_dl = 10;
  na.mu_ul = 8;

  const double t_e = 9.0;
  const double denom = 0.70 * 9 + (0.05 + 0.10) * 1009 + 0.04 * 4009 + 0.01 * 5009 +
                       (0.03 + 0.04) * 159 + (0.02 + 0.01) * 259;
  const double dl = (0.05 * 2 + 0.04 * 16 * 10) * 12000.0;
  const double ul = (0.10 * 2 + 0.01 * 16 * 8) * 12000.0;

  const model::ThroughputReport full =
      model::throughput(fp, s, d, t_e, na, 12000, 16, 1.0);
  CHECK(full.s_d_mbps == doctest::Approx(dl / denom).epsilon(1e-12));
  CHECK(full.s_u_mbps == doctest::Approx(ul / denom).epsilon(1e-12));
  CHECK(full.e_d_d_us == doctest::Approx(12000.0 / full.s_d_mbps).epsilon(1e-12));

  // Sounding scales both directions by the same airtime fraction.
  const model::ThroughputReport half =
      model::throughput(fp, s, d, t_e, na, 12000, 16, 0.5);
  CHECK(half.s_d_mbps == doctest::Approx(0.5 * full.s_d_mbps).epsilon(1e-12));
  CHECK(half.s_u_mbps == doctest::Approx(0.5 * full.s_u_mbps).epsilon(1e-12));

  CHECK_THROWS_AS(model::throughput(fp, s, d, 0.0, na, 12000, 16, 1.0), ConfigError);
  CHECK_THROWS_AS(model::throughput(fp, s, d, t_e, na, 12000, 16, 0.0), ConfigError);
  CHECK_THROWS_AS(model::throughput(fp, s, d, t_e, na, 12000, 16, 1.5), ConfigError);
}

TEST_CASE("throughput reports infinite service time when a direction is idle") {
  FixedPointSolution fp;
  SlotDistribution s;
  s.a1 = 0.2;
  s.b1 = 0.8;
  frames::ExchangeDurations d;
  d.t_su = 500;
  frames::NaPerKind na;
  const model::ThroughputReport r = model::throughput(fp, s, d, 9.0, na, 12000, 0, 1.0);
  CHECK(r.s_u_mbps == 0.0);
  CHECK(std::isinf(r.e_d_u_us));
  CHECK(r.s_d_mbps > 0.0);
}
