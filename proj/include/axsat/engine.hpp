#pragma once
#include "axsat/config.hpp"
#include "axsat/frames.hpp"
#include "axsat/model.hpp"
#include "axsat/sounding.hpp"

namespace axsat::engine {

// Everything both engines need, computed once from a validated config so
// the analytical model and the simulator can never disagree on durations,
// allocation or aggregation.
struct DerivedScenario {
  phy::PhyProfile profile;
  phy::Mcs mcs;
  frames::FrameConstants frame;
  frames::TimingConstants timing;
  int su_streams = 1;
  sched::RuAllocation alloc;  // v_u == 0 when there are no stations
  frames::NaPerKind na;
  frames::ExchangeDurations durs;
  double t_csi_us = 0;
  double csi_factor = 1.0;
  model::ContentionParams contention;
};

DerivedScenario derive(const cfg::WlanConfig& c);

model::ThroughputReport analyze(const cfg::WlanConfig& c);

}  // namespace axsat::engine
