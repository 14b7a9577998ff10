#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "axsat/config.hpp"

namespace axsat::sweep {

enum class Engine { Analysis, Sim, Both };

// One CSV record. The schema is fixed; analysis rows carry zero stds and
// fixed-point probabilities, simulation rows carry empirical ones.
struct Row {
  std::string parameter;
  double value = 0;
  std::string engine;
  double s_d = 0, s_u = 0;
  double s_d_std = 0, s_u_std = 0;
  double tau_ap = 0, tau_sta = 0;
  double pc_ap = 0, pc_sta = 0;
  double csi_factor = 1;
};

std::string fmt6(double x);  // 6 significant digits, C locale
std::string csv_header();
std::string to_csv(const std::vector<Row>& rows);

struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
  Engine engine = Engine::Analysis;
  std::uint64_t seed = 1;
  int replications = 20;
  double sim_time_s = 10.0;
};

Row analysis_row(const std::string& parameter, double value, const cfg::WlanConfig& c);
Row sim_row(const std::string& parameter, double value, const cfg::WlanConfig& c,
            std::uint64_t seed, int replications, double sim_time_s);

// Rows in value order; engine Both emits the analysis row first per value.
std::vector<Row> run_sweep(const cfg::WlanConfig& base, const SweepSpec& spec);

// Canned parameter sweeps for the recurring experiment shapes.
struct PresetSeries {
  std::string name;
  cfg::WlanConfig config;
  std::string parameter;
  std::vector<double> values;
};

struct Preset {
  std::string id;
  std::string description;
  std::vector<PresetSeries> series;
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& id);

}  // namespace axsat::sweep
