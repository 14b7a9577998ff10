#include "axsat/sweep.hpp"

#include <cstdio>

#include "axsat/engine.hpp"
#include "axsat/error.hpp"
#include "axsat/sim.hpp"

namespace axsat::sweep {

std::string fmt6(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string csv_header() {
  return "parameter,value,engine,s_d,s_u,s_d_std,s_u_std,tau_ap,tau_sta,pc_ap,pc_sta,"
         "csi_factor\n";
}

std::string to_csv(const std::vector<Row>& rows) {
  std::string out = csv_header();
  for (const Row& r : rows) {
    out += r.parameter;
    out += ',';
    out += fmt6(r.value);
    out += ',';
    out += r.engine;
    for (double v : {r.s_d, r.s_u, r.s_d_std, r.s_u_std, r.tau_ap, r.tau_sta, r.pc_ap,
                     r.pc_sta, r.csi_factor}) {
      out += ',';
      out += fmt6(v);
    }
    out += '\n';
  }
  return out;
}

Row analysis_row(const std::string& parameter, double value, const cfg::WlanConfig& c) {
  const model::ThroughputReport rep = engine::analyze(c);
  Row r;
  r.parameter = parameter;
  r.value = value;
  r.engine = "analysis";
  r.s_d = rep.s_d_mbps;
  r.s_u = rep.s_u_mbps;
  r.tau_ap = rep.fp.tau_ap;
  r.tau_sta = rep.fp.tau_sta;
  r.pc_ap = rep.fp.pc_ap;
  r.pc_sta = rep.fp.pc_sta;
  r.csi_factor = rep.csi_factor;
  return r;
}

Row sim_row(const std::string& parameter, double value, const cfg::WlanConfig& c,
            std::uint64_t seed, int replications, double sim_time_s) {
  sim::SimConfig sc;
  sc.wlan = c;
  sc.seed = seed;
  sc.replications = replications;
  sc.sim_time_s = sim_time_s;
  const sim::SimResult res = sim::run_replicated(sc);
  Row r;
  r.parameter = parameter;
  r.value = value;
  r.engine = "sim";
  r.s_d = res.s_d_mbps;
  r.s_u = res.s_u_mbps;
  r.s_d_std = res.s_d_std;
  r.s_u_std = res.s_u_std;
  r.tau_ap = res.tau_ap_hat;
  r.tau_sta = res.tau_sta_hat;
  r.pc_ap = res.pc_ap_hat;
  r.pc_sta = res.pc_sta_hat;
  r.csi_factor = engine::derive(c).csi_factor;
  return r;
}

std::vector<Row> run_sweep(const cfg::WlanConfig& base, const SweepSpec& spec) {
  if (!cfg::field_is_numeric(spec.parameter))
    throw ConfigError("parameter \"" + spec.parameter + "\" cannot be swept");
  if (spec.values.empty()) throw ConfigError("sweep needs at least one value");
  std::vector<Row> rows;
  for (double v : spec.values) {
    cfg::WlanConfig c = base;
    cfg::set_field_numeric(c, spec.parameter, v);
    if (spec.engine != Engine::Sim) rows.push_back(analysis_row(spec.parameter, v, c));
    if (spec.engine != Engine::Analysis)
      rows.push_back(
          sim_row(spec.parameter, v, c, spec.seed, spec.replications, spec.sim_time_s));
  }
  return rows;
}

namespace {

cfg::WlanConfig with(std::initializer_list<std::pair<const char*, const char*>> kv) {
  cfg::WlanConfig c;
  for (const auto& [key, value] : kv) cfg::set_field(c, key, value);
  return c;
}

std::vector<double> seq(double lo, double hi, double step) {
  std::vector<double> v;
  for (double x = lo; x <= hi + 1e-9; x += step) v.push_back(x);
  return v;
}

std::vector<Preset> build_presets() {
  std::vector<Preset> out;
  const std::vector<double> n_values = {1, 2, 4, 6, 8, 12, 16, 20, 24, 28, 32, 40, 48, 56, 64};
  const std::vector<double> mcs_values = seq(0, 11, 1);
  const std::vector<double> cw_values = {15, 31, 63, 127, 255, 511, 1023};

  out.push_back(
      {"fig3a",
       "DL and UL saturation throughput vs station count, 802.11ax vs 802.11ac",
       {
           {"ax", with({}), "n", n_values},
           {"ax_nocsi", with({{"lambda_csi", "0"}}), "n", n_values},
           {"ac", with({{"amendment", "ac"}, {"beta", "1"}, {"max_ampdu", "64"}}), "n",
            n_values},
           {"ac_nocsi",
            with({{"amendment", "ac"}, {"beta", "1"}, {"max_ampdu", "64"},
                  {"lambda_csi", "0"}}),
            "n", n_values},
       }});

  out.push_back(
      {"fig3b",
       "contention-free anchors per MCS: single-user DL and full DL MU",
       {
           {"su", with({{"no_contention", "true"}, {"n", "1"}, {"alpha", "1"},
                        {"max_ampdu", "1"}, {"lambda_csi", "0"}}),
            "mcs", mcs_values},
           {"mu_dl", with({{"no_contention", "true"}, {"n", "64"}, {"alpha", "0"},
                           {"beta", "1"}, {"lambda_csi", "0"}}),
            "mcs", mcs_values},
       }});

  out.push_back({"fig4a",
                 "throughput vs alpha (share of SU transmissions at the AP)",
                 {
                     {"n4", with({{"n", "4"}}), "alpha", seq(0, 1, 0.1)},
                     {"n16", with({{"n", "16"}}), "alpha", seq(0, 1, 0.1)},
                     {"n64", with({{"n", "64"}}), "alpha", seq(0, 1, 0.1)},
                 }});

  out.push_back({"fig4b",
                 "throughput vs beta (DL share of MU transmissions)",
                 {
                     {"n4", with({{"n", "4"}}), "beta", seq(0, 1, 0.1)},
                     {"n16", with({{"n", "16"}}), "beta", seq(0, 1, 0.1)},
                     {"n64", with({{"n", "64"}}), "beta", seq(0, 1, 0.1)},
                 }});

  out.push_back({"fig5",
                 "throughput vs sounding rate",
                 {
                     {"n8", with({{"n", "8"}}), "lambda_csi", {0, 5, 10, 20, 50, 100, 200}},
                     {"n64", with({{"n", "64"}}), "lambda_csi", {0, 5, 10, 20, 50, 100, 200}},
                 }});

  const std::vector<double> ampdu_values = {1, 2, 4, 8, 16, 32, 64, 96, 128, 192, 256};
  out.push_back({"fig6",
                 "throughput vs aggregation limit on an 80 MHz channel",
                 {
                     {"n8", with({{"n", "8"}, {"b", "80"}}), "max_ampdu", ampdu_values},
                     {"n64", with({{"n", "64"}, {"b", "80"}}), "max_ampdu", ampdu_values},
                 }});

  out.push_back(
      {"fig7",
       "throughput vs channel width",
       {
           {"ampdu64", with({{"n", "32"}, {"max_ampdu", "64"}}), "b", {20, 40, 80, 160}},
           {"ampdu256", with({{"n", "32"}, {"max_ampdu", "256"}}), "b", {20, 40, 80, 160}},
       }});

  out.push_back({"fig8",
                 "throughput vs AP antenna count per channel width",
                 {
                     {"b20", with({{"n", "32"}, {"b", "20"}}), "m_ap", seq(1, 8, 1)},
                     {"b40", with({{"n", "32"}, {"b", "40"}}), "m_ap", seq(1, 8, 1)},
                     {"b80", with({{"n", "32"}, {"b", "80"}}), "m_ap", seq(1, 8, 1)},
                     {"b160", with({{"n", "32"}, {"b", "160"}}), "m_ap", seq(1, 8, 1)},
                 }});

  out.push_back({"fig9a",
                 "throughput vs station contention window, mostly-DL traffic",
                 {
                     {"n8", with({{"n", "8"}}), "cw_min_sta", cw_values},
                     {"n32", with({{"n", "32"}}), "cw_min_sta", cw_values},
                 }});

  out.push_back(
      {"fig9b",
       "throughput vs station contention window, mostly-UL traffic",
       {
           {"n8", with({{"n", "8"}, {"beta", "0.2"}}), "cw_min_sta", cw_values},
           {"n32", with({{"n", "32"}, {"beta", "0.2"}}), "cw_min_sta", cw_values},
       }});

  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = build_presets();
  return table;
}

const Preset* find_preset(const std::string& id) {
  for (const Preset& p : presets())
    if (p.id == id) return &p;
  return nullptr;
}

}  // namespace axsat::sweep
