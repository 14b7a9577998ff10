// Command line front end: analytical model, simulator, parameter sweeps and
// cross-validation over one shared scenario description.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "axsat/config.hpp"
#include "axsat/engine.hpp"
#include "axsat/error.hpp"
#include "axsat/sim.hpp"
#include "axsat/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitInternal = 3;

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;
  std::uint64_t seed = 1;
  int reps = 20;
  double sim_time_s = 10.0;
  std::string out;
};

void add_config_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "scenario file with key = value lines");
  cmd->add_option("--set", o.sets, "override one field as key=value (repeatable)")
      ->expected(-1);
}

void add_sim_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--seed", o.seed, "base RNG seed");
  cmd->add_option("--reps", o.reps, "independent replications")->check(CLI::PositiveNumber);
  cmd->add_option("--sim-time", o.sim_time_s, "simulated seconds per replication")
      ->check(CLI::PositiveNumber);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

axsat::cfg::WlanConfig make_config(const CommonOpts& o) {
  axsat::cfg::WlanConfig c;
  if (!o.config_path.empty()) c = axsat::cfg::load_file(o.config_path);
  for (const std::string& kv : o.sets) {
    const auto pos = kv.find('=');
    if (pos == std::string::npos)
      throw axsat::ConfigError("--set expects key=value, got \"" + kv + "\"");
    axsat::cfg::set_field(c, trim(kv.substr(0, pos)), trim(kv.substr(pos + 1)));
  }
  for (const std::string& w : c.validate()) std::fprintf(stderr, "warning: %s\n", w.c_str());
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw axsat::ConfigError("cannot write " + path);
}

void emit_rows(const std::vector<axsat::sweep::Row>& rows, const std::string& out) {
  const std::string csv = axsat::sweep::to_csv(rows);
  if (out.empty())
    std::fputs(csv.c_str(), stdout);
  else
    write_text(out, csv);
}

void print_scenario(const axsat::cfg::WlanConfig& c, const axsat::engine::DerivedScenario& ds) {
  std::printf("scenario        802.11%s, %d MHz, MCS %d%s, %d station%s\n",
              c.amendment.c_str(), c.b, c.mcs, c.dcm ? " (DCM)" : "", c.n,
              c.n == 1 ? "" : "s");
  std::printf("su              %d streams, N_a=%lld\n", ds.su_streams,
              static_cast<long long>(ds.na.su));
  if (ds.alloc.v_u > 0)
    std::printf("mu              %d users on %d RU x %d MHz, %d streams each, "
                "N_a dl=%lld ul=%lld\n",
                ds.alloc.v_u, ds.alloc.n_ru, ds.alloc.b_ru_mhz, ds.alloc.v_s,
                static_cast<long long>(ds.na.mu_dl), static_cast<long long>(ds.na.mu_ul));
  std::printf("exchange us     su=%.1f mu_dl=%.1f mu_ul=%.1f col_su=%.1f col_mu=%.1f\n",
              ds.durs.t_su, ds.durs.t_mu_d, ds.durs.t_mu_u, ds.durs.t_c_su, ds.durs.t_c_mu);
  if (ds.t_csi_us > 0)
    std::printf("sounding        t_csi=%.1f us every %.4g ms, airtime factor %.5f\n",
                ds.t_csi_us, 1000.0 / c.lambda_csi, ds.csi_factor);
  else
    std::printf("sounding        off\n");
}

int cmd_analyze(const CommonOpts& o) {
  const axsat::cfg::WlanConfig c = make_config(o);
  const axsat::engine::DerivedScenario ds = axsat::engine::derive(c);
  const axsat::model::ThroughputReport rep = axsat::engine::analyze(c);
  print_scenario(c, ds);
  std::printf("fixed point     tau_ap=%.6g tau_sta=%.6g pc_ap=%.6g pc_sta=%.6g "
              "(%d iterations)\n",
              rep.fp.tau_ap, rep.fp.tau_sta, rep.fp.pc_ap, rep.fp.pc_sta,
              rep.fp.iterations);
  std::printf("throughput dl   %.3f Mb/s\n", rep.s_d_mbps);
  std::printf("throughput ul   %.3f Mb/s\n", rep.s_u_mbps);
  if (!o.out.empty())
    emit_rows({axsat::sweep::analysis_row("n", c.n, c)}, o.out);
  return kExitOk;
}

int cmd_simulate(const CommonOpts& o) {
  const axsat::cfg::WlanConfig c = make_config(o);
  const axsat::engine::DerivedScenario ds = axsat::engine::derive(c);
  axsat::sim::SimConfig sc;
  sc.wlan = c;
  sc.seed = o.seed;
  sc.replications = o.reps;
  sc.sim_time_s = o.sim_time_s;
  const axsat::sim::SimResult res = axsat::sim::run_replicated(sc);
  print_scenario(c, ds);
  std::printf("simulated       %d x %.4g s, seed %llu\n", res.replications, o.sim_time_s,
              static_cast<unsigned long long>(o.seed));
  std::printf("attempt rates   tau_ap=%.6g tau_sta=%.6g pc_ap=%.6g pc_sta=%.6g\n",
              res.tau_ap_hat, res.tau_sta_hat, res.pc_ap_hat, res.pc_sta_hat);
  const double total = res.duration_us;
  if (total > 0)
    std::printf("airtime         empty %.2f%%  success %.2f%%  collision %.2f%%  "
                "sounding %.2f%%\n",
                100 * res.air_empty_us / total, 100 * res.air_success_us / total,
                100 * res.air_collision_us / total, 100 * res.air_sounding_us / total);
  std::printf("throughput dl   %.3f Mb/s (std %.3f)\n", res.s_d_mbps, res.s_d_std);
  std::printf("throughput ul   %.3f Mb/s (std %.3f)\n", res.s_u_mbps, res.s_u_std);
  if (!o.out.empty())
    emit_rows({axsat::sweep::sim_row("n", c.n, c, o.seed, o.reps, o.sim_time_s)}, o.out);
  return kExitOk;
}

axsat::sweep::Engine parse_engine(const std::string& s) {
  if (s == "analysis") return axsat::sweep::Engine::Analysis;
  if (s == "sim") return axsat::sweep::Engine::Sim;
  return axsat::sweep::Engine::Both;
}

int cmd_sweep(const CommonOpts& o, const std::string& param,
              const std::vector<double>& values, const std::string& engine) {
  const axsat::cfg::WlanConfig base = make_config(o);
  axsat::sweep::SweepSpec spec;
  spec.parameter = param;
  spec.values = values;
  spec.engine = parse_engine(engine);
  spec.seed = o.seed;
  spec.replications = o.reps;
  spec.sim_time_s = o.sim_time_s;
  emit_rows(axsat::sweep::run_sweep(base, spec), o.out);
  return kExitOk;
}

int cmd_validate(const CommonOpts& o, double tolerance) {
  const axsat::cfg::WlanConfig c = make_config(o);
  const axsat::model::ThroughputReport rep = axsat::engine::analyze(c);
  axsat::sim::SimConfig sc;
  sc.wlan = c;
  sc.seed = o.seed;
  sc.replications = o.reps;
  sc.sim_time_s = o.sim_time_s;
  const axsat::sim::SimResult res = axsat::sim::run_replicated(sc);

  bool ok = true;
  const auto check = [&](const char* label, double ana, double simv) {
    // Both engines at zero means the direction is simply off; skip the ratio.
    if (ana == 0 && simv < 1e-9) {
      std::printf("%-4s analysis %12.3f  sim %12.3f  (both zero)\n", label, ana, simv);
      return;
    }
    const double rel = std::abs(simv - ana) / std::max(std::abs(ana), 1e-12);
    const bool pass = rel <= tolerance;
    ok = ok && pass;
    std::printf("%-4s analysis %12.3f  sim %12.3f  rel %.4f  %s\n", label, ana, simv, rel,
                pass ? "ok" : "MISMATCH");
  };
  check("dl", rep.s_d_mbps, res.s_d_mbps);
  check("ul", rep.s_u_mbps, res.s_u_mbps);
  std::printf("%s (tolerance %.3f)\n", ok ? "agreement" : "disagreement", tolerance);
  return ok ? kExitOk : kExitValidationFailed;
}

int cmd_presets_list() {
  for (const axsat::sweep::Preset& p : axsat::sweep::presets()) {
    std::printf("%-8s %s\n", p.id.c_str(), p.description.c_str());
    for (const axsat::sweep::PresetSeries& s : p.series)
      std::printf("         series %-10s sweeps %s over %zu values\n", s.name.c_str(),
                  s.parameter.c_str(), s.values.size());
  }
  return kExitOk;
}

int cmd_presets_run(const std::string& id, const std::string& prefix,
                    const std::string& engine, const CommonOpts& o) {
  const axsat::sweep::Preset* p = axsat::sweep::find_preset(id);
  if (!p) throw axsat::ConfigError("unknown preset \"" + id + "\" (see: presets list)");
  const std::string stem = prefix.empty() ? p->id : prefix;
  for (const axsat::sweep::PresetSeries& s : p->series) {
    axsat::sweep::SweepSpec spec;
    spec.parameter = s.parameter;
    spec.values = s.values;
    spec.engine = parse_engine(engine);
    spec.seed = o.seed;
    spec.replications = o.reps;
    spec.sim_time_s = o.sim_time_s;
    const std::string path = stem + "_" + s.name + ".csv";
    write_text(path, axsat::sweep::to_csv(axsat::sweep::run_sweep(s.config, spec)));
    std::printf("wrote %s\n", path.c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"802.11ax saturation throughput: analytical model and simulator"};
  app.require_subcommand(1);

  CommonOpts o;

  CLI::App* analyze = app.add_subcommand("analyze", "closed-form throughput for one scenario");
  add_config_opts(analyze, o);
  analyze->add_option("--out", o.out, "also write the result as one CSV row");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo throughput for one scenario");
  add_config_opts(simulate, o);
  add_sim_opts(simulate, o);
  simulate->add_option("--out", o.out, "also write the result as one CSV row");

  CLI::App* swp = app.add_subcommand("sweep", "vary one field, emit CSV");
  add_config_opts(swp, o);
  add_sim_opts(swp, o);
  std::string param;
  std::vector<double> values;
  std::string engine = "analysis";
  swp->add_option("--param", param, "field to vary")->required();
  swp->add_option("--values", values, "comma separated values")->required()->delimiter(',');
  swp->add_option("--engine", engine, "analysis, sim or both")
      ->check(CLI::IsMember({"analysis", "sim", "both"}));
  swp->add_option("--out", o.out, "CSV path (stdout when omitted)");

  CLI::App* validate = app.add_subcommand("validate", "compare the two engines on one scenario");
  add_config_opts(validate, o);
  add_sim_opts(validate, o);
  double tolerance = 0.03;
  validate->add_option("--tolerance", tolerance, "max relative disagreement")
      ->check(CLI::NonNegativeNumber);

  CLI::App* presets = app.add_subcommand("presets", "canned sweep collections");
  CLI::App* plist = presets->add_subcommand("list", "show available presets");
  CLI::App* prun = presets->add_subcommand("run", "run one preset, one CSV per series");
  presets->require_subcommand(1);
  std::string preset_id, prefix;
  std::string preset_engine = "analysis";
  prun->add_option("id", preset_id, "preset id")->required();
  prun->add_option("--out", prefix, "output file prefix (default: preset id)");
  prun->add_option("--engine", preset_engine, "analysis, sim or both")
      ->check(CLI::IsMember({"analysis", "sim", "both"}));
  add_sim_opts(prun, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*analyze) return cmd_analyze(o);
    if (*simulate) return cmd_simulate(o);
    if (*swp) return cmd_sweep(o, param, values, engine);
    if (*validate) return cmd_validate(o, tolerance);
    if (*plist) return cmd_presets_list();
    if (*prun) return cmd_presets_run(preset_id, prefix, preset_engine, o);
  } catch (const axsat::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitConfigError;
}
