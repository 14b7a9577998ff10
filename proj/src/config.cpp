#include "axsat/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "axsat/error.hpp"

namespace axsat::cfg {

phy::Amendment WlanConfig::amendment_tag() const {
  if (amendment == "ax") return phy::Amendment::Ax;
  if (amendment == "ac") return phy::Amendment::Ac;
  throw ConfigError("amendment must be \"ax\" or \"ac\", got \"" + amendment + "\"");
}

int WlanConfig::backoff_stages(int cw_min, int cw_max) {
  if (cw_min < 0 || cw_max < cw_min)
    throw ConfigError("need 0 <= cw_min <= cw_max");
  if (cw_min == 0) return 0;
  const double m = std::log2((cw_max + 1.0) / (cw_min + 1.0));
  return static_cast<int>(std::lround(m));
}

namespace {

struct Field {
  const char* name;
  bool numeric;
  std::function<std::string(const WlanConfig&)> get;
  std::function<void(WlanConfig&, const std::string&)> set;
  std::function<double(const WlanConfig&)> num;
  std::function<void(WlanConfig&, double)> set_num;
};

std::int64_t parse_i64(const std::string& name, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (errno != 0 || end == v.c_str() || *end != '\0')
    throw ConfigError(std::string(name) + ": expected an integer, got \"" + v + "\"");
  return x;
}

double parse_dbl(const std::string& name, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(v.c_str(), &end);
  if (errno != 0 || end == v.c_str() || *end != '\0' || !std::isfinite(x))
    throw ConfigError(std::string(name) + ": expected a number, got \"" + v + "\"");
  return x;
}

bool parse_bool(const std::string& name, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(std::string(name) + ": expected true/false, got \"" + v + "\"");
}

std::string fmt_int(std::int64_t x) { return std::to_string(x); }

// Shortest decimal form that parses back to the same double.
std::string fmt_dbl(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  if (std::strtod(buf, nullptr) != x) std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::int64_t checked_int(const char* name, double v, std::int64_t lo, std::int64_t hi) {
  if (std::fabs(v - std::round(v)) > 1e-9)
    throw ConfigError(std::string(name) + ": expected an integer value");
  const double r = std::round(v);
  if (r < static_cast<double>(lo) || r > static_cast<double>(hi))
    throw ConfigError(std::string(name) + ": value out of range");
  return static_cast<std::int64_t>(r);
}

Field f_i64(const char* name, std::int64_t WlanConfig::* p) {
  return {name, true,
          [p](const WlanConfig& c) { return fmt_int(c.*p); },
          [p, name](WlanConfig& c, const std::string& v) { c.*p = parse_i64(name, v); },
          [p](const WlanConfig& c) { return static_cast<double>(c.*p); },
          [p, name](WlanConfig& c, double v) {
            c.*p = checked_int(name, v, INT64_MIN, INT64_MAX);
          }};
}

Field f_int(const char* name, int WlanConfig::* p) {
  return {name, true,
          [p](const WlanConfig& c) { return fmt_int(c.*p); },
          [p, name](WlanConfig& c, const std::string& v) {
            c.*p = static_cast<int>(parse_i64(name, v));
          },
          [p](const WlanConfig& c) { return static_cast<double>(c.*p); },
          [p, name](WlanConfig& c, double v) {
            c.*p = static_cast<int>(checked_int(name, v, INT32_MIN, INT32_MAX));
          }};
}

Field f_dbl(const char* name, double WlanConfig::* p) {
  return {name, true,
          [p](const WlanConfig& c) { return fmt_dbl(c.*p); },
          [p, name](WlanConfig& c, const std::string& v) { c.*p = parse_dbl(name, v); },
          [p](const WlanConfig& c) { return c.*p; },
          [p](WlanConfig& c, double v) { c.*p = v; }};
}

Field f_bool(const char* name, bool WlanConfig::* p) {
  return {name, false,
          [p](const WlanConfig& c) { return (c.*p) ? "true" : "false"; },
          [p, name](WlanConfig& c, const std::string& v) { c.*p = parse_bool(name, v); },
          nullptr, nullptr};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(f_int("n", &WlanConfig::n));
    f.push_back(f_dbl("alpha", &WlanConfig::alpha));
    f.push_back(f_dbl("beta", &WlanConfig::beta));
    f.push_back({"amendment", false,
                 [](const WlanConfig& c) { return c.amendment; },
                 [](WlanConfig& c, const std::string& v) {
                   c.amendment = v;
                   c.amendment_tag();  // reject anything unknown right away
                 },
                 nullptr, nullptr});
    f.push_back(f_bool("no_contention", &WlanConfig::no_contention));
    f.push_back(f_int("b", &WlanConfig::b));
    f.push_back(f_int("mcs", &WlanConfig::mcs));
    f.push_back(f_bool("dcm", &WlanConfig::dcm));
    f.push_back(f_int("m_ap", &WlanConfig::m_ap));
    f.push_back(f_int("m_sta", &WlanConfig::m_sta));
    f.push_back(f_i64("l_d", &WlanConfig::l_d));
    f.push_back(f_i64("max_ampdu", &WlanConfig::max_ampdu));
    f.push_back(f_dbl("max_ppdu", &WlanConfig::max_ppdu));
    f.push_back(f_int("cw_min_ap", &WlanConfig::cw_min_ap));
    f.push_back(f_int("cw_min_sta", &WlanConfig::cw_min_sta));
    f.push_back(f_int("cw_max_ap", &WlanConfig::cw_max_ap));
    f.push_back(f_int("cw_max_sta", &WlanConfig::cw_max_sta));
    f.push_back(f_dbl("aifs", &WlanConfig::aifs));
    f.push_back(f_dbl("aifs_csi", &WlanConfig::aifs_csi));
    f.push_back(f_dbl("sifs", &WlanConfig::sifs));
    f.push_back(f_dbl("t_e", &WlanConfig::t_e));
    f.push_back(f_dbl("sigma", &WlanConfig::sigma));
    f.push_back(f_dbl("sigma_legacy", &WlanConfig::sigma_legacy));
    f.push_back(f_dbl("lambda_csi", &WlanConfig::lambda_csi));
    f.push_back(f_int("k", &WlanConfig::k));
    f.push_back(f_int("n_ang", &WlanConfig::n_ang));
    f.push_back(f_int("b_psi", &WlanConfig::b_psi));
    f.push_back(f_int("b_phi", &WlanConfig::b_phi));
    f.push_back(f_int("n_sg", &WlanConfig::n_sg));
    return f;
  }();
  return table;
}

const Field& find_field(const std::string& name) {
  for (const Field& f : fields())
    if (name == f.name) return f;
  std::string known;
  for (const Field& f : fields()) {
    if (!known.empty()) known += ", ";
    known += f.name;
  }
  throw ConfigError("unknown parameter \"" + name + "\" (known: " + known + ")");
}

}  // namespace

std::vector<std::string> field_names() {
  std::vector<std::string> out;
  for (const Field& f : fields()) out.emplace_back(f.name);
  return out;
}

bool field_is_numeric(const std::string& name) { return find_field(name).numeric; }

void set_field(WlanConfig& c, const std::string& name, const std::string& value) {
  find_field(name).set(c, value);
}

void set_field_numeric(WlanConfig& c, const std::string& name, double value) {
  const Field& f = find_field(name);
  if (!f.numeric) throw ConfigError("parameter \"" + name + "\" is not numeric");
  f.set_num(c, value);
}

double get_field_numeric(const WlanConfig& c, const std::string& name) {
  const Field& f = find_field(name);
  if (!f.numeric) throw ConfigError("parameter \"" + name + "\" is not numeric");
  return f.num(c);
}

std::string serialize(const WlanConfig& c) {
  std::string out;
  for (const Field& f : fields()) {
    out += f.name;
    out += " = ";
    out += f.get(c);
    out += "\n";
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

WlanConfig parse(const std::string& text) {
  WlanConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    set_field(c, key, value);
  }
  return c;
}

WlanConfig load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::vector<std::string> WlanConfig::validate() const {
  std::vector<std::string> warnings;
  const phy::Amendment a = amendment_tag();

  if (l_d < 1) throw ConfigError("l_d must be >= 1 bit");
  if (max_ampdu < 1) throw ConfigError("max_ampdu must be >= 1");
  if (max_ppdu <= 0) throw ConfigError("max_ppdu must be positive");
  if (n < 0) throw ConfigError("n must be >= 0");
  if (m_ap < 1 || m_sta < 1) throw ConfigError("antenna counts must be >= 1");
  if (alpha < 0 || alpha > 1) throw ConfigError("alpha must lie in [0, 1]");
  if (beta < 0 || beta > 1) throw ConfigError("beta must lie in [0, 1]");
  if (lambda_csi < 0) throw ConfigError("lambda_csi must be >= 0");
  if (k < 1) throw ConfigError("k must be >= 1");
  if (n_ang < 0 || b_psi < 0 || b_phi < 0) throw ConfigError("sounding sizes must be >= 0");
  if (n_sg < 1) throw ConfigError("n_sg must be >= 1");
  backoff_stages(cw_min_ap, cw_max_ap);
  backoff_stages(cw_min_sta, cw_max_sta);

  phy::data_subcarriers(b, a);
  if (!phy::mcs_valid(mcs, dcm, b, a))
    throw ConfigError("MCS " + std::to_string(mcs) + (dcm ? "+DCM" : "") +
                      " is not usable at " + std::to_string(b) + " MHz under 802.11" +
                      phy::amendment_name(a));

  if (a == phy::Amendment::Ac) {
    if (beta != 1.0)
      throw ConfigError("802.11ac has no UL MU transmissions; set beta = 1");
    if (max_ampdu > 64)
      throw ConfigError("802.11ac caps the aggregate at 64 MPDUs; lower max_ampdu");
  }

  if (sifs <= 0 || aifs <= 0 || aifs_csi <= 0 || t_e <= 0)
    throw ConfigError("interframe spaces and slot time must be positive");
  if (!(sifs < aifs_csi && aifs_csi < aifs))
    throw ConfigError("expected sifs < aifs_csi < aifs");
  if (sigma <= 0 || sigma_legacy <= 0) throw ConfigError("symbol durations must be positive");
  const double mult = sigma / sigma_legacy;
  if (std::fabs(mult - std::round(mult)) > 1e-9)
    throw ConfigError("sigma must be an integer multiple of sigma_legacy");

  if (m_ap > 8)
    warnings.push_back("m_ap above 8 exceeds the usual HE hardware limit");
  if (m_sta > m_ap)
    warnings.push_back("m_sta above m_ap: extra station antennas are never used");
  return warnings;
}

}  // namespace axsat::cfg
