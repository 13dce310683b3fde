#include "isac/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "isac/constants.hpp"

namespace isac {

namespace {

bool has(double v) { return !std::isnan(v); }

}  // namespace

std::vector<Violation> validate(const SystemConfig& c) {
  std::vector<Violation> v;
  auto add = [&](const std::string& field, const std::string& rule) {
    v.push_back({field, rule});
  };
  if (c.m_beams != 2 * c.d_spread) add("m_beams", "M = 2d");
  if (c.m_beams < 1) add("m_beams", "M >= 1");
  if (!(c.lambda_bs > 0)) add("lambda_bs", "intensity > 0");
  if (!(c.lambda_cl > 0)) add("lambda_cl", "intensity > 0");
  if (!(c.g_max > 0)) add("g_max", "gain > 0");
  if (!(c.c_los > 0)) add("c_los", "intercept > 0");
  if (!(c.c_nlos > 0)) add("c_nlos", "intercept > 0");
  if (!(c.eta_los > 0)) add("eta_los", "exponent > 0");
  if (!(c.eta_nlos > 0)) add("eta_nlos", "exponent > 0");
  if (c.m_los < 1) add("m_los", "integer shape >= 1");
  if (c.m_nlos < 1) add("m_nlos", "integer shape >= 1");
  if (!(c.gamma_blockage >= 0)) add("gamma_blockage", "gamma >= 0");
  if (!(c.bandwidth_hz > 0)) add("bandwidth_hz", "bandwidth > 0");
  if (!(c.sigma_avg_target > 0)) add("sigma_avg_target", "mean RCS > 0");
  if (!(c.sigma_avg_clutter > 0)) add("sigma_avg_clutter", "mean RCS > 0");
  if (!(c.weibull_k > 0)) add("weibull_k", "shape > 0");
  if (!(c.zeta_sic >= 0 && c.zeta_sic <= 1)) add("zeta_sic", "zeta in [0,1]");
  if (!(c.temperature_k > 0)) add("temperature_k", "temperature > 0");
  if (!(c.carrier_hz > 0)) add("carrier_hz", "carrier > 0");
  if (c.n_coop < 1) add("n_coop", "N >= 1");
  if (!(c.misalign_var > 0)) add("misalign_var", "variance > 0");
  if (!(c.misalign_max > 0 && c.misalign_max < kPi))
    add("misalign_max", "theta_M in (0, pi)");
  if (!(c.threshold_sensing > 0)) add("threshold_sensing", "threshold > 0");
  if (!(c.threshold_comm > 0)) add("threshold_comm", "threshold > 0");
  if (c.b_sc_bits < 1) add("b_sc_bits", "payload >= 1 bit");

  bool direct = has(c.p_sense) || has(c.p_comm);
  bool energy = has(c.alpha_split) || has(c.energy_per_slot);
  if (direct && energy) {
    add("p_sense", "power entry styles must not be mixed: give p_sense/p_comm "
                   "or alpha_split/energy_per_slot, not both");
  } else if (direct) {
    if (!(has(c.p_sense) && c.p_sense > 0)) add("p_sense", "power > 0");
    if (!(has(c.p_comm) && c.p_comm > 0)) add("p_comm", "power > 0");
  } else if (energy) {
    if (!(has(c.alpha_split) && c.alpha_split >= 0 && c.alpha_split <= 1))
      add("alpha_split", "alpha in [0,1]");
    if (!(has(c.energy_per_slot) && c.energy_per_slot > 0))
      add("energy_per_slot", "energy > 0");
  } else {
    add("p_sense", "one power entry style required");
  }
  return v;
}

DerivedParams derive(const SystemConfig& c) {
  auto violations = validate(c);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid config:";
    for (const auto& vi : violations) msg << ' ' << vi.field << " (" << vi.rule << ')';
    throw std::invalid_argument(msg.str());
  }
  DerivedParams d{};
  d.t_pulse = 1.0 / c.bandwidth_hz;
  d.r_eff = std::sqrt(1.0 / (kPi * c.lambda_bs));
  d.r_max = 3.0 * d.r_eff;
  d.t_slot = 2.0 * d.r_max / kSpeedOfLight;
  if (d.t_pulse >= d.t_slot)
    throw std::invalid_argument("invalid config: bandwidth_hz/lambda_bs give "
                                "t_pulse >= t_slot");
  if (has(c.p_sense)) {
    d.p_sense = c.p_sense;
    d.p_comm = c.p_comm;
  } else {
    d.p_sense = c.alpha_split * c.energy_per_slot / d.t_pulse;
    d.p_comm = (1.0 - c.alpha_split) * c.energy_per_slot / (d.t_slot - d.t_pulse);
  }
  d.wavelength_m = kSpeedOfLight / c.carrier_hz;
  d.theta_b = 2.0 * kPi / c.m_beams;
  d.noise_w = kBoltzmann * c.temperature_k * c.bandwidth_hz;
  d.lambda_direct = c.lambda_bs / (static_cast<double>(c.m_beams) * c.m_beams);
  d.lambda_interclutter_base = c.lambda_bs / c.m_beams;
  return d;
}

namespace {

using Setter = std::function<void(SystemConfig&, const std::string&)>;

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("bad numeric value for '" + key + "': " + value);
  }
  while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos]))) ++pos;
  if (pos != value.size())
    throw std::runtime_error("bad numeric value for '" + key + "': " + value);
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  double d = parse_double(key, value);
  int i = static_cast<int>(std::lround(d));
  if (std::abs(d - i) > 1e-9)
    throw std::runtime_error("integer value required for '" + key + "': " + value);
  return i;
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
#define ISAC_DBL(name) \
  {#name, [](SystemConfig& c, const std::string& v) { c.name = parse_double(#name, v); }}
#define ISAC_INT(name) \
  {#name, [](SystemConfig& c, const std::string& v) { c.name = parse_int(#name, v); }}
      ISAC_DBL(lambda_bs),       ISAC_DBL(lambda_cl),
      ISAC_INT(m_beams),         ISAC_INT(d_spread),
      ISAC_DBL(g_max),           ISAC_DBL(c_los),
      ISAC_DBL(c_nlos),          ISAC_DBL(eta_los),
      ISAC_DBL(eta_nlos),        ISAC_INT(m_los),
      ISAC_INT(m_nlos),          ISAC_DBL(gamma_blockage),
      ISAC_DBL(bandwidth_hz),    ISAC_DBL(sigma_avg_target),
      ISAC_DBL(sigma_avg_clutter), ISAC_DBL(weibull_k),
      ISAC_DBL(zeta_sic),        ISAC_DBL(temperature_k),
      ISAC_DBL(carrier_hz),      ISAC_INT(n_coop),
      ISAC_DBL(misalign_var),    ISAC_DBL(misalign_max),
      ISAC_DBL(threshold_sensing), ISAC_DBL(threshold_comm),
      ISAC_INT(b_sc_bits),       ISAC_DBL(p_sense),
      ISAC_DBL(p_comm),          ISAC_DBL(alpha_split),
      ISAC_DBL(energy_per_slot),
#undef ISAC_DBL
#undef ISAC_INT
  };
  return table;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void set_config_field(SystemConfig& config, const std::string& key,
                      const std::string& value) {
  auto it = setters().find(key);
  if (it == setters().end())
    throw std::runtime_error("unknown configuration key: " + key);
  it->second(config, value);
  // Choosing one power entry style clears the other.
  if (key == "p_sense" || key == "p_comm") {
    config.alpha_split = std::numeric_limits<double>::quiet_NaN();
    config.energy_per_slot = std::numeric_limits<double>::quiet_NaN();
  } else if (key == "alpha_split" || key == "energy_per_slot") {
    config.p_sense = std::numeric_limits<double>::quiet_NaN();
    config.p_comm = std::numeric_limits<double>::quiet_NaN();
  }
}

SystemConfig parse_config(std::istream& in) {
  SystemConfig config;
  bool saw_direct = false, saw_energy = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string s = trim(line);
    if (s.empty()) continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": expected 'key = value'");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": expected 'key = value'");
    bool direct = (key == "p_sense" || key == "p_comm");
    bool energy = (key == "alpha_split" || key == "energy_per_slot");
    set_config_field(config, key, value);
    saw_direct = saw_direct || direct;
    saw_energy = saw_energy || energy;
    if (saw_direct && saw_energy)
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": power entry styles must not be mixed");
  }
  return config;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_config(in);
}

}  // namespace isac
