#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace isac {

// All user-supplied parameters, in base SI units (meters, watts, hertz,
// kelvin, radians, seconds; everything linear, never dB). Defaults are the
// baseline operating point used across the test suite.
struct SystemConfig {
  double lambda_bs = 250e-6;   // BS intensity, per m^2
  double lambda_cl = 0.01;     // clutter intensity, per m^2
  int m_beams = 12;            // beam count M
  int d_spread = 6;            // beam spread d, M = 2d
  double g_max = 10.0;         // max antenna gain, linear (10 dBi)
  double c_los = 7.244359600749903e-7;   // path-loss intercept, -61.4 dB
  double c_nlos = 6.309573444801933e-8;  // path-loss intercept, -72 dB
  double eta_los = 2.0;
  double eta_nlos = 4.0;
  int m_los = 3;               // Nakagami shape, LoS
  int m_nlos = 2;              // Nakagami shape, NLoS
  double gamma_blockage = 0.0149;  // per m
  double bandwidth_hz = 208e6;
  double sigma_avg_target = 1.0;   // m^2
  double sigma_avg_clutter = 1.0;  // m^2
  double weibull_k = 1.0;
  double zeta_sic = 1e-12;
  double temperature_k = 300.0;
  double carrier_hz = 28e9;
  int n_coop = 4;
  double misalign_var = 1.0;          // a^2
  double misalign_max = 0.2 * M_PI;   // theta_M, rad
  double threshold_sensing = 1.0;     // phi_s, linear (0 dB)
  double threshold_comm = 1.0;        // phi_c, linear (0 dB)
  int b_sc_bits = 32;

  // Power entry, two mutually exclusive styles:
  //  (a) direct powers p_sense / p_comm (default style), or
  //  (b) energy budget energy_per_slot + bias alpha_split.
  // Unset values are NaN.
  double p_sense = 0.9;   // W
  double p_comm = 0.1;    // W
  double alpha_split = std::numeric_limits<double>::quiet_NaN();
  double energy_per_slot = std::numeric_limits<double>::quiet_NaN();
};

struct DerivedParams {
  double t_slot;        // T_t, s
  double t_pulse;       // T_s, s
  double p_sense;       // P_s, W
  double p_comm;        // P_c, W
  double wavelength_m;  // lambda
  double theta_b;       // 3-dB beamwidth, rad
  double noise_w;       // K_B * T * W_b
  double lambda_direct;            // lambda_bs / M^2
  double lambda_interclutter_base; // lambda_bs / M
  double r_eff;         // effective cell radius
  double r_max;         // max unambiguous range
};

struct Violation {
  std::string field;
  std::string rule;
};

std::vector<Violation> validate(const SystemConfig& config);

// Throws std::invalid_argument when the config fails validation.
DerivedParams derive(const SystemConfig& config);

// key = value parser; '#' starts a comment; unknown keys throw
// std::runtime_error naming the key; omitted keys keep their defaults.
SystemConfig parse_config(std::istream& in);
SystemConfig load_config(const std::string& path);

// Assign one field by key name (same names as the config file / CLI --set).
void set_config_field(SystemConfig& config, const std::string& key,
                      const std::string& value);

}  // namespace isac
