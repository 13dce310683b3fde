#pragma once

#include "isac/config.hpp"
#include "isac/rng.hpp"

namespace isac {

struct BeamPattern {
  double g_max;
  int d_spread;
};

struct MisalignmentLaw {
  double variance;   // a^2
  double max_angle;  // theta_M
  BeamPattern pattern;
};

struct RcsModel {
  double sigma_avg_target;
  double sigma_avg_clutter;
  double weibull_k;
};

// Cosine mainlobe: G_m cos^2(d*theta/2) for |theta| <= pi/d, else 0.
double gain(const BeamPattern& pattern, double theta);

// e^{-gamma r}; throws std::invalid_argument for r < 0.
double p_los(double gamma, double r);

// Density of the misaligned gain G(theta_m) with truncated-Gaussian theta_m.
// When theta_M >= pi/d the law carries a point mass at gain 0 (the beam can
// miss entirely); the density covers only the continuous part (0, G_m).
double misaligned_gain_pdf(const MisalignmentLaw& law, double g);

// Probability of the point mass at gain 0 (0 when theta_M < pi/d).
double misaligned_gain_zero_mass(const MisalignmentLaw& law);

double sample_misaligned_gain(const MisalignmentLaw& law, Rng& rng);

// Truncated-Gaussian misalignment angle, N_t(0, a^2, -theta_M, theta_M).
double sample_misalign_angle(const MisalignmentLaw& law, Rng& rng);

// C_L r^{-eta_L} (LoS) or C_N r^{-eta_N} (NLoS); r = 0 rejected.
double pathloss(double r, bool los, const SystemConfig& cfg);

double sample_nakagami_power(int shape_m, Rng& rng);

double sample_rcs_target(const RcsModel& model, Rng& rng);
double sample_rcs_clutter(const RcsModel& model, Rng& rng);

// sigma_mono * cos(beta/2); beta outside [0, pi] rejected.
double bistatic_rcs(double sigma_mono, double beta);

}  // namespace isac
