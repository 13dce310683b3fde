#include "isac/propagation.hpp"

#include <cmath>
#include <stdexcept>

#include "isac/constants.hpp"

namespace isac {

double gain(const BeamPattern& pattern, double theta) {
  double edge = kPi / pattern.d_spread;
  if (std::abs(theta) > edge) return 0.0;
  double c = std::cos(0.5 * pattern.d_spread * theta);
  return pattern.g_max * c * c;
}

double p_los(double gamma, double r) {
  if (r < 0) throw std::invalid_argument("p_los: r must be >= 0");
  return std::exp(-gamma * r);
}

double misaligned_gain_zero_mass(const MisalignmentLaw& law) {
  double edge = kPi / law.pattern.d_spread;
  if (law.max_angle < edge) return 0.0;
  double a = std::sqrt(law.variance);
  double denom = std::erf(law.max_angle / (a * std::sqrt(2.0)));
  double inside = std::erf(edge / (a * std::sqrt(2.0)));
  return (denom - inside) / denom;
}

double misaligned_gain_pdf(const MisalignmentLaw& law, double g) {
  double gm = law.pattern.g_max;
  double d = law.pattern.d_spread;
  double a2 = law.variance;
  double edge = kPi / d;
  double g_lo = (law.max_angle < edge)
                    ? gain(law.pattern, law.max_angle)
                    : 0.0;
  if (g <= g_lo || g >= gm) return 0.0;
  double acosv = std::acos(std::sqrt(g / gm));
  double num = std::sqrt(2.0 / (d * d * a2)) *
               std::exp(-2.0 / (d * d * a2) * acosv * acosv);
  double den = std::erf(law.max_angle / std::sqrt(2.0 * a2)) *
               std::sqrt(kPi * g * (gm - g));
  return num / den;
}

double sample_misalign_angle(const MisalignmentLaw& law, Rng& rng) {
  double a = std::sqrt(law.variance);
  for (;;) {
    double t = a * rng.normal();
    if (std::abs(t) <= law.max_angle) return t;
  }
}

double sample_misaligned_gain(const MisalignmentLaw& law, Rng& rng) {
  return gain(law.pattern, sample_misalign_angle(law, rng));
}

double pathloss(double r, bool los, const SystemConfig& cfg) {
  if (r <= 0) throw std::invalid_argument("pathloss: r must be > 0");
  return los ? cfg.c_los * std::pow(r, -cfg.eta_los)
             : cfg.c_nlos * std::pow(r, -cfg.eta_nlos);
}

double sample_nakagami_power(int shape_m, Rng& rng) {
  if (shape_m < 1) throw std::invalid_argument("nakagami shape must be >= 1");
  return rng.nakagami_power(shape_m);
}

double sample_rcs_target(const RcsModel& model, Rng& rng) {
  return rng.exponential(model.sigma_avg_target);
}

double sample_rcs_clutter(const RcsModel& model, Rng& rng) {
  // sigma_avg_clutter is the mean RCS for every shape; the Weibull scale is
  // mean / Gamma(1 + 1/k), so shape comparisons hold the clutter power fixed.
  double scale =
      model.sigma_avg_clutter / std::tgamma(1.0 + 1.0 / model.weibull_k);
  return rng.weibull(model.weibull_k, scale);
}

double bistatic_rcs(double sigma_mono, double beta) {
  if (beta < 0 || beta > kPi)
    throw std::invalid_argument("bistatic_rcs: beta must be in [0, pi]");
  return sigma_mono * std::cos(0.5 * beta);
}

}  // namespace isac
