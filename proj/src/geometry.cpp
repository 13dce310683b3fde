#include "isac/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "isac/constants.hpp"

namespace isac {

double Region::area() const {
  return shape == Shape::Square ? 4.0 * half_side * half_side
                                : kPi * radius * radius;
}

PointField sample_ppp(double intensity, const Region& region, Rng& rng) {
  if (intensity < 0) throw std::invalid_argument("sample_ppp: intensity >= 0");
  double area = region.area();
  if (!(area > 0)) throw std::invalid_argument("sample_ppp: region area > 0");
  PointField field;
  field.intensity = intensity;
  field.region_area = area;
  long count = intensity > 0 ? rng.poisson(intensity * area) : 0;
  field.points.reserve(count);
  for (long i = 0; i < count; ++i) {
    if (region.shape == Region::Shape::Square) {
      field.points.push_back({rng.uniform(-region.half_side, region.half_side),
                              rng.uniform(-region.half_side, region.half_side)});
    } else {
      double r = region.radius * std::sqrt(rng.uniform());
      auto dir = rng.unit_vector();
      field.points.push_back({r * dir.x, r * dir.y});
    }
  }
  return field;
}

double pdf_nearest(double r1, double lambda_bs) {
  if (r1 < 0) return 0.0;
  return 2.0 * kPi * lambda_bs * r1 * std::exp(-kPi * lambda_bs * r1 * r1);
}

double pdf_nth_given_nearest(double rn, double r1, int n, double lambda_bs) {
  if (n < 2) throw std::invalid_argument("pdf_nth_given_nearest: n >= 2");
  if (rn < r1) return 0.0;
  double lp = lambda_bs * kPi;
  double diff = rn * rn - r1 * r1;
  double logv = (n - 1) * std::log(lp) - std::lgamma(n - 1.0) - lp * diff;
  if (n > 2) logv += (n - 2) * std::log(diff);
  return 2.0 * rn * std::exp(logv);
}

double pdf_beta(double beta) {
  return (beta >= 0.0 && beta <= kPi) ? 1.0 / kPi : 0.0;
}

ResolutionCell cell_monostatic(double r1, double theta_b, double bandwidth) {
  if (!(r1 > 0 && theta_b > 0 && bandwidth > 0))
    throw std::invalid_argument("cell_monostatic: args must be > 0");
  return {ResolutionCell::Kind::Monostatic,
          kSpeedOfLight * theta_b * r1 / (2.0 * bandwidth)};
}

ResolutionCell cell_bistatic(double rn, double theta_b, double bandwidth,
                             double beta) {
  if (!(beta >= 0 && beta < kPi))
    throw std::invalid_argument("cell_bistatic: beta must be in [0, pi)");
  ResolutionCell mono = cell_monostatic(rn, theta_b, bandwidth);
  double c = std::cos(0.5 * beta);
  return {ResolutionCell::Kind::Bistatic, mono.area / (c * c)};
}

long backhaul_overhead(int n_coop, int b_sc_bits) {
  if (n_coop < 1) throw std::invalid_argument("backhaul_overhead: n_coop >= 1");
  return static_cast<long>(n_coop) * b_sc_bits;
}

}  // namespace isac
