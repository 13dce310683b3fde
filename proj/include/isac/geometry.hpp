#pragma once

#include <vector>

#include "isac/rng.hpp"

namespace isac {

struct Point {
  double x, y;
};

// Square or disk sampling region, centered at the origin.
struct Region {
  enum class Shape { Square, Disk } shape = Shape::Square;
  double half_side = 0.0;  // square: [-half_side, half_side]^2
  double radius = 0.0;     // disk radius
  double area() const;
};

struct PointField {
  std::vector<Point> points;
  double intensity = 0.0;  // per m^2
  double region_area = 0.0;
};

struct SensingGeometry {
  double r1;    // target to serving BS
  double rn;    // target to n-th BS
  double beta;  // bistatic angle at the target
  double baseline;
};

struct ResolutionCell {
  enum class Kind { Monostatic, Bistatic } kind;
  double area;
};

PointField sample_ppp(double intensity, const Region& region, Rng& rng);

// Nearest-BS distance density, 2*pi*lambda*r1*exp(-pi*lambda*r1^2).
double pdf_nearest(double r1, double lambda_bs);

// Conditional n-th-nearest density given the nearest at r1 (n >= 2);
// returns 0 for rn < r1.
double pdf_nth_given_nearest(double rn, double r1, int n, double lambda_bs);

// Uniform bistatic-angle density on [0, pi].
double pdf_beta(double beta);

ResolutionCell cell_monostatic(double r1, double theta_b, double bandwidth);

// beta = pi rejected (divergent forward-scatter cell).
ResolutionCell cell_bistatic(double rn, double theta_b, double bandwidth,
                             double beta);

long backhaul_overhead(int n_coop, int b_sc_bits);

}  // namespace isac
