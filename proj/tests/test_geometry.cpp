#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "isac/geometry.hpp"
#include "isac/quadrature.hpp"
#include "stats_helpers.hpp"

using namespace isac;
using test_stats::ks_critical_01;
using test_stats::ks_statistic;

namespace {
constexpr double kLambda = 250e-6;
constexpr double kThetaB = M_PI / 6.0;
constexpr double kBandwidth = 208e6;
}  // namespace

TEST_CASE("PPP sampling basics") {
  Region disk{Region::Shape::Disk, 0.0, 200.0};
  Rng rng(3);
  SUBCASE("zero intensity gives an empty field") {
    CHECK(sample_ppp(0.0, disk, rng).points.empty());
  }
  SUBCASE("points stay inside the region") {
    PointField f = sample_ppp(1e-3, disk, rng);
    for (const auto& p : f.points)
      CHECK(p.x * p.x + p.y * p.y <= 200.0 * 200.0 + 1e-9);
    Region sq{Region::Shape::Square, 150.0, 0.0};
    PointField g = sample_ppp(1e-3, sq, rng);
    for (const auto& p : g.points) {
      CHECK(std::abs(p.x) <= 150.0);
      CHECK(std::abs(p.y) <= 150.0);
    }
  }
  SUBCASE("count has Poisson mean and dispersion") {
    const int reps = 10000;
    double expect = 1e-3 * disk.area();
    std::vector<double> counts(reps);
    for (auto& c : counts)
      c = static_cast<double>(sample_ppp(1e-3, disk, rng).points.size());
    double se = test_stats::std_error(counts);
    CHECK(std::abs(test_stats::mean(counts) - expect) < 3.0 * se);
    // Index of dispersion ~ 1 +/- 3*sqrt(2/n) for a Poisson law.
    double idx = test_stats::variance(counts) / test_stats::mean(counts);
    CHECK(std::abs(idx - 1.0) < 3.0 * std::sqrt(2.0 / reps));
  }
  SUBCASE("fixed seed reproduces the field") {
    Rng a(99), b(99);
    PointField fa = sample_ppp(1e-3, disk, a);
    PointField fb = sample_ppp(1e-3, disk, b);
    REQUIRE(fa.points.size() == fb.points.size());
    for (std::size_t i = 0; i < fa.points.size(); ++i) {
      CHECK(fa.points[i].x == fb.points[i].x);
      CHECK(fa.points[i].y == fb.points[i].y);
    }
  }
}

TEST_CASE("distance and angle densities normalize") {
  auto nearest = integrate_semi_infinite(
      [](double r) { return pdf_nearest(r, kLambda); }, 0.0);
  CHECK(nearest.value == doctest::Approx(1.0).epsilon(1e-6));

  for (int n : {2, 3, 4, 7}) {
    auto cond = integrate_semi_infinite(
        [n](double r) { return pdf_nth_given_nearest(r, 30.0, n, kLambda); },
        30.0);
    CHECK(cond.value == doctest::Approx(1.0).epsilon(1e-6));
  }

  CHECK(pdf_beta(1.0) == doctest::Approx(1.0 / M_PI));
  CHECK(pdf_beta(-0.1) == 0.0);
  CHECK(pdf_beta(3.2) == 0.0);
  CHECK(pdf_nth_given_nearest(10.0, 20.0, 2, kLambda) == 0.0);
  CHECK_THROWS_AS(pdf_nth_given_nearest(30.0, 20.0, 1, kLambda),
                  std::invalid_argument);
}

TEST_CASE("ordered distances from sampled fields match the conditional law") {
  // Probability-integral transform: conditional CDF of the nth distance given
  // the nearest must be uniform. Closed form for integer n via the Erlang law
  // of v = lambda*pi*(rn^2 - r1^2).
  Rng rng(17);
  Region disk{Region::Shape::Disk, 0.0, 600.0};
  const int reps = 20000;
  for (int n : {2, 3, 4}) {
    std::vector<double> u;
    u.reserve(reps);
    for (int rep = 0; rep < reps; ++rep) {
      PointField f = sample_ppp(kLambda, disk, rng);
      if (static_cast<int>(f.points.size()) < n) continue;
      std::vector<double> d2(f.points.size());
      for (std::size_t i = 0; i < f.points.size(); ++i)
        d2[i] = f.points[i].x * f.points[i].x + f.points[i].y * f.points[i].y;
      std::partial_sort(d2.begin(), d2.begin() + n, d2.end());
      double v = kLambda * M_PI * (d2[n - 1] - d2[0]);
      double cdf = 0.0;  // regularized lower incomplete gamma, shape n-1
      double term = 1.0;
      for (int k = 0; k < n - 1; ++k) {
        cdf += term;
        term *= v / (k + 1);
      }
      u.push_back(1.0 - std::exp(-v) * cdf);
    }
    double d = ks_statistic(u, [](double x) { return x; });
    CHECK(d < ks_critical_01(u.size()));
  }
}

TEST_CASE("resolution cells") {
  ResolutionCell mono = cell_monostatic(20.0, kThetaB, kBandwidth);
  CHECK(mono.area == doctest::Approx(7.5519).epsilon(1e-4));
  CHECK(cell_monostatic(40.0, kThetaB, kBandwidth).area ==
        doctest::Approx(2.0 * mono.area));
  CHECK(cell_monostatic(20.0, kThetaB / 2.0, kBandwidth).area ==
        doctest::Approx(0.5 * mono.area));

  ResolutionCell bi = cell_bistatic(20.0, kThetaB, kBandwidth, M_PI / 2.0);
  CHECK(bi.area == doctest::Approx(15.1038).epsilon(1e-4));
  CHECK(cell_bistatic(20.0, kThetaB, kBandwidth, 0.0).area == mono.area);

  double prev = 0.0;
  for (double b = 0.0; b < M_PI - 0.05; b += 0.05) {
    double a = cell_bistatic(20.0, kThetaB, kBandwidth, b).area;
    CHECK(a > prev);
    prev = a;
  }
  CHECK_THROWS_AS(cell_bistatic(20.0, kThetaB, kBandwidth, M_PI),
                  std::invalid_argument);
  CHECK_THROWS_AS(cell_monostatic(0.0, kThetaB, kBandwidth),
                  std::invalid_argument);
}

TEST_CASE("fusion backhaul accounting") {
  CHECK(backhaul_overhead(6, 32) == 192);
  CHECK(backhaul_overhead(1, 32) == 32);
  CHECK(backhaul_overhead(10, 16) == 10 * backhaul_overhead(1, 16));
  CHECK_THROWS_AS(backhaul_overhead(0, 32), std::invalid_argument);
}
