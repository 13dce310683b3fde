#include <doctest.h>

#include <cmath>
#include <vector>

#include "isac/propagation.hpp"
#include "isac/quadrature.hpp"
#include "stats_helpers.hpp"

using namespace isac;
using test_stats::ks_critical_01;
using test_stats::ks_statistic;

namespace {
const BeamPattern kPattern{10.0, 6};
const MisalignmentLaw kLaw{1.0, 0.2 * M_PI, kPattern};
const RcsModel kRcs{1.0, 1.0, 1.0};
}  // namespace

TEST_CASE("antenna pattern: boresight, 3-dB point, edge, symmetry") {
  CHECK(gain(kPattern, 0.0) == doctest::Approx(10.0));
  CHECK(gain(kPattern, M_PI / 12.0) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(gain(kPattern, M_PI / 6.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(gain(kPattern, 0.9) == 0.0);  // beyond the mainlobe
  for (double t : {0.1, 0.3, 0.5}) {
    CHECK(gain(kPattern, t) == doctest::Approx(gain(kPattern, -t)));
  }
  // Nonincreasing on [0, pi/d].
  double prev = gain(kPattern, 0.0);
  for (double t = 0.01; t <= M_PI / 6.0; t += 0.01) {
    double g = gain(kPattern, t);
    CHECK(g <= prev + 1e-12);
    prev = g;
  }
}

TEST_CASE("blockage probability") {
  CHECK(p_los(0.0149, 0.0) == doctest::Approx(1.0));
  CHECK(p_los(0.0, 12345.0) == doctest::Approx(1.0));
  CHECK(p_los(0.0149, 100.0) == doctest::Approx(0.22537).epsilon(1e-4));
  CHECK_THROWS_AS(p_los(0.0149, -1.0), std::invalid_argument);
  CHECK(p_los(0.0149, 50.0) > p_los(0.0149, 60.0));
  CHECK(p_los(0.02, 50.0) < p_los(0.0149, 50.0));
}

TEST_CASE("path loss") {
  SystemConfig cfg;
  CHECK(pathloss(1.0, true, cfg) == doctest::Approx(cfg.c_los));
  CHECK(pathloss(40.0, true, cfg) / pathloss(20.0, true, cfg) ==
        doctest::Approx(0.25).epsilon(1e-12));
  double expect = std::pow(10.0, -7.2) * std::pow(50.0, -4.0);
  CHECK(pathloss(50.0, false, cfg) == doctest::Approx(expect).epsilon(1e-5));
  CHECK_THROWS_AS(pathloss(0.0, true, cfg), std::invalid_argument);
}

TEST_CASE("Nakagami power fading sampler") {
  Rng rng(7);
  const int n = 100000;
  SUBCASE("m = 1 is exponential (Rayleigh power)") {
    std::vector<double> xs(n);
    for (auto& x : xs) x = sample_nakagami_power(1, rng);
    double d = ks_statistic(xs, [](double x) { return -std::expm1(-x); });
    CHECK(d < ks_critical_01(n));
  }
  SUBCASE("unit mean and variance 1/m") {
    for (int m : {2, 3}) {
      std::vector<double> xs(n);
      for (auto& x : xs) x = sample_nakagami_power(m, rng);
      double se = test_stats::std_error(xs);
      CHECK(std::abs(test_stats::mean(xs) - 1.0) < 3.0 * se);
      CHECK(test_stats::variance(xs) ==
            doctest::Approx(1.0 / m).epsilon(0.05));
    }
  }
}

TEST_CASE("RCS samplers") {
  Rng rng(11);
  const int n = 100000;
  SUBCASE("Swerling-I target mean") {
    std::vector<double> xs(n);
    for (auto& x : xs) x = sample_rcs_target(kRcs, rng);
    CHECK(std::abs(test_stats::mean(xs) - 1.0) < 3.0 * test_stats::std_error(xs));
  }
  SUBCASE("clutter shape 1 reduces to exponential") {
    std::vector<double> xs(n);
    for (auto& x : xs) x = sample_rcs_clutter(kRcs, rng);
    double d = ks_statistic(xs, [](double x) { return -std::expm1(-x); });
    CHECK(d < ks_critical_01(n));
  }
  SUBCASE("mean is shape-invariant") {
    for (double k : {0.7, 1.5}) {
      RcsModel m{1.0, 2.0, k};
      std::vector<double> xs(n);
      for (auto& x : xs) x = sample_rcs_clutter(m, rng);
      CHECK(std::abs(test_stats::mean(xs) - 2.0) <
            3.5 * test_stats::std_error(xs));
    }
  }
}

TEST_CASE("bistatic RCS projection") {
  CHECK(bistatic_rcs(3.5, 0.0) == 3.5);
  CHECK(bistatic_rcs(3.5, M_PI) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(bistatic_rcs(2.0, M_PI / 3.0) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-5));
  CHECK_THROWS_AS(bistatic_rcs(1.0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(bistatic_rcs(1.0, 3.2), std::invalid_argument);
  double prev = bistatic_rcs(1.0, 0.0);
  for (double b = 0.1; b <= M_PI; b += 0.1) {
    double v = bistatic_rcs(1.0, b);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

namespace {

// P(G <= g) for the misaligned gain, from the truncated-Gaussian angle law.
double misaligned_gain_cdf(const MisalignmentLaw& law, double g) {
  double gm = law.pattern.g_max;
  int d = law.pattern.d_spread;
  double a = std::sqrt(law.variance);
  double norm = std::erf(law.max_angle / (std::sqrt(2.0) * a));
  if (g >= gm) return 1.0;
  double theta_g = (2.0 / d) * std::acos(std::sqrt(std::max(g, 0.0) / gm));
  if (theta_g >= law.max_angle) return 0.0;
  return 1.0 - std::erf(theta_g / (std::sqrt(2.0) * a)) / norm;
}

}  // namespace

TEST_CASE("misaligned gain law") {
  SUBCASE("density plus point mass integrates to one") {
    // theta-domain integral of pdf(G(theta)) |dG/dtheta| over the mainlobe.
    double gm = kPattern.g_max;
    int d = kPattern.d_spread;
    auto in_theta = [&](double t) {
      double g = gm * std::pow(std::cos(0.5 * d * t), 2);
      double dg = gm * d * std::cos(0.5 * d * t) * std::sin(0.5 * d * t);
      return misaligned_gain_pdf(kLaw, g) * dg;
    };
    double hi = std::min(kLaw.max_angle, M_PI / d);
    double cont = integrate_adaptive(in_theta, 1e-9, hi - 1e-9).value;
    double total = cont + misaligned_gain_zero_mass(kLaw);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("density vanishes outside the support") {
    CHECK(misaligned_gain_pdf(kLaw, -0.5) == 0.0);
    CHECK(misaligned_gain_pdf(kLaw, 10.5) == 0.0);
  }
  SUBCASE("narrow angle law has no point mass") {
    MisalignmentLaw narrow{1.0, 0.1, kPattern};
    CHECK(misaligned_gain_zero_mass(narrow) == 0.0);
  }
  SUBCASE("perfect-alignment limit concentrates at the peak") {
    MisalignmentLaw tight{1e-8, 0.2 * M_PI, kPattern};
    CHECK(misaligned_gain_cdf(tight, 10.0 - 1e-3) < 1e-6);
  }
  SUBCASE("samples stay in support and match the analytic CDF") {
    Rng rng(23);
    const int n = 100000;
    std::vector<double> pos;
    int zeros = 0;
    for (int i = 0; i < n; ++i) {
      double g = sample_misaligned_gain(kLaw, rng);
      REQUIRE(g >= 0.0);
      REQUIRE(g <= kPattern.g_max);
      if (g == 0.0)
        ++zeros;
      else
        pos.push_back(g);
    }
    // Point-mass fraction within 3 binomial standard errors.
    double p0 = misaligned_gain_zero_mass(kLaw);
    double se0 = std::sqrt(p0 * (1.0 - p0) / n);
    CHECK(std::abs(static_cast<double>(zeros) / n - p0) < 3.0 * se0);
    // KS on the continuous part, conditioned on a nonzero gain.
    double d = ks_statistic(pos, [&](double g) {
      return (misaligned_gain_cdf(kLaw, g) - p0) / (1.0 - p0);
    });
    CHECK(d < ks_critical_01(pos.size()));
  }
  SUBCASE("pdf mean matches sample mean") {
    double gm = kPattern.g_max;
    int d = kPattern.d_spread;
    auto in_theta = [&](double t) {
      double g = gm * std::pow(std::cos(0.5 * d * t), 2);
      double dg = gm * d * std::cos(0.5 * d * t) * std::sin(0.5 * d * t);
      return g * misaligned_gain_pdf(kLaw, g) * dg;
    };
    double hi = std::min(kLaw.max_angle, M_PI / d);
    double analytic_mean = integrate_adaptive(in_theta, 1e-9, hi - 1e-9).value;
    Rng rng(29);
    const int n = 100000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = sample_misaligned_gain(kLaw, rng);
    CHECK(std::abs(test_stats::mean(xs) - analytic_mean) <
          3.0 * test_stats::std_error(xs));
  }
  SUBCASE("misalignment angles respect truncation") {
    Rng rng(31);
    for (int i = 0; i < 1000; ++i) {
      double t = sample_misalign_angle(kLaw, rng);
      CHECK(std::abs(t) <= kLaw.max_angle);
    }
  }
}
