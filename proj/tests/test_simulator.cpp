#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "isac/simulator.hpp"
#include "stats_helpers.hpp"

using namespace isac;
using test_stats::ks_critical_01;
using test_stats::ks_statistic;

namespace {

SimOptions sensing_opts(int n_links, std::optional<double> r1) {
  SimOptions o;
  o.n_links = n_links;
  o.fixed_r1 = r1;
  o.with_comm = false;
  return o;
}

}  // namespace

TEST_CASE("equal seeds reproduce every estimate") {
  SystemConfig cfg;
  SimOptions opts = sensing_opts(2, 20.0);
  TrialSet a = run_trials(cfg, opts, 2000, 42);
  TrialSet b = run_trials(cfg, opts, 2000, 42);
  REQUIRE(a.records.size() == b.records.size());
  for (Metric m : {Metric::CoverageMono, Metric::CoverageNetworked,
                   Metric::RateSensing}) {
    Estimate ea = evaluate(a, m, 2, 1.0);
    Estimate eb = evaluate(b, m, 2, 1.0);
    CHECK(ea.mean == eb.mean);
    CHECK(ea.half_width_95 == eb.half_width_95);
  }
  TrialSet c = run_trials(cfg, opts, 2000, 43);
  CHECK(evaluate(c, Metric::CoverageMono, 1, 1.0).mean !=
        evaluate(a, Metric::CoverageMono, 1, 1.0).mean);
}

TEST_CASE("selection combining picks the best link per trial") {
  SystemConfig cfg;
  Rng rng(5);
  SimOptions opts;
  opts.n_links = 3;
  opts.fixed_r1 = 20.0;
  opts.with_comm = false;
  for (int i = 0; i < 200; ++i) {
    TrialOutcome out = run_trial(cfg, rng, opts);
    REQUIRE(out.bistatic.size() == 2);
    double best = out.sinr_mono();
    for (int n = 2; n <= 3; ++n)
      best = std::max(best, out.sinr_bistatic(n));
    CHECK(out.sinr_networked(3) == doctest::Approx(best));
    CHECK(out.sinr_networked(1) == doctest::Approx(out.sinr_mono()));
    for (double b : out.beta) {
      CHECK(b >= 0.0);
      CHECK(b <= M_PI);
    }
    CHECK(out.r1 == doctest::Approx(20.0));
  }
}

TEST_CASE("coverage orderings on a shared trial set") {
  SystemConfig cfg;
  TrialSet set = run_trials(cfg, sensing_opts(3, 20.0), 6000, 7);
  double mono = evaluate(set, Metric::CoverageMono, 1, 1.0).mean;
  double net2 = evaluate(set, Metric::CoverageNetworked, 2, 1.0).mean;
  double net3 = evaluate(set, Metric::CoverageNetworked, 3, 1.0).mean;
  CHECK(net2 >= mono);
  CHECK(net3 >= net2);
  // Vanishing threshold: the monostatic echo always arrives.
  CHECK(evaluate(set, Metric::CoverageMono, 1, 1e-30).mean ==
        doctest::Approx(1.0));
  // Larger threshold can only shrink coverage.
  CHECK(evaluate(set, Metric::CoverageMono, 1, 10.0).mean <= mono);
  // Multistatic-only never beats full selection combining.
  CHECK(evaluate(set, Metric::CoverageMultistaticOnly, 2, 1.0).mean <= net3);
}

TEST_CASE("power overrides act through the stored normalized components") {
  SystemConfig cfg;
  TrialSet set = run_trials(cfg, sensing_opts(2, 20.0), 6000, 11);
  DerivedParams drv = derive(cfg);

  SUBCASE("self-interference hits only the monostatic link") {
    PowerOverride loud{drv.p_sense, drv.p_comm, 1e-3};
    double mono0 = evaluate(set, Metric::CoverageMono, 1, 1.0).mean;
    double mono1 = evaluate(set, Metric::CoverageMono, 1, 1.0, loud).mean;
    CHECK(mono1 < mono0 - 0.1);
    double bi0 = evaluate(set, Metric::CoverageBistatic, 2, 1.0).mean;
    double bi1 = evaluate(set, Metric::CoverageBistatic, 2, 1.0, loud).mean;
    CHECK(bi0 == doctest::Approx(bi1));
    CHECK(evaluate(set, Metric::CoverageMultistaticOnly, 1, 1.0, loud).mean ==
          doctest::Approx(
              evaluate(set, Metric::CoverageMultistaticOnly, 1, 1.0).mean));
  }

  SUBCASE("muting the downlink removes direct interference") {
    PowerOverride quiet{drv.p_sense, 0.0, cfg.zeta_sic};
    for (Metric m : {Metric::CoverageMono, Metric::CoverageBistatic}) {
      int n = (m == Metric::CoverageBistatic) ? 2 : 1;
      CHECK(evaluate(set, m, n, 1.0, quiet).mean + 1e-12 >=
            evaluate(set, m, n, 1.0).mean);
    }
  }

  SUBCASE("zero override matches the configured powers") {
    PowerOverride same{drv.p_sense, drv.p_comm, cfg.zeta_sic};
    CHECK(evaluate(set, Metric::CoverageMono, 1, 1.0, same).mean ==
          doctest::Approx(evaluate(set, Metric::CoverageMono, 1, 1.0).mean));
  }
}

TEST_CASE("isolated serving site reproduces the radar equation") {
  SystemConfig cfg;
  cfg.lambda_bs = 1e-9;   // no interferers in practice
  cfg.lambda_cl = 1e-12;  // no clutter
  DerivedParams drv = derive(cfg);
  SimOptions opts = sensing_opts(1, 20.0);
  Rng rng(13);
  const int n = 2000;
  std::vector<double> sigma(n);
  double scale = drv.p_sense * cfg.g_max * cfg.g_max * drv.wavelength_m *
                 drv.wavelength_m /
                 (std::pow(4.0 * M_PI, 3.0) *
                  std::pow(20.0, 2.0 * cfg.eta_los));
  for (auto& s : sigma) {
    TrialOutcome out = run_trial(cfg, rng, opts);
    CHECK(out.mono.intra_clutter == 0.0);
    CHECK(out.mono.inter_clutter == 0.0);
    CHECK(out.mono.direct_los == 0.0);
    CHECK(out.mono.direct_nlos == 0.0);
    CHECK(out.mono.noise > 0.0);
    s = out.mono.desired / scale;  // implied RCS draw
  }
  CHECK(std::abs(test_stats::mean(sigma) - cfg.sigma_avg_target) <
        3.0 * test_stats::std_error(sigma));
}

TEST_CASE("confidence interval shrinks like the square root of trials") {
  SystemConfig cfg;
  SimOptions opts = sensing_opts(1, 20.0);
  double w1 = evaluate(run_trials(cfg, opts, 2000, 3), Metric::CoverageMono, 1,
                       1.0)
                  .half_width_95;
  double w4 = evaluate(run_trials(cfg, opts, 8000, 3), Metric::CoverageMono, 1,
                       1.0)
                  .half_width_95;
  CHECK(w1 / w4 > 1.6);
  CHECK(w1 / w4 < 2.4);
}

TEST_CASE("bistatic angles are uniform over the half circle") {
  SystemConfig cfg;
  Rng rng(17);
  SimOptions opts = sensing_opts(2, std::nullopt);
  std::vector<double> betas;
  betas.reserve(8000);
  for (int i = 0; i < 8000; ++i)
    betas.push_back(run_trial(cfg, rng, opts).beta[0]);
  double d = ks_statistic(betas, [](double b) { return b / M_PI; });
  CHECK(d < ks_critical_01(betas.size()));
}

TEST_CASE("rate estimates") {
  SystemConfig cfg;
  SimOptions opts;
  opts.n_links = 2;
  opts.fixed_r1 = 20.0;
  TrialSet set = run_trials(cfg, opts, 4000, 19);
  double rs = evaluate(set, Metric::RateSensing, 2, 0.0).mean;
  double rm = evaluate(set, Metric::RateMultistaticOnly, 1, 0.0).mean;
  double rc = evaluate(set, Metric::RateComm, 0, 0.0).mean;
  CHECK(rs > 0.0);
  CHECK(rm > 0.0);
  CHECK(rm < rs);  // dropping the monostatic link can only lose rate
  CHECK(rc > 0.0);
  DerivedParams drv = derive(cfg);
  CHECK(rc < cfg.m_beams * 30.0 * (drv.t_slot - drv.t_pulse) / drv.t_slot);
}

TEST_CASE("estimator guard rails") {
  SystemConfig cfg;
  CHECK_THROWS_AS(
      estimate_coverage(cfg, Metric::CoverageMono, 1, 1.0, 500, 1),
      std::invalid_argument);
}

TEST_CASE("degenerate realizations are rerolled and counted") {
  SystemConfig cfg;
  cfg.lambda_bs = 5e-9;  // a couple dozen rerolls expected per success
  Rng rng(23);
  SimOptions opts = sensing_opts(2, std::nullopt);
  TrialOutcome out = run_trial(cfg, rng, opts);
  CHECK(out.rerolls > 0);
  CHECK(out.bistatic.size() == 1);
}

TEST_CASE("raw-trial dump layout") {
  SystemConfig cfg;
  std::string path = "trial_dump_test.txt";
  dump_trials(path, cfg, 50, 31, sensing_opts(2, 20.0));
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  REQUIRE(std::getline(in, header));
  std::istringstream hs(header);
  std::vector<std::string> cols;
  std::string tok;
  while (hs >> tok) cols.push_back(tok);
  CHECK(cols.size() == 16);
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int fields = 0;
    while (ls >> tok) ++fields;
    CHECK(fields == static_cast<int>(cols.size()));
    ++rows;
  }
  CHECK(rows == 50);
  in.close();
  std::remove(path.c_str());
}
