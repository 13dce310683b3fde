#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isac/config.hpp"
#include "isac/rng.hpp"

namespace isac {

struct SinrBreakdown {
  double desired = 0.0;
  double direct_los = 0.0;
  double direct_nlos = 0.0;
  double intra_clutter = 0.0;
  double inter_clutter = 0.0;
  double residual_si = 0.0;
  double noise = 0.0;
  double denominator() const {
    return direct_los + direct_nlos + intra_clutter + inter_clutter +
           residual_si + noise;
  }
  double sinr() const {
    double d = denominator();
    return d > 0.0 ? desired / d : 0.0;
  }
};

struct TrialOutcome {
  SinrBreakdown mono;
  std::vector<SinrBreakdown> bistatic;  // receivers n = 2, 3, ...
  SinrBreakdown comm;
  double r1 = 0.0;
  std::vector<double> rn;    // distances for receivers n = 2, ...
  std::vector<double> beta;  // bistatic angles for receivers n = 2, ...
  int rerolls = 0;           // degenerate realizations discarded
  double sinr_mono() const { return mono.sinr(); }
  double sinr_bistatic(int n) const { return bistatic[n - 2].sinr(); }
  double sinr_networked(int n_coop) const;
  double sinr_comm() const { return comm.sinr(); }
};

struct SimOptions {
  std::optional<double> fixed_r1;  // condition on the serving-BS distance
  int n_links = 0;                 // sensing links to evaluate; 0 = cfg.n_coop
  bool with_comm = true;
  double region_half_side = 2500.0;  // 25 km^2 square
};

TrialOutcome run_trial(const SystemConfig& cfg, Rng& rng);
TrialOutcome run_trial(const SystemConfig& cfg, Rng& rng,
                       const SimOptions& options);

// Compact per-trial record normalized by the transmit powers, so coverage and
// rate can be re-evaluated for any (P_s, P_c, zeta, threshold) without
// re-running geometry.
struct LinkRecord {
  float sig_ps = 0.0f;    // desired / P_s
  float intra_ps = 0.0f;  // intra-clutter / P_s
  float inter_ps = 0.0f;  // inter-clutter / P_s
  float dir_pc = 0.0f;    // direct interference / P_c
};

struct TrialRecord {
  LinkRecord mono;
  std::vector<LinkRecord> bistatic;
  float comm_sig_pc = 0.0f;   // comm desired / P_c
  float comm_intf_pc = 0.0f;  // comm interference / P_c
  float r1 = 0.0f;
};

struct TrialSet {
  SystemConfig cfg;
  DerivedParams drv;
  SimOptions opts;
  std::uint64_t seed = 0;
  std::vector<TrialRecord> records;
};

struct Estimate {
  double mean = 0.0;
  double half_width_95 = 0.0;
  long n_trials = 0;
  std::uint64_t seed = 0;
};

enum class Metric {
  CoverageMono,
  CoverageBistatic,       // uses metric_n
  CoverageNetworked,      // N from cfg.n_coop or metric_n
  CoverageMultistaticOnly,
  CoverageComm,
  RateSensing,
  RateMultistaticOnly,
  RateComm,
};

struct PowerOverride {
  double p_sense, p_comm, zeta;
};

// Runs n_trials independent trials (parallel-safe, schedule-independent).
TrialSet run_trials(const SystemConfig& cfg, const SimOptions& opts,
                    long n_trials, std::uint64_t seed);

// Metric evaluation over a cached trial set; `power` rescales the stored
// normalized components.
Estimate evaluate(const TrialSet& set, Metric metric, int metric_n,
                  double threshold,
                  const std::optional<PowerOverride>& power = std::nullopt);

Estimate estimate_coverage(const SystemConfig& cfg, Metric metric, int metric_n,
                           double threshold, long n_trials, std::uint64_t seed,
                           const SimOptions& opts = {});

Estimate estimate_rate(const SystemConfig& cfg, Metric metric, long n_trials,
                       std::uint64_t seed, const SimOptions& opts = {});

// Raw-trial dump: columnar text, one header row then one row per trial.
void dump_trials(const std::string& path, const SystemConfig& cfg,
                 long n_trials, std::uint64_t seed, const SimOptions& opts);

}  // namespace isac
