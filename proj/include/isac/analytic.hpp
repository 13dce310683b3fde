#pragma once

#include <optional>
#include <vector>

#include "isac/config.hpp"
#include "isac/quadrature.hpp"

namespace isac {

struct CoverageBreakdown {
  double intra = 1.0;
  double inter = 1.0;
  double noise = 1.0;
  double direct = 1.0;
  double si = 1.0;
};

struct CoverageResult {
  double value = 0.0;
  double est_error = 0.0;
  std::optional<CoverageBreakdown> breakdown;
};

class AnalyticEngine;

// Cached direct-interference Laplace transform: monotone-cubic interpolation
// of (ln s, ln L) over log-spaced samples, shared across the many inner
// quadrature nodes that need L at nearby arguments.
class LtDirectCurve {
 public:
  LtDirectCurve(const AnalyticEngine& engine, double s_lo, double s_hi,
                int n_points = 28);
  double operator()(double s) const;

 private:
  std::vector<double> x_, y_, slope_;
};

class AnalyticEngine {
 public:
  explicit AnalyticEngine(const SystemConfig& config, QuadratureSpec spec = {});

  const SystemConfig& config() const { return cfg_; }
  const DerivedParams& derived() const { return drv_; }

  // Doubling `quality` doubles every fixed quadrature grid; used by the
  // convergence checks.
  void set_quality(int quality);

  // --- interference Laplace transforms (all arguments linear, s >= 0) ---
  double lt_direct(double s) const;
  double lt_intra_clutter_mono(double phi_s, double r1) const;
  double lt_inter_clutter_mono(double s, double r1) const;
  double lt_intra_clutter_bi(double phi_s, double rn, double beta) const;
  double lt_inter_clutter_bi(double s, double r1, double rn, double beta) const;
  double lt_comm_los(double s, double r_o) const;
  double lt_comm_nlos(double s, double r_o) const;

  // --- sensing coverage ---
  CoverageResult coverage_mono(double r1, double phi_s,
                               const LtDirectCurve* curve = nullptr) const;
  CoverageResult coverage_bistatic(int n, double r1, double phi_s,
                                   const LtDirectCurve* curve = nullptr) const;
  double coverage_networked(double r1, double phi_s, int n_coop,
                            const LtDirectCurve* curve = nullptr) const;
  // Selection combining over receivers n = 2 .. n_rx + 1, monostatic disabled.
  double coverage_multistatic_only(double r1, double phi_s, int n_rx,
                                   const LtDirectCurve* curve = nullptr) const;
  double avg_coverage_networked(double phi_s, int n_coop) const;
  double avg_coverage_multistatic_only(double phi_s, int n_rx) const;

  // --- communication ---
  double coverage_comm(double phi_c) const;

  // --- ergodic rates, nats/s/Hz ---
  double rate_sensing(int n_coop) const;
  double rate_multistatic_only(int n_rx) const;
  double rate_comm() const;

  // Direct-LT argument for threshold phi at ranges (r1, rn) and angle beta
  // (rn = r1, beta = 0 gives the monostatic argument).
  double direct_arg(double phi, double r1, double rn, double beta) const;

 private:
  friend class LtDirectCurve;

  double inter_core(double s, double r1, double area) const;
  double comm_lt_core(double s, double r_o, bool los) const;
  double avg_coverage_impl(double phi_s, int n_coop, bool with_mono) const;
  double rate_impl(int n_coop, bool with_mono) const;
  double networked_impl(double r1, double phi_s, int n_coop, bool with_mono,
                        const LtDirectCurve* curve) const;

  SystemConfig cfg_;
  DerivedParams drv_;
  QuadratureSpec spec_;
  int quality_ = 1;

  struct Nodes {
    int outer_v, outer_beta, inner_v, inner_beta, radial, protect,
        comm_theta, comm_radial, gain_theta, avg_r1, rate_r1, rate_panel;
  };
  Nodes nodes_{};
};

}  // namespace isac
