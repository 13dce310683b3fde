#include "isac/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isac/constants.hpp"
#include "isac/geometry.hpp"
#include "isac/propagation.hpp"

namespace isac {

namespace {

// 1 - (1 + x/m)^{-m}, the Nakagami-m MGF kernel, robust for small x.
double nakagami_kernel(double x, int m) {
  return -std::expm1(-m * std::log1p(x / m));
}

// Gauss panel boundaries for the rate integrals over t = log(1 + SINR).
constexpr double kRatePanels[] = {0.0, 0.4, 1.0, 1.8, 2.8, 4.0,
                                  5.5, 7.5, 10.0, 13.0};
constexpr int kNumRatePanels = 9;

// Noise/SI exponents beyond this are treated as zero coverage.
constexpr double kExpCut = 40.0;

}  // namespace

AnalyticEngine::AnalyticEngine(const SystemConfig& config, QuadratureSpec spec)
    : cfg_(config), drv_(derive(config)), spec_(spec) {
  set_quality(1);
}

void AnalyticEngine::set_quality(int quality) {
  if (quality < 1) throw std::invalid_argument("quality must be >= 1");
  quality_ = quality;
  int q = quality;
  int base = std::max(15, spec_.node_budget);
  // Grids sized relative to the per-axis budget floor.
  nodes_.outer_v = (base + 5) * q;
  nodes_.outer_beta = std::max(12, (base * 4) / 5) * q;
  nodes_.inner_v = std::max(12, (base * 4) / 5) * q;
  nodes_.inner_beta = std::max(10, (base * 2) / 3) * q;
  nodes_.radial = std::max(36, base * 2) * q;
  nodes_.protect = std::max(24, (base * 3) / 2) * q;
  nodes_.comm_theta = std::max(10, (base * 2) / 3) * q;
  nodes_.comm_radial = std::max(30, base * 2) * q;
  nodes_.gain_theta = std::max(12, (base * 4) / 5) * q;
  nodes_.avg_r1 = std::max(16, base) * q;
  nodes_.rate_r1 = std::max(14, base - 1) * q;
  nodes_.rate_panel = std::max(5, base / 3) * q;
}

double AnalyticEngine::direct_arg(double phi, double r1, double rn,
                                  double beta) const {
  double fourpi3 = std::pow(4.0 * kPi, 3);
  double cb = std::cos(0.5 * beta);
  return phi * fourpi3 * std::pow(r1, cfg_.eta_los) *
         std::pow(rn, cfg_.eta_los) /
         (drv_.p_sense * cfg_.g_max * cfg_.g_max * drv_.wavelength_m *
          drv_.wavelength_m * cb * cfg_.sigma_avg_target);
}

double AnalyticEngine::lt_direct(double s) const {
  if (s < 0) throw std::invalid_argument("lt_direct: s must be >= 0");
  if (s == 0) return 1.0;
  double lam = cfg_.lambda_bs;
  double gamma = cfg_.gamma_blockage;
  double thin = lam / (static_cast<double>(cfg_.m_beams) * cfg_.m_beams);
  double al = s * drv_.p_comm * cfg_.g_max * cfg_.g_max * cfg_.c_los;
  double an = s * drv_.p_comm * cfg_.g_max * cfg_.g_max * cfg_.c_nlos;
  double reach = 23.03 / gamma;

  QuadratureSpec inner = spec_;
  inner.rel_tol = 1e-8;

  auto exponent = [&](double rd) {
    auto los = [&](double r) {
      return std::exp(-gamma * r) *
             nakagami_kernel(al * std::pow(r, -cfg_.eta_los), cfg_.m_los) * r;
    };
    auto nlos = [&](double r) {
      return -std::expm1(-gamma * r) *
             nakagami_kernel(an * std::pow(r, -cfg_.eta_nlos), cfg_.m_nlos) * r;
    };
    double il = integrate_adaptive(los, rd, rd + reach, inner).value;
    double in = integrate_semi_infinite(nlos, rd, inner).value;
    return 2.0 * kPi * thin * (il + in);
  };

  // Outer expectation over the protection radius via w = pi*lambda*Rd^2.
  double inv = 1.0 / (kPi * lam);
  const GaussRule& rule = gauss_legendre(nodes_.protect);
  double wmax = 36.0;
  double acc = 0.0;
  for (int i = 0; i < nodes_.protect; ++i) {
    double w = 0.5 * wmax * (rule.nodes[i] + 1.0);
    double weight = 0.5 * wmax * rule.weights[i];
    double rd = std::sqrt(w * inv);
    acc += weight * std::exp(-w - exponent(rd));
  }
  return std::min(acc, 1.0);
}

double AnalyticEngine::lt_intra_clutter_mono(double phi_s, double r1) const {
  double area = cell_monostatic(r1, drv_.theta_b, cfg_.bandwidth_hz).area;
  double ratio = phi_s * cfg_.sigma_avg_clutter /
                 (cfg_.sigma_avg_target + phi_s * cfg_.sigma_avg_clutter);
  return std::exp(-cfg_.lambda_cl * area * ratio);
}

double AnalyticEngine::lt_intra_clutter_bi(double phi_s, double rn,
                                           double beta) const {
  double area = cell_bistatic(rn, drv_.theta_b, cfg_.bandwidth_hz, beta).area;
  double ratio = phi_s * cfg_.sigma_avg_clutter /
                 (cfg_.sigma_avg_target + phi_s * cfg_.sigma_avg_clutter);
  return std::exp(-cfg_.lambda_cl * area * ratio);
}

double AnalyticEngine::inter_core(double s, double r1, double area) const {
  if (s < 0) throw std::invalid_argument("inter-clutter LT: s must be >= 0");
  if (s == 0) return 1.0;
  double lam = cfg_.lambda_bs;
  double gamma = cfg_.gamma_blockage;
  double per_beam = lam / cfg_.m_beams;
  double st = cfg_.sigma_avg_target;
  double scl = cfg_.sigma_avg_clutter;
  double lcl_area = cfg_.lambda_cl * area;
  double inv = 1.0 / (kPi * lam);

  const GaussRule& rv = gauss_legendre(nodes_.inner_v);
  const GaussRule& rb = gauss_legendre(nodes_.inner_beta);
  double vmax = 25.0;
  double acc = 0.0;
  for (int iv = 0; iv < nodes_.inner_v; ++iv) {
    double v = 0.5 * vmax * (rv.nodes[iv] + 1.0);
    double wv = 0.5 * vmax * rv.weights[iv] * std::exp(-v);
    double r_ic = std::sqrt(r1 * r1 + v * inv);
    for (int ib = 0; ib < nodes_.inner_beta; ++ib) {
      double beta_i = 0.5 * kPi * (rb.nodes[ib] + 1.0);
      double wb = 0.5 * kPi * rb.weights[ib] / kPi;
      double u = s * std::cos(0.5 * beta_i);
      // Target-reflection and clutter-reflection exponents share the radial
      // LoS envelope; fold both into one integral.
      auto integrand = [&](double r) {
        double rl = std::pow(r, -cfg_.eta_los);
        double xt = u * st * rl;
        double xc = u * scl * rl;
        double target_term = 2.0 * kPi * per_beam * (xt / (1.0 + xt));
        double clutter_term =
            per_beam * 2.0 * kPi * (-std::expm1(-lcl_area * xc / (1.0 + xc)));
        return std::exp(-gamma * r) * r * (target_term + clutter_term);
      };
      double j = integrate_los_tail(integrand, r_ic, gamma, nodes_.radial);
      acc += wv * wb * std::exp(-j);
    }
  }
  return std::min(acc, 1.0);
}

double AnalyticEngine::lt_inter_clutter_mono(double s, double r1) const {
  double area = cell_monostatic(r1, drv_.theta_b, cfg_.bandwidth_hz).area;
  return inter_core(s, r1, area);
}

double AnalyticEngine::lt_inter_clutter_bi(double s, double r1, double rn,
                                           double beta) const {
  if (rn < r1) throw std::invalid_argument("inter-clutter LT: rn must be >= r1");
  double area = cell_bistatic(rn, drv_.theta_b, cfg_.bandwidth_hz, beta).area;
  return inter_core(s, r1, area);
}

CoverageResult AnalyticEngine::coverage_mono(double r1, double phi_s,
                                             const LtDirectCurve* curve) const {
  if (!(r1 > 0 && phi_s > 0))
    throw std::invalid_argument("coverage_mono: r1, phi_s must be > 0");
  CoverageResult out;
  CoverageBreakdown b;
  double s_env = direct_arg(phi_s, r1, r1, 0.0);
  double noise_exp = s_env * drv_.noise_w;
  double si_exp = s_env * drv_.p_comm * cfg_.zeta_sic;
  b.noise = noise_exp > kExpCut * 20 ? 0.0 : std::exp(-noise_exp);
  b.si = si_exp > kExpCut * 20 ? 0.0 : std::exp(-si_exp);
  if (b.noise > 0.0 && b.si > 0.0) {
    b.intra = lt_intra_clutter_mono(phi_s, r1);
    b.inter = inter_core(phi_s * std::pow(r1, cfg_.eta_los) /
                             cfg_.sigma_avg_target,
                         r1,
                         cell_monostatic(r1, drv_.theta_b, cfg_.bandwidth_hz)
                             .area);
    b.direct = curve ? (*curve)(s_env) : lt_direct(s_env);
  }
  out.value = b.intra * b.inter * b.noise * b.direct * b.si;
  out.est_error = 5e-4;
  out.breakdown = b;
  return out;
}

CoverageResult AnalyticEngine::coverage_bistatic(
    int n, double r1, double phi_s, const LtDirectCurve* curve) const {
  if (n < 2) throw std::invalid_argument("coverage_bistatic: n must be >= 2");
  if (!(r1 > 0 && phi_s > 0))
    throw std::invalid_argument("coverage_bistatic: r1, phi_s must be > 0");
  double lam = cfg_.lambda_bs;
  double inv = 1.0 / (kPi * lam);
  double st = cfg_.sigma_avg_target;
  double m = cfg_.m_beams;
  double gamma = cfg_.gamma_blockage;
  double ratio = phi_s * cfg_.sigma_avg_clutter /
                 (st + phi_s * cfg_.sigma_avg_clutter);

  std::optional<LtDirectCurve> local;
  if (!curve) {
    double s_lo = direct_arg(phi_s, r1, r1, 0.0);
    double s_hi = kExpCut / drv_.noise_w;
    if (s_lo >= s_hi) return {};  // noise kills every node
    local.emplace(*this, s_lo, s_hi);
    curve = &*local;
  }

  double shape = n - 1.0;  // Gamma shape of v = pi*lambda*(Rn^2 - R1^2)
  double vmax = shape + 12.0 * std::sqrt(shape) + 15.0;
  int nv = nodes_.outer_v + (n > 6 ? 8 : 0);
  const GaussRule& rv = gauss_legendre(nv);
  const GaussRule& rb = gauss_legendre(nodes_.outer_beta);
  double lgam = std::lgamma(shape);

  double acc = 0.0;
  for (int iv = 0; iv < nv; ++iv) {
    double v = 0.5 * vmax * (rv.nodes[iv] + 1.0);
    double logw = -v - lgam;
    if (n > 2) logw += (n - 2.0) * std::log(v);
    double wv = 0.5 * vmax * rv.weights[iv] * std::exp(logw);
    double rn = std::sqrt(r1 * r1 + v * inv);
    double plos_pref = std::exp(-gamma * rn) * (m - 1.0) / m;
    if (plos_pref * wv < 1e-14) continue;
    for (int ib = 0; ib < nodes_.outer_beta; ++ib) {
      double beta = 0.5 * kPi * (rb.nodes[ib] + 1.0);
      double wb = 0.5 * kPi * rb.weights[ib] / kPi;
      double cb = std::cos(0.5 * beta);
      if (cb < 1e-8) continue;
      double s_dir = direct_arg(phi_s, r1, rn, beta);
      double noise_exp = s_dir * drv_.noise_w;
      if (noise_exp > kExpCut) continue;
      double area =
          cell_bistatic(rn, drv_.theta_b, cfg_.bandwidth_hz, beta).area;
      double intra = std::exp(-cfg_.lambda_cl * area * ratio);
      double inter =
          inter_core(phi_s * std::pow(r1, cfg_.eta_los) / (st * cb), r1, area);
      double node = plos_pref * intra * inter * std::exp(-noise_exp) *
                    (*curve)(s_dir);
      acc += wv * wb * node;
    }
  }
  CoverageResult out;
  out.value = std::clamp(acc, 0.0, 1.0);
  out.est_error = 1e-3;
  return out;
}

double AnalyticEngine::networked_impl(double r1, double phi_s, int n_coop,
                                      bool with_mono,
                                      const LtDirectCurve* curve) const {
  std::optional<LtDirectCurve> local;
  if (!curve) {
    double s_lo = direct_arg(phi_s, r1, r1, 0.0);
    double s_hi = kExpCut / drv_.noise_w;
    if (s_lo < s_hi) {
      local.emplace(*this, s_lo, s_hi);
      curve = &*local;
    }
  }
  double miss = 1.0;
  if (with_mono) miss *= 1.0 - coverage_mono(r1, phi_s, curve).value;
  int first = 2, last = with_mono ? n_coop : n_coop + 1;
  for (int n = first; n <= last; ++n)
    miss *= 1.0 - coverage_bistatic(n, r1, phi_s, curve).value;
  return 1.0 - miss;
}

double AnalyticEngine::coverage_networked(double r1, double phi_s, int n_coop,
                                          const LtDirectCurve* curve) const {
  if (n_coop < 1) throw std::invalid_argument("coverage_networked: N >= 1");
  return networked_impl(r1, phi_s, n_coop, true, curve);
}

double AnalyticEngine::coverage_multistatic_only(
    double r1, double phi_s, int n_rx, const LtDirectCurve* curve) const {
  if (n_rx < 1)
    throw std::invalid_argument("coverage_multistatic_only: n_rx >= 1");
  return networked_impl(r1, phi_s, n_rx, false, curve);
}

double AnalyticEngine::avg_coverage_impl(double phi_s, int n_coop,
                                         bool with_mono) const {
  const GaussRule& rule = gauss_legendre(nodes_.avg_r1);
  double wmax = 34.0;
  double inv = 1.0 / (kPi * cfg_.lambda_bs);
  double acc = 0.0;
  for (int i = 0; i < nodes_.avg_r1; ++i) {
    double w = 0.5 * wmax * (rule.nodes[i] + 1.0);
    double weight = 0.5 * wmax * rule.weights[i] * std::exp(-w);
    if (weight < 1e-14) continue;
    double r1 = std::sqrt(w * inv);
    acc += weight * networked_impl(r1, phi_s, n_coop, with_mono, nullptr);
  }
  return std::clamp(acc, 0.0, 1.0);
}

double AnalyticEngine::avg_coverage_networked(double phi_s, int n_coop) const {
  return avg_coverage_impl(phi_s, n_coop, true);
}

double AnalyticEngine::avg_coverage_multistatic_only(double phi_s,
                                                     int n_rx) const {
  return avg_coverage_impl(phi_s, n_rx, false);
}

double AnalyticEngine::rate_impl(int n_coop, bool with_mono) const {
  const GaussRule& rr = gauss_legendre(nodes_.rate_r1);
  const GaussRule& rp = gauss_legendre(nodes_.rate_panel);
  double wmax = 34.0;
  double inv = 1.0 / (kPi * cfg_.lambda_bs);
  double acc = 0.0;
  for (int i = 0; i < nodes_.rate_r1; ++i) {
    double w = 0.5 * wmax * (rr.nodes[i] + 1.0);
    double weight = 0.5 * wmax * rr.weights[i] * std::exp(-w);
    if (weight < 1e-12) continue;
    double r1 = std::sqrt(w * inv);
    // One direct-LT cache per range, shared across thresholds and receivers.
    double t0 = kRatePanels[0] +
                0.5 * (kRatePanels[1] - kRatePanels[0]) * (rp.nodes[0] + 1.0);
    double s_lo = direct_arg(std::expm1(t0), r1, r1, 0.0);
    double s_hi = kExpCut / drv_.noise_w;
    std::optional<LtDirectCurve> curve;
    if (s_lo < s_hi) curve.emplace(*this, s_lo, s_hi);
    double inner = 0.0;
    for (int p = 0; p < kNumRatePanels; ++p) {
      double a = kRatePanels[p], b = kRatePanels[p + 1];
      double pv = 0.0;
      for (int k = 0; k < nodes_.rate_panel; ++k) {
        double t = a + 0.5 * (b - a) * (rp.nodes[k] + 1.0);
        double wt = 0.5 * (b - a) * rp.weights[k];
        double phi = std::expm1(t);
        pv += wt * networked_impl(r1, phi, n_coop, with_mono,
                                  curve ? &*curve : nullptr);
      }
      inner += pv;
      if (p > 2 && pv < 1e-4 * std::max(inner, 1e-12)) break;
    }
    acc += weight * inner;
  }
  return cfg_.m_beams * acc;
}

double AnalyticEngine::rate_sensing(int n_coop) const {
  if (n_coop < 1) throw std::invalid_argument("rate_sensing: N >= 1");
  return rate_impl(n_coop, true);
}

double AnalyticEngine::rate_multistatic_only(int n_rx) const {
  if (n_rx < 1) throw std::invalid_argument("rate_multistatic_only: n_rx >= 1");
  return rate_impl(n_rx, false);
}

double AnalyticEngine::comm_lt_core(double s, double r_o, bool los) const {
  if (s < 0) throw std::invalid_argument("comm LT: s must be >= 0");
  if (s == 0) return 1.0;
  double lam = cfg_.lambda_bs;
  double gamma = cfg_.gamma_blockage;
  double edge = kPi / cfg_.d_spread;
  double eta = los ? cfg_.eta_los : cfg_.eta_nlos;
  double intercept = los ? cfg_.c_los : cfg_.c_nlos;
  int shape = los ? cfg_.m_los : cfg_.m_nlos;
  const GaussRule& rt = gauss_legendre(nodes_.comm_theta);
  double acc = 0.0;
  for (int it = 0; it < nodes_.comm_theta; ++it) {
    double theta = 0.5 * edge * (rt.nodes[it] + 1.0);
    double wt = 0.5 * edge * rt.weights[it];
    double c = std::cos(0.5 * cfg_.d_spread * theta);
    double g = cfg_.g_max * c * c;
    double a = s * drv_.p_comm * g * intercept;
    if (a <= 0.0) continue;
    double radial;
    if (los) {
      auto f = [&](double r) {
        return std::exp(-gamma * r) *
               nakagami_kernel(a * std::pow(r, -eta), shape) * r;
      };
      radial = integrate_los_tail(f, r_o, gamma, nodes_.comm_radial);
    } else {
      // Map [r_o, inf) to (0, 1] via r = r_o / x; the r^{1-2*eta_N} tail
      // becomes a smooth polynomial in x.
      auto f = [&](double x) {
        double r = r_o / x;
        return -std::expm1(-gamma * r) *
               nakagami_kernel(a * std::pow(r, -eta), shape) * r * r_o /
               (x * x);
      };
      radial = gauss_fixed(f, 1e-9, 1.0, nodes_.comm_radial / 2);
    }
    acc += wt * radial;
  }
  // Symmetric theta halves folded into a factor 2.
  return std::exp(-lam * 2.0 * acc);
}

double AnalyticEngine::lt_comm_los(double s, double r_o) const {
  return comm_lt_core(s, r_o, true);
}

double AnalyticEngine::lt_comm_nlos(double s, double r_o) const {
  return comm_lt_core(s, r_o, false);
}

double AnalyticEngine::coverage_comm(double phi_c) const {
  if (!(phi_c > 0)) throw std::invalid_argument("coverage_comm: phi_c > 0");
  int ml = cfg_.m_los;
  double kl = ml * std::pow(std::tgamma(ml + 1.0), -1.0 / ml);
  double a2 = cfg_.misalign_var;
  double edge = kPi / cfg_.d_spread;
  double theta_hi = std::min(cfg_.misalign_max, edge);
  double norm = std::erf(cfg_.misalign_max / std::sqrt(2.0 * a2));
  double gauss_norm = 1.0 / (std::sqrt(2.0 * kPi * a2) * norm);

  const GaussRule& rw = gauss_legendre(nodes_.avg_r1);
  const GaussRule& rt = gauss_legendre(nodes_.gain_theta);
  double wmax = 34.0;
  double inv = 1.0 / (kPi * cfg_.lambda_bs);
  BeamPattern pattern{cfg_.g_max, cfg_.d_spread};

  double acc = 0.0;
  for (int i = 0; i < nodes_.avg_r1; ++i) {
    double w = 0.5 * wmax * (rw.nodes[i] + 1.0);
    double weight = 0.5 * wmax * rw.weights[i] * std::exp(-w);
    if (weight < 1e-14) continue;
    double r_o = std::sqrt(w * inv);
    double ro_eta = std::pow(r_o, cfg_.eta_los);
    double theta_acc = 0.0;
    for (int it = 0; it < nodes_.gain_theta; ++it) {
      double theta = 0.5 * theta_hi * (rt.nodes[it] + 1.0);
      double wt = 0.5 * theta_hi * rt.weights[it] * 2.0 * gauss_norm *
                  std::exp(-theta * theta / (2.0 * a2));
      double gc = gain(pattern, theta);
      if (gc <= 0.0) continue;
      double sum = 0.0;
      double binom = 1.0;  // running C(ml, n)
      for (int n = 1; n <= ml; ++n) {
        binom = binom * (ml - n + 1) / n;
        double s = kl * n * phi_c * ro_eta / (drv_.p_comm * gc * cfg_.c_los);
        double noise_exp = s * drv_.noise_w;
        if (noise_exp > kExpCut) continue;
        double term = std::exp(-noise_exp) * comm_lt_core(s, r_o, true) *
                      comm_lt_core(s, r_o, false);
        sum += ((n % 2 == 1) ? 1.0 : -1.0) * binom * term;
      }
      theta_acc += wt * sum;
    }
    acc += weight * theta_acc;
  }
  return std::clamp(acc, 0.0, 1.0);
}

double AnalyticEngine::rate_comm() const {
  double duty = (drv_.t_slot - drv_.t_pulse) / drv_.t_slot;
  const GaussRule& rp = gauss_legendre(nodes_.rate_panel);
  double acc = 0.0;
  for (int p = 0; p < kNumRatePanels; ++p) {
    double a = kRatePanels[p], b = kRatePanels[p + 1];
    double pv = 0.0;
    for (int k = 0; k < nodes_.rate_panel; ++k) {
      double t = a + 0.5 * (b - a) * (rp.nodes[k] + 1.0);
      double wt = 0.5 * (b - a) * rp.weights[k];
      pv += wt * coverage_comm(std::expm1(t));
    }
    acc += pv;
    if (p > 2 && pv < 1e-4 * std::max(acc, 1e-12)) break;
  }
  return cfg_.m_beams * duty * acc;
}

LtDirectCurve::LtDirectCurve(const AnalyticEngine& engine, double s_lo,
                             double s_hi, int n_points) {
  s_lo = std::max(s_lo, 1e-300);
  s_hi = std::max(s_hi, s_lo * (1.0 + 1e-9));
  if (n_points < 4) n_points = 4;
  x_.resize(n_points);
  y_.resize(n_points);
  double lx0 = std::log(s_lo), lx1 = std::log(s_hi);
  for (int i = 0; i < n_points; ++i) {
    x_[i] = lx0 + (lx1 - lx0) * i / (n_points - 1);
    double lt = engine.lt_direct(std::exp(x_[i]));
    y_[i] = std::log(std::max(lt, 1e-300));
  }
  // Fritsch-Carlson monotone cubic slopes.
  int n = n_points;
  std::vector<double> d(n - 1);
  for (int i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
  slope_.assign(n, 0.0);
  slope_[0] = d[0];
  slope_[n - 1] = d[n - 2];
  for (int i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0)
      slope_[i] = 0.0;
    else
      slope_[i] = 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]);
  }
}

double LtDirectCurve::operator()(double s) const {
  double x = std::log(std::max(s, 1e-300));
  int n = static_cast<int>(x_.size());
  if (x <= x_[0]) {
    double y = y_[0] + slope_[0] * (x - x_[0]);
    return std::exp(std::min(y, 0.0));
  }
  if (x >= x_[n - 1]) {
    double y = y_[n - 1] + slope_[n - 1] * (x - x_[n - 1]);
    return std::exp(std::min(y, 0.0));
  }
  int lo = static_cast<int>(std::upper_bound(x_.begin(), x_.end(), x) -
                            x_.begin()) - 1;
  double h = x_[lo + 1] - x_[lo];
  double t = (x - x_[lo]) / h;
  double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
  double h10 = t * (1 - t) * (1 - t);
  double h01 = t * t * (3 - 2 * t);
  double h11 = t * t * (t - 1);
  double y = h00 * y_[lo] + h10 * h * slope_[lo] + h01 * y_[lo + 1] +
             h11 * h * slope_[lo + 1];
  return std::exp(std::min(y, 0.0));
}

}  // namespace isac
