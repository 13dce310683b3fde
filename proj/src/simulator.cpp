#include "isac/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "isac/constants.hpp"
#include "isac/geometry.hpp"
#include "isac/propagation.hpp"

namespace isac {

namespace {

// Interference from BSs farther than this from the region center is below
// ~1e-6 of the thermal noise floor (NLoS r^-4 path loss; LoS links at this
// range survive blockage with probability < 1e-10), so those BSs are skipped.
constexpr double kInterfererCutoff = 1800.0;

// Resolution cells wider than this (bistatic angles near pi) are truncated;
// the affected links carry a vanishing desired power.
constexpr double kMaxClutterRadius = 400.0;

struct Receiver {
  double x, y;          // position
  double ux, uy;        // unit vector receiver -> target
  double r_link;        // distance to target
  double width;         // range-cell width
  double cos_half_b;    // bistatic cos(beta/2), 1 for mono
  bool feasible;
};

double sq(double v) { return v * v; }

// True when the sector of half-angle acos(cos_half) around unit direction
// (ux, uy) anchored at (ax, ay) contains point (px, py).
bool sector_covers(double ax, double ay, double ux, double uy, double cos_half,
                   double px, double py) {
  double wx = px - ax, wy = py - ay;
  double dot = ux * wx + uy * wy;
  if (dot <= 0.0) return false;
  return dot * dot >= cos_half * cos_half * (wx * wx + wy * wy);
}

double angle_between(double ax, double ay, double bx, double by) {
  double na = std::sqrt(ax * ax + ay * ay);
  double nb = std::sqrt(bx * bx + by * by);
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  double c = (ax * bx + ay * by) / (na * nb);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

TrialOutcome run_trial_impl(const SystemConfig& cfg, const DerivedParams& drv,
                            const SimOptions& opts, Rng& rng) {
  const int n_links = opts.n_links > 0 ? opts.n_links : cfg.n_coop;
  const double half = opts.region_half_side;
  const double theta_half = 0.5 * drv.theta_b;
  const double cos_half = std::cos(theta_half);
  const double gamma = cfg.gamma_blockage;
  const double fourpi3 = std::pow(4.0 * kPi, 3);
  const double lam2 = drv.wavelength_m * drv.wavelength_m;
  const double gm2 = cfg.g_max * cfg.g_max;
  const double sense_scale = drv.p_sense * gm2 * lam2 / fourpi3;
  const double range_width = kSpeedOfLight / (2.0 * cfg.bandwidth_hz);
  const BeamPattern pattern{cfg.g_max, cfg.d_spread};
  const MisalignmentLaw mis{cfg.misalign_var, cfg.misalign_max, pattern};
  const RcsModel rcs{cfg.sigma_avg_target, cfg.sigma_avg_clutter,
                     cfg.weibull_k};

  TrialOutcome out;
  std::vector<double> px, py, d2c;

  for (;;) {
    Region region{Region::Shape::Square, half, 0.0};
    PointField bs = sample_ppp(cfg.lambda_bs, region, rng);
    px.clear();
    py.clear();
    if (opts.fixed_r1) {
      double r1 = *opts.fixed_r1;
      for (const Point& p : bs.points)
        if (p.x * p.x + p.y * p.y >= r1 * r1) {
          px.push_back(p.x);
          py.push_back(p.y);
        }
      auto dir = rng.unit_vector();
      px.push_back(r1 * dir.x);
      py.push_back(r1 * dir.y);
    } else {
      for (const Point& p : bs.points) {
        px.push_back(p.x);
        py.push_back(p.y);
      }
    }
    if (static_cast<int>(px.size()) >= n_links) break;
    ++out.rerolls;
  }

  const int nbs = static_cast<int>(px.size());
  d2c.resize(nbs);
  for (int i = 0; i < nbs; ++i) d2c[i] = px[i] * px[i] + py[i] * py[i];

  // Indices of the n_links nearest BSs to the target (at the origin).
  std::vector<int> order(nbs);
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + n_links, order.end(),
                    [&](int a, int b) { return d2c[a] < d2c[b]; });
  const int serving = order[0];
  out.r1 = std::sqrt(d2c[serving]);

  // Beam boresights on the analyzed sensing block and on the MU's comm block:
  // M evenly spaced beams per BS with a uniform random rotation, and a uniform
  // bijection of frequency blocks to beams, so the two block beams of one BS
  // are distinct and offset by a multiple of 2*pi/M.
  const int m_beams = cfg.m_beams;
  const double beam_step = 2.0 * kPi / m_beams;
  std::vector<float> sdx(nbs), sdy(nbs), cdx(nbs), cdy(nbs);
  std::vector<char> active(nbs, 0);
  const double cutoff2 = sq(kInterfererCutoff);
  for (int i = 0; i < nbs; ++i) {
    if (d2c[i] > cutoff2) continue;
    active[i] = 1;
    double rot = rng.uniform(0.0, 2.0 * kPi);
    int ks = std::min(m_beams - 1, static_cast<int>(rng.uniform() * m_beams));
    int off = 1 + std::min(m_beams - 2,
                           static_cast<int>(rng.uniform() * (m_beams - 1)));
    int kc = (ks + off) % m_beams;
    double as = rot + beam_step * ks;
    double ac = rot + beam_step * kc;
    sdx[i] = static_cast<float>(std::cos(as));
    sdy[i] = static_cast<float>(std::sin(as));
    cdx[i] = static_cast<float>(std::cos(ac));
    cdy[i] = static_cast<float>(std::sin(ac));
  }
  // Serving BS senses the target on this block: boresight at the target.
  {
    double inv = 1.0 / out.r1;
    sdx[serving] = -px[serving] * inv;
    sdy[serving] = -py[serving] * inv;
  }

  // Link geometry and feasibility.
  std::vector<Receiver> rcv(n_links);
  out.bistatic.assign(n_links - 1, {});
  out.rn.assign(n_links - 1, 0.0);
  out.beta.assign(n_links - 1, 0.0);
  for (int l = 0; l < n_links; ++l) {
    int i = order[l];
    Receiver& r = rcv[l];
    r.x = px[i];
    r.y = py[i];
    r.r_link = std::sqrt(d2c[i]);
    r.ux = -px[i] / r.r_link;
    r.uy = -py[i] / r.r_link;
    if (l == 0) {
      r.cos_half_b = 1.0;
      r.width = range_width;
      r.feasible = true;  // serving link is LoS by assumption
    } else {
      double beta = angle_between(-px[serving], -py[serving], -px[i], -py[i]);
      out.rn[l - 1] = r.r_link;
      out.beta[l - 1] = beta;
      r.cos_half_b = std::cos(0.5 * beta);
      double c2 = std::max(r.cos_half_b * r.cos_half_b, 1e-12);
      r.width = range_width / c2;
      bool los = rng.uniform() < std::exp(-gamma * r.r_link);
      // The receiver's own transmit beam on this block must not be the one
      // facing the target, otherwise the weak bistatic return is unusable.
      bool own_beam_busy =
          sector_covers(r.x, r.y, sdx[i], sdy[i], cos_half, 0.0, 0.0);
      r.feasible = los && !own_beam_busy;
    }
  }

  // Desired echo powers.
  {
    double sigma = sample_rcs_target(rcs, rng);
    out.mono.desired =
        sense_scale * sigma / std::pow(out.r1, 2.0 * cfg.eta_los);
  }
  for (int l = 1; l < n_links; ++l) {
    if (!rcv[l].feasible) continue;
    double sigma = sample_rcs_target(rcs, rng);
    out.bistatic[l - 1].desired =
        sense_scale * bistatic_rcs(sigma, out.beta[l - 1]) /
        (std::pow(out.r1, cfg.eta_los) *
         std::pow(rcv[l].r_link, cfg.eta_los));
  }

  // Noise and residual self-interference.
  out.mono.noise = drv.noise_w;
  out.mono.residual_si = drv.p_comm * cfg.zeta_sic;
  for (auto& b : out.bistatic) b.noise = drv.noise_w;
  out.comm.noise = drv.noise_w;

  // Interfering BSs whose block beam faces the target with LoS: sources of
  // inter-clutter interference.
  std::vector<int> toward_target;

  // Main interferer sweep.
  for (int i = 0; i < nbs; ++i) {
    if (!active[i]) continue;
    if (i == serving) continue;
    bool is_link = false;
    int link_of_i = -1;
    for (int l = 1; l < n_links; ++l)
      if (order[l] == i) {
        is_link = true;
        link_of_i = l;
        break;
      }

    if (sector_covers(px[i], py[i], sdx[i], sdy[i], cos_half, 0.0, 0.0)) {
      if (rng.uniform() < std::exp(-gamma * std::sqrt(d2c[i])))
        toward_target.push_back(i);
    }

    // Direct interference into each feasible sensing receiver.
    for (int l = 0; l < n_links; ++l) {
      if (l == link_of_i) continue;
      if (l > 0 && !rcv[l].feasible) continue;
      const Receiver& r = rcv[l];
      if (!sector_covers(px[i], py[i], sdx[i], sdy[i], cos_half, r.x, r.y))
        continue;
      if (!sector_covers(r.x, r.y, r.ux, r.uy, cos_half, px[i], py[i]))
        continue;
      double dist = std::sqrt(sq(px[i] - r.x) + sq(py[i] - r.y));
      bool los = rng.uniform() < std::exp(-gamma * dist);
      SinrBreakdown& b = (l == 0) ? out.mono : out.bistatic[l - 1];
      if (los) {
        double h = sample_nakagami_power(cfg.m_los, rng);
        b.direct_los +=
            drv.p_comm * h * gm2 * cfg.c_los * std::pow(dist, -cfg.eta_los);
      } else {
        double h = sample_nakagami_power(cfg.m_nlos, rng);
        b.direct_nlos +=
            drv.p_comm * h * gm2 * cfg.c_nlos * std::pow(dist, -cfg.eta_nlos);
      }
    }

    // Communication interference at the MU (omnidirectional receive).
    if (opts.with_comm) {
      // Angle between the comm-block boresight and the direction to the MU.
      double theta = angle_between(cdx[i], cdy[i], -px[i], -py[i]);
      double g = gain(pattern, theta);
      if (g > 0.0) {
        double dist = std::sqrt(d2c[i]);
        bool los = rng.uniform() < std::exp(-gamma * dist);
        if (los) {
          double h = sample_nakagami_power(cfg.m_los, rng);
          out.comm.direct_los +=
              drv.p_comm * h * g * cfg.c_los * std::pow(dist, -cfg.eta_los);
        } else {
          double h = sample_nakagami_power(cfg.m_nlos, rng);
          out.comm.direct_nlos +=
              drv.p_comm * h * g * cfg.c_nlos * std::pow(dist, -cfg.eta_nlos);
        }
      }
    }
  }

  // Clutter field restricted to a disk certain to contain every resolution
  // cell of the feasible links.
  double clut_radius = 0.0;
  for (int l = 0; l < n_links; ++l) {
    const Receiver& r = rcv[l];
    if (l > 0 && !rcv[l].feasible) continue;
    double far = r.r_link + 0.5 * r.width;
    double reach = std::sqrt(std::max(
        sq(r.r_link) + sq(far) - 2.0 * r.r_link * far * cos_half, 0.0));
    clut_radius = std::max(clut_radius, reach + 0.5 * r.width + 2.0);
  }
  clut_radius = std::min(clut_radius, kMaxClutterRadius);
  Region clut_region{Region::Shape::Disk, 0.0, clut_radius};
  PointField clutter = sample_ppp(cfg.lambda_cl, clut_region, rng);

  // Cell membership first; RCS is drawn only for scatterers inside at least
  // one resolution cell, in index order, so configurations sharing the same
  // geometry consume identical draw sequences.
  std::vector<std::vector<int>> cell_members(n_links);
  std::vector<char> in_cell(clutter.points.size(), 0);
  for (int l = 0; l < n_links; ++l) {
    const Receiver& r = rcv[l];
    if (l > 0 && !r.feasible) continue;
    for (std::size_t j = 0; j < clutter.points.size(); ++j) {
      double cx = clutter.points[j].x, cy = clutter.points[j].y;
      if (!sector_covers(r.x, r.y, r.ux, r.uy, cos_half, cx, cy)) continue;
      double dist = std::sqrt(sq(cx - r.x) + sq(cy - r.y));
      if (std::abs(dist - r.r_link) > 0.5 * r.width) continue;
      cell_members[l].push_back(static_cast<int>(j));
      in_cell[j] = 1;
    }
  }
  std::vector<double> clut_rcs(clutter.points.size(), 0.0);
  for (std::size_t j = 0; j < clutter.points.size(); ++j)
    if (in_cell[j]) clut_rcs[j] = sample_rcs_clutter(rcs, rng);

  // Intra-clutter power per receiver from the actual scatterer geometry.
  for (int l = 0; l < n_links; ++l) {
    const Receiver& r = rcv[l];
    if (l > 0 && !r.feasible) continue;
    SinrBreakdown& b = (l == 0) ? out.mono : out.bistatic[l - 1];
    for (int j : cell_members[l]) {
      double cx = clutter.points[j].x, cy = clutter.points[j].y;
      double dist = std::sqrt(sq(cx - r.x) + sq(cy - r.y));
      double d_tx = std::sqrt(sq(cx - px[serving]) + sq(cy - py[serving]));
      if (d_tx <= 0.0) continue;
      double beta_c =
          (l == 0) ? 0.0
                   : angle_between(px[serving] - cx, py[serving] - cy,
                                   r.x - cx, r.y - cy);
      b.intra_clutter += sense_scale * bistatic_rcs(clut_rcs[j], beta_c) /
                         (std::pow(d_tx, cfg.eta_los) *
                          std::pow(dist, cfg.eta_los));
    }
  }

  // Inter-clutter interference: target-borne and clutter-borne reflections of
  // other BSs' transmissions.
  for (int v : toward_target) {
    double rv = std::sqrt(d2c[v]);
    for (int l = 0; l < n_links; ++l) {
      if (l > 0 && !rcv[l].feasible) continue;
      if (order[l] == v) continue;
      const Receiver& r = rcv[l];
      SinrBreakdown& b = (l == 0) ? out.mono : out.bistatic[l - 1];
      double beta_v = angle_between(px[v], py[v], r.x, r.y);
      double sigma = sample_rcs_target(rcs, rng);
      b.inter_clutter += sense_scale * bistatic_rcs(sigma, beta_v) /
                         (std::pow(rv, cfg.eta_los) *
                          std::pow(r.r_link, cfg.eta_los));
      for (int j : cell_members[l]) {
        double cx = clutter.points[j].x, cy = clutter.points[j].y;
        double d_vc = std::sqrt(sq(cx - px[v]) + sq(cy - py[v]));
        double d_cr = std::sqrt(sq(cx - r.x) + sq(cy - r.y));
        if (d_vc <= 0.0 || d_cr <= 0.0) continue;
        double beta_c = angle_between(px[v] - cx, py[v] - cy, r.x - cx,
                                      r.y - cy);
        b.inter_clutter += sense_scale * bistatic_rcs(clut_rcs[j], beta_c) /
                           (std::pow(d_vc, cfg.eta_los) *
                            std::pow(d_cr, cfg.eta_los));
      }
    }
  }

  // Communication desired signal: serving beam with misalignment, LoS link.
  if (opts.with_comm) {
    double theta_m = sample_misalign_angle(mis, rng);
    double g = gain(pattern, theta_m);
    double h = sample_nakagami_power(cfg.m_los, rng);
    out.comm.desired =
        drv.p_comm * h * g * cfg.c_los * std::pow(out.r1, -cfg.eta_los);
  }

  return out;
}

}  // namespace

double TrialOutcome::sinr_networked(int n_coop) const {
  double best = mono.sinr();
  int links = std::min<int>(n_coop - 1, static_cast<int>(bistatic.size()));
  for (int i = 0; i < links; ++i) best = std::max(best, bistatic[i].sinr());
  return best;
}

TrialOutcome run_trial(const SystemConfig& cfg, Rng& rng) {
  return run_trial(cfg, rng, SimOptions{});
}

TrialOutcome run_trial(const SystemConfig& cfg, Rng& rng,
                       const SimOptions& options) {
  DerivedParams drv = derive(cfg);
  return run_trial_impl(cfg, drv, options, rng);
}

namespace {

TrialRecord to_record(const TrialOutcome& t, const DerivedParams& drv) {
  TrialRecord rec;
  auto link = [&](const SinrBreakdown& b) {
    LinkRecord lr;
    lr.sig_ps = static_cast<float>(b.desired / drv.p_sense);
    lr.intra_ps = static_cast<float>(b.intra_clutter / drv.p_sense);
    lr.inter_ps = static_cast<float>(b.inter_clutter / drv.p_sense);
    lr.dir_pc = static_cast<float>((b.direct_los + b.direct_nlos) / drv.p_comm);
    return lr;
  };
  rec.mono = link(t.mono);
  rec.bistatic.reserve(t.bistatic.size());
  for (const auto& b : t.bistatic) rec.bistatic.push_back(link(b));
  rec.comm_sig_pc = static_cast<float>(t.comm.desired / drv.p_comm);
  rec.comm_intf_pc = static_cast<float>(
      (t.comm.direct_los + t.comm.direct_nlos) / drv.p_comm);
  rec.r1 = static_cast<float>(t.r1);
  return rec;
}

}  // namespace

TrialSet run_trials(const SystemConfig& cfg, const SimOptions& opts,
                    long n_trials, std::uint64_t seed) {
  if (n_trials < 1) throw std::invalid_argument("run_trials: n_trials >= 1");
  TrialSet set;
  set.cfg = cfg;
  set.drv = derive(cfg);
  set.opts = opts;
  set.seed = seed;
  set.records.resize(n_trials);

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, 8);
  std::atomic<long> next{0};
  auto worker = [&]() {
    for (;;) {
      long i = next.fetch_add(64);
      if (i >= n_trials) return;
      long hi = std::min(n_trials, i + 64);
      for (long k = i; k < hi; ++k) {
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(k));
        TrialOutcome t = run_trial_impl(cfg, set.drv, opts, rng);
        set.records[k] = to_record(t, set.drv);
      }
    }
  };
  if (workers <= 1 || n_trials < 256) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return set;
}

namespace {

double record_metric(const TrialRecord& rec, const TrialSet& set, Metric metric,
                     int metric_n, double threshold, double ps, double pc,
                     double zeta) {
  auto link_sinr = [&](const LinkRecord& lr, bool with_si) {
    double den = ps * (static_cast<double>(lr.intra_ps) + lr.inter_ps) +
                 pc * lr.dir_pc + set.drv.noise_w + (with_si ? pc * zeta : 0.0);
    return ps * lr.sig_ps / den;
  };
  auto best_sinr = [&](int first_link, int last_link) {
    double best = 0.0;
    if (first_link == 1) best = link_sinr(rec.mono, true);
    int lo = std::max(2, first_link);
    for (int n = lo; n <= last_link; ++n) {
      int idx = n - 2;
      if (idx < static_cast<int>(rec.bistatic.size()))
        best = std::max(best, link_sinr(rec.bistatic[idx], false));
    }
    return best;
  };
  int n_coop = metric_n > 0 ? metric_n : set.cfg.n_coop;
  double m = set.cfg.m_beams;
  double duty = (set.drv.t_slot - set.drv.t_pulse) / set.drv.t_slot;
  switch (metric) {
    case Metric::CoverageMono:
      return link_sinr(rec.mono, true) > threshold ? 1.0 : 0.0;
    case Metric::CoverageBistatic: {
      int idx = (metric_n > 0 ? metric_n : 2) - 2;
      if (idx < 0 || idx >= static_cast<int>(rec.bistatic.size()))
        throw std::invalid_argument("bistatic link index out of range");
      return link_sinr(rec.bistatic[idx], false) > threshold ? 1.0 : 0.0;
    }
    case Metric::CoverageNetworked:
      return best_sinr(1, n_coop) > threshold ? 1.0 : 0.0;
    case Metric::CoverageMultistaticOnly:
      return best_sinr(2, n_coop + 1) > threshold ? 1.0 : 0.0;
    case Metric::CoverageComm: {
      double sinr = pc * rec.comm_sig_pc /
                    (pc * rec.comm_intf_pc + set.drv.noise_w);
      return sinr > threshold ? 1.0 : 0.0;
    }
    case Metric::RateSensing:
      return m * std::log1p(best_sinr(1, n_coop));
    case Metric::RateMultistaticOnly:
      return m * std::log1p(best_sinr(2, n_coop + 1));
    case Metric::RateComm: {
      double sinr = pc * rec.comm_sig_pc /
                    (pc * rec.comm_intf_pc + set.drv.noise_w);
      return m * duty * std::log1p(sinr);
    }
  }
  return 0.0;
}

}  // namespace

Estimate evaluate(const TrialSet& set, Metric metric, int metric_n,
                  double threshold, const std::optional<PowerOverride>& power) {
  double ps = power ? power->p_sense : set.drv.p_sense;
  double pc = power ? power->p_comm : set.drv.p_comm;
  double zeta = power ? power->zeta : set.cfg.zeta_sic;
  double sum = 0.0, sum2 = 0.0;
  for (const auto& rec : set.records) {
    double v = record_metric(rec, set, metric, metric_n, threshold, ps, pc,
                             zeta);
    sum += v;
    sum2 += v * v;
  }
  long n = static_cast<long>(set.records.size());
  Estimate e;
  e.mean = sum / n;
  double var = std::max(0.0, sum2 / n - e.mean * e.mean);
  e.half_width_95 = 1.96 * std::sqrt(var / n);
  e.n_trials = n;
  e.seed = set.seed;
  return e;
}

Estimate estimate_coverage(const SystemConfig& cfg, Metric metric, int metric_n,
                           double threshold, long n_trials, std::uint64_t seed,
                           const SimOptions& opts) {
  if (n_trials < 1000)
    throw std::invalid_argument("estimate_coverage: n_trials >= 1000");
  TrialSet set = run_trials(cfg, opts, n_trials, seed);
  return evaluate(set, metric, metric_n, threshold);
}

Estimate estimate_rate(const SystemConfig& cfg, Metric metric, long n_trials,
                       std::uint64_t seed, const SimOptions& opts) {
  TrialSet set = run_trials(cfg, opts, n_trials, seed);
  return evaluate(set, metric, 0, 0.0);
}

void dump_trials(const std::string& path, const SystemConfig& cfg,
                 long n_trials, std::uint64_t seed, const SimOptions& opts) {
  std::ofstream outf(path);
  if (!outf) throw std::runtime_error("cannot open dump file: " + path);
  DerivedParams drv = derive(cfg);
  outf << "trial r1 desired direct_los direct_nlos intra_clutter "
          "inter_clutter residual_si noise sinr_mono sinr_networked "
          "comm_desired comm_direct_los comm_direct_nlos comm_noise "
          "sinr_comm\n";
  int n_links = opts.n_links > 0 ? opts.n_links : cfg.n_coop;
  for (long k = 0; k < n_trials; ++k) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(k));
    TrialOutcome t = run_trial_impl(cfg, drv, opts, rng);
    const SinrBreakdown& b = t.mono;
    outf << k << ' ' << t.r1 << ' ' << b.desired << ' ' << b.direct_los << ' '
         << b.direct_nlos << ' ' << b.intra_clutter << ' ' << b.inter_clutter
         << ' ' << b.residual_si << ' ' << b.noise << ' ' << b.sinr() << ' '
         << t.sinr_networked(n_links) << ' ' << t.comm.desired << ' '
         << t.comm.direct_los << ' ' << t.comm.direct_nlos << ' '
         << t.comm.noise << ' ' << t.comm.sinr() << '\n';
  }
}

}  // namespace isac
