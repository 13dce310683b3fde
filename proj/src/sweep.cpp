#include "isac/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "isac/analytic.hpp"
#include "isac/geometry.hpp"
#include "isac/simulator.hpp"

namespace isac {

namespace {

struct MetricSpec {
  enum class Kind {
    CovMono,
    CovBistatic,
    CovNetworked,
    AvgCov,
    CovMultistatic,
    AvgMultistatic,
    CovComm,
    RateSensing,
    RateMultistatic,
    RateComm,
    Backhaul,
  };
  Kind kind;
  int n = 0;  // 0 = use cfg.n_coop (or link 2 for bistatic)
  bool is_rate() const {
    return kind == Kind::RateSensing || kind == Kind::RateMultistatic ||
           kind == Kind::RateComm;
  }
  bool is_comm() const {
    return kind == Kind::CovComm || kind == Kind::RateComm;
  }
};

MetricSpec parse_metric(const std::string& raw, int metric_n) {
  std::string name = raw;
  int n = metric_n;
  auto open = raw.find('(');
  if (open != std::string::npos) {
    auto close = raw.find(')', open);
    if (close == std::string::npos)
      throw std::invalid_argument("metric: unbalanced '(' in \"" + raw + "\"");
    n = std::stoi(raw.substr(open + 1, close - open - 1));
    name = raw.substr(0, open);
  }
  using K = MetricSpec::Kind;
  static const std::pair<const char*, K> table[] = {
      {"coverage_mono", K::CovMono},
      {"coverage_bistatic", K::CovBistatic},
      {"coverage_networked", K::CovNetworked},
      {"avg_coverage", K::AvgCov},
      {"coverage_multistatic", K::CovMultistatic},
      {"avg_coverage_multistatic", K::AvgMultistatic},
      {"coverage_comm", K::CovComm},
      {"rate_sensing", K::RateSensing},
      {"rate_multistatic", K::RateMultistatic},
      {"rate_comm", K::RateComm},
      {"backhaul", K::Backhaul},
  };
  for (const auto& [key, kind] : table)
    if (name == key) return {kind, n};
  throw std::invalid_argument("unknown metric \"" + raw + "\"");
}

std::vector<double> make_grid(const SweepRequest& req) {
  if (req.parameter.empty()) return {0.0};
  if (req.steps < 2) throw std::invalid_argument("sweep: steps >= 2");
  std::vector<double> grid(req.steps);
  if (req.log_spacing) {
    if (!(req.from > 0.0 && req.to > 0.0))
      throw std::invalid_argument("sweep: log spacing needs positive bounds");
    double lf = std::log(req.from), lt = std::log(req.to);
    for (int i = 0; i < req.steps; ++i)
      grid[i] = std::exp(lf + (lt - lf) * i / (req.steps - 1));
  } else {
    for (int i = 0; i < req.steps; ++i)
      grid[i] = req.from + (req.to - req.from) * i / (req.steps - 1);
  }
  return grid;
}

// Applies one grid value; returns the conditioned serving distance to use.
std::optional<double> apply_parameter(SystemConfig& cfg,
                                      const SweepRequest& req, double value) {
  if (req.parameter.empty()) return req.fixed_r1;
  if (req.parameter == "r1") return value;
  if (req.parameter == "d_spread") {
    // Beam count is tied to the spread, and the peak gain scales with the
    // beam count so total radiated energy stays fixed across the sweep
    // (anchored at the baseline gain 10 for d = 6).
    int d = static_cast<int>(std::lround(value));
    cfg.d_spread = d;
    cfg.m_beams = 2 * d;
    cfg.g_max = 10.0 * d / 6.0;
    return req.fixed_r1;
  }
  std::ostringstream num;
  num.precision(17);
  num << value;
  set_config_field(cfg, req.parameter, num.str());
  return req.fixed_r1;
}

bool postprocessable(const std::string& parameter) {
  return parameter == "threshold_sensing" || parameter == "threshold_comm" ||
         parameter == "zeta_sic" || parameter == "p_sense" ||
         parameter == "p_comm" || parameter == "alpha_split";
}

double analytic_value(const SystemConfig& cfg, const MetricSpec& spec,
                      std::optional<double> r1) {
  using K = MetricSpec::Kind;
  if (spec.kind == K::Backhaul)
    return static_cast<double>(backhaul_overhead(
        spec.n > 0 ? spec.n : cfg.n_coop, cfg.b_sc_bits));
  AnalyticEngine eng(cfg);
  int n = spec.n > 0 ? spec.n : cfg.n_coop;
  double phi_s = cfg.threshold_sensing;
  auto need_r1 = [&]() {
    if (!r1) {
      throw std::invalid_argument(
          "metric requires a conditioned serving distance (set r1)");
    }
    return *r1;
  };
  switch (spec.kind) {
    case K::CovMono:
      return r1 ? eng.coverage_mono(*r1, phi_s).value
                : eng.avg_coverage_networked(phi_s, 1);
    case K::CovBistatic:
      return eng.coverage_bistatic(spec.n > 0 ? spec.n : 2, need_r1(), phi_s)
          .value;
    case K::CovNetworked:
      return r1 ? eng.coverage_networked(*r1, phi_s, n)
                : eng.avg_coverage_networked(phi_s, n);
    case K::AvgCov:
      return eng.avg_coverage_networked(phi_s, n);
    case K::CovMultistatic:
      return r1 ? eng.coverage_multistatic_only(*r1, phi_s, n)
                : eng.avg_coverage_multistatic_only(phi_s, n);
    case K::AvgMultistatic:
      return eng.avg_coverage_multistatic_only(phi_s, n);
    case K::CovComm:
      return eng.coverage_comm(cfg.threshold_comm);
    case K::RateSensing:
      return eng.rate_sensing(n);
    case K::RateMultistatic:
      return eng.rate_multistatic_only(n);
    case K::RateComm:
      return eng.rate_comm();
    case K::Backhaul:
      break;
  }
  return 0.0;
}

Metric mc_metric(const MetricSpec& spec) {
  using K = MetricSpec::Kind;
  switch (spec.kind) {
    case K::CovMono:
      return Metric::CoverageMono;
    case K::CovBistatic:
      return Metric::CoverageBistatic;
    case K::CovNetworked:
    case K::AvgCov:
      return Metric::CoverageNetworked;
    case K::CovMultistatic:
    case K::AvgMultistatic:
      return Metric::CoverageMultistaticOnly;
    case K::CovComm:
      return Metric::CoverageComm;
    case K::RateSensing:
      return Metric::RateSensing;
    case K::RateMultistatic:
      return Metric::RateMultistaticOnly;
    case K::RateComm:
      return Metric::RateComm;
    case K::Backhaul:
      break;
  }
  throw std::invalid_argument("metric has no Monte Carlo estimator");
}

int links_needed(const SystemConfig& cfg, const MetricSpec& spec) {
  using K = MetricSpec::Kind;
  int n = spec.n > 0 ? spec.n : cfg.n_coop;
  switch (spec.kind) {
    case K::CovBistatic:
      return spec.n > 0 ? spec.n : 2;
    case K::CovMultistatic:
    case K::AvgMultistatic:
    case K::RateMultistatic:
      return n + 1;
    default:
      return std::max(1, n);
  }
}

std::pair<double, double> mc_value(const SystemConfig& cfg,
                                   const MetricSpec& spec,
                                   const SweepRequest& req,
                                   std::optional<double> r1,
                                   std::unique_ptr<TrialSet>& cache) {
  using K = MetricSpec::Kind;
  if (spec.kind == K::Backhaul)
    return {static_cast<double>(backhaul_overhead(
                spec.n > 0 ? spec.n : cfg.n_coop, cfg.b_sc_bits)),
            0.0};
  if (!cache) {
    SimOptions opts;
    opts.fixed_r1 = r1;
    opts.n_links = links_needed(cfg, spec);
    opts.with_comm = spec.is_comm();
    cache = std::make_unique<TrialSet>(
        run_trials(cfg, opts, req.trials, req.seed));
  }
  DerivedParams drv = derive(cfg);
  PowerOverride power{drv.p_sense, drv.p_comm, cfg.zeta_sic};
  double threshold =
      spec.is_comm() ? cfg.threshold_comm : cfg.threshold_sensing;
  int metric_n = spec.n;
  if (spec.kind == K::CovBistatic && metric_n == 0) metric_n = 2;
  Estimate e = evaluate(*cache, mc_metric(spec), metric_n, threshold, power);
  return {e.mean, e.half_width_95};
}

}  // namespace

SweepResult run_sweep(const SystemConfig& base, const SweepRequest& req) {
  MetricSpec spec = parse_metric(req.metric, req.metric_n);
  std::vector<double> grid = make_grid(req);
  SweepResult result;
  result.request = req;

  bool reuse = postprocessable(req.parameter);
  std::unique_ptr<TrialSet> cache;

  for (double v : grid) {
    SystemConfig cfg = base;
    std::optional<double> r1 = apply_parameter(cfg, req, v);
    if (!reuse) cache.reset();

    std::optional<double> a, m, ci;
    if (req.engine != Engine::MonteCarlo)
      a = analytic_value(cfg, spec, r1);
    if (req.engine != Engine::Analytic) {
      auto [mean, hw] = mc_value(cfg, spec, req, r1, cache);
      m = mean;
      ci = hw;
    }
    std::optional<double> gap;
    if (a && m) gap = std::abs(*a - *m);
    if (a)
      result.rows.push_back(
          {v, *a, 0.0, "analytic", req.metric, gap});
    if (m)
      result.rows.push_back(
          {v, *m, *ci, "montecarlo", req.metric, gap});
  }
  return result;
}

void emit(const SweepResult& result, std::ostream& out,
          const std::string& format) {
  if (result.rows.empty())
    throw std::invalid_argument("emit: no rows to write");
  bool with_gap = false;
  for (const auto& r : result.rows) with_gap = with_gap || r.gap.has_value();

  if (format == "csv") {
    std::ostringstream buf;
    buf.precision(12);
    buf << "parameter,value,ci_half_width,engine,metric";
    if (with_gap) buf << ",gap";
    buf << '\n';
    for (const auto& r : result.rows) {
      buf << r.parameter << ',' << r.value << ',' << r.ci_half_width << ','
          << r.engine << ',' << r.metric;
      if (with_gap) {
        buf << ',';
        if (r.gap) buf << *r.gap;
      }
      buf << '\n';
    }
    out << buf.str();
  } else if (format == "json-lines") {
    for (const auto& r : result.rows) {
      nlohmann::json row{{"parameter", r.parameter},
                         {"value", r.value},
                         {"ci_half_width", r.ci_half_width},
                         {"engine", r.engine},
                         {"metric", r.metric}};
      if (r.gap) row["gap"] = *r.gap;
      out << row.dump() << '\n';
    }
  } else {
    throw std::invalid_argument("emit: format must be csv or json-lines");
  }
  if (!out) throw std::runtime_error("emit: write failure");
}

std::vector<CurvePoint> parse_rows_csv(std::istream& in) {
  std::vector<CurvePoint> rows;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
  bool with_gap = line.find(",gap") != std::string::npos;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    CurvePoint p;
    std::getline(ls, field, ',');
    p.parameter = std::stod(field);
    std::getline(ls, field, ',');
    p.value = std::stod(field);
    std::getline(ls, field, ',');
    p.ci_half_width = std::stod(field);
    std::getline(ls, p.engine, ',');
    std::getline(ls, p.metric, ',');
    if (with_gap && std::getline(ls, field, ',') && !field.empty())
      p.gap = std::stod(field);
    rows.push_back(std::move(p));
  }
  return rows;
}

}  // namespace isac
