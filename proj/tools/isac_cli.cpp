// Batch front end: load a config, run metric sweeps on the analytic or
// Monte Carlo engine (or both), and emit plot-ready tables.
//
// Exit codes: 0 success, 2 invalid input (flags/config/request), 1 runtime
// failure (IO, engine errors).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isac/config.hpp"
#include "isac/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitInvalid = 2;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

// NAME:FROM:TO:STEPS[:log]; a NAME ending in "_db" is converted to the
// linear-domain field with decibel-uniform (geometric) spacing.
void parse_sweep_spec(const std::string& spec, isac::SweepRequest& req) {
  auto parts = split(spec, ':');
  if (parts.size() != 4 && parts.size() != 5)
    throw CLI::ValidationError("--sweep", "expected NAME:FROM:TO:STEPS[:log]");
  std::string name = parts[0];
  double from = std::stod(parts[1]);
  double to = std::stod(parts[2]);
  int steps = std::stoi(parts[3]);
  bool log_spacing = false;
  if (parts.size() == 5) {
    if (parts[4] != "log")
      throw CLI::ValidationError("--sweep", "fifth field must be 'log'");
    log_spacing = true;
  }
  if (name.size() > 3 && name.substr(name.size() - 3) == "_db") {
    name = name.substr(0, name.size() - 3);
    from = db_to_linear(from);
    to = db_to_linear(to);
    log_spacing = true;  // uniform dB grid
  }
  req.parameter = name;
  req.from = from;
  req.to = to;
  req.steps = steps;
  req.log_spacing = log_spacing;
}

// KEY=VALUE; "r1" conditions the serving distance; a "_db" suffix converts
// the value to linear before assignment.
void apply_set(const std::string& kv, isac::SystemConfig& cfg,
               isac::SweepRequest& req) {
  auto eq = kv.find('=');
  if (eq == std::string::npos)
    throw CLI::ValidationError("--set", "expected KEY=VALUE");
  std::string key = kv.substr(0, eq);
  std::string value = kv.substr(eq + 1);
  if (key == "r1") {
    req.fixed_r1 = std::stod(value);
    return;
  }
  if (key.size() > 3 && key.substr(key.size() - 3) == "_db") {
    key = key.substr(0, key.size() - 3);
    std::ostringstream lin;
    lin.precision(17);
    lin << db_to_linear(std::stod(value));
    value = lin.str();
  }
  isac::set_config_field(cfg, key, value);
}

isac::Engine parse_engine(const std::string& name) {
  if (name == "analytic") return isac::Engine::Analytic;
  if (name == "montecarlo") return isac::Engine::MonteCarlo;
  if (name == "both") return isac::Engine::Both;
  throw CLI::ValidationError("--engine",
                             "must be analytic, montecarlo, or both");
}

void write_result(const isac::SweepResult& result, const std::string& out_path,
                  const std::string& format) {
  if (out_path.empty()) {
    isac::emit(result, std::cout, format);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output: " + out_path);
    isac::emit(result, out, format);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmWave ISAC network performance toolkit"};
  app.fallthrough();

  std::string config_path, engine = "analytic", metric = "coverage_networked";
  std::string sweep_spec, out_path, format = "csv";
  std::vector<std::string> sets;
  long trials = 20000;
  std::uint64_t seed = 1;

  app.add_option("--config", config_path, "configuration file (key = value)");
  app.add_option("--engine", engine, "analytic | montecarlo | both");
  app.add_option("--metric", metric,
                 "coverage_mono | coverage_bistatic(n) | coverage_networked | "
                 "avg_coverage | coverage_multistatic | "
                 "avg_coverage_multistatic | coverage_comm | rate_sensing | "
                 "rate_multistatic | rate_comm | backhaul");
  app.add_option("--sweep", sweep_spec, "NAME:FROM:TO:STEPS[:log]");
  app.add_option("--set", sets, "KEY=VALUE override (repeatable)");
  app.add_option("--trials", trials, "Monte Carlo trials per point");
  app.add_option("--seed", seed, "Monte Carlo master seed");
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_option("--format", format, "csv | json-lines");

  // Figure families: presets over the generic sweep.
  CLI::App* fig_threshold = app.add_subcommand(
      "fig-threshold", "coverage vs sensing SINR threshold (dB axis)");
  CLI::App* fig_density =
      app.add_subcommand("fig-density", "rates vs BS density (log axis)");
  CLI::App* fig_beamwidth =
      app.add_subcommand("fig-beamwidth", "coverage vs beam spread d");
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "paired-engine sweep; reports the worst absolute gap");
  double gap_tol = 0.02;
  validate_cmd->add_option("--tol", gap_tol,
                           "maximum acceptable |analytic - montecarlo|");
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  // Setup phase: any failure here is an input problem.
  isac::SystemConfig cfg;
  isac::SweepRequest req;
  try {
    if (!config_path.empty()) cfg = isac::load_config(config_path);
    req.metric = metric;
    req.trials = trials;
    req.seed = seed;
    if (fig_threshold->parsed() && sweep_spec.empty())
      sweep_spec = "threshold_sensing_db:-10:10:21";
    if (fig_density->parsed() && sweep_spec.empty()) {
      sweep_spec = "lambda_bs:1e-5:1e-3:13:log";
      if (metric == "coverage_networked") req.metric = "rate_sensing";
    }
    if (fig_beamwidth->parsed() && sweep_spec.empty()) {
      sweep_spec = "d_spread:2:10:5";
      if (metric == "coverage_networked") req.metric = "coverage_comm";
    }
    if (!sweep_spec.empty()) parse_sweep_spec(sweep_spec, req);
    for (const auto& kv : sets) apply_set(kv, cfg, req);
    req.engine = validate_cmd->parsed() ? isac::Engine::Both
                                        : parse_engine(engine);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    isac::SweepResult result = isac::run_sweep(cfg, req);
    write_result(result, out_path, format);

    if (validate_cmd->parsed()) {
      double worst = 0.0;
      for (const auto& row : result.rows)
        if (row.gap) worst = std::max(worst, *row.gap);
      std::cerr << "max_gap " << worst << " tol " << gap_tol << '\n';
      return worst <= gap_tol ? kExitOk : kExitRuntime;
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
