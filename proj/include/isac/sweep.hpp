#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "isac/config.hpp"

namespace isac {

enum class Engine { Analytic, MonteCarlo, Both };

// One batch request: evaluate `metric` while stepping `parameter` over a grid.
// `parameter` names a SystemConfig field, or "r1" (the conditioned serving
// distance). An empty parameter evaluates a single point at the base config.
struct SweepRequest {
  Engine engine = Engine::Analytic;
  std::string metric = "coverage_networked";
  int metric_n = 0;  // link index / cooperation size override; 0 = config
  std::string parameter;
  double from = 0.0;
  double to = 0.0;
  int steps = 2;
  bool log_spacing = false;
  std::optional<double> fixed_r1;
  long trials = 20000;
  std::uint64_t seed = 1;
};

struct CurvePoint {
  double parameter = 0.0;
  double value = 0.0;
  double ci_half_width = 0.0;  // 0 for the deterministic engine
  std::string engine;          // "analytic" | "montecarlo"
  std::string metric;
  std::optional<double> gap;   // |analytic - montecarlo|, both-engine runs
};

struct SweepResult {
  SweepRequest request;
  std::vector<CurvePoint> rows;  // ordered by grid index, then engine
};

// Metric names: coverage_mono, coverage_bistatic, coverage_networked,
// avg_coverage, coverage_multistatic, avg_coverage_multistatic, coverage_comm,
// rate_sensing, rate_multistatic, rate_comm, backhaul. A "(n)" suffix (e.g.
// "rate_sensing(6)") sets the link index / cooperation size.
SweepResult run_sweep(const SystemConfig& base, const SweepRequest& request);

// format: "csv" (comma-separated, one header line) or "json-lines" (one
// object per row). Output is byte-stable for fixed inputs.
void emit(const SweepResult& result, std::ostream& out,
          const std::string& format);

// Inverse of the csv emitter, for round-trip checks.
std::vector<CurvePoint> parse_rows_csv(std::istream& in);

}  // namespace isac
