#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dw/cascade.hpp"
#include "dw/diagnostics.hpp"
#include "dw/grid.hpp"
#include "dw/weights.hpp"

namespace dw {

enum class DataKind { zero, gaussian, power_tail, mode };

struct DataSpec {
  DataKind kind = DataKind::zero;
  double amp = 1.0;
  double center = 0.0;
  double width = 1.0;
  double p = 2.0;   // power_tail exponent
  int index = 1;    // mode number
};

// One experiment, parsed from a flat key=value file.  Unknown keys are errors;
// validate() checks every parameter inequality before anything runs.
struct ExperimentConfig {
  Geometry geometry = Geometry::line;
  int dim = 1;
  double r_lo = -10.0;
  double r_hi = 10.0;
  double h = 0.1;
  Bc bc_lo = Bc::dirichlet;

  ProfileShape shape = ProfileShape::constant;
  double a0 = 1.0;
  double alpha = 0.0;
  double r_min = 0.0;

  double eps = 0.1;
  double delta = 0.05;
  double t0 = 10.0;
  double lambda = 0.0;
  double nu = 1.0;
  int n = 0;

  DataSpec u0, u1;

  double T = 10.0;
  double dt = 0.05;
  double fit_a = 0.0;  // 0 = auto (T/10, T)
  double fit_b = 0.0;
  double tol = 0.15;
  std::string out_dir;
  std::string name = "experiment";

  std::map<std::string, std::string> raw;  // as parsed, for sweeps

  DampingProfile profile() const;
  Grid make_grid() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig config_from_map(const std::map<std::string, std::string>& kv);

// Empty list means valid; every entry names the violated inequality.
std::vector<std::string> validate(const ExperimentConfig& cfg);

// Sample a data spec on the grid.  gaussian and power_tail data are multiplied
// by a C^2 ramp vanishing over 10 nodes at each Dirichlet wall; mode data obeys
// the boundary condition by construction.
std::vector<double> generate_data(const Grid& g, const DataSpec& spec);

struct FitRecord {
  std::string label;
  double slope = 0.0;
  double stderr_slope = 0.0;
  double bound = 0.0;
  double tol = 0.15;
  bool pass = false;
};

struct BoundednessRecord {
  std::string label;
  double early_max = 0.0;
  double late_max = 0.0;
  double tail_gain = 0.0;  // relative increase of the running integral over
                           // the final decade (for cumulative diagnostics)
  bool cumulative = false;
};

struct ExperimentResult {
  ExperimentConfig cfg;
  std::vector<double> rates_V;
  double rate_residual = 0.0;
  std::vector<FitRecord> fits;
  std::vector<BoundednessRecord> bounds;
  double truncation = 0.0;   // outer-margin amplitude of u
  double consistency = 0.0;  // tower cross-check residual
  bool all_pass = false;
  std::string trace_path;    // traces.csv
  std::string summary_path;  // summary.json
};

// Validates, runs the full pipeline, writes traces.csv and summary.json into
// cfg.out_dir (or out_dir_override) and returns every verdict.  Deterministic:
// rerunning reproduces the files byte for byte.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::string& out_dir_override = "");

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

struct SweepRow {
  std::map<std::string, std::string> params;  // axis key -> value
  std::vector<FitRecord> fits;
  bool all_pass = false;
  std::string error;  // nonempty when this row failed
};

// Cartesian product of the axes over the base config; rows run concurrently
// and are returned sorted by parameter tuple.  Failed rows carry the error
// string and no numbers.
std::vector<SweepRow> sweep(const ExperimentConfig& base,
                            const std::vector<SweepAxis>& axes,
                            const std::string& out_dir);

void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::vector<SweepAxis>& axes,
                     const std::string& path);

}  // namespace dw
