#pragma once

// Command layer shared by the CLI binary and the tests. Each cmd_* function
// performs one subcommand end to end (validate config, compute, write CSV or
// JSON to the configured destination). run_command wraps them in the
// exit-code contract:
//   0  success            2  configuration error
//   1  validation failed  3  solver failure
//                         4  degenerate steady state
// All floating-point output is written with 12 significant digits, newline
// line endings, and a fixed column/key order, so identical configurations
// produce byte-identical files regardless of worker count.

#include <stdexcept>
#include <string>
#include <vector>

#include "qdyn/model.hpp"

namespace qdyn::cli {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SweepAxis {
  std::string name;  // one of: t, B, JDelta, a2, n, r
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
};

// Parse "name:lo:hi:count"; throws ConfigError on malformed specs.
SweepAxis parse_axis(const std::string& spec);

struct RunConfig {
  SpinChainParams params;

  // initial state
  std::string kind = "phi";  // phi | psi
  double r = 1.0;
  double a = 0.70710678118654752;  // 1/sqrt(2)
  double delta = 0.0;

  // time grid for evolve (and the t axis fallback): t in [0, t_max] with
  // `steps` equally spaced points; t_max = 0 means the single point t = 0
  double t_max = 10.0;
  int steps = 201;

  std::vector<std::string> axes;  // exactly two specs for sweep

  std::string out;            // output path; empty writes to stdout
  std::string format = "csv"; // csv | json (evolve, sweep, spectrum)
  int workers = 0;            // sweep parallelism; 0 = hardware concurrency
  bool include_coherence = false;  // add l1_coherence column to sweep output

  // Validation self-test hook: offset added to the analytic references so the
  // harness can prove the comparisons are live.
  double perturb_oracle = 0.0;
};

void cmd_evolve(const RunConfig& cfg);
void cmd_sweep(const RunConfig& cfg);
void cmd_steady(const RunConfig& cfg);
void cmd_spectrum(const RunConfig& cfg);
bool cmd_validate(const RunConfig& cfg);  // false when any live check fails

int run_command(const std::string& name, const RunConfig& cfg);

}  // namespace qdyn::cli
