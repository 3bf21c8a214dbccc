#pragma once

// The four CLI subcommands. Each writes its files into `out_dir` (created if
// missing) and throws on failure; exit_code() maps the exception type.

#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "cntpf/app/config.hpp"

namespace cntpf::app {

enum ExitCode { kOk = 0, kOtherError = 1, kConfigError = 2, kSolverError = 3, kIoError = 4 };

int exit_code(const std::exception& e);

struct SweepPoint {
  double value = 0.0;
  bool ok = false;
  double E = 0.0, nu = 0.0, G_c = 0.0, G_PF = 0.0, G_PF_agg = 0.0;
  std::string error;
};

/// Evaluates the composite at every axis value; failed points keep their
/// error message. Results are in axis order whatever the thread count.
std::vector<SweepPoint> evaluate_sweep(const RunConfig& cfg);

void run_homogenize(const RunConfig& cfg, const std::string& out_dir);
void run_fracture_energy(const RunConfig& cfg, const std::string& out_dir);
void run_sweep(const RunConfig& cfg, const std::string& out_dir);

struct BenchmarkOutcome {
  fem::SimulationResult result;
  double E = 0.0, nu = 0.0, G_c = 0.0;
  int elements = 0;
  double peak_reaction = 0.0, peak_displacement = 0.0;
};

/// Material from the composite block, benchmark mesh and boundary conditions
/// from the simulation block. `log` receives one line per converged step.
BenchmarkOutcome run_benchmark(const RunConfig& cfg, const std::string& out_dir,
                               const std::function<void(const std::string&)>& log = {});

}  // namespace cntpf::app
