#pragma once

// Run configuration: an INI file with one section per group of material
// symbols. Omitted keys take the reference MWCNT/epoxy values; units are SI
// except the FEM lengths (mm).

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cntpf/composite.hpp"
#include "cntpf/fem/benchmarks.hpp"
#include "cntpf/fem/phase_field.hpp"

namespace cntpf::app {

/// Parse or validation failure; the message names the file line or the
/// offending `section.key`.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::string parameter = "cnt.kappa";
  double start = 10.0;
  double stop = 1000.0;
  int count = 100;
  bool log_spacing = false;
  int threads = 1;  ///< 0: hardware concurrency

  std::vector<double> values() const;
};

struct SimulationConfig {
  fem::BenchmarkCase bench = fem::BenchmarkCase::kSenTension;
  fem::BenchmarkMeshOptions mesh{};
  fem::BenchmarkGeometry geometry{};
  double thickness_m = 1.0;
  std::vector<fem::LoadSegment> schedule;  ///< empty: case default
  double stop_fraction = 0.02;
  int stop_after = 3;
  bool vtk = true;
  int snapshot_every = 0;  ///< 0: final state only
};

struct RunConfig {
  CompositeSpec composite{};
  SweepSpec sweep{};
  SimulationConfig simulation{};
  fem::SolverConfig solver{};
  /// Effective `section.key -> value` after defaults, file and overrides.
  std::map<std::string, std::string> values;

  /// FNV-1a of the canonical (sorted) key=value listing.
  std::string hash() const;
};

struct KeyInfo {
  std::string key;  ///< section.key
  std::string default_value;
  std::string help;
};

const std::vector<KeyInfo>& config_schema();

std::size_t edit_distance(const std::string& a, const std::string& b);

/// Closest schema key to `key` (empty if nothing is reasonably close).
std::string suggest_key(const std::string& key);

/// `overrides` are "section.key=value" strings applied after the file.
RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides = {});
RunConfig parse_config_string(const std::string& text, const std::vector<std::string>& overrides = {});

/// Builds and validates a configuration from key/value pairs (unknown keys
/// rejected, missing keys defaulted).
RunConfig build_config(const std::map<std::string, std::string>& values);

/// "0.06:0.005, 0.2:0.0005" -> segments (end:increment).
std::vector<fem::LoadSegment> parse_schedule(const std::string& text);

}  // namespace cntpf::app
