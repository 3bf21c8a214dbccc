#include <CLI11.hpp>

#include <iostream>

#include "cntpf/app/commands.hpp"
#include "cntpf/io/csv.hpp"

using namespace cntpf::app;

namespace {

void print_schema() {
  std::string section;
  for (const KeyInfo& k : config_schema()) {
    const std::string s = k.key.substr(0, k.key.find('.'));
    if (s != section) {
      section = s;
      std::cout << "\n[" << section << "]\n";
    }
    std::cout << "  " << k.key.substr(section.size() + 1) << " = "
              << (k.default_value.empty() ? "(unset)" : k.default_value) << "    ; " << k.help
              << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Micromechanics and phase-field fracture of CNT/epoxy composites"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cntpf::io::kVersion);

  std::string config_path, out_dir = "out";
  std::vector<std::string> overrides;
  bool quiet = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config,-c", config_path, "INI configuration (omitted keys take defaults)");
    sub->add_option("--out,-o", out_dir, "output directory")->capture_default_str();
    sub->add_option("--override", overrides, "section.key=value, applied after the file");
  };
  CLI::App* homogenize = app.add_subcommand("homogenize", "effective stiffness");
  CLI::App* fracture = app.add_subcommand("fracture-energy", "bridging fracture energy");
  CLI::App* sweep = app.add_subcommand("sweep", "effective properties along one parameter");
  CLI::App* simulate = app.add_subcommand("simulate", "phase-field benchmark");
  for (CLI::App* sub : {homogenize, fracture, sweep, simulate}) add_common(sub);
  simulate->add_flag("--quiet,-q", quiet, "no per-step log");
  CLI::App* schema = app.add_subcommand("schema", "list configuration keys and defaults");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    if (schema->parsed()) {
      print_schema();
      return kOk;
    }
    const RunConfig cfg = config_path.empty() ? parse_config_string("", overrides)
                                              : parse_config(config_path, overrides);
    if (homogenize->parsed()) run_homogenize(cfg, out_dir);
    if (fracture->parsed()) run_fracture_energy(cfg, out_dir);
    if (sweep->parsed()) run_sweep(cfg, out_dir);
    if (simulate->parsed()) {
      const BenchmarkOutcome r = run_benchmark(cfg, out_dir, [&](const std::string& line) {
        if (!quiet) std::cerr << line << "\n";
      });
      std::cout << "peak reaction " << r.peak_reaction << " kN at u = " << r.peak_displacement
                << " mm (" << r.elements << " elements)\n";
    }
    std::cout << "wrote " << out_dir << "\n";
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  }
}
