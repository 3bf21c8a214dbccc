#include "cntpf/app/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "cntpf/io/csv.hpp"
#include "cntpf/io/vtk.hpp"

namespace cntpf::app {

namespace fs = std::filesystem;
using io::format_double;

int exit_code(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DomainError*>(&e))
    return kConfigError;
  if (dynamic_cast<const ConvergenceError*>(&e)) return kSolverError;
  if (dynamic_cast<const IoError*>(&e)) return kIoError;
  return kOtherError;
}

namespace {

std::string prepare_dir(const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir))
    throw IoError("cannot create output directory '" + out_dir + "'");
  return out_dir;
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
  if (!os) throw IoError("cannot write '" + path + "'");
}

/// Effective configuration, one section per group, for re-running.
void write_resolved_config(const RunConfig& cfg, const std::string& dir) {
  std::string text = "; " + io::provenance_line(cfg.hash()).substr(2) + "\n";
  std::string section;
  for (const auto& [key, value] : cfg.values) {
    const auto dot = key.find('.');
    if (key.substr(0, dot) != section) {
      section = key.substr(0, dot);
      text += "\n[" + section + "]\n";
    }
    text += key.substr(dot + 1) + " = " + value + "\n";
  }
  write_text(join(dir, "config.resolved.ini"), text);
}

void add_quantity(io::CsvWriter& w, const std::string& name, double v) {
  w.add_row({name, format_double(v)});
}

}  // namespace

void run_homogenize(const RunConfig& cfg, const std::string& out_dir) {
  const std::string dir = prepare_dir(out_dir);
  const CompositeProperties props = evaluate_composite(cfg.composite);
  const VolumeFractions vf = volume_fractions(cfg.composite.phases.f_p, cfg.composite.geom);
  io::CsvWriter w({"quantity", "value"});
  add_quantity(w, "E_eff_Pa", props.iso.E);
  add_quantity(w, "nu_eff", props.iso.nu);
  add_quantity(w, "bulk_Pa", props.iso.bulk);
  add_quantity(w, "shear_Pa", props.iso.shear);
  add_quantity(w, "anisotropy", props.iso.anisotropy);
  add_quantity(w, "E_eff_over_E_m", props.iso.E / cfg.composite.phases.matrix.E);
  add_quantity(w, "f_m", vf.f_m);
  add_quantity(w, "f_i", vf.f_i);
  add_quantity(w, "f_p", vf.f_p);
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j)
      add_quantity(w, "C" + std::to_string(i + 1) + std::to_string(j + 1) + "_Pa", props.C(i, j));
  w.write_file(join(dir, "homogenize.csv"), io::provenance_line(cfg.hash()));
  write_resolved_config(cfg, dir);
}

void run_fracture_energy(const RunConfig& cfg, const std::string& out_dir) {
  const std::string dir = prepare_dir(out_dir);
  const CompositeSpec& c = cfg.composite;
  const FractureParams fp = c.fracture_params();
  const FractureEnergyParts parts = fracture_energy_parts(1.0, fp, c.planar_odf, c.packing);
  const CompositeProperties props = evaluate_composite(c);
  io::CsvWriter w({"quantity", "value"});
  add_quantity(w, "G_0_J_m2", fp.G_0);
  add_quantity(w, "G_PF_pullout_J_m2", parts.pullout);
  add_quantity(w, "G_PF_rupture_J_m2", parts.rupture);
  add_quantity(w, "G_PF_J_m2", props.fracture.G_PF);
  add_quantity(w, "G_PF_agg_J_m2", props.fracture.G_PF_agg);
  add_quantity(w, "G_c_J_m2", props.fracture.G_c);
  add_quantity(w, "kappa", c.geom.kappa());
  add_quantity(w, "theta_mean_rad", c.planar_odf.mean());
  add_quantity(w, "theta_std_rad", c.planar_odf.stddev());
  w.write_file(join(dir, "fracture_energy.csv"), io::provenance_line(cfg.hash()));
  write_resolved_config(cfg, dir);
}

std::vector<SweepPoint> evaluate_sweep(const RunConfig& cfg) {
  const std::vector<double> axis = cfg.sweep.values();
  std::vector<SweepPoint> points(axis.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < axis.size(); i = next++) {
      SweepPoint& pt = points[i];
      pt.value = axis[i];
      try {
        auto values = cfg.values;
        values[cfg.sweep.parameter] = format_double(axis[i]);
        const CompositeProperties props = evaluate_composite(build_config(values).composite);
        pt.E = props.iso.E;
        pt.nu = props.iso.nu;
        pt.G_c = props.fracture.G_c;
        pt.G_PF = props.fracture.G_PF;
        pt.G_PF_agg = props.fracture.G_PF_agg;
        pt.ok = true;
      } catch (const std::exception& e) {
        pt.error = e.what();
      }
    }
  };
  unsigned n = cfg.sweep.threads > 0 ? static_cast<unsigned>(cfg.sweep.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(axis.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  return points;
}

void run_sweep(const RunConfig& cfg, const std::string& out_dir) {
  const std::string dir = prepare_dir(out_dir);
  const std::vector<SweepPoint> points = evaluate_sweep(cfg);
  io::CsvWriter w({cfg.sweep.parameter, "E_eff_Pa", "nu_eff", "G_c_J_m2", "G_PF_J_m2",
                   "G_PF_agg_J_m2", "status"});
  for (const SweepPoint& p : points) {
    if (p.ok) {
      w.add_row({format_double(p.value), format_double(p.E), format_double(p.nu),
                 format_double(p.G_c), format_double(p.G_PF), format_double(p.G_PF_agg), "ok"});
    } else {
      std::string msg = p.error;
      std::replace_if(msg.begin(), msg.end(), [](char ch) { return ch == ',' || ch == '\n'; }, ';');
      w.add_row({format_double(p.value), "", "", "", "", "", "error: " + msg});
    }
  }
  w.write_file(join(dir, "sweep.csv"), io::provenance_line(cfg.hash()));
  write_resolved_config(cfg, dir);
}

BenchmarkOutcome run_benchmark(const RunConfig& cfg, const std::string& out_dir,
                               const std::function<void(const std::string&)>& log) {
  const std::string dir = prepare_dir(out_dir);
  write_resolved_config(cfg, dir);
  const SimulationConfig& sc = cfg.simulation;

  BenchmarkOutcome out;
  const CompositeProperties props = evaluate_composite(cfg.composite);
  out.E = props.iso.E;
  out.nu = props.iso.nu;
  out.G_c = props.fracture.G_c;

  fem::BenchmarkProblem bp = fem::make_benchmark(sc.bench, sc.mesh, sc.geometry);
  out.elements = bp.mesh.num_elements();
  const fem::PFMaterial mat =
      fem::PFMaterial::from_si(isotropic_stiffness(out.E, out.nu).matrix(), out.G_c, bp.ell);
  const fem::PhaseFieldModel model(bp.mesh, mat, bp.bcs);

  fem::SolverConfig solver = cfg.solver;
  solver.schedule = sc.schedule.empty() ? bp.schedule : sc.schedule;
  solver.validate();
  fem::SimulationSpec spec = bp.sim;
  spec.thickness_m = sc.thickness_m;
  spec.stop_fraction = sc.stop_fraction;
  spec.stop_after = sc.stop_after;

  const std::string title = "cntpf " + fem::to_string(sc.bench);
  out.result = fem::run_simulation(model, spec, solver, [&](const fem::SolutionState& s, double F) {
    if (log) {
      char line[128];
      std::snprintf(line, sizeof line, "step %4d  u = %.6g mm  F = %.6g kN  phi_max = %.4f", s.step,
                    s.load, F, s.phi.maxCoeff());
      log(line);
    }
    if (sc.vtk && sc.snapshot_every > 0 && s.step % sc.snapshot_every == 0) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%04d.vtk", s.step);
      io::write_vtk_file(join(dir, name), bp.mesh, s, title);
    }
  });

  for (const fem::LoadPoint& p : out.result.curve)
    if (p.reaction > out.peak_reaction) {
      out.peak_reaction = p.reaction;
      out.peak_displacement = p.displacement;
    }

  io::load_curve_table(out.result.curve)
      .write_file(join(dir, "load_curve.csv"), io::provenance_line(cfg.hash()));
  if (sc.vtk) io::write_vtk_file(join(dir, "final.vtk"), bp.mesh, out.result.final_state, title);

  nlohmann::ordered_json j;
  j["version"] = io::kVersion;
  j["config_hash"] = cfg.hash();
  j["case"] = fem::to_string(sc.bench);
  j["refinement"] = fem::to_string(sc.mesh.refinement);
  j["elements"] = out.elements;
  j["nodes"] = bp.mesh.num_nodes();
  j["ell_mm"] = bp.ell;
  j["E_eff_Pa"] = out.E;
  j["nu_eff"] = out.nu;
  j["G_c_J_m2"] = out.G_c;
  j["thickness_m"] = sc.thickness_m;
  j["steps"] = out.result.curve.size();
  j["total_iterations"] = out.result.total_iterations;
  j["peak_reaction_kN"] = out.peak_reaction;
  j["peak_displacement_mm"] = out.peak_displacement;
  j["phi_min"] = out.result.phi_min;
  j["phi_max"] = out.result.phi_max;
  j["history_monotone"] = out.result.history_monotone;
  j["failure"] = out.result.failure ? nlohmann::json(*out.result.failure) : nlohmann::json();
  write_text(join(dir, "summary.json"), j.dump(2) + "\n");

  if (out.result.failure) throw ConvergenceError(*out.result.failure);
  return out;
}

}  // namespace cntpf::app
