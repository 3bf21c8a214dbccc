#include "cntpf/fem/benchmarks.hpp"

#include <cmath>
#include <numeric>

#include "cntpf/errors.hpp"

namespace cntpf::fem {

std::string to_string(BenchmarkCase c) {
  switch (c) {
    case BenchmarkCase::kSenTension: return "sen_tension";
    case BenchmarkCase::kSenShear: return "sen_shear";
    case BenchmarkCase::kHoledPlate: return "holed_plate";
  }
  return "?";
}

BenchmarkCase benchmark_case_from_string(const std::string& s) {
  if (s == "sen_tension") return BenchmarkCase::kSenTension;
  if (s == "sen_shear") return BenchmarkCase::kSenShear;
  if (s == "holed_plate") return BenchmarkCase::kHoledPlate;
  throw DomainError("unknown benchmark case '" + s + "' (sen_tension, sen_shear, holed_plate)");
}

std::string to_string(MeshRefinement r) {
  return r == MeshRefinement::kCoarse ? "coarse" : "fine";
}

MeshRefinement mesh_refinement_from_string(const std::string& s) {
  if (s == "coarse") return MeshRefinement::kCoarse;
  if (s == "fine") return MeshRefinement::kFine;
  throw DomainError("unknown mesh refinement '" + s + "' (coarse, fine)");
}

double default_length_scale(BenchmarkCase c) {
  return c == BenchmarkCase::kHoledPlate ? 0.9 : 2.4;
}

namespace {

/// Largest length (resolution 0.5 mm) dividing all of `values`.
double lattice_unit(std::initializer_list<double> values, const char* what) {
  long long u = 0;
  for (double v : values) {
    const long long k = std::llround(v * 2);
    if (std::abs(v * 2 - k) > 1e-9)
      throw DomainError(std::string(what) + ": dimensions must be multiples of 0.5 mm");
    u = std::gcd(u, k);
  }
  return u / 2.0;
}

QuadtreeSpec sen_spec(BenchmarkCase c, const BenchmarkMeshOptions& opt, const SenGeometry& g,
                      double ell) {
  if (!(g.size > 0 && g.notch_length > 0 && g.notch_length < g.size))
    throw DomainError("SEN geometry: need 0 < notch_length < size");
  const double target = ell / opt.ell_over_h;
  const double half = 0.5 * g.size;
  const double tip_x = g.size - g.notch_length;
  // Root cells must put both the notch line and the tip on lattice lines.
  const auto [root, levels] = choose_root(lattice_unit({half, tip_x}, "SEN geometry"), target);
  const double h = root / std::ldexp(1.0, levels);

  QuadtreeSpec spec;
  spec.width = g.size;
  spec.height = g.size;
  spec.root_size = root;
  spec.notch = EdgeNotch{half, tip_x, g.size};
  const bool fine = opt.refinement == MeshRefinement::kFine;
  if (c == BenchmarkCase::kSenTension) {
    // Straight crack ahead of the tip.
    const double hw = (fine ? 5.0 : 2.0) * ell;
    spec.zones.push_back(BandZone{{tip_x + 2 * h, half}, {0.0, half}, hw, target});
  } else {
    // Without an energy split the shear crack grows ahead of the tip; the
    // zone is centred on the notch line and leaves room for a kink.
    const double x_max = fine ? g.size : tip_x + ell;
    const double hw = (fine ? 7.0 : 3.0) * ell;
    spec.zones.push_back(BoxZone{0.0, x_max, half - hw, half + hw, target});
  }
  return spec;
}

QuadtreeSpec holed_spec(const BenchmarkMeshOptions& opt, const HoledPlateGeometry& g, double ell) {
  if (!(g.width > 0 && g.height > 0 && g.pin_diameter > 0 && g.hole_diameter > 0 &&
        g.notch_length > 0 && g.notch_length < g.width && g.pin_collar >= 0))
    throw DomainError("holed plate geometry: dimensions must be positive");
  const double target = ell / opt.ell_over_h;
  const double unit =
      lattice_unit({g.width, g.height, g.notch_y, g.notch_length}, "holed plate geometry");
  // Few large root cells: the plate is big compared with the refined zones.
  const auto [root, levels] = choose_root(unit, target, 3);
  const double h = root / std::ldexp(1.0, levels);

  QuadtreeSpec spec;
  spec.width = g.width;
  spec.height = g.height;
  spec.root_size = root;
  const double rp = 0.5 * g.pin_diameter, rh = 0.5 * g.hole_diameter;
  spec.holes = {Hole{{g.pin_x, g.pin_lower_y}, rp, "pin_lower"},
                Hole{{g.pin_x, g.pin_upper_y}, rp, "pin_upper"},
                Hole{{g.hole_x, g.hole_y}, rh, "hole"}};
  spec.notch = EdgeNotch{g.notch_y, 0.0, g.notch_length};

  const bool fine = opt.refinement == MeshRefinement::kFine;
  const double pin_size = 4 * h;
  for (int k = 0; k < 2; ++k)
    spec.zones.push_back(RingZone{spec.holes[k].center, rp - 2 * pin_size, rp + 2 * pin_size, pin_size});
  spec.zones.push_back(RingZone{spec.holes[2].center, rh - 2 * h, rh + 1.5 * ell, target});
  // First crack: ahead of the notch, then bending down into the hole.
  const Eigen::Vector2d tip(g.notch_length, g.notch_y);
  const Eigen::Vector2d c = spec.holes[2].center;
  const Eigen::Vector2d knee(tip.x() + 0.55 * (c.x() - tip.x()), g.notch_y - 1.2);
  const Eigen::Vector2d entry = c + rh * (knee - c).normalized();
  const double hw1 = (fine ? 3.0 : 2.0) * ell;
  spec.zones.push_back(BandZone{tip - Eigen::Vector2d(2 * h, 0), knee, hw1, target});
  spec.zones.push_back(BandZone{knee, entry, hw1, target});
  // Second crack: far side of the hole to the right edge.
  const double hw2 = (fine ? 5.0 : 3.0) * ell;
  spec.zones.push_back(BandZone{c + Eigen::Vector2d(rh, 0), {g.width, g.hole_y}, hw2, target});
  return spec;
}

}  // namespace

Mesh generate_benchmark_mesh(BenchmarkCase c, const BenchmarkMeshOptions& opt,
                             const BenchmarkGeometry& geom) {
  if (!(opt.ell_over_h > 0)) throw DomainError("benchmark mesh: ell_over_h must be positive");
  const double ell = opt.ell > 0 ? opt.ell : default_length_scale(c);
  if (c == BenchmarkCase::kHoledPlate) return quadtree_mesh(holed_spec(opt, geom.holed, ell));
  return quadtree_mesh(sen_spec(c, opt, geom.sen, ell));
}

BenchmarkProblem make_benchmark(BenchmarkCase c, const BenchmarkMeshOptions& opt,
                                const BenchmarkGeometry& geom) {
  BenchmarkProblem p;
  p.mesh = generate_benchmark_mesh(c, opt, geom);
  p.ell = opt.ell > 0 ? opt.ell : default_length_scale(c);
  switch (c) {
    case BenchmarkCase::kSenTension:
      p.bcs = {{"bottom", Dof::kX, 0.0}, {"bottom", Dof::kY, 0.0},
               {"top", Dof::kX, 0.0},    {"top", Dof::kY, 1.0}};
      p.sim.reaction_set = "top";
      p.sim.reaction_dof = Dof::kY;
      p.schedule = {{0.06, 0.005}, {0.2, 0.0005}};
      break;
    case BenchmarkCase::kSenShear:
      p.bcs = {{"bottom", Dof::kX, 0.0}, {"bottom", Dof::kY, 0.0}, {"top", Dof::kX, -1.0},
               {"top", Dof::kY, 0.0},    {"left", Dof::kY, 0.0},   {"right", Dof::kY, 0.0}};
      p.sim.reaction_set = "top";
      p.sim.reaction_dof = Dof::kX;
      p.sim.reaction_sign = -1.0;
      p.schedule = {{0.1, 0.005}, {0.4, 0.001}};
      break;
    case BenchmarkCase::kHoledPlate:
      p.bcs = {{"pin_lower_lower", Dof::kX, 0.0}, {"pin_lower_lower", Dof::kY, 0.0},
               {"pin_upper_upper", Dof::kX, 0.0}, {"pin_upper_upper", Dof::kY, 1.0}};
      if (geom.holed.pin_collar > 0) {
        // Bearing stresses at the ends of the loaded arcs would otherwise
        // start damage at the pins.
        std::vector<int> collar;
        const double r = 0.5 * geom.holed.pin_diameter + geom.holed.pin_collar;
        for (int n = 0; n < p.mesh.num_nodes(); ++n) {
          const Eigen::Vector2d& x = p.mesh.nodes[n];
          for (double cy : {geom.holed.pin_lower_y, geom.holed.pin_upper_y})
            if ((x - Eigen::Vector2d(geom.holed.pin_x, cy)).norm() <= r + 1e-9) {
              collar.push_back(n);
              break;
            }
        }
        p.mesh.node_sets["pin_collar"] = collar;
        p.bcs.push_back({"pin_collar", Dof::kPhi, 0.0});
      }
      p.sim.reaction_set = "pin_upper_upper";
      p.sim.reaction_dof = Dof::kY;
      p.schedule = {{0.2, 0.01}, {1.0, 0.002}};
      break;
  }
  return p;
}

}  // namespace cntpf::fem
