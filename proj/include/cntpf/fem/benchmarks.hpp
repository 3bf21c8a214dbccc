#pragma once

// Single-edge-notched plates under tension and shear, and the notched plate
// with a hole loaded through two pins. Lengths in mm.

#include <string>
#include <vector>

#include "cntpf/fem/mesh.hpp"
#include "cntpf/fem/phase_field.hpp"

namespace cntpf::fem {

enum class BenchmarkCase { kSenTension, kSenShear, kHoledPlate };

/// Coarse: narrow refinement bands (~4k elements for SEN tension).
/// Fine: wider bands, about 8.5k elements for the SEN plates.
enum class MeshRefinement { kCoarse, kFine };

std::string to_string(BenchmarkCase c);
BenchmarkCase benchmark_case_from_string(const std::string& s);
std::string to_string(MeshRefinement r);
MeshRefinement mesh_refinement_from_string(const std::string& s);

/// Square plate, straight notch at mid-height entering from the right edge.
struct SenGeometry {
  double size = 50.0;
  double notch_length = 25.0;
};

struct HoledPlateGeometry {
  double width = 65.0;
  double height = 120.0;
  double pin_diameter = 10.0;
  double pin_x = 20.0;
  double pin_lower_y = 20.0;
  double pin_upper_y = 100.0;
  double hole_diameter = 20.0;
  double hole_x = 36.5;
  double hole_y = 51.0;
  double notch_y = 65.0;
  double notch_length = 10.0;  ///< from the left edge
  double pin_collar = 1.8;     ///< width of the undamageable ring around each pin (0: none)
};

struct BenchmarkGeometry {
  SenGeometry sen{};
  HoledPlateGeometry holed{};
};

struct BenchmarkMeshOptions {
  MeshRefinement refinement = MeshRefinement::kCoarse;
  double ell = 0.0;         ///< 0: case default (2.4 mm SEN, 0.9 mm holed plate)
  double ell_over_h = 7.0;  ///< element size in the refined zones is <= ell / ell_over_h
};

double default_length_scale(BenchmarkCase c);

Mesh generate_benchmark_mesh(BenchmarkCase c, const BenchmarkMeshOptions& opt = {},
                             const BenchmarkGeometry& geom = {});

struct BenchmarkProblem {
  Mesh mesh;
  std::vector<BoundaryCondition> bcs;
  SimulationSpec sim;
  std::vector<LoadSegment> schedule;  ///< default displacement schedule (mm)
  double ell = 0.0;
};

/// Mesh, boundary conditions, reaction set and default schedule.
///  SEN tension: bottom fixed, top u_x = 0, u_y = u; reaction on top (y).
///  SEN shear: bottom fixed, top u_x = -u, u_y = 0, sides u_y = 0; reaction on top (-x).
///  Holed plate: lower pin's lower half fixed, upper pin's upper half u_x = 0, u_y = u;
///  phi = 0 on the pin collars.
BenchmarkProblem make_benchmark(BenchmarkCase c, const BenchmarkMeshOptions& opt = {},
                                const BenchmarkGeometry& geom = {});

}  // namespace cntpf::fem
