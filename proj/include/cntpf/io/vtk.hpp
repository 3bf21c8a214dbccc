#pragma once

// Legacy ASCII VTK unstructured-grid output.

#include <ostream>
#include <string>

#include "cntpf/fem/mesh.hpp"
#include "cntpf/fem/phase_field.hpp"

namespace cntpf::io {

/// POINTS (z = 0), quad CELLS, POINT_DATA scalars "phi" and vectors "u".
void write_vtk(std::ostream& os, const fem::Mesh& mesh, const fem::SolutionState& state,
               const std::string& title = "cntpf");

/// Throws IoError when the file cannot be written.
void write_vtk_file(const std::string& path, const fem::Mesh& mesh, const fem::SolutionState& state,
                    const std::string& title = "cntpf");

}  // namespace cntpf::io
