#include "cntpf/io/vtk.hpp"

#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "cntpf/errors.hpp"

namespace cntpf::io {

void write_vtk(std::ostream& os, const fem::Mesh& mesh, const fem::SolutionState& state,
               const std::string& title) {
  const int nn = mesh.num_nodes(), ne = mesh.num_elements();
  if (state.u.size() != 2 * nn || state.phi.size() != nn)
    throw std::invalid_argument("write_vtk: state does not match the mesh");
  os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << std::setprecision(17);
  os << "POINTS " << nn << " double\n";
  for (const auto& x : mesh.nodes) os << x.x() << ' ' << x.y() << " 0\n";
  os << "CELLS " << ne << ' ' << 5 * ne << '\n';
  for (const auto& e : mesh.elements) os << "4 " << e[0] << ' ' << e[1] << ' ' << e[2] << ' ' << e[3] << '\n';
  os << "CELL_TYPES " << ne << '\n';
  for (int e = 0; e < ne; ++e) os << "9\n";
  os << "POINT_DATA " << nn << "\nSCALARS phi double 1\nLOOKUP_TABLE default\n";
  for (int n = 0; n < nn; ++n) os << state.phi[n] << '\n';
  os << "VECTORS u double\n";
  for (int n = 0; n < nn; ++n) os << state.u[2 * n] << ' ' << state.u[2 * n + 1] << " 0\n";
}

void write_vtk_file(const std::string& path, const fem::Mesh& mesh, const fem::SolutionState& state,
                    const std::string& title) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  write_vtk(f, mesh, state, title);
  if (!f) throw IoError("write failed for '" + path + "'");
}

}  // namespace cntpf::io
