#pragma once

// Plane-strain AT2 phase-field fracture on bilinear quads.
//
// Units: mm, N, MPa. G_c is stored in N/mm (= kJ/m^2), energy densities and
// the history field in MPa (= MJ/m^3). Internal forces come out per mm of
// thickness, so F [N/mm] times a thickness in metres reads directly in kN.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cntpf/errors.hpp"
#include "cntpf/fem/mesh.hpp"
#include "cntpf/tensor_mech.hpp"

namespace cntpf::fem {

/// (eps11, eps22, gamma12) -> (s11, s22, s12) rows/columns of the 6x6 tensor.
Eigen::Matrix3d plane_strain_reduce(const Matrix6d& C);

inline double element_energy_density(const Eigen::Vector3d& strain, const Eigen::Matrix3d& C2d) {
  return 0.5 * strain.dot(C2d * strain);
}

inline double update_history(double psi, double H_old) { return psi > H_old ? psi : H_old; }

struct PFMaterial {
  Eigen::Matrix3d C2d = Eigen::Matrix3d::Zero();  ///< MPa
  double Gc = 0.0;                                ///< N/mm
  double ell = 0.0;                               ///< mm
  double k_res = 1e-7;                            ///< residual stiffness in (1-phi)^2 + k

  /// From a 3D stiffness in Pa and G_c in J/m^2.
  static PFMaterial from_si(const Matrix6d& C_pa, double Gc_J_m2, double ell_mm);
  void validate() const;
};

enum class Dof { kX = 0, kY = 1, kPhi = 2 };

/// Prescribes `factor * load` on one dof of every node in `node_set`.
struct BoundaryCondition {
  std::string node_set;
  Dof dof = Dof::kX;
  double factor = 0.0;
};

struct SolutionState {
  Eigen::VectorXd u;    ///< 2 per node (x, y), mm
  Eigen::VectorXd phi;  ///< 1 per node
  Eigen::VectorXd H;    ///< 4 per element (Gauss points), MPa
  double load = 0.0;
  int step = 0;
};

/// Piecewise-uniform increments: segment k runs to `end` in steps of `increment`.
struct LoadSegment {
  double end = 0.0;
  double increment = 0.0;
};

struct SolverConfig {
  double rel_tol = 1e-6;     ///< against the internal-force / phase-field drive scale
  double abs_tol = 1e-10;
  int max_iterations = 400;
  int lbfgs_memory = 30;
  int tangent_refresh = 20;  ///< rebuild the block-diagonal preconditioner every n iterations
  double line_search_eta = 0.8;
  int max_halvings = 4;
  int quadrature = 2;        ///< Gauss points per direction; only 2 is supported
  std::vector<LoadSegment> schedule;

  void validate() const;
};

/// Iterations of one solve (for diagnostics).
struct StepReport {
  int iterations = 0;
  double residual = 0.0;
  int tangent_updates = 0;
};

class StepConvergenceError : public ConvergenceError {
 public:
  StepConvergenceError(int step, double load, double residual)
      : ConvergenceError("no convergence in load step " + std::to_string(step) + " (load " +
                         std::to_string(load) + ", residual " + std::to_string(residual) + ")"),
        step_(step), load_(load), residual_(residual) {}
  int step() const noexcept { return step_; }
  double load() const noexcept { return load_; }
  double residual() const noexcept { return residual_; }

 private:
  int step_;
  double load_;
  double residual_;
};

/// Full residual of the coupled system (no constraints applied).
struct Residual {
  Eigen::VectorXd r_u;        ///< internal force, 2 per node
  Eigen::VectorXd r_phi;      ///< 1 per node
  Eigen::VectorXd crack;      ///< |G_c/l phi N + G_c l grad| part of r_phi (scale)
  Eigen::VectorXd drive;      ///< 2 (1-phi) H N part of r_phi (scale)
};

class PhaseFieldModel {
 public:
  PhaseFieldModel(Mesh mesh, PFMaterial mat, std::vector<BoundaryCondition> bcs);

  const Mesh& mesh() const { return mesh_; }
  const PFMaterial& material() const { return mat_; }

  SolutionState initial_state() const;

  /// History used inside a solve: max(H_old, psi(u)) at each Gauss point.
  Eigen::VectorXd trial_history(const Eigen::VectorXd& u, const Eigen::VectorXd& H_old) const;
  Eigen::VectorXd strain_energy(const Eigen::VectorXd& u) const;

  Residual assemble_residual(const Eigen::VectorXd& u, const Eigen::VectorXd& phi,
                             const Eigen::VectorXd& H) const;

  /// Residual norms over the unconstrained dofs and their scales.
  struct ResidualNorms {
    double u = 0.0, phi = 0.0, u_scale = 0.0, phi_scale = 0.0;
  };
  ResidualNorms reduced_norms(const Residual& r) const;

  /// Solve for the state at `load`, starting from `guess` (u/phi) with
  /// history `prev.H`. Commits H on success.
  SolutionState solve_step(const SolutionState& prev, double load, const SolverConfig& cfg,
                           const SolutionState* guess = nullptr, StepReport* report = nullptr) const;

  /// Sum of internal nodal forces on `set_name` along `dof`, times the
  /// thickness in metres (kN for thickness given in m).
  double reaction_force(const SolutionState& s, const std::string& set_name, Dof dof,
                        double thickness_m = 1.0) const;

  /// Regularised crack surface energy  int G_c (phi^2 / 2l + l/2 |grad phi|^2), N/mm * mm.
  double crack_surface_energy(const Eigen::VectorXd& phi) const;

  /// Constrained dofs get the prescribed values; hanging dofs follow masters.
  void apply_constraints(SolutionState& s, double load) const;

  int num_free_u() const { return static_cast<int>(Tu_.cols()); }
  int num_free_phi() const { return static_cast<int>(Tp_.cols()); }

 private:
  struct GaussPoint {
    Eigen::Matrix<double, 4, 1> N;
    Eigen::Matrix<double, 4, 2> dN;  ///< d/dx, d/dy
    double dV = 0.0;
  };

  Eigen::VectorXd full_u(const Eigen::VectorXd& z, double load) const;
  Eigen::VectorXd full_phi(const Eigen::VectorXd& z, double load) const;
  void tangent(const Eigen::VectorXd& phi, const Eigen::VectorXd& H,
               Eigen::SparseMatrix<double>& Kuu, Eigen::SparseMatrix<double>& Kpp) const;

  Mesh mesh_;
  PFMaterial mat_;
  std::vector<BoundaryCondition> bcs_;
  std::vector<GaussPoint> gp_;  ///< 4 per element
  // full = T z + g * load
  Eigen::SparseMatrix<double> Tu_, Tp_;
  Eigen::VectorXd gu_, gp_load_;
  std::vector<int> free_u_, free_p_;  ///< full dof of each free column
};

/// Snapshot hook: called after every converged step.
using StepCallback = std::function<void(const SolutionState&, double reaction)>;

struct LoadPoint {
  int step = 0;
  double displacement = 0.0;  ///< mm
  double reaction = 0.0;      ///< kN (per thickness)
};

struct SimulationResult {
  std::vector<LoadPoint> curve;
  SolutionState final_state;
  bool history_monotone = true;
  double phi_min = 0.0, phi_max = 0.0;
  int total_iterations = 0;
  std::optional<std::string> failure;  ///< set when the run stopped on non-convergence
};

struct SimulationSpec {
  std::string reaction_set;
  Dof reaction_dof = Dof::kY;
  double reaction_sign = 1.0;  ///< reported reaction = sign * internal force sum
  double thickness_m = 1.0;
  /// Stop once the reaction falls below this fraction of the peak (0 disables).
  double stop_fraction = 0.0;
  /// Steps to run after the stop condition first holds.
  int stop_after = 0;
};

/// Runs the schedule in `cfg`. Non-convergence after all halvings ends the
/// run with `failure` set; the curve holds the converged steps.
SimulationResult run_simulation(const PhaseFieldModel& model, const SimulationSpec& spec,
                                const SolverConfig& cfg, const StepCallback& on_step = {});

/// Applied loads of a schedule, in order.
std::vector<double> schedule_loads(const std::vector<LoadSegment>& schedule);

}  // namespace cntpf::fem
