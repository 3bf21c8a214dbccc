#pragma once

// Effective elastic stiffness of CNT/interphase/matrix composites: the
// double-inclusion mean-field scheme with penetrable soft interphases and the
// two-step (bundle + surrounding matrix) agglomeration model.

#include <optional>
#include <utility>

#include "cntpf/eshelby.hpp"
#include "cntpf/tensor_mech.hpp"

namespace cntpf {

/// Filler geometry (SI units).
struct FillerGeometry {
  double L_cnt = 3.21e-6;    ///< CNT length (m)
  double D_cnt = 10.35e-9;   ///< CNT outer diameter (m)
  double t = 31.0e-9;        ///< interphase thickness (m)

  double kappa() const { return L_cnt / D_cnt; }
  double equivalent_diameter() const;  ///< D_cnt * kappa^(1/3)
  double eta() const { return t / equivalent_diameter(); }
  void validate() const;
};

struct IsotropicPhase {
  double E = 0.0;
  double nu = 0.0;
  Stiffness stiffness() const { return isotropic_stiffness(E, nu); }
};

struct PhaseSet {
  IsotropicPhase matrix{2.5e9, 0.28};
  IsotropicPhase filler{700e9, 0.3};
  /// Poisson ratio of the interphase defaults to that of the matrix.
  IsotropicPhase interphase{2.17e9, 0.28};
  double f_p = 0.01;  ///< filler volume fraction
  void validate() const;
};

struct AgglomerationParams {
  double chi = 0.2;   ///< volume fraction of bundle regions
  double zeta = 0.4;  ///< fraction of all fillers located inside bundles
  void validate() const;
};

struct VolumeFractions {
  double f_m = 1.0;
  double f_i = 0.0;
  double f_p = 0.0;
};

struct IsotropicFit {
  double E = 0.0;
  double nu = 0.0;
  double bulk = 0.0;
  double shear = 0.0;
  double anisotropy = 0.0;  ///< ||C - C_iso||_F / ||C||_F
};

struct HomogenizationOptions {
  AverageOptions averaging{};
  /// Relative stiffness contrast below which a phase is treated as matrix.
  double equality_tol = 1e-10;
};

/// n(kappa) = 2 kappa^(2/3) tan(phi) / (tan(phi) + kappa^2 phi), phi = arccos(1/kappa).
double sphericity(double kappa);

/// Penetrable soft-interphase volume fraction.
double interphase_volume_fraction(double f_p, const FillerGeometry& geom);

VolumeFractions volume_fractions(double f_p, const FillerGeometry& geom);

/// A^dil = I + S T, T = -(S + M)^-1, M = (C_phase - C_m)^-1 C_m. Returns the
/// identity when the phase equals the matrix (relative contrast < tol).
/// Throws SingularMatrixError naming `phase_name` on a singular solve.
Concentration dilute_concentration(const Stiffness& C_m, const Stiffness& C_phase,
                                   const EshelbyTensor& S, const char* phase_name = "phase",
                                   double equality_tol = 1e-10);

/// Double-inclusion effective stiffness averaged over the 3D orientation ODF.
Stiffness double_inclusion_effective(const PhaseSet& phases, const FillerGeometry& geom,
                                     const ODF3D& odf, const HomogenizationOptions& opt = {});

/// f_bundles = zeta/chi f_p, f_matrix = (1-zeta)/(1-chi) f_p.
std::pair<double, double> agglomeration_partition(double f_p, const AgglomerationParams& agg);

/// Mori-Tanaka embedding of spherical inclusions C_b (volume fraction chi)
/// in the matrix C_m with A_dil = [I + S_b C_m^-1 (C_b - C_m)]^-1.
Stiffness mori_tanaka_spheres(const Stiffness& C_m, const Stiffness& C_b, double chi);

/// Two-step agglomeration model: double inclusion at f_bundles / f_matrix,
/// then spherical bundles (volume fraction chi) in the lightly loaded matrix.
Stiffness two_step_effective(const PhaseSet& phases, const FillerGeometry& geom,
                             const AgglomerationParams& agg, const ODF3D& odf,
                             const HomogenizationOptions& opt = {});

/// Closest isotropic tensor (bulk/shear projection) and the anisotropy residual.
IsotropicFit isotropic_projection(const Stiffness& C);

/// Isotropic projection of an arbitrary 6x6 strain->strain or strain->stress
/// map, i.e. its average over all rotations.
Matrix6d isotropic_part(const Matrix6d& m, bool strain_to_strain);

struct ModulusBounds {
  double voigt = 0.0;
  double reuss = 0.0;
};

/// Voigt and Reuss Young's moduli of the matrix/interphase/filler mixture.
ModulusBounds voigt_reuss_bounds(const PhaseSet& phases, const FillerGeometry& geom);

}  // namespace cntpf
