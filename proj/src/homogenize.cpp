#include "cntpf/homogenize.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace cntpf {

namespace {

Matrix6d volumetric_projector() {
  Matrix6d j = Matrix6d::Zero();
  j.topLeftCorner<3, 3>().setConstant(1.0 / 3.0);
  return j;
}

bool nearly_equal(const Stiffness& a, const Stiffness& b, double tol) {
  return (a.matrix() - b.matrix()).norm() <= tol * a.matrix().norm();
}

Matrix6d inverse_or_throw(const Matrix6d& m, const char* where) {
  Eigen::FullPivLU<Matrix6d> lu(m);
  if (!lu.isInvertible()) throw SingularMatrixError("singular 6x6 matrix", where);
  return lu.inverse();
}

}  // namespace

double FillerGeometry::equivalent_diameter() const { return D_cnt * std::cbrt(kappa()); }

void FillerGeometry::validate() const {
  if (!(L_cnt > 0)) throw DomainError("filler geometry: L_cnt must be positive");
  if (!(D_cnt > 0)) throw DomainError("filler geometry: D_cnt must be positive");
  if (!(t >= 0)) throw DomainError("filler geometry: interphase thickness must be >= 0");
  if (kappa() < 1) throw DomainError("filler geometry: aspect ratio L_cnt/D_cnt must be >= 1");
}

void PhaseSet::validate() const {
  auto check = [](const IsotropicPhase& p, const char* name) {
    if (!(p.E > 0)) throw DomainError(std::string(name) + ": E must be positive");
    if (!(p.nu > -1 && p.nu < 0.5))
      throw DomainError(std::string(name) + ": Poisson ratio must lie in (-1, 0.5)");
  };
  check(matrix, "matrix");
  check(filler, "filler");
  check(interphase, "interphase");
  if (!(f_p >= 0 && f_p < 1)) throw DomainError("filler volume fraction must lie in [0, 1)");
}

void AgglomerationParams::validate() const {
  if (!(chi > 0 && chi <= 1)) throw DomainError("agglomeration: chi must lie in (0, 1]");
  if (!(zeta >= 0 && zeta <= 1)) throw DomainError("agglomeration: zeta must lie in [0, 1]");
}

double sphericity(double kappa) {
  if (!(kappa >= 1)) throw DomainError("sphericity: aspect ratio must be >= 1");
  if (kappa == 1.0) return 1.0;
  const double tan_phi = std::sqrt(kappa * kappa - 1.0);
  const double phi = std::atan(tan_phi);  // == arccos(1/kappa), accurate near 1
  return 2.0 * std::pow(kappa, 2.0 / 3.0) * tan_phi / (tan_phi + kappa * kappa * phi);
}

double interphase_volume_fraction(double f_p, const FillerGeometry& geom) {
  if (!(f_p >= 0 && f_p < 1)) throw DomainError("interphase_volume_fraction: f_p must lie in [0, 1)");
  geom.validate();
  const double n = sphericity(geom.kappa());
  const double eta = geom.eta();
  const double r = f_p / (1.0 - f_p);
  const double bracket = eta / n + (2.0 + 3.0 * r / (n * n)) * eta * eta +
                         4.0 / 3.0 * (1.0 + 3.0 * r / n) * eta * eta * eta;
  return (1.0 - f_p) * (-std::expm1(-6.0 * r * bracket));
}

VolumeFractions volume_fractions(double f_p, const FillerGeometry& geom) {
  VolumeFractions v;
  v.f_p = f_p;
  v.f_i = interphase_volume_fraction(f_p, geom);
  v.f_m = 1.0 - f_p - v.f_i;
  if (v.f_m < 0) throw DomainError("volume fractions: f_m = 1 - f_p - f_i is negative");
  return v;
}

Concentration dilute_concentration(const Stiffness& C_m, const Stiffness& C_phase,
                                   const EshelbyTensor& S, const char* phase_name,
                                   double equality_tol) {
  if (nearly_equal(C_m, C_phase, equality_tol)) return Concentration::identity();
  const Matrix6d delta = C_phase.matrix() - C_m.matrix();
  Eigen::FullPivLU<Matrix6d> delta_lu(delta);
  if (!delta_lu.isInvertible())
    throw SingularMatrixError("stiffness contrast C_phase - C_m is singular", phase_name);
  const Matrix6d M = delta_lu.solve(C_m.matrix());
  Eigen::FullPivLU<Matrix6d> sm_lu(S.matrix() + M);
  if (!sm_lu.isInvertible()) throw SingularMatrixError("S + M is singular", phase_name);
  const Matrix6d T = -sm_lu.inverse();
  return Concentration(Matrix6d::Identity() + S.matrix() * T);
}

Stiffness double_inclusion_effective(const PhaseSet& phases, const FillerGeometry& geom,
                                     const ODF3D& odf, const HomogenizationOptions& opt) {
  phases.validate();
  geom.validate();
  const VolumeFractions vf = volume_fractions(phases.f_p, geom);
  const Stiffness Cm = phases.matrix.stiffness();
  if (vf.f_p == 0.0 && vf.f_i == 0.0) return Cm;

  const Stiffness Cp = phases.filler.stiffness();
  const Stiffness Ci = phases.interphase.stiffness();
  const EshelbyTensor S = eshelby_spheroid(geom.kappa(), phases.matrix.nu);

  const Matrix6d Ap_dil = dilute_concentration(Cm, Cp, S, "filler", opt.equality_tol).matrix();
  const Matrix6d Ai_dil = dilute_concentration(Cm, Ci, S, "interphase", opt.equality_tol).matrix();
  const Matrix6d normaliser =
      vf.f_m * Matrix6d::Identity() + vf.f_i * Ai_dil + vf.f_p * Ap_dil;
  const Matrix6d norm_inv = inverse_or_throw(normaliser, "concentration normalisation");
  const Matrix6d Ap = Ap_dil * norm_inv;
  const Matrix6d Ai = Ai_dil * norm_inv;

  // Local (filler-frame) phase sums; rotated and averaged below.
  const Matrix6d stress_sum = vf.f_i * Ci.matrix() * Ai + vf.f_p * Cp.matrix() * Ap;
  const Matrix6d strain_sum = vf.f_i * Ai + vf.f_p * Ap;

  const Matrix6d avg_stress = orientational_average(
      [&](const Orientation& o) { return rotate_stress_map(stress_sum, rotation_matrix(o)); }, odf,
      opt.averaging);
  const Matrix6d avg_strain = orientational_average(
      [&](const Orientation& o) { return rotate_strain_map(strain_sum, rotation_matrix(o)); }, odf,
      opt.averaging);

  const Matrix6d numerator = vf.f_m * Cm.matrix() + avg_stress;
  const Matrix6d denominator = vf.f_m * Matrix6d::Identity() + avg_strain;
  return Stiffness(numerator * inverse_or_throw(denominator, "orientation-averaged concentration"));
}

std::pair<double, double> agglomeration_partition(double f_p, const AgglomerationParams& agg) {
  agg.validate();
  if (!(f_p >= 0 && f_p < 1)) throw DomainError("agglomeration_partition: f_p must lie in [0, 1)");
  const double f_bundles = agg.zeta / agg.chi * f_p;
  double f_matrix = 0.0;
  if (agg.chi < 1.0) {
    f_matrix = (1.0 - agg.zeta) / (1.0 - agg.chi) * f_p;
  } else if (agg.zeta < 1.0 && f_p > 0) {
    throw DomainError("agglomeration_partition: chi = 1 requires zeta = 1");
  }
  if (f_bundles > 1.0) {
    std::ostringstream msg;
    msg << "agglomeration_partition: f_bundles = " << f_bundles << " exceeds 1";
    throw DomainError(msg.str());
  }
  if (f_matrix > 1.0) throw DomainError("agglomeration_partition: f_matrix exceeds 1");
  return {f_bundles, f_matrix};
}

Stiffness mori_tanaka_spheres(const Stiffness& C_m, const Stiffness& C_b, double chi) {
  const IsotropicFit host = isotropic_projection(C_m);
  const EshelbyTensor Sb = eshelby_sphere(host.nu);
  const Matrix6d I = Matrix6d::Identity();
  const Matrix6d Cm_inv = inverse_or_throw(C_m.matrix(), "bundle host matrix");
  const Matrix6d A_dil =
      inverse_or_throw(I + Sb.matrix() * Cm_inv * (C_b.matrix() - C_m.matrix()), "bundle dilute");
  const Matrix6d A = A_dil * inverse_or_throw((1.0 - chi) * I + chi * A_dil, "bundle normalisation");
  return Stiffness(C_m.matrix() + chi * (C_b.matrix() - C_m.matrix()) * A);
}

Stiffness two_step_effective(const PhaseSet& phases, const FillerGeometry& geom,
                             const AgglomerationParams& agg, const ODF3D& odf,
                             const HomogenizationOptions& opt) {
  phases.validate();
  const auto [f_bundles, f_matrix] = agglomeration_partition(phases.f_p, agg);
  PhaseSet bundle = phases;
  bundle.f_p = f_bundles;
  PhaseSet host = phases;
  host.f_p = f_matrix;
  const Stiffness Cb = double_inclusion_effective(bundle, geom, odf, opt);
  if (agg.chi >= 1.0) return Cb;
  const Stiffness Cm = double_inclusion_effective(host, geom, odf, opt);
  return mori_tanaka_spheres(Cm, Cb, agg.chi);
}

Matrix6d isotropic_part(const Matrix6d& m, bool strain_to_strain) {
  const double normal_sum = m.topLeftCorner<3, 3>().sum();
  const double normal_trace = m.topLeftCorner<3, 3>().trace();
  const double shear_trace = m.bottomRightCorner<3, 3>().trace();
  const Matrix6d J = volumetric_projector();
  if (strain_to_strain) {
    // A = alpha J + beta (I - J) with alpha = A_iikk / 3, beta = (A_ijij - alpha) / 5.
    const double alpha = normal_sum / 3.0;
    const double beta = (normal_trace + shear_trace - alpha) / 5.0;
    return beta * Matrix6d::Identity() + (alpha - beta) * J;
  }
  const double alpha = normal_sum / 3.0;  // 3K
  const double beta = (normal_trace + 2.0 * shear_trace - alpha) / 5.0;  // 2G
  return isotropic_stiffness_kg(alpha / 3.0, beta / 2.0).matrix();
}

IsotropicFit isotropic_projection(const Stiffness& C) {
  const Matrix6d& c = C.matrix();
  IsotropicFit fit;
  fit.bulk = c.topLeftCorner<3, 3>().sum() / 9.0;
  const double normal_trace = c.topLeftCorner<3, 3>().trace();
  const double off = (c.topLeftCorner<3, 3>().sum() - normal_trace) / 2.0;
  fit.shear = (normal_trace - off + 3.0 * c.bottomRightCorner<3, 3>().trace()) / 15.0;
  fit.E = 9.0 * fit.bulk * fit.shear / (3.0 * fit.bulk + fit.shear);
  fit.nu = (3.0 * fit.bulk - 2.0 * fit.shear) / (2.0 * (3.0 * fit.bulk + fit.shear));
  const Matrix6d iso = isotropic_stiffness_kg(fit.bulk, fit.shear).matrix();
  fit.anisotropy = (c - iso).norm() / c.norm();
  return fit;
}

ModulusBounds voigt_reuss_bounds(const PhaseSet& phases, const FillerGeometry& geom) {
  const VolumeFractions vf = volume_fractions(phases.f_p, geom);
  const Matrix6d Cm = phases.matrix.stiffness().matrix();
  const Matrix6d Ci = phases.interphase.stiffness().matrix();
  const Matrix6d Cp = phases.filler.stiffness().matrix();
  const Matrix6d voigt = vf.f_m * Cm + vf.f_i * Ci + vf.f_p * Cp;
  const Matrix6d reuss_compliance = vf.f_m * Cm.inverse() + vf.f_i * Ci.inverse() + vf.f_p * Cp.inverse();
  ModulusBounds b;
  b.voigt = isotropic_projection(Stiffness(voigt)).E;
  b.reuss = isotropic_projection(Stiffness(Matrix6d(reuss_compliance.inverse()))).E;
  return b;
}

}  // namespace cntpf
