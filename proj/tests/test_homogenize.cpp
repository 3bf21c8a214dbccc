#include <gtest/gtest.h>

#include "cntpf/homogenize.hpp"

using namespace cntpf;

namespace {

double rel(const Matrix6d& a, const Matrix6d& b) { return (a - b).norm() / b.norm(); }

PhaseSet equal_phases() {
  PhaseSet p;
  p.filler = p.matrix;
  p.interphase = p.matrix;
  return p;
}

}  // namespace

TEST(Homogenize, EqualPhasesGiveMatrix) {
  const PhaseSet p = equal_phases();
  const Stiffness C = double_inclusion_effective(p, FillerGeometry{}, UniformODF{});
  EXPECT_LT(rel(C.matrix(), p.matrix.stiffness().matrix()), 1e-10);
}

TEST(Homogenize, NoFillerGivesMatrix) {
  PhaseSet p;
  p.f_p = 0.0;
  const Stiffness C = double_inclusion_effective(p, FillerGeometry{}, UniformODF{});
  EXPECT_LT(rel(C.matrix(), p.matrix.stiffness().matrix()), 1e-10);
}

TEST(Homogenize, ZeroInterphaseIgnoresInterphaseModulus) {
  FillerGeometry g;
  g.t = 0.0;
  PhaseSet a, b;
  b.interphase = {50e9, 0.2};
  const Matrix6d ca = double_inclusion_effective(a, g, UniformODF{}).matrix();
  const Matrix6d cb = double_inclusion_effective(b, g, UniformODF{}).matrix();
  EXPECT_LT(rel(ca, cb), 1e-12);
  EXPECT_EQ(interphase_volume_fraction(0.01, g), 0.0);
  PhaseSet e = equal_phases();
  EXPECT_LT(rel(double_inclusion_effective(e, g, UniformODF{}).matrix(),
                e.matrix.stiffness().matrix()), 1e-10);
}

TEST(Homogenize, VolumeFractionsSumToOne) {
  for (double f : {0.0, 0.005, 0.02, 0.1}) {
    const VolumeFractions v = volume_fractions(f, FillerGeometry{});
    EXPECT_NEAR(v.f_m + v.f_i + v.f_p, 1.0, 1e-15);
    EXPECT_GE(v.f_i, 0.0);
    EXPECT_EQ(v.f_p, f);
  }
}

TEST(Homogenize, Sphericity) {
  EXPECT_NEAR(sphericity(1.0), 1.0, 1e-6);
  EXPECT_GT(sphericity(2.0), sphericity(10.0));
  EXPECT_GT(sphericity(10.0), sphericity(300.0));
  EXPECT_THROW(sphericity(0.5), DomainError);
}

TEST(Homogenize, EffectiveModulusWithinBounds) {
  for (double f : {0.001, 0.005, 0.01, 0.02}) {
    PhaseSet p;
    p.f_p = f;
    const IsotropicFit fit =
        isotropic_projection(double_inclusion_effective(p, FillerGeometry{}, UniformODF{}));
    const ModulusBounds b = voigt_reuss_bounds(p, FillerGeometry{});
    EXPECT_GT(fit.E, b.reuss);
    EXPECT_LT(fit.E, b.voigt);
    EXPECT_LT(fit.anisotropy, 1e-8);
  }
}

TEST(Homogenize, StiffnessIncreasesWithFraction) {
  double last = 0.0;
  for (double f : {0.0, 0.005, 0.01, 0.015, 0.02}) {
    PhaseSet p;
    p.f_p = f;
    const double E = isotropic_projection(double_inclusion_effective(p, FillerGeometry{}, UniformODF{})).E;
    EXPECT_GT(E, last);
    last = E;
  }
}

TEST(Homogenize, MoriTanakaSpheresMatchHashinShtrikman) {
  const double Em = 2.5e9, nm = 0.28, Eb = 40e9, nb = 0.2;
  const double Km = Em / (3 * (1 - 2 * nm)), Gm = Em / (2 * (1 + nm));
  const double Kb = Eb / (3 * (1 - 2 * nb)), Gb = Eb / (2 * (1 + nb));
  for (double c : {0.0, 0.1, 0.3, 0.6, 1.0}) {
    const double K = Km + c * (Kb - Km) / (1 + (1 - c) * (Kb - Km) / (Km + 4.0 / 3.0 * Gm));
    const double F = Gm * (9 * Km + 8 * Gm) / (6 * (Km + 2 * Gm));
    const double G = Gm + c * (Gb - Gm) / (1 + (1 - c) * (Gb - Gm) / (Gm + F));
    const Stiffness C = mori_tanaka_spheres(isotropic_stiffness(Em, nm), isotropic_stiffness(Eb, nb), c);
    EXPECT_LT(rel(C.matrix(), isotropic_stiffness_kg(K, G).matrix()), 1e-12) << c;
  }
}

TEST(Homogenize, AgglomerationPartitionConservesFiller) {
  const AgglomerationParams agg{0.2, 0.4};
  const auto [f_b, f_m] = agglomeration_partition(0.01, agg);
  EXPECT_NEAR(agg.chi * f_b + (1 - agg.chi) * f_m, 0.01, 1e-16);
  EXPECT_NEAR(f_b, 0.4 / 0.2 * 0.01, 1e-16);
}

TEST(Homogenize, TwoStepWithZetaEqualChiIsUniform) {
  PhaseSet p;
  p.f_p = 0.01;
  const Matrix6d uniform = double_inclusion_effective(p, FillerGeometry{}, UniformODF{}).matrix();
  const Matrix6d two = two_step_effective(p, FillerGeometry{}, {0.3, 0.3}, UniformODF{}).matrix();
  EXPECT_LT(rel(two, uniform), 1e-10);
}

TEST(Homogenize, AgglomerationLowersStiffness) {
  PhaseSet p;
  p.f_p = 0.01;
  const double Eu = isotropic_projection(double_inclusion_effective(p, FillerGeometry{}, UniformODF{})).E;
  double last = Eu;
  for (double zeta : {0.4, 0.6, 0.9}) {
    const double E =
        isotropic_projection(two_step_effective(p, FillerGeometry{}, {0.2, zeta}, UniformODF{})).E;
    EXPECT_LT(E, last) << zeta;
    last = E;
  }
}

TEST(Homogenize, IsotropicProjectionExactForIsotropic) {
  const IsotropicFit fit = isotropic_projection(isotropic_stiffness(3.0e9, 0.31));
  EXPECT_NEAR(fit.E, 3.0e9, 1e-3);
  EXPECT_NEAR(fit.nu, 0.31, 1e-13);
  EXPECT_LT(fit.anisotropy, 1e-14);
}

TEST(Homogenize, DiluteConcentrationIdentityForMatrixPhase) {
  const Stiffness Cm = isotropic_stiffness(2.5e9, 0.28);
  const Concentration A = dilute_concentration(Cm, Cm, eshelby_spheroid(10.0, 0.28));
  EXPECT_LT((A.matrix() - Matrix6d::Identity()).norm(), 1e-14);
}

TEST(Homogenize, ValidationRejectsBadInput) {
  PhaseSet p;
  p.f_p = 1.0;
  EXPECT_THROW(p.validate(), DomainError);
  AgglomerationParams agg{0.2, 1.5};
  EXPECT_THROW(agg.validate(), DomainError);
  FillerGeometry g;
  g.L_cnt = 0.5 * g.D_cnt;
  EXPECT_THROW(g.validate(), DomainError);
}
