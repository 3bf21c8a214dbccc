#pragma once

// Interior Eshelby tensors for a prolate spheroid (symmetry axis x'_3,
// semi-axes 1, 1, kappa) and a sphere in an isotropic matrix.

#include <cmath>
#include <numbers>

#include "cntpf/tensor_mech.hpp"

namespace cntpf {

template <typename Scalar>
class EshelbyTensorT {
 public:
  EshelbyTensorT(const Matrix6<Scalar>& m, Scalar kappa, Scalar nu_m)
      : m_(m), kappa_(kappa), nu_m_(nu_m) {}

  /// Contracted strain -> strain matrix (shear diagonal = 2 S_ijij).
  const Matrix6<Scalar>& matrix() const { return m_; }
  Scalar kappa() const { return kappa_; }
  Scalar nu_m() const { return nu_m_; }

  /// Tensor component S_ijkl (0-based indices), undoing the shear factor.
  Scalar component(int i, int j, int k, int l) const {
    const int I = voigt_index(i, j), J = voigt_index(k, l);
    const Scalar v = m_(I, J);
    return (I >= 3) ? v / 2 : v;
  }

 private:
  static int voigt_index(int i, int j) {
    if (i == j) return i;
    return 6 - i - j;  // (1,2)->3, (0,2)->4, (0,1)->5
  }

  Matrix6<Scalar> m_;
  Scalar kappa_;
  Scalar nu_m_;
};

using EshelbyTensor = EshelbyTensorT<double>;

namespace detail {

inline constexpr double kNearSphereBand = 1e-4;

template <typename Scalar>
void check_poisson(Scalar nu, const char* fn) {
  if (!(nu > Scalar(-1) && nu < Scalar(0.5)))
    throw DomainError(std::string(fn) + ": matrix Poisson ratio must lie in (-1, 0.5)");
}

/// Assembles S from Mura's I-integrals for semi-axes (1, 1, c).
template <typename Scalar>
Matrix6<Scalar> eshelby_from_integrals(Scalar c, Scalar nu, Scalar I1, Scalar I3, Scalar I11,
                                       Scalar I13, Scalar I33) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar d = 8 * pi * (1 - nu);
  const Scalar q = 1 - 2 * nu;
  const Scalar c2 = c * c;
  const Scalar I12 = I11;  // a1 == a2

  const Scalar s1111 = 3 * I11 / d + q * I1 / d;
  const Scalar s1122 = I12 / d - q * I1 / d;
  const Scalar s1133 = c2 * I13 / d - q * I1 / d;
  const Scalar s3311 = I13 / d - q * I3 / d;
  const Scalar s3333 = 3 * c2 * I33 / d + q * I3 / d;
  const Scalar s1212 = 2 * I12 / (2 * d) + q * (2 * I1) / (2 * d);
  const Scalar s1313 = (1 + c2) * I13 / (2 * d) + q * (I1 + I3) / (2 * d);

  Matrix6<Scalar> s = Matrix6<Scalar>::Zero();
  s(0, 0) = s1111;
  s(1, 1) = s1111;
  s(0, 1) = s1122;
  s(1, 0) = s1122;
  s(0, 2) = s1133;
  s(1, 2) = s1133;
  s(2, 0) = s3311;
  s(2, 1) = s3311;
  s(2, 2) = s3333;
  s(3, 3) = 2 * s1313;  // 2 S_2323
  s(4, 4) = 2 * s1313;  // 2 S_1313
  s(5, 5) = 2 * s1212;
  return s;
}

}  // namespace detail

/// Closed-form sphere tensor: S_1111 = (7-5nu)/(15(1-nu)),
/// S_1122 = (5nu-1)/(15(1-nu)), S_1212 = (4-5nu)/(15(1-nu)).
template <typename Scalar>
EshelbyTensorT<Scalar> eshelby_sphere(Scalar nu_m) {
  detail::check_poisson(nu_m, "eshelby_sphere");
  const Scalar den = 15 * (1 - nu_m);
  const Scalar s1111 = (7 - 5 * nu_m) / den;
  const Scalar s1122 = (5 * nu_m - 1) / den;
  const Scalar s1212 = (4 - 5 * nu_m) / den;
  Matrix6<Scalar> s = Matrix6<Scalar>::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) s(i, j) = s1122;
    s(i, i) = s1111;
    s(i + 3, i + 3) = 2 * s1212;
  }
  return EshelbyTensorT<Scalar>(s, Scalar(1), nu_m);
}

/// Prolate spheroid with aspect ratio kappa = a3/a1 >= 1. Inside the band
/// |kappa - 1| < 1e-4 the sphere form is returned, since the prolate
/// expressions cancel catastrophically there.
template <typename Scalar>
EshelbyTensorT<Scalar> eshelby_spheroid(Scalar kappa, Scalar nu_m) {
  if (!(kappa > 0)) throw DomainError("eshelby_spheroid: aspect ratio must be positive");
  detail::check_poisson(nu_m, "eshelby_spheroid");
  if (std::abs(kappa - 1) < Scalar(detail::kNearSphereBand)) {
    auto s = eshelby_sphere(nu_m);
    return EshelbyTensorT<Scalar>(s.matrix(), kappa, nu_m);
  }
  if (kappa < 1) throw DomainError("eshelby_spheroid: oblate spheroids (kappa < 1) are not supported");

  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar k2m1 = kappa * kappa - 1;
  const Scalar root = std::sqrt(k2m1);
  const Scalar I1 = 2 * pi * kappa / (k2m1 * root) * (kappa * root - std::acosh(kappa));
  const Scalar I3 = 4 * pi - 2 * I1;
  const Scalar I13 = (I1 - I3) / k2m1;
  const Scalar I11 = pi - I13 / 4;
  const Scalar I33 = (4 * pi / (kappa * kappa) - 2 * I13) / 3;
  return EshelbyTensorT<Scalar>(
      detail::eshelby_from_integrals(kappa, nu_m, I1, I3, I11, I13, I33), kappa, nu_m);
}

}  // namespace cntpf
