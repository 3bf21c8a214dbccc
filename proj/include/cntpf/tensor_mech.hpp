#pragma once

// Fourth-order tensors in 6x6 contracted notation.
//
// Convention (used everywhere in this library):
//   stress  s = (s11, s22, s33, s23, s13, s12)
//   strain  e = (e11, e22, e33, 2 e23, 2 e13, 2 e12)   (engineering shear)
// A stiffness maps strain -> stress and is a symmetric 6x6 matrix.
// Eshelby and concentration tensors map strain -> strain; in this notation
// their shear diagonal entries carry the factor 2 (e.g. S(5,5) = 2 S_1212)
// and they are general, non-symmetric 6x6 matrices.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <variant>

#include "cntpf/errors.hpp"
#include "cntpf/numerics.hpp"

namespace cntpf {

template <typename Scalar>
using Matrix6 = Eigen::Matrix<Scalar, 6, 6>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

using Matrix6d = Matrix6<double>;
using Matrix3d = Matrix3<double>;

/// Strain -> stress map (Pa).
template <typename Scalar>
class StiffnessTensor {
 public:
  StiffnessTensor() : m_(Matrix6<Scalar>::Zero()) {}
  explicit StiffnessTensor(const Matrix6<Scalar>& m) : m_(m) {}

  const Matrix6<Scalar>& matrix() const { return m_; }
  Scalar operator()(int i, int j) const { return m_(i, j); }

  StiffnessTensor inverse_checked(const char* where) const;

 private:
  Matrix6<Scalar> m_;
};

/// Strain -> strain map (dimensionless).
template <typename Scalar>
class ConcentrationTensor {
 public:
  ConcentrationTensor() : m_(Matrix6<Scalar>::Identity()) {}
  explicit ConcentrationTensor(const Matrix6<Scalar>& m) : m_(m) {}

  static ConcentrationTensor identity() { return ConcentrationTensor(); }
  const Matrix6<Scalar>& matrix() const { return m_; }
  Scalar operator()(int i, int j) const { return m_(i, j); }

 private:
  Matrix6<Scalar> m_;
};

using Stiffness = StiffnessTensor<double>;
using Concentration = ConcentrationTensor<double>;

/// Euler angles of the filler axis x'_3: theta is the polar angle from the
/// global x_3 axis, gamma the azimuth about x_3.
template <typename Scalar>
struct OrientationT {
  Scalar gamma = 0;
  Scalar theta = 0;
};
using Orientation = OrientationT<double>;

/// Uniform (random) orientation distribution, Omega = 1/(2 pi).
struct UniformODF {};

/// User-supplied density Omega(gamma, theta) over gamma in [0, 2pi],
/// theta in [0, pi/2], normalised against the sin(theta) measure.
struct TabulatedODF {
  std::function<double(double gamma, double theta)> density;
};

using ODF3D = std::variant<UniformODF, TabulatedODF>;

inline double odf_value(const ODF3D& odf, double gamma, double theta) {
  if (std::holds_alternative<UniformODF>(odf)) return 1.0 / (2.0 * std::numbers::pi);
  return std::get<TabulatedODF>(odf).density(gamma, theta);
}

// ---------------------------------------------------------------------------
// Construction

template <typename Scalar>
StiffnessTensor<Scalar> isotropic_stiffness(Scalar E, Scalar nu) {
  if (!(E > 0)) throw DomainError("isotropic_stiffness: E must be positive");
  if (!(nu > Scalar(-1) && nu < Scalar(0.5)))
    throw DomainError("isotropic_stiffness: Poisson ratio must lie in (-1, 0.5)");
  const Scalar lambda = E * nu / ((1 + nu) * (1 - 2 * nu));
  const Scalar mu = E / (2 * (1 + nu));
  Matrix6<Scalar> c = Matrix6<Scalar>::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) c(i, j) = lambda;
    c(i, i) = lambda + 2 * mu;
    c(i + 3, i + 3) = mu;
  }
  return StiffnessTensor<Scalar>(c);
}

/// Isotropic stiffness from bulk and shear moduli.
template <typename Scalar>
StiffnessTensor<Scalar> isotropic_stiffness_kg(Scalar K, Scalar G) {
  Matrix6<Scalar> c = Matrix6<Scalar>::Zero();
  const Scalar lambda = K - Scalar(2) / 3 * G;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) c(i, j) = lambda;
    c(i, i) = lambda + 2 * G;
    c(i + 3, i + 3) = G;
  }
  return StiffnessTensor<Scalar>(c);
}

template <typename Scalar>
StiffnessTensor<Scalar> StiffnessTensor<Scalar>::inverse_checked(const char* where) const {
  Eigen::FullPivLU<Matrix6<Scalar>> lu(m_);
  if (!lu.isInvertible()) throw SingularMatrixError("singular 6x6 matrix", where);
  return StiffnessTensor<Scalar>(lu.inverse());
}

// ---------------------------------------------------------------------------
// Rotation

/// Rotation whose columns are the local filler axes expressed in the global
/// frame: R = Rz(gamma) * Ry(theta), so R e3 = (sin t cos g, sin t sin g, cos t).
template <typename Scalar>
Matrix3<Scalar> rotation_matrix(const OrientationT<Scalar>& o) {
  const Scalar cg = std::cos(o.gamma), sg = std::sin(o.gamma);
  const Scalar ct = std::cos(o.theta), st = std::sin(o.theta);
  Matrix3<Scalar> rz, ry;
  rz << cg, -sg, 0, sg, cg, 0, 0, 0, 1;
  ry << ct, 0, st, 0, 1, 0, -st, 0, ct;
  return rz * ry;
}

namespace detail {
inline constexpr std::array<std::array<int, 2>, 6> kVoigtPairs{
    {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}}};
}

/// 6x6 map taking local stress components to global ones for rotation R.
template <typename Scalar>
Matrix6<Scalar> stress_transform(const Matrix3<Scalar>& R) {
  Matrix6<Scalar> t;
  for (int I = 0; I < 6; ++I) {
    const auto [i, j] = detail::kVoigtPairs[I];
    for (int J = 0; J < 6; ++J) {
      const auto [k, l] = detail::kVoigtPairs[J];
      Scalar v = R(i, k) * R(j, l);
      if (k != l) v += R(i, l) * R(j, k);
      t(I, J) = v;
    }
  }
  return t;
}

/// 6x6 map taking local engineering strain to global engineering strain.
/// Satisfies strain_transform(R)^-1 == stress_transform(R)^T.
template <typename Scalar>
Matrix6<Scalar> strain_transform(const Matrix3<Scalar>& R) {
  Matrix6<Scalar> t;
  for (int I = 0; I < 6; ++I) {
    const auto [i, j] = detail::kVoigtPairs[I];
    const Scalar row = (i == j) ? Scalar(1) : Scalar(2);
    for (int J = 0; J < 6; ++J) {
      const auto [k, l] = detail::kVoigtPairs[J];
      Scalar v = R(i, k) * R(j, l);
      if (k != l) v = (v + R(i, l) * R(j, k)) / 2;
      t(I, J) = row * v;
    }
  }
  return t;
}

/// Rotates a strain -> stress matrix from the filler frame to the global frame.
template <typename Scalar>
Matrix6<Scalar> rotate_stress_map(const Matrix6<Scalar>& c, const Matrix3<Scalar>& R) {
  const Matrix6<Scalar> ts = stress_transform(R);
  return ts * c * ts.transpose();
}

/// Rotates a strain -> strain matrix from the filler frame to the global frame.
template <typename Scalar>
Matrix6<Scalar> rotate_strain_map(const Matrix6<Scalar>& a, const Matrix3<Scalar>& R) {
  return strain_transform(R) * a * stress_transform(R).transpose();
}

template <typename Scalar>
StiffnessTensor<Scalar> rotate_stiffness(const StiffnessTensor<Scalar>& c,
                                         const OrientationT<Scalar>& o) {
  return StiffnessTensor<Scalar>(rotate_stress_map(c.matrix(), rotation_matrix(o)));
}

template <typename Scalar>
ConcentrationTensor<Scalar> rotate_concentration(const ConcentrationTensor<Scalar>& a,
                                                 const OrientationT<Scalar>& o) {
  return ConcentrationTensor<Scalar>(rotate_strain_map(a.matrix(), rotation_matrix(o)));
}

// ---------------------------------------------------------------------------
// Orientational averaging

struct AverageOptions {
  int order = 32;                 ///< Gauss points per angle
  double convergence_tol = 1e-8;  ///< relative change allowed when doubling order
  bool check_convergence = true;
};

namespace detail {
template <typename F>
Matrix6d average_at_order(F& f, const ODF3D& odf, int order) {
  const auto rule = numerics::gauss_legendre<double>(order);
  const double two_pi = 2.0 * std::numbers::pi;
  const double half_pi = 0.5 * std::numbers::pi;
  Matrix6d sum = Matrix6d::Zero();
  for (int ig = 0; ig < order; ++ig) {
    const double gamma = (rule.nodes[ig] + 1.0) * 0.5 * two_pi;
    const double wg = rule.weights[ig] * 0.5 * two_pi;
    for (int it = 0; it < order; ++it) {
      const double theta = (rule.nodes[it] + 1.0) * 0.5 * half_pi;
      const double wt = rule.weights[it] * 0.5 * half_pi;
      const double w = wg * wt * odf_value(odf, gamma, theta) * std::sin(theta);
      sum.noalias() += w * f(Orientation{gamma, theta});
    }
  }
  return sum;
}
}  // namespace detail

/// <F> = int_0^{2pi} int_0^{pi/2} F(gamma,theta) Omega(gamma,theta) sin(theta) dtheta dgamma
/// by tensor-product Gauss-Legendre. With convergence checking enabled the
/// result at the configured order is compared against twice that order.
template <typename F>
Matrix6d orientational_average(F&& f, const ODF3D& odf, const AverageOptions& opt = {}) {
  Matrix6d result = detail::average_at_order(f, odf, opt.order);
  if (opt.check_convergence) {
    const Matrix6d fine = detail::average_at_order(f, odf, 2 * opt.order);
    const double scale = std::max(fine.norm(), std::numeric_limits<double>::min());
    const double change = (fine - result).norm() / scale;
    if (change > opt.convergence_tol) {
      throw ConvergenceError("orientational_average: relative change " + std::to_string(change) +
                             " between orders " + std::to_string(opt.order) + " and " +
                             std::to_string(2 * opt.order));
    }
    result = fine;
  }
  return result;
}

/// Integral of Omega sin(theta) over the orientation domain; 1 for a valid ODF.
inline double odf_normalization(const ODF3D& odf, int order = 64) {
  auto one = [](const Orientation&) { return Matrix6d::Identity().eval(); };
  return detail::average_at_order(one, odf, order)(0, 0);
}

}  // namespace cntpf
