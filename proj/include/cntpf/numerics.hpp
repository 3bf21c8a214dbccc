#pragma once

// Small scalar numerics shared by the micromechanics modules: Gauss-Legendre
// rules, adaptive Gauss-Kronrod integration and bracketed root finding.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <utility>
#include <vector>

#include "cntpf/errors.hpp"

namespace cntpf::numerics {

template <typename Scalar>
struct GaussRule {
  std::vector<Scalar> nodes;
  std::vector<Scalar> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Golub-Welsch).
template <typename Scalar = double>
GaussRule<Scalar> gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat jacobi = Mat::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const Scalar kk = static_cast<Scalar>(k);
    const Scalar beta = kk / std::sqrt(Scalar(4) * kk * kk - Scalar(1));
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(jacobi);
  GaussRule<Scalar> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = eig.eigenvalues()(i);
    const Scalar v0 = eig.eigenvectors()(0, i);
    rule.weights[i] = Scalar(2) * v0 * v0;
  }
  return rule;
}

/// Maps a rule on [-1,1] to [a,b] and sums f.
template <typename Scalar, typename F>
Scalar integrate_fixed(const GaussRule<Scalar>& rule, F&& f, Scalar a, Scalar b) {
  const Scalar half = (b - a) / 2;
  const Scalar mid = (b + a) / 2;
  Scalar sum = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

struct AdaptiveOptions {
  double abs_tol = 0.0;
  double rel_tol = 1e-12;
  int max_subdivisions = 2000;
};

namespace detail {

// QUADPACK qk15 abscissae and weights.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, resk * half, std::abs((resk - resg) * half)};
}

}  // namespace detail

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a,b].
/// Throws ConvergenceError when the subdivision budget is exhausted.
template <typename F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opt = {}) {
  QuadratureResult out;
  if (a == b) return out;
  std::priority_queue<detail::Segment> queue;
  auto first = detail::kronrod15(f, a, b);
  queue.push(first);
  double total = first.value;
  double err = first.error;
  int evals = 15;
  int subdivisions = 1;
  while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (subdivisions >= opt.max_subdivisions) {
      std::ostringstream msg;
      msg << "adaptive quadrature did not converge on [" << a << ", " << b
          << "]: estimate " << total << " +/- " << err;
      throw ConvergenceError(msg.str());
    }
    auto worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::kronrod15(f, worst.a, mid);
    auto right = detail::kronrod15(f, mid, worst.b);
    evals += 30;
    ++subdivisions;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    // Re-sum occasionally so running totals do not drift.
    if (subdivisions % 64 == 0) {
      auto copy = queue;
      total = 0.0;
      err = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        err += copy.top().error;
        copy.pop();
      }
    }
    if (err <= 64 * std::numeric_limits<double>::epsilon() * std::abs(total)) break;
  }
  out.value = total;
  out.error = err;
  out.evaluations = evals;
  return out;
}

/// Integrates over consecutive breakpoints (sorted, duplicates removed).
template <typename F>
QuadratureResult integrate_piecewise(F&& f, std::vector<double> breakpoints,
                                     const AdaptiveOptions& opt = {}) {
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  QuadratureResult out;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    auto part = integrate_adaptive(f, breakpoints[i], breakpoints[i + 1], opt);
    out.value += part.value;
    out.error += part.error;
    out.evaluations += part.evaluations;
  }
  return out;
}

struct RootOptions {
  double x_tol = 1e-14;
  int max_iterations = 200;
};

/// Brent's method on a sign-changing bracket [a, b].
template <typename F>
double brent_root(F&& f, double a, double b, const RootOptions& opt = {}) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) {
    std::ostringstream msg;
    msg << "root not bracketed on [" << a << ", " << b << "]: f(a)=" << fa << ", f(b)=" << fb;
    throw ConvergenceError(msg.str());
  }
  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * opt.x_tol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2 * m * s;
        q = 1 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2 * m * q * (q - r) - (b - a) * (r - 1));
        q = (q - 1) * (r - 1) * (s - 1);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      if (2 * p < std::min(3 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = d;
      }
    } else {
      d = m;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
    fb = f(b);
  }
  throw ConvergenceError("brent_root: iteration limit reached");
}

}  // namespace cntpf::numerics
