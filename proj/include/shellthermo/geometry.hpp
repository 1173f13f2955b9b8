#pragma once

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "shellthermo/charts.hpp"
#include "shellthermo/errors.hpp"

namespace shellthermo {

/// All per-point surface data the shell equations consume: covariant and
/// contravariant bases, fundamental forms, Christoffel symbols and the
/// covariant derivative of the mixed curvature tensor.
struct GeometryFrame {
  Vec2 y;                                   // evaluation point in omega
  std::array<Vec3, 2> a_cov;                // a_alpha
  std::array<Vec3, 2> a_contra;             // a^alpha
  Vec3 a3;                                  // unit normal
  Mat2 a_lower;                             // a_{alpha beta}
  Mat2 a_upper;                             // a^{alpha beta}
  Mat2 b_lower;                             // b_{alpha beta}
  Mat2 b_mixed;                             // b^beta_alpha, indexed (beta, alpha)
  double christoffel[2][2][2];              // Gamma^sigma_{alpha beta} = [sigma][alpha][beta]
  double sqrt_a = 0.0;                      // sqrt(det a) = |a1 x a2|
  double b_cov_deriv[2][2][2];              // b^sigma_beta|_alpha = [sigma][beta][alpha]
};

namespace detail {

/// Basis/metric/curvature pieces obtainable from first+second chart data
/// alone (no derivative of b). Split out so the finite-difference step
/// used for b^sigma_beta|_alpha can reuse it.
struct CoreFrame {
  std::array<Vec3, 2> a_cov;
  std::array<Vec3, 2> a_contra;
  Vec3 a3;
  Mat2 a_lower, a_upper, b_lower, b_mixed;
  double christoffel[2][2][2];
  double sqrt_a;
};

inline CoreFrame eval_core(const Chart& chart, const Vec2& y) {
  CoreFrame f;
  f.a_cov[0] = chart.eval_d1(y);
  f.a_cov[1] = chart.eval_d2(y);
  const Vec3 cross = f.a_cov[0].cross(f.a_cov[1]);
  const double cn = cross.norm();
  if (cn < 1e-10)
    fail(ErrorKind::DegenerateChart,
         "chart '" + chart.name() + "': tangent vectors dependent at y=(" +
             std::to_string(y[0]) + "," + std::to_string(y[1]) + "), |a1 x a2|=" +
             std::to_string(cn));
  f.a3 = cross / cn;
  f.sqrt_a = cn;

  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) f.a_lower(a, b) = f.a_cov[a].dot(f.a_cov[b]);
  f.a_upper = f.a_lower.inverse();
  for (int a = 0; a < 2; ++a)
    f.a_contra[a] = f.a_upper(a, 0) * f.a_cov[0] + f.a_upper(a, 1) * f.a_cov[1];

  // b_{ab} = a3 . d_b a_a ; Gamma^s_{ab} = a^s . d_b a_a. Both symmetric
  // in (a,b) since d_b a_a = d_a d_b theta.
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const Vec3 dba = chart.deriv2(a, b, y);
      f.b_lower(a, b) = f.a3.dot(dba);
      for (int s = 0; s < 2; ++s) f.christoffel[s][a][b] = f.a_contra[s].dot(dba);
    }
  f.b_mixed = f.a_upper * f.b_lower;  // b^beta_alpha = a^{beta sigma} b_{sigma alpha}
  return f;
}

// Mixed curvature tensor alone; used by the finite-difference stencil below.
inline Mat2 eval_b_mixed(const Chart& chart, const Vec2& y) { return eval_core(chart, y).b_mixed; }

}  // namespace detail

/// Evaluate the full geometric frame at a parameter point. The partial
/// derivative d_alpha b^sigma_beta entering b^sigma_beta|_alpha comes
/// from a 4th-order central stencil with h = 1e-5 on the analytic
/// b^sigma_beta, since the charts only promise second derivatives.
inline GeometryFrame eval_frame(const Chart& chart, const Vec2& y) {
  const detail::CoreFrame core = detail::eval_core(chart, y);
  GeometryFrame f;
  f.y = y;
  f.a_cov = core.a_cov;
  f.a_contra = core.a_contra;
  f.a3 = core.a3;
  f.a_lower = core.a_lower;
  f.a_upper = core.a_upper;
  f.b_lower = core.b_lower;
  f.b_mixed = core.b_mixed;
  f.sqrt_a = core.sqrt_a;
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) f.christoffel[s][a][b] = core.christoffel[s][a][b];

  constexpr double h = 1e-5;
  Mat2 db[2];  // db[alpha](sigma, beta) = d_alpha b^sigma_beta
  for (int alpha = 0; alpha < 2; ++alpha) {
    Vec2 e = Vec2::Zero();
    e[alpha] = 1.0;
    const Mat2 bp1 = detail::eval_b_mixed(chart, y + h * e);
    const Mat2 bm1 = detail::eval_b_mixed(chart, y - h * e);
    const Mat2 bp2 = detail::eval_b_mixed(chart, y + 2.0 * h * e);
    const Mat2 bm2 = detail::eval_b_mixed(chart, y - 2.0 * h * e);
    db[alpha] = (8.0 * (bp1 - bm1) - (bp2 - bm2)) / (12.0 * h);
  }
  for (int s = 0; s < 2; ++s)
    for (int b = 0; b < 2; ++b)
      for (int alpha = 0; alpha < 2; ++alpha) {
        double v = db[alpha](s, b);
        for (int tau = 0; tau < 2; ++tau)
          v += f.christoffel[s][alpha][tau] * f.b_mixed(tau, b) -
               f.christoffel[tau][alpha][b] * f.b_mixed(s, tau);
        f.b_cov_deriv[s][b][alpha] = v;
      }
  return f;
}

/// Residuals of the frame against central differences of a_alpha and a3
/// alone (second order in h). Numerical oracle for b and Gamma.
struct FrameResidual {
  double b_rel = 0.0;
  double gamma_rel = 0.0;
  double max_rel() const { return std::max(b_rel, gamma_rel); }
};

inline FrameResidual fd_validate_frame(const Chart& chart, const Vec2& y, double h) {
  if (h < 1e-6 || h > 1e-3)
    fail(ErrorKind::ValidationError, "fd_validate_frame: h must lie in [1e-6, 1e-3]");
  const GeometryFrame f = eval_frame(chart, y);

  Mat2 b_fd;
  double gamma_fd[2][2][2];
  for (int b = 0; b < 2; ++b) {
    Vec2 e = Vec2::Zero();
    e[b] = 1.0;
    for (int a = 0; a < 2; ++a) {
      const Vec3 dp = chart.deriv1(a, y + h * e);
      const Vec3 dm = chart.deriv1(a, y - h * e);
      const Vec3 d_b_a = (dp - dm) / (2.0 * h);
      b_fd(a, b) = f.a3.dot(d_b_a);
      for (int s = 0; s < 2; ++s) gamma_fd[s][a][b] = f.a_contra[s].dot(d_b_a);
    }
  }

  double b_scale = 1.0, g_scale = 1.0, b_err = 0.0, g_err = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      b_scale = std::max(b_scale, std::abs(f.b_lower(a, b)));
      b_err = std::max(b_err, std::abs(b_fd(a, b) - f.b_lower(a, b)));
      for (int s = 0; s < 2; ++s) {
        g_scale = std::max(g_scale, std::abs(f.christoffel[s][a][b]));
        g_err = std::max(g_err, std::abs(gamma_fd[s][a][b] - f.christoffel[s][a][b]));
      }
    }
  return {b_err / b_scale, g_err / g_scale};
}

/// Principal curvatures at a point: eigenvalues of the pencil
/// b_{ab} v = kappa a_{ab} v. Solved through the Cholesky factor of the
/// metric as a symmetric standard eigenproblem; symmetric eigenvalues are
/// perfectly conditioned, so double roots (sphere) come out to machine
/// precision where the quadratic formula would lose half the digits.
inline Vec2 principal_curvatures(const GeometryFrame& f) {
  const double l11 = std::sqrt(f.a_lower(0, 0));
  const double l21 = f.a_lower(1, 0) / l11;
  const double l22 = std::sqrt(f.a_lower(1, 1) - l21 * l21);
  // S = L^{-1} b L^{-T}, symmetric 2x2
  const double s11 = f.b_lower(0, 0) / (l11 * l11);
  const double s21 = (f.b_lower(1, 0) / l11 - l21 * s11) / l22;
  const double s22 = (f.b_lower(1, 1) - l21 * (f.b_lower(1, 0) / l11) - l21 * l22 * s21) / (l22 * l22);
  const double mean = 0.5 * (s11 + s22);
  const double r = std::hypot(0.5 * (s11 - s22), s21);
  return {mean - r, mean + r};
}

struct EllipticityReport {
  double kappa_min = 0.0;      // smallest |principal curvature| over the grid
  double kappa_max = 0.0;      // largest
  bool same_sign = false;      // both curvatures share one sign at every point
  int sign = 0;                // the shared sign when same_sign, else 0
  bool uniform_elliptic = false;
  int grid_n1 = 0, grid_n2 = 0;
  double threshold = 0.0;
  double min_det_a = 0.0;      // smallest det(a_{ab}) seen, the a_0 bound
};

/// Sample principal curvatures on an interior tensor grid (inset one cell
/// from the boundary) and classify the surface.
inline EllipticityReport check_elliptic(const Chart& chart, int n1, int n2,
                                        double threshold = 1e-8) {
  if (n1 < 8 || n2 < 8)
    fail(ErrorKind::ValidationError, "check_elliptic: grid must have at least 8x8 interior samples");
  const Rect dom = chart.param_domain();
  EllipticityReport rep;
  rep.grid_n1 = n1;
  rep.grid_n2 = n2;
  rep.threshold = threshold;
  rep.kappa_min = std::numeric_limits<double>::infinity();
  rep.min_det_a = std::numeric_limits<double>::infinity();
  rep.same_sign = true;
  rep.sign = 0;

  for (int i = 1; i <= n1; ++i)
    for (int j = 1; j <= n2; ++j) {
      const Vec2 y = dom.lerp(double(i) / (n1 + 1), double(j) / (n2 + 1));
      const GeometryFrame f = eval_frame(chart, y);
      rep.min_det_a = std::min(rep.min_det_a, f.a_lower.determinant());
      const Vec2 kappa = principal_curvatures(f);
      rep.kappa_min = std::min({rep.kappa_min, std::abs(kappa[0]), std::abs(kappa[1])});
      rep.kappa_max = std::max({rep.kappa_max, std::abs(kappa[0]), std::abs(kappa[1])});
      if (kappa[0] * kappa[1] <= 0.0) {
        rep.same_sign = false;
      } else {
        const int s = kappa[0] > 0.0 ? 1 : -1;
        if (rep.sign == 0) rep.sign = s;
        if (rep.sign != s) rep.same_sign = false;
      }
    }
  if (!rep.same_sign) rep.sign = 0;
  rep.uniform_elliptic = rep.same_sign && rep.kappa_min > threshold;
  return rep;
}

}  // namespace shellthermo
