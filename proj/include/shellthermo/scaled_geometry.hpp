#pragma once

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "shellthermo/geometry.hpp"
#include "shellthermo/tensors.hpp"

namespace shellthermo {

/// Metric data of the scaled three-dimensional body at a point
/// x = (y, x3) of the fixed domain Omega = omega x (-1,1), for half
/// thickness eps. Built from Theta(x^eps) = theta(y) + x3^eps a3(y)
/// evaluated at x3^eps = eps x3.
///
/// g3 = a3 exactly and g_alpha stays tangential, so the metric is block
/// diagonal: g_{a3} = 0 and g^{i3} = delta^{i3} are identities of the
/// construction, not numerical accidents. The inverse metric is therefore
/// assembled blockwise.
struct ScaledFrame {
  Vec2 y;
  double x3 = 0.0;
  double eps = 0.0;
  std::array<Vec3, 3> g_cov;    // g_i
  Mat3 g_upper;                 // g^{ij}
  double christoffel3[3][3][3]; // Gamma^p_{ij}(eps) = [p][i][j]
  double g_det = 0.0;           // det g_{ij} = det g_{ab}
  double sqrt_g = 0.0;
};

/// d_beta b^sigma_alpha recovered from the covariant derivative stored in
/// the surface frame:
///   d_b b^s_a = b^s_a|_b - Gamma^s_{b tau} b^tau_a + Gamma^tau_{b a} b^s_tau.
inline double chart_d_b_mixed(const GeometryFrame& f, int sigma, int alpha, int beta) {
  double v = f.b_cov_deriv[sigma][alpha][beta];
  for (int tau = 0; tau < 2; ++tau)
    v += -f.christoffel[sigma][beta][tau] * f.b_mixed(tau, alpha) +
         f.christoffel[tau][beta][alpha] * f.b_mixed(sigma, tau);
  return v;
}

/// Evaluate the scaled frame from the surface frame at y. The only
/// non-closed-form ingredient is d_beta b^tau_alpha, reused from the
/// surface frame's stencil through chart_d_b_mixed:
///   d_b g_a = d_b a_a - t [ (d_b b^tau_a) a_tau + b^tau_a d_b a_tau ],
/// with t = eps x3. Gamma^3_{a3}, Gamma^p_{33} vanish identically and
/// Gamma^3_{ab}(eps) = b_{ab} - t b^s_a b_{sb} comes out exactly because
/// a3 is orthogonal to every tangential vector.
inline ScaledFrame eval_scaled_frame(const Chart& chart, const Vec2& y, double x3, double eps) {
  if (!(eps > 0.0)) fail(ErrorKind::ValidationError, "eval_scaled_frame: eps must be > 0");
  const GeometryFrame f = eval_frame(chart, y);
  const double t = eps * x3;

  ScaledFrame s;
  s.y = y;
  s.x3 = x3;
  s.eps = eps;

  // g_alpha = a_alpha - t b^sigma_alpha a_sigma, g_3 = a3.
  for (int a = 0; a < 2; ++a) {
    Vec3 g = f.a_cov[a];
    for (int sig = 0; sig < 2; ++sig) g -= t * f.b_mixed(sig, a) * f.a_cov[sig];
    s.g_cov[a] = g;
  }
  s.g_cov[2] = f.a3;

  // g(eps) = a det(I - t b)^2 cannot go negative, it crosses zero when
  // 1 - t kappa does; checking the factors catches the fold on either side.
  const Vec2 kappa = principal_curvatures(f);
  if (!(1.0 - t * kappa[0] > 0.0) || !(1.0 - t * kappa[1] > 0.0))
    fail(ErrorKind::DegenerateChart,
         "scaled metric degenerate: g(eps) reaches 0 between the midsurface and x3=" +
             std::to_string(x3) + " for eps=" + std::to_string(eps) +
             " (eps beyond the injectivity range)");

  Mat2 g_ab;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) g_ab(a, b) = s.g_cov[a].dot(s.g_cov[b]);
  s.g_det = g_ab.determinant();
  if (!(s.g_det > 0.0))
    fail(ErrorKind::DegenerateChart,
         "scaled metric degenerate: g(eps) <= 0 at x3=" + std::to_string(x3) +
             " for eps=" + std::to_string(eps) + " (eps beyond the injectivity range)");
  s.sqrt_g = std::sqrt(s.g_det);

  s.g_upper = Mat3::Zero();
  s.g_upper.topLeftCorner<2, 2>() = g_ab.inverse();
  s.g_upper(2, 2) = 1.0;

  // Contravariant tangential vectors g^sigma = g^{sigma tau} g_tau.
  std::array<Vec3, 2> g_contra;
  for (int a = 0; a < 2; ++a)
    g_contra[a] = s.g_upper(a, 0) * s.g_cov[0] + s.g_upper(a, 1) * s.g_cov[1];

  for (auto& plane : s.christoffel3)
    for (auto& row : plane)
      for (double& v : row) v = 0.0;

  // d_3 g_alpha = -b^tau_alpha a_tau (scaled by eps on the fixed domain
  // is undone by the association with the eps-domain derivative).
  std::array<Vec3, 2> d3_g;
  for (int a = 0; a < 2; ++a) {
    Vec3 v = Vec3::Zero();
    for (int tau = 0; tau < 2; ++tau) v -= f.b_mixed(tau, a) * f.a_cov[tau];
    d3_g[a] = v;
  }
  for (int a = 0; a < 2; ++a)
    for (int sig = 0; sig < 2; ++sig) {
      const double v = g_contra[sig].dot(d3_g[a]);
      s.christoffel3[sig][a][2] = v;
      s.christoffel3[sig][2][a] = v;
    }
  // Gamma^3_{a3} = a3 . d3 g_alpha = 0 and Gamma^p_33 = 0: left as exact zeros.

  // In-plane family: Gamma^p_{ab}(eps) = g^p . d_b g_a.
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Vec3 d_b_g = chart.deriv2(a, b, y);
      for (int tau = 0; tau < 2; ++tau)
        d_b_g -= t * (chart_d_b_mixed(f, tau, a, b) * f.a_cov[tau] +
                      f.b_mixed(tau, a) * chart.deriv2(tau, b, y));
      for (int sig = 0; sig < 2; ++sig) s.christoffel3[sig][a][b] = g_contra[sig].dot(d_b_g);
      s.christoffel3[2][a][b] = f.a3.dot(d_b_g);
    }

  return s;
}

/// Scaled elasticity tensor A^{ijkl}(eps) at the frame's point.
inline Tensor4_3D scaled_tensor3d(const ScaledFrame& s, const MaterialParams& m) {
  return elasticity_tensor3d(s.g_upper, m);
}

}  // namespace shellthermo
