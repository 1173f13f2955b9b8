#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "shellthermo/scaled_geometry.hpp"

namespace shellthermo {

/// Least-squares slope of log(err) against log(eps). Non-positive errors
/// make the fit meaningless and yield NaN (flagged by callers).
inline double fit_loglog_slope(const std::vector<double>& eps, const std::vector<double>& err) {
  if (eps.size() != err.size() || eps.size() < 3)
    fail(ErrorKind::InsufficientData, "slope fit needs at least 3 samples");
  for (double e : err)
    if (!(e > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double x = std::log(eps[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = double(eps.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Residual of the second-order Christoffel expansions at one point,
/// combining the two nontrivial families:
///   Gamma^s_{ab}(eps) - (Gamma^s_{ab} - eps x3 b^s_b|_a)
///   Gamma^s_{a3}(eps) - (-b^s_a - eps x3 b^t_a b^s_t).
/// Both remainders are O(eps^2); on the sphere the first family is
/// exactly zero, the second carries the decay.
inline double christoffel_expansion_residual(const Chart& chart, const Vec2& y, double x3,
                                             double eps) {
  const GeometryFrame f = eval_frame(chart, y);
  const ScaledFrame s = eval_scaled_frame(chart, y, x3, eps);
  const double t = eps * x3;
  double worst = 0.0;
  for (int sg = 0; sg < 2; ++sg)
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const double first = f.christoffel[sg][a][b] - t * f.b_cov_deriv[sg][b][a];
        worst = std::max(worst, std::abs(s.christoffel3[sg][a][b] - first));
      }
      double bb = 0.0;
      for (int tau = 0; tau < 2; ++tau) bb += f.b_mixed(tau, a) * f.b_mixed(sg, tau);
      const double first = -f.b_mixed(sg, a) - t * bb;
      worst = std::max(worst, std::abs(s.christoffel3[sg][a][2] - first));
    }
  return worst;
}

/// Max deviation of A(eps) from A(0) over a sample of the fixed domain.
inline double tensor_asymptotic_gap(const Chart& chart, const MaterialParams& mat, double eps,
                                    int n_surface = 3, int n_thickness = 3) {
  const Rect dom = chart.param_domain();
  double worst = 0.0;
  for (int i = 1; i <= n_surface; ++i)
    for (int j = 1; j <= n_surface; ++j) {
      const Vec2 y = dom.lerp(double(i) / (n_surface + 1), double(j) / (n_surface + 1));
      const Tensor4_3D A0 = limit_tensor3d(eval_frame(chart, y), mat);
      for (int l = 0; l <= n_thickness; ++l) {
        const double x3 = -1.0 + 2.0 * double(l) / n_thickness;
        const Tensor4_3D Ae = scaled_tensor3d(eval_scaled_frame(chart, y, x3, eps), mat);
        worst = std::max(worst, (Ae - A0).max_abs());
      }
    }
  return worst;
}

}  // namespace shellthermo
