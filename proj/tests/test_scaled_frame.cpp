#include <catch2/catch_amalgamated.hpp>

#include "shellthermo/asymptotics.hpp"
#include "shellthermo/scaled_geometry.hpp"

using namespace shellthermo;

TEST_CASE("scaled frame structural zeros") {
  SphereCapChart sphere(1.0);
  EllipsoidCapChart ell(1.0, 1.0, 0.5);
  for (const Chart* chart : {static_cast<const Chart*>(&sphere),
                             static_cast<const Chart*>(&ell)}) {
    const Rect dom = chart->param_domain();
    for (double eps : {0.4, 0.2, 0.1, 0.05})
      for (double s1 : {0.2, 0.6})
        for (double x3 : {-1.0, 0.25, 1.0}) {
          const ScaledFrame s = eval_scaled_frame(*chart, dom.lerp(s1, 0.5), x3, eps);
          for (int a = 0; a < 2; ++a) {
            CHECK(std::abs(s.christoffel3[2][a][2]) < 1e-12);  // Gamma^3_{a3}
            CHECK(std::abs(s.christoffel3[2][2][a]) < 1e-12);
          }
          for (int p = 0; p < 3; ++p) CHECK(std::abs(s.christoffel3[p][2][2]) < 1e-12);
          for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(s.g_upper(i, 2) - (i == 2 ? 1.0 : 0.0)) < 1e-12);
            CHECK(std::abs(s.g_upper(2, i) - (i == 2 ? 1.0 : 0.0)) < 1e-12);
          }
        }
  }
}

TEST_CASE("midsurface restriction recovers the surface frame") {
  SphereCapChart sphere(1.0);
  const Vec2 y{0.7, 0.8};
  const GeometryFrame f = eval_frame(sphere, y);
  const ScaledFrame s = eval_scaled_frame(sphere, y, 0.0, 0.3);
  CHECK((s.g_cov[0] - f.a_cov[0]).norm() == 0.0);
  CHECK((s.g_cov[1] - f.a_cov[1]).norm() == 0.0);
  CHECK((s.g_cov[2] - f.a3).norm() == 0.0);
  CHECK(std::abs(s.g_det - f.a_lower.determinant()) < 1e-14);
}

TEST_CASE("plane chart: all scaled Christoffels vanish") {
  PlaneChart plane;
  for (double eps : {0.4, 0.05}) {
    const ScaledFrame s = eval_scaled_frame(plane, {0.4, 0.3}, -0.7, eps);
    for (int p = 0; p < 3; ++p)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(s.christoffel3[p][i][j] == 0.0);
    CHECK(s.g_det == 1.0);
  }
}

TEST_CASE("exact identity Gamma^3_{ab}(eps) = b_ab - eps x3 b^s_a b_sb") {
  EllipsoidCapChart ell(1.0, 1.0, 0.5);
  const Rect dom = ell.param_domain();
  for (double eps : {0.4, 0.1})
    for (double x3 : {-1.0, 0.6}) {
      const Vec2 y = dom.lerp(0.45, 0.65);
      const GeometryFrame f = eval_frame(ell, y);
      const ScaledFrame s = eval_scaled_frame(ell, y, x3, eps);
      const double t = eps * x3;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          double corr = 0.0;
          for (int sg = 0; sg < 2; ++sg) corr += f.b_mixed(sg, a) * f.b_lower(sg, b);
          CHECK(std::abs(s.christoffel3[2][a][b] - (f.b_lower(a, b) - t * corr)) < 1e-12);
        }
    }
}

TEST_CASE("g(eps) stays within chart-level bounds over the sweep") {
  SphereCapChart sphere(1.0);
  const Rect dom = sphere.param_domain();
  double gmin = 1e300, gmax = 0.0;
  for (double eps : {0.4, 0.2, 0.1, 0.05})
    for (int i = 1; i <= 5; ++i)
      for (int l = 0; l <= 4; ++l) {
        const ScaledFrame s =
            eval_scaled_frame(sphere, dom.lerp(i / 6.0, 0.5), -1.0 + 0.5 * l, eps);
        gmin = std::min(gmin, s.g_det);
        gmax = std::max(gmax, s.g_det);
      }
  CHECK(gmin > 0.0);
  CHECK(gmax < 1e6);
}

TEST_CASE("Christoffel expansion residual decays at second order") {
  SphereCapChart sphere(1.0);
  EllipsoidCapChart ell(1.0, 1.0, 0.5);
  const std::vector<double> eps_list = {0.1, 0.05, 0.025, 0.0125};
  for (const Chart* chart : {static_cast<const Chart*>(&sphere),
                             static_cast<const Chart*>(&ell)}) {
    const Rect dom = chart->param_domain();
    std::vector<double> errs;
    for (double eps : eps_list) {
      double worst = 0.0;
      for (double s1 : {0.3, 0.6})
        for (double x3 : {-1.0, 0.5, 1.0})
          worst = std::max(worst,
                           christoffel_expansion_residual(*chart, dom.lerp(s1, 0.4), x3, eps));
      errs.push_back(worst);
    }
    const double slope = fit_loglog_slope(eps_list, errs);
    INFO("chart " << chart->name() << " slope " << slope);
    CHECK(slope > 1.7);
    CHECK(slope < 2.3);
  }
}

TEST_CASE("injectivity violation raises DegenerateChart") {
  SphereCapChart sphere(1.0);
  CHECK_NOTHROW(eval_scaled_frame(sphere, {0.7, 0.8}, -1.0, 0.9));
  try {
    eval_scaled_frame(sphere, {0.7, 0.8}, -1.0, 1.2);
    FAIL("expected DegenerateChart");
  } catch (const ShellError& e) {
    CHECK(e.kind() == ErrorKind::DegenerateChart);
  }
}
