#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shellthermo/errors.hpp"

namespace shellthermo {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// Axis-aligned parameter rectangle [y1_min,y1_max] x [y2_min,y2_max].
struct Rect {
  double y1_min = 0.0, y1_max = 1.0;
  double y2_min = 0.0, y2_max = 1.0;

  double extent1() const { return y1_max - y1_min; }
  double extent2() const { return y2_max - y2_min; }
  bool contains(const Vec2& y) const {
    return y[0] >= y1_min && y[0] <= y1_max && y[1] >= y2_min && y[1] <= y2_max;
  }
  Vec2 lerp(double s1, double s2) const {
    return {y1_min + s1 * extent1(), y2_min + s2 * extent2()};
  }
};

/// Analytic midsurface map y -> theta(y) in R^3 with first and second
/// partials. The formulas of the built-in charts are entire in y, so
/// evaluation on (and slightly beyond) the closure of the parameter
/// rectangle is well defined; finite-difference probes rely on that.
class Chart {
public:
  virtual ~Chart() = default;

  virtual std::string name() const = 0;
  virtual Rect param_domain() const = 0;

  virtual Vec3 eval(const Vec2& y) const = 0;
  virtual Vec3 eval_d1(const Vec2& y) const = 0;
  virtual Vec3 eval_d2(const Vec2& y) const = 0;
  virtual Vec3 eval_d11(const Vec2& y) const = 0;
  virtual Vec3 eval_d12(const Vec2& y) const = 0;
  virtual Vec3 eval_d22(const Vec2& y) const = 0;

  Vec3 deriv1(int alpha, const Vec2& y) const {
    return alpha == 0 ? eval_d1(y) : eval_d2(y);
  }
  Vec3 deriv2(int alpha, int beta, const Vec2& y) const {
    if (alpha == 0 && beta == 0) return eval_d11(y);
    if (alpha == 1 && beta == 1) return eval_d22(y);
    return eval_d12(y);
  }
};

/// theta(y) = (y1, y2, 0). Flat, not elliptic; exact trivial geometry.
class PlaneChart final : public Chart {
public:
  explicit PlaneChart(Rect dom = {0.0, 1.0, 0.0, 1.0}) : dom_(dom) {}

  std::string name() const override { return "plane"; }
  Rect param_domain() const override { return dom_; }

  Vec3 eval(const Vec2& y) const override { return {y[0], y[1], 0.0}; }
  Vec3 eval_d1(const Vec2&) const override { return {1.0, 0.0, 0.0}; }
  Vec3 eval_d2(const Vec2&) const override { return {0.0, 1.0, 0.0}; }
  Vec3 eval_d11(const Vec2&) const override { return Vec3::Zero(); }
  Vec3 eval_d12(const Vec2&) const override { return Vec3::Zero(); }
  Vec3 eval_d22(const Vec2&) const override { return Vec3::Zero(); }

private:
  Rect dom_;
};

/// Spherical cap in polar/azimuthal angles,
///   theta(y) = R (sin y1 cos y2, sin y1 sin y2, cos y1).
/// y1 is the polar angle (kept away from 0 and pi), y2 the azimuth
/// (range below 2*pi keeps the map injective). With this parameter
/// order a3 points outward and both principal curvatures equal -1/R.
class SphereCapChart final : public Chart {
public:
  explicit SphereCapChart(double radius = 1.0, Rect dom = {0.3, 1.2, 0.2, 1.4})
      : radius_(radius), dom_(dom) {
    if (radius_ <= 0.0) fail(ErrorKind::ValidationError, "sphere_cap: radius must be > 0");
    if (dom_.y1_min <= 0.0 || dom_.y1_max >= M_PI)
      fail(ErrorKind::ValidationError, "sphere_cap: polar range must stay inside (0, pi)");
    if (dom_.extent2() >= 2.0 * M_PI)
      fail(ErrorKind::ValidationError, "sphere_cap: azimuthal extent must be < 2*pi");
  }

  std::string name() const override { return "sphere_cap"; }
  Rect param_domain() const override { return dom_; }
  double radius() const { return radius_; }

  Vec3 eval(const Vec2& y) const override {
    const double s = std::sin(y[0]), c = std::cos(y[0]);
    return radius_ * Vec3(s * std::cos(y[1]), s * std::sin(y[1]), c);
  }
  Vec3 eval_d1(const Vec2& y) const override {
    const double s = std::sin(y[0]), c = std::cos(y[0]);
    return radius_ * Vec3(c * std::cos(y[1]), c * std::sin(y[1]), -s);
  }
  Vec3 eval_d2(const Vec2& y) const override {
    const double s = std::sin(y[0]);
    return radius_ * Vec3(-s * std::sin(y[1]), s * std::cos(y[1]), 0.0);
  }
  Vec3 eval_d11(const Vec2& y) const override { return -eval(y); }
  Vec3 eval_d12(const Vec2& y) const override {
    const double c = std::cos(y[0]);
    return radius_ * Vec3(-c * std::sin(y[1]), c * std::cos(y[1]), 0.0);
  }
  Vec3 eval_d22(const Vec2& y) const override {
    const double s = std::sin(y[0]);
    return radius_ * Vec3(-s * std::cos(y[1]), -s * std::sin(y[1]), 0.0);
  }

private:
  double radius_;
  Rect dom_;
};

/// Ellipsoid cap, theta(y) = (ax sin y1 cos y2, ay sin y1 sin y2, az cos y1).
/// Same angle conventions as the sphere cap; uniformly elliptic on any
/// admissible cap.
class EllipsoidCapChart final : public Chart {
public:
  EllipsoidCapChart(double ax = 1.0, double ay = 1.0, double az = 0.5,
                    Rect dom = {0.3, 1.2, 0.2, 1.4})
      : ax_(ax), ay_(ay), az_(az), dom_(dom) {
    if (ax_ <= 0.0 || ay_ <= 0.0 || az_ <= 0.0)
      fail(ErrorKind::ValidationError, "ellipsoid_cap: semi-axes must be > 0");
    if (dom_.y1_min <= 0.0 || dom_.y1_max >= M_PI)
      fail(ErrorKind::ValidationError, "ellipsoid_cap: polar range must stay inside (0, pi)");
    if (dom_.extent2() >= 2.0 * M_PI)
      fail(ErrorKind::ValidationError, "ellipsoid_cap: azimuthal extent must be < 2*pi");
  }

  std::string name() const override { return "ellipsoid_cap"; }
  Rect param_domain() const override { return dom_; }
  Vec3 semi_axes() const { return {ax_, ay_, az_}; }

  Vec3 eval(const Vec2& y) const override {
    const double s = std::sin(y[0]), c = std::cos(y[0]);
    return {ax_ * s * std::cos(y[1]), ay_ * s * std::sin(y[1]), az_ * c};
  }
  Vec3 eval_d1(const Vec2& y) const override {
    const double s = std::sin(y[0]), c = std::cos(y[0]);
    return {ax_ * c * std::cos(y[1]), ay_ * c * std::sin(y[1]), -az_ * s};
  }
  Vec3 eval_d2(const Vec2& y) const override {
    const double s = std::sin(y[0]);
    return {-ax_ * s * std::sin(y[1]), ay_ * s * std::cos(y[1]), 0.0};
  }
  Vec3 eval_d11(const Vec2& y) const override { return -eval(y); }
  Vec3 eval_d12(const Vec2& y) const override {
    const double c = std::cos(y[0]);
    return {-ax_ * c * std::sin(y[1]), ay_ * c * std::cos(y[1]), 0.0};
  }
  Vec3 eval_d22(const Vec2& y) const override {
    const double s = std::sin(y[0]);
    return {-ax_ * s * std::cos(y[1]), -ay_ * s * std::sin(y[1]), 0.0};
  }

private:
  double ax_, ay_, az_;
  Rect dom_;
};

struct ChartConfig {
  std::string name = "sphere_cap";
  // Interpreted per chart: radius for the sphere, semi-axes for the
  // ellipsoid, angular extents for both.
  std::map<std::string, double> params;

  double get(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

inline std::vector<std::string> builtin_chart_names() {
  return {"plane", "sphere_cap", "ellipsoid_cap"};
}

inline std::shared_ptr<const Chart> make_chart(const ChartConfig& cfg) {
  const auto rect_or = [&cfg](Rect fallback) {
    return Rect{cfg.get("y1_min", fallback.y1_min), cfg.get("y1_max", fallback.y1_max),
                cfg.get("y2_min", fallback.y2_min), cfg.get("y2_max", fallback.y2_max)};
  };
  if (cfg.name == "plane")
    return std::make_shared<PlaneChart>(rect_or({0.0, 1.0, 0.0, 1.0}));
  if (cfg.name == "sphere_cap")
    return std::make_shared<SphereCapChart>(cfg.get("radius", 1.0), rect_or({0.3, 1.2, 0.2, 1.4}));
  if (cfg.name == "ellipsoid_cap")
    return std::make_shared<EllipsoidCapChart>(cfg.get("ax", 1.0), cfg.get("ay", 1.0),
                                               cfg.get("az", 0.5), rect_or({0.3, 1.2, 0.2, 1.4}));
  std::string known;
  for (const auto& n : builtin_chart_names()) known += (known.empty() ? "" : ", ") + n;
  fail(ErrorKind::ValidationError,
       "unknown chart '" + cfg.name + "'; available charts: " + known);
}

}  // namespace shellthermo
