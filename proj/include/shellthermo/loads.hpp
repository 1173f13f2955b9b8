#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "shellthermo/charts.hpp"
#include "shellthermo/errors.hpp"

namespace shellthermo {

/// Named separable load presets: value(y, t) = amplitude * space(y) * time(t).
/// Spatial profiles are defined over the chart's parameter rectangle in
/// normalized coordinates s = (y - y_min) / extent.

inline std::vector<std::string> spatial_profile_names() {
  return {"zero", "constant", "bump", "sine"};
}

inline std::vector<std::string> time_profile_names() {
  return {"zero", "constant", "ramp", "sine", "smoothstep", "step_off"};
}

inline double spatial_profile(const std::string& name, const Vec2& y, const Rect& dom) {
  const double s1 = (y[0] - dom.y1_min) / dom.extent1();
  const double s2 = (y[1] - dom.y2_min) / dom.extent2();
  if (name == "zero") return 0.0;
  if (name == "constant") return 1.0;
  if (name == "bump") return 16.0 * s1 * (1.0 - s1) * s2 * (1.0 - s2);
  if (name == "sine") return std::sin(M_PI * s1) * std::sin(M_PI * s2);
  fail(ErrorKind::ValidationError, "unknown spatial load profile '" + name + "'");
}

/// `param` is the ramp length for ramp/smoothstep, the angular frequency
/// for sine, the switch-off instant for step_off.
inline double time_profile(const std::string& name, double t, double param) {
  if (name == "zero") return 0.0;
  if (name == "constant") return 1.0;
  if (name == "ramp") return param <= 0.0 ? 1.0 : std::min(1.0, t / param);
  if (name == "sine") return std::sin(param * t);
  if (name == "smoothstep") {
    if (param <= 0.0) return 1.0;
    const double s = std::min(1.0, std::max(0.0, t / param));
    return s * s * (3.0 - 2.0 * s);
  }
  if (name == "step_off") return t < param ? 1.0 : 0.0;
  fail(ErrorKind::ValidationError, "unknown time load profile '" + name + "'");
}

inline bool time_profile_vanishes_at_zero(const std::string& name, double param) {
  return time_profile(name, 0.0, param) == 0.0;
}

/// One separable component: vector amplitude for f and h, scalar for q.
struct LoadComponent {
  Vec3 amplitude = Vec3::Zero();
  std::string space = "zero";
  std::string time = "zero";
  double time_param = 0.0;

  bool is_zero() const { return amplitude.isZero() || space == "zero" || time == "zero"; }
  bool operator==(const LoadComponent&) const = default;
};

/// Scaled load data of the m = 0 regime: body force f^0, traction h^1 on
/// the top face and heat source q^0, all independent of x3. The membrane
/// resultants follow as F^i = 2 f^{i,0} + h^{i,1} and Q = 2 q^0.
struct LoadSpec {
  LoadComponent f;  // f^0
  LoadComponent h;  // h^1
  LoadComponent q;  // q^0 (only amplitude[0] is used)

  bool operator==(const LoadSpec&) const = default;

  std::vector<std::string> validate() const {
    std::vector<std::string> errs;
    for (const auto* c : {&f, &h, &q}) {
      bool ok_space = false, ok_time = false;
      for (const auto& n : spatial_profile_names()) ok_space |= (n == c->space);
      for (const auto& n : time_profile_names()) ok_time |= (n == c->time);
      if (!ok_space) errs.push_back("loads: unknown spatial profile '" + c->space + "'");
      if (!ok_time) errs.push_back("loads: unknown time profile '" + c->time + "'");
    }
    // The existence theory requires tractions that vanish at t = 0.
    if (!h.is_zero() && !time_profile_vanishes_at_zero(h.time, h.time_param))
      errs.push_back("loads: traction h must vanish at t = 0; use a time profile with value 0 there");
    return errs;
  }
};

}  // namespace shellthermo
