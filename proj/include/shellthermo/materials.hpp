#pragma once

#include <string>
#include <vector>

#include "shellthermo/errors.hpp"

namespace shellthermo {

/// Homogeneous isotropic thermoelastic material, SI units throughout.
struct MaterialParams {
  double rho = 1.0;      // mass density (kg/m^3)
  double lambda = 1.0;   // Lame lambda (Pa)
  double mu = 1.0;       // Lame mu (Pa)
  double alpha_T = 0.1;  // thermal dilatation (1/K)
  double k = 1.0;        // thermal conductivity (W/(m K))
  double beta = 1.0;     // specific heat coefficient (J/(m^3 K))

  std::vector<std::string> validate() const {
    std::vector<std::string> errs;
    if (!(mu > 0.0)) errs.push_back("material.mu must be > 0");
    if (!(lambda >= 0.0)) errs.push_back("material.lambda must be >= 0");
    if (!(rho > 0.0)) errs.push_back("material.rho must be > 0");
    if (!(k > 0.0)) errs.push_back("material.k must be > 0");
    if (!(beta > 0.0)) errs.push_back("material.beta must be > 0");
    if (!(alpha_T >= 0.0)) errs.push_back("material.alpha_T must be >= 0");
    return errs;
  }

  bool operator==(const MaterialParams&) const = default;
};

/// Coefficients of the limit problem derived from the raw constants.
/// mech_thermal is the factor-4 coupling weight, heat_capacity_eff the
/// factor-2 effective thermal mass and duhamel the stress-temperature
/// modulus alpha_T (3 lambda + 2 mu).
struct CouplingCoefficients {
  double mech_thermal = 0.0;
  double heat_capacity_eff = 0.0;
  double duhamel = 0.0;

  static CouplingCoefficients from(const MaterialParams& m) {
    CouplingCoefficients c;
    const double three_lp2m = 3.0 * m.lambda + 2.0 * m.mu;
    const double lp2m = m.lambda + 2.0 * m.mu;
    c.mech_thermal = 4.0 * m.alpha_T * m.mu * three_lp2m / lp2m;
    c.heat_capacity_eff = 2.0 * (m.beta + m.alpha_T * m.alpha_T * three_lp2m * three_lp2m / lp2m);
    c.duhamel = m.alpha_T * three_lp2m;
    return c;
  }
};

}  // namespace shellthermo
