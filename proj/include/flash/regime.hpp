#pragma once

#include "flash/types.hpp"

#include <vector>

namespace flash {

// Which reduced model supplies the runaway threshold for dimensional
// classification. The radial criterion is the default; the lumped one is
// provided for comparison.
enum class RegimeCriterion { radial, lumped };

// Outcome of the dimensional flash test at one operating point: the heating
// number lambda the operating point produces and the critical value it is
// compared against.
struct FlashCondition {
  bool flash = false;
  double lambda_value = 0;
  double lambda_critical = 0;
};

// Evaluates whether a furnace temperature [K] and field strength V/L [V/m]
// drive thermal runaway: lambda(T, field) > lambda_c(beta(T)).
FlashCondition flash_condition(const DimensionalParameters& p, double T_furnace,
                               double field,
                               RegimeCriterion criterion = RegimeCriterion::radial);

// Critical field strength E*(T) [V/m] above which flash occurs, in closed
// form from lambda proportional to (V/L)^2.
double critical_field(const DimensionalParameters& p, double T_furnace,
                      RegimeCriterion criterion = RegimeCriterion::radial);

// Flash/no-flash classification over a temperature-field grid, with the
// per-temperature critical boundary. flash is row-major: index [iT * nE + iE].
struct RegimeGrid {
  std::vector<double> T_values;
  std::vector<double> E_values;
  std::vector<char> flash;
  std::vector<double> boundary;
};

// Classifies a uniform grid of (T, E) points and locates the boundary for
// each T by bisection on E (1e-6 relative), falling back to the closed form
// when the boundary lies outside the requested field range.
RegimeGrid regime_diagram(const DimensionalParameters& p, double T_lo,
                          double T_hi, int n_T, double E_lo, double E_hi,
                          int n_E,
                          RegimeCriterion criterion = RegimeCriterion::radial);

}  // namespace flash
