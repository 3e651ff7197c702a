#pragma once

#include "flash/types.hpp"

#include <vector>

namespace flash {

enum class SteadyBranch { stable, unstable, current_controlled };

// Steady radial profile theta(r) = -2 ln(c - b + b r^2) with b determined
// by the lateral-loss balance b = (beta c / 2) * (-ln c). The pair (c, b)
// fixes the profile; `forcing` records the heating number that produced it
// (lambda under voltage control, lambda * curlyI^2 under current control).
struct RadialSteadyState {
  double c = 1;
  double b = 0;
  double beta = 0;
  double forcing = 0;
  SteadyBranch branch = SteadyBranch::stable;
};

// Steady axial profile theta(z) = 2 ln(cos(a z) / cos(a/2)) + b with the
// electrode-loss constant b = (2 a / alpha) tan(a / 2); b = 0 when the ends
// are held at the furnace temperature (alpha = infinity).
struct AxialSteadyState {
  double a = 0;
  double b = 0;
  double alpha = 0;
  double forcing = 0;
  SteadyBranch branch = SteadyBranch::stable;
};

// All steady radial states under voltage control at heating number lambda.
// Returns zero, one (at the fold) or two states; with two, the stable one
// (larger c) comes first. beta == 0 admits none for lambda > 0.
std::vector<RadialSteadyState> radial_steady_voltage(double lambda, double beta);

// Fold value of lambda above which no radial steady state exists.
// Returns 0 for beta == 0: every positive heating number blows up when the
// surface is perfectly insulated.
double radial_critical_lambda(double beta);

// Unique radial steady state under current control with forcing
// lambda * curlyI^2 > 0. Exists for every positive forcing.
RadialSteadyState radial_steady_current(double lambda_I2, double beta);

// All steady axial states under voltage control at heating number Lambda.
// Stable branch has the smaller interior amplitude a. alpha may be kInf.
std::vector<AxialSteadyState> axial_steady_voltage(double Lambda, double alpha);

// Fold value of Lambda for the axial model; 0 when alpha == 0.
double axial_critical_lambda(double alpha);

// Unique axial steady state under current control with forcing
// Lambda * curlyI^2 > 0.
AxialSteadyState axial_steady_current(double Lambda_I2, double alpha);

// Evaluate the closed-form steady profiles on given coordinates
// (r in [0,1] radial, z in [-1/2,1/2] axial).
std::vector<double> evaluate_profile(const RadialSteadyState& s,
                                     const std::vector<double>& r);
std::vector<double> evaluate_profile(const AxialSteadyState& s,
                                     const std::vector<double>& z);

// Lumped-model runaway threshold: heating wins for
// lambda > (2/e) * (beta + delta^2 * alpha).
struct LumpedCriterion {
  bool flash = false;
  double threshold = 0;  // (2/e) * (beta + delta^2 * alpha)
  double margin = 0;     // lambda - threshold
};
LumpedCriterion lumped_flash_criterion(const DimensionlessGroups& g);

// Fold value of the rescaled heating number for the slender-rod model with
// lateral loss B and electrode loss alpha (alpha may be kInf). Computed by
// shooting on the steady two-point problem plus a damped fixed-point pass on
// the nonlocal current integral. Throws ContinuationError if the scan over
// midpoint amplitudes fails to converge somewhere, carrying the largest
// heating number reached.
double high_aspect_critical(double alpha, double B);

}  // namespace flash
