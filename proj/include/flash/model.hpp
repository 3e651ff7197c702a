#pragma once

#include "flash/types.hpp"

namespace flash {

// Temperature-dependent electrical conductivity sigma(T) = A exp(-E/(Rg T)).
double arrhenius_conductivity(double T, const DimensionalParameters& p);

// Reduced conductivity as a function of the scaled temperature rise theta:
// exp(theta / (1 + nu * theta)). The nu == 0 limit is the pure exponential
// used by all reduced models.
double conductivity_hat(double theta, double nu = 0.0);

// Builds the dimensionless groups from dimensional inputs. The reference
// temperature is the furnace temperature, the conductivity scale is the
// Arrhenius value there, and the time scale is the radial conduction time
// rho c R^2 / k.
DimensionlessGroups nondimensionalize(const DimensionalParameters& p);

// Groups for the slender-rod reduction; requires delta > 0.
HighAspectGroups high_aspect_groups(const DimensionlessGroups& g);

// Maps a dimensionless temperature rise back to kelvin: T0 + deltaT * theta.
double dimensional_temperature(const DimensionlessGroups& g, double theta);

// Maps dimensionless time back to seconds.
double dimensional_time(const DimensionlessGroups& g, double t);

}  // namespace flash
