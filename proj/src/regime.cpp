#include "flash/regime.hpp"

#include <cmath>
#include <numbers>

#include "flash/model.hpp"
#include "flash/steady.hpp"
#include "numerics.hpp"

namespace flash {

namespace {

// Critical heating number for the chosen reduced model at furnace
// temperature T. The radial criterion compares against the fold of the
// radial steady problem; the lumped one against the tangency threshold.
double critical_lambda_at(const DimensionalParameters& p, double T,
                          RegimeCriterion criterion) {
  DimensionalParameters q = p;
  q.T_furnace = T;
  DimensionlessGroups g = nondimensionalize(q);
  if (criterion == RegimeCriterion::radial)
    return radial_critical_lambda(g.beta);
  return (2.0 / std::numbers::e) * (g.beta + g.delta * g.delta * g.alpha);
}

double lambda_at(const DimensionalParameters& p, double T, double field) {
  // lambda for the operating point (T, E) with V0 = E * L.
  double sigma0 = p.arrhenius_A *
                  std::exp(-p.activation_E / (p.gas_constant * T));
  double deltaT = p.gas_constant * T * T / p.activation_E;
  return sigma0 * field * field * p.radius_R * p.radius_R /
         (p.k_thermal * deltaT);
}

}  // namespace

FlashCondition flash_condition(const DimensionalParameters& p,
                               double T_furnace, double field,
                               RegimeCriterion criterion) {
  if (!(T_furnace > 0))
    throw ValidationError("T_furnace", "must be strictly positive");
  if (!(field >= 0)) throw ValidationError("field", "must be nonnegative");
  FlashCondition out;
  out.lambda_value = lambda_at(p, T_furnace, field);
  out.lambda_critical = critical_lambda_at(p, T_furnace, criterion);
  out.flash = out.lambda_value > out.lambda_critical;
  return out;
}

double critical_field(const DimensionalParameters& p, double T_furnace,
                      RegimeCriterion criterion) {
  if (!(T_furnace > 0))
    throw ValidationError("T_furnace", "must be strictly positive");
  // lambda scales as field^2, so the boundary is the closed-form
  // E* = sqrt(lambda_c k Rg T^2 / (R^2 A E)) * exp(E / (2 Rg T)).
  double lam_c = critical_lambda_at(p, T_furnace, criterion);
  double deltaT = p.gas_constant * T_furnace * T_furnace / p.activation_E;
  return std::sqrt(lam_c * p.k_thermal * deltaT /
                   (p.radius_R * p.radius_R * p.arrhenius_A)) *
         std::exp(p.activation_E / (2 * p.gas_constant * T_furnace));
}

RegimeGrid regime_diagram(const DimensionalParameters& p, double T_lo,
                          double T_hi, int n_T, double E_lo, double E_hi,
                          int n_E, RegimeCriterion criterion) {
  if (!(T_lo > 0 && T_hi > T_lo))
    throw ValidationError("T_range", "must be positive with T_lo < T_hi");
  if (!(E_lo > 0 && E_hi > E_lo))
    throw ValidationError("E_range", "must be positive with E_lo < E_hi");
  if (n_T < 2 || n_E < 2)
    throw ValidationError("resolution", "must be at least 2 per axis");

  RegimeGrid grid;
  grid.T_values.resize(n_T);
  grid.E_values.resize(n_E);
  for (int i = 0; i < n_T; ++i)
    grid.T_values[i] = T_lo + (T_hi - T_lo) * i / (n_T - 1.0);
  for (int j = 0; j < n_E; ++j)
    grid.E_values[j] = E_lo + (E_hi - E_lo) * j / (n_E - 1.0);
  grid.flash.assign(static_cast<std::size_t>(n_T) * n_E, 0);
  grid.boundary.resize(n_T);

  for (int i = 0; i < n_T; ++i) {
    double T = grid.T_values[i];
    // lambda is monotone in E at fixed T, so one critical-lambda evaluation
    // serves the whole row.
    double lam_c = critical_lambda_at(p, T, criterion);
    for (int j = 0; j < n_E; ++j)
      grid.flash[static_cast<std::size_t>(i) * n_E + j] =
          lambda_at(p, T, grid.E_values[j]) > lam_c ? 1 : 0;

    auto excess = [&](double e) { return lambda_at(p, T, e) - lam_c; };
    double f_lo = excess(E_lo);
    double f_hi = excess(E_hi);
    if ((f_lo > 0) == (f_hi > 0)) {
      // Boundary sits outside the requested field range.
      grid.boundary[i] = critical_field(p, T, criterion);
    } else {
      grid.boundary[i] = num::bisect(excess, E_lo, E_hi, f_lo, f_hi, 1e-6);
    }
  }
  return grid;
}

}  // namespace flash
