#include "flash/model.hpp"

#include <cmath>
#include <numbers>

namespace flash {

namespace {

void require_positive(const char* field, double v) {
  if (!(v > 0) || !std::isfinite(v))
    throw ValidationError(field, "must be strictly positive and finite");
}

}  // namespace

std::vector<std::string> DimensionalParameters::validate() const {
  require_positive("rho", rho);
  require_positive("c_heat", c_heat);
  require_positive("k_thermal", k_thermal);
  if (!(emissivity >= 0 && emissivity <= 1))
    throw ValidationError("emissivity", "must lie in [0,1]");
  require_positive("h_side", h_side);
  require_positive("h_electrode", h_electrode);
  require_positive("arrhenius_A", arrhenius_A);
  require_positive("activation_E", activation_E);
  require_positive("gas_constant", gas_constant);
  require_positive("length_L", length_L);
  require_positive("radius_R", radius_R);
  require_positive("T_furnace", T_furnace);
  require_positive("V0", V0);
  require_positive("I0", I0);
  std::vector<std::string> warnings;
  if (!(length_L > radius_R))
    warnings.push_back(
        "length_L <= radius_R: sample is not slender; the reduced models "
        "assume a thin rod");
  return warnings;
}

void ControlSchedule::validate() const {
  if (!(voltage_setpoint > 0))
    throw ValidationError("voltage_setpoint", "must be strictly positive");
  if (!(current_limit > 0))
    throw ValidationError("current_limit", "must be strictly positive");
}

std::vector<double> SpatialGrid::nodes() const {
  std::vector<double> x(n_nodes());
  for (int i = 0; i < n_nodes(); ++i) x[i] = node(i);
  return x;
}

void SpatialGrid::validate() const {
  if (n_cells < 8) throw ValidationError("n_cells", "must be at least 8");
}

void SolverOptions::validate() const {
  if (!(rel_tol > 0)) throw ValidationError("rel_tol", "must be positive");
  if (!(abs_tol > 0)) throw ValidationError("abs_tol", "must be positive");
  if (!(dt_min > 0)) throw ValidationError("dt_min", "must be positive");
  if (!(dt_min < dt_init))
    throw ValidationError("dt_init", "must exceed dt_min");
  if (!(dt_init <= dt_max))
    throw ValidationError("dt_max", "must be at least dt_init");
  if (!(theta_cap > 0)) throw ValidationError("theta_cap", "must be positive");
  if (!(t_end > 0)) throw ValidationError("t_end", "must be positive");
  for (std::size_t i = 1; i < snapshot_times.size(); ++i)
    if (!(snapshot_times[i] > snapshot_times[i - 1]))
      throw ValidationError("snapshot_times", "must be strictly increasing");
  if (!snapshot_times.empty() && !(snapshot_times.front() >= 0))
    throw ValidationError("snapshot_times", "must be nonnegative");
}

double arrhenius_conductivity(double T, const DimensionalParameters& p) {
  if (!(T > 0)) throw ValidationError("T", "temperature must be positive");
  return p.arrhenius_A * std::exp(-p.activation_E / (p.gas_constant * T));
}

double conductivity_hat(double theta, double nu) {
  double denom = 1 + nu * theta;
  if (!(denom > 0))
    throw ValidationError("theta", "1 + nu*theta must be positive");
  return std::exp(theta / denom);
}

DimensionlessGroups nondimensionalize(const DimensionalParameters& p) {
  p.validate();
  DimensionlessGroups g;
  g.T0 = p.T_furnace;
  g.sigma0 = arrhenius_conductivity(g.T0, p);
  g.t0 = p.rho * p.c_heat * p.radius_R * p.radius_R / p.k_thermal;
  g.deltaT = p.gas_constant * g.T0 * g.T0 / p.activation_E;
  g.delta = p.radius_R / p.length_L;
  g.lambda = g.sigma0 * p.V0 * p.V0 * p.radius_R * p.radius_R /
             (p.k_thermal * g.deltaT * p.length_L * p.length_L);
  g.beta = (p.h_side * p.radius_R +
            4 * p.emissivity * p.stefan_boltzmann * g.T0 * g.T0 * g.T0 *
                p.radius_R) /
           p.k_thermal;
  g.alpha = p.h_electrode * p.length_L / p.k_thermal;
  g.curlyI = p.I0 * p.length_L /
             (g.sigma0 * p.V0 * std::numbers::pi * p.radius_R * p.radius_R);
  g.nu = p.gas_constant * g.T0 / p.activation_E;
  return g;
}

HighAspectGroups high_aspect_groups(const DimensionlessGroups& g) {
  if (!(g.delta > 0)) throw ValidationError("delta", "must be strictly positive");
  HighAspectGroups ha;
  ha.Lambda = g.lambda / (g.delta * g.delta);
  ha.B = 2 * g.beta / (g.delta * g.delta);
  ha.alpha = g.alpha;
  ha.time_rescale = g.delta * g.delta;
  return ha;
}

double dimensional_temperature(const DimensionlessGroups& g, double theta) {
  return g.T0 + g.deltaT * theta;
}

double dimensional_time(const DimensionlessGroups& g, double t) {
  return g.t0 * t;
}

}  // namespace flash
