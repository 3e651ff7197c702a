#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flash {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Thrown when an input value violates a documented constraint. Carries the
// offending field name and the constraint text so callers can report both.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, std::string constraint)
      : std::runtime_error("'" + field + "': " + constraint),
        field_(std::move(field)),
        constraint_(std::move(constraint)) {}

  const std::string& field() const { return field_; }
  const std::string& constraint() const { return constraint_; }

 private:
  std::string field_;
  std::string constraint_;
};

// Thrown when a numerical routine cannot make progress for reasons other
// than physical blow-up (those are reported, not thrown).
class SolverError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a continuation/scan fails part way; carries the last value
// that did converge so callers can diagnose the failure point.
class ContinuationError : public std::runtime_error {
 public:
  ContinuationError(const std::string& msg, double last_converged)
      : std::runtime_error(msg), last_converged_(last_converged) {}

  double last_converged() const { return last_converged_; }

 private:
  double last_converged_;
};

// Material, geometric and electrical inputs in SI units.
struct DimensionalParameters {
  double rho = 0;               // density [kg/m^3]
  double c_heat = 0;            // specific heat [J/(kg K)]
  double k_thermal = 0;         // thermal conductivity [W/(m K)]
  double emissivity = 0;        // surface emissivity [-]
  double stefan_boltzmann = 5.67e-8;  // [W/(m^2 K^4)]
  double h_side = 0;            // lateral convective coefficient [W/(m^2 K)]
  double h_electrode = 0;       // electrode convective coefficient [W/(m^2 K)]
  double arrhenius_A = 0;       // conductivity prefactor [S/m]
  double activation_E = 0;      // activation energy [J/mol]
  double gas_constant = 8.314;  // [J/(mol K)]
  double length_L = 0;          // specimen length [m]
  double radius_R = 0;          // specimen radius [m]
  double T_furnace = 0;         // ambient/furnace temperature [K]
  double V0 = 0;                // applied voltage [V]
  double I0 = 0;                // current limit [A]

  // Throws ValidationError when a field is outside its admissible range.
  // Soft issues (a sample that is not slender) come back as warning strings.
  std::vector<std::string> validate() const;
};

// Dimensionless groups controlling the reduced models, plus the scales
// used to build them.
struct DimensionlessGroups {
  double delta = 0;   // radius-to-length ratio
  double lambda = 0;  // Joule heating number (voltage control)
  double beta = 0;    // lateral heat-loss number (convective + radiative)
  double alpha = 0;   // electrode heat-loss number
  double curlyI = 0;  // dimensionless current limit
  double nu = 0;      // Arrhenius curvature parameter
  double sigma0 = 0;  // conductivity scale [S/m]
  double t0 = 0;      // time scale [s]
  double deltaT = 0;  // temperature scale [K]
  double T0 = 0;      // reference temperature [K]
};

// Groups for the long-rod limit where axial conduction balances heating
// on the slow time scale.
struct HighAspectGroups {
  double Lambda = 0;        // rescaled heating number, lambda / delta^2
  double B = 0;             // rescaled lateral loss, 2 beta / delta^2
  double alpha = 0;         // electrode loss number (unchanged)
  double time_rescale = 0;  // slow-time factor, delta^2
};

enum class ScheduleMode { voltage_then_current, voltage_only, current_only };

// Electrical control protocol applied during a transient run.
struct ControlSchedule {
  ScheduleMode mode = ScheduleMode::voltage_then_current;
  double voltage_setpoint = 1.0;  // dimensionless source voltage
  double current_limit = kInf;    // dimensionless current ceiling

  void validate() const;
};

enum class Geometry { radial, axial };

// Uniform one-dimensional grid. Radial grids span r in [0,1]; axial grids
// span z in [-1/2, 1/2]. Nodes sit at cell boundaries, n_cells + 1 of them.
struct SpatialGrid {
  int n_cells = 128;
  Geometry geometry = Geometry::radial;

  int n_nodes() const { return n_cells + 1; }
  double spacing() const { return 1.0 / n_cells; }
  double node(int i) const {
    return geometry == Geometry::radial ? i * spacing() : -0.5 + i * spacing();
  }
  std::vector<double> nodes() const;

  void validate() const;  // n_cells >= 8
};

// Time integration controls shared by all transient solvers.
struct SolverOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double dt_init = 1e-6;
  double dt_min = 1e-12;
  double dt_max = 1.0;
  double theta_cap = 25.0;  // blow-up detection threshold
  double t_end = 50.0;
  std::vector<double> snapshot_times;  // profile recording times, ascending
  // Optional replacement for the default theta == 0 initial condition.
  // Size must match the solver's state size (grid nodes, or 1 for lumped).
  std::optional<std::vector<double>> initial_theta;

  void validate() const;  // dt_min < dt_init <= dt_max, tolerances positive
};

}  // namespace flash
