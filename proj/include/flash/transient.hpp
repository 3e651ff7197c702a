#pragma once

#include "flash/types.hpp"

#include <optional>
#include <vector>

namespace flash {

enum class ControlPhase { voltage, current };

enum class BlowupReason { theta_cap_exceeded, dt_underflow };

// Why and when a run was cut short by thermal runaway.
struct BlowupReport {
  bool detected = false;
  double t_estimate = 0;         // time at which integration stopped
  double theta_max_at_stop = 0;  // peak temperature at that moment
  BlowupReason reason = BlowupReason::theta_cap_exceeded;
};

// Spatial profile captured at a requested time. phi is the electric
// potential along the axis: -V z for the radial model, and the cumulative
// drop V/2 - I * int_{-1/2}^{z} exp(-theta) dz for axial models.
struct ProfileSnapshot {
  double time = 0;
  std::vector<double> coords;
  std::vector<double> theta;
  std::vector<double> phi;
};

// Time history of a transient run. All per-sample vectors share times'
// length. V, I and P are the dimensionless terminal voltage, current and
// power; control_mode records which constraint was active at each sample.
struct TransientResult {
  std::vector<double> times;
  std::vector<double> theta_min;
  std::vector<double> theta_max;
  std::vector<double> V;
  std::vector<double> I;
  std::vector<double> P;
  std::vector<ControlPhase> control_mode;
  std::optional<double> switch_time;  // set when control passed to current
  std::vector<ProfileSnapshot> profile_snapshots;
  std::optional<BlowupReport> blowup;
  std::vector<double> final_state;
};

// Radial cross-section model: theta_t = (1/r)(r theta_r)_r + lambda_eff e^theta
// on r in (0,1) with a symmetry axis and a convective-radiative rim,
// theta_r(1) + beta theta(1) = 0. Under voltage control lambda_eff =
// lambda V^2; the source sees V = min(setpoint, curlyI / (2 int e^theta r dr))
// and hands over to current control permanently once the limit binds.
TransientResult solve_radial(const DimensionlessGroups& g,
                             const ControlSchedule& schedule,
                             const SpatialGrid& grid,
                             const SolverOptions& options);

// Axial model on z in [-1/2, 1/2]: during the voltage phase
//   theta_t = delta^2 theta_zz + lambda e^{-theta} / (int e^{-theta} dz)^2,
// and after the current limit binds
//   theta_t = delta^2 theta_zz + lambda curlyI^2 e^{-theta}.
// Ends lose heat through the electrodes: theta_z(+-1/2) = -+ alpha theta;
// alpha may be kInf (ends pinned to the furnace temperature). The terminal
// current is I = V / int e^{-theta} dz under voltage control; the switch
// fires when it first reaches the limit.
TransientResult solve_axial(const DimensionlessGroups& g,
                            const ControlSchedule& schedule,
                            const SpatialGrid& grid,
                            const SolverOptions& options);

// Slender-rod model on the slow time scale: theta_t = theta_zz +
// Lambda e^{-theta} / (int e^{-theta} dz)^2 - B theta under voltage control,
// switching to Lambda curlyI^2 e^{-theta} - B theta when the current limit
// binds. Times in the result are in slow units.
TransientResult solve_high_aspect(const HighAspectGroups& ha,
                                  const ControlSchedule& schedule,
                                  const SpatialGrid& grid,
                                  const SolverOptions& options);

// Space-averaged model: dtheta/dt = lambda min(e^theta, curlyI^2 e^{-theta})
// - 2 (beta + delta^2 alpha) theta. The state is a single scalar;
// theta_min == theta_max in the result.
TransientResult solve_lumped(const DimensionlessGroups& g,
                             const ControlSchedule& schedule,
                             const SolverOptions& options);

}  // namespace flash
