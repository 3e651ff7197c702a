#include "flash/transient.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "numerics.hpp"

namespace flash {

namespace {

// Model-specific pieces consumed by the shared integrator. The linear part
// (diffusion plus any linear cooling) is a constant tridiagonal operator;
// the source callback evaluates the nonlinear heating term and its local
// (diagonal) derivative with the nonlocal electrical factor frozen at the
// current iterate, which is what the Newton solve lags on.
struct ModelPhysics {
  int n = 0;                       // state size
  std::vector<double> L_sub, L_diag, L_sup;
  std::vector<char> pinned;        // Dirichlet rows held at zero
  std::vector<double> coords;      // node positions for snapshots
  bool radial_potential = false;   // phi = -V z on a matching z-grid

  std::function<void(const std::vector<double>&, ControlPhase,
                     std::vector<double>&, std::vector<double>&)>
      source;                      // fills s and ds/dtheta
  std::function<void(const std::vector<double>&, ControlPhase, double&,
                     double&)>
      readout;                     // terminal V and I
  std::function<double(const std::vector<double>&)> switch_excess;
};

double wrms(const std::vector<double>& v, const std::vector<double>& ref,
            double rel_tol, double abs_tol) {
  double acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double w = abs_tol + rel_tol * std::abs(ref[i]);
    double e = v[i] / w;
    acc += e * e;
  }
  return std::sqrt(acc / v.size());
}

// F(theta) = L theta + s(theta) for the active control phase.
void eval_rhs(const ModelPhysics& ph, const std::vector<double>& theta,
              ControlPhase phase, std::vector<double>& f,
              std::vector<double>& s, std::vector<double>& ds) {
  const int n = ph.n;
  ph.source(theta, phase, s, ds);
  for (int i = 0; i < n; ++i) {
    if (ph.pinned[i]) {
      f[i] = 0;
      continue;
    }
    double acc = ph.L_diag[i] * theta[i];
    if (i > 0) acc += ph.L_sub[i] * theta[i - 1];
    if (i + 1 < n) acc += ph.L_sup[i] * theta[i + 1];
    f[i] = acc + s[i];
  }
}

// Solves u = base + coef * F(u) by Newton with a tridiagonal Jacobian.
// u carries the initial guess in and the solution out. Returns false when
// the iteration fails to contract (caller shrinks dt and retries).
bool solve_implicit(const ModelPhysics& ph, ControlPhase phase,
                    const std::vector<double>& base, double coef,
                    const SolverOptions& opts, std::vector<double>& u) {
  const int n = ph.n;
  std::vector<double> s(n), ds(n), f(n), residual(n);
  std::vector<double> sub(n), diag(n), sup(n);
  for (int iter = 0; iter < 25; ++iter) {
    eval_rhs(ph, u, phase, f, s, ds);
    bool finite = true;
    for (int i = 0; i < n; ++i) {
      residual[i] = ph.pinned[i] ? 0.0 : -(u[i] - base[i] - coef * f[i]);
      if (!std::isfinite(residual[i])) finite = false;
    }
    if (!finite) return false;
    for (int i = 0; i < n; ++i) {
      if (ph.pinned[i]) {
        sub[i] = 0;
        sup[i] = 0;
        diag[i] = 1;
        continue;
      }
      sub[i] = (i > 0) ? -coef * ph.L_sub[i] : 0.0;
      sup[i] = (i + 1 < n) ? -coef * ph.L_sup[i] : 0.0;
      diag[i] = 1 - coef * (ph.L_diag[i] + ds[i]);
    }
    num::solve_tridiagonal(sub, diag, sup, residual);
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      u[i] += residual[i];
      if (!std::isfinite(u[i])) ok = false;
    }
    if (!ok) return false;
    double step_norm = wrms(residual, u, opts.rel_tol, opts.abs_tol);
    if (!std::isfinite(step_norm) || step_norm > 1e8) return false;
    // Newton increments must sit well below the step-error tolerance so
    // that the TR/BE comparison measures discretization, not iteration.
    if (step_norm < 1e-3) return true;
  }
  return false;
}

// One trial step of size dt from theta: computes the trapezoid solution
// (second order, returned) and the backward-difference solution (first
// order) whose gap serves as the error estimate.
bool attempt_step(const ModelPhysics& ph, ControlPhase phase,
                  const std::vector<double>& theta,
                  const std::vector<double>& f_now, double dt,
                  const SolverOptions& opts, std::vector<double>& u_tr,
                  double& err) {
  const int n = ph.n;
  std::vector<double> base_be = theta;
  std::vector<double> u_be = theta;  // guess
  if (!solve_implicit(ph, phase, base_be, dt, opts, u_be)) return false;
  std::vector<double> base_tr(n);
  for (int i = 0; i < n; ++i) base_tr[i] = theta[i] + 0.5 * dt * f_now[i];
  u_tr = u_be;  // the first-order solution seeds the second-order solve
  if (!solve_implicit(ph, phase, base_tr, 0.5 * dt, opts, u_tr)) return false;
  std::vector<double> gap(n);
  for (int i = 0; i < n; ++i) gap[i] = u_tr[i] - u_be[i];
  err = wrms(gap, u_tr, opts.rel_tol, opts.abs_tol);
  return std::isfinite(err);
}

struct EngineConfig {
  ScheduleMode mode = ScheduleMode::voltage_then_current;
  double current_limit = kInf;
};

void record_sample(TransientResult& out, const ModelPhysics& ph, double t,
                   const std::vector<double>& theta, ControlPhase phase) {
  double v = 0, i = 0;
  ph.readout(theta, phase, v, i);
  out.times.push_back(t);
  auto [mn, mx] = std::minmax_element(theta.begin(), theta.end());
  out.theta_min.push_back(*mn);
  out.theta_max.push_back(*mx);
  out.V.push_back(v);
  out.I.push_back(i);
  out.P.push_back(v * i);
  out.control_mode.push_back(phase);
}

void record_snapshot(TransientResult& out, const ModelPhysics& ph, double t,
                     const std::vector<double>& theta, ControlPhase phase) {
  ProfileSnapshot snap;
  snap.time = t;
  snap.theta = theta;
  double v = 0, cur = 0;
  ph.readout(theta, phase, v, cur);
  const int n = ph.n;
  if (ph.radial_potential) {
    // The potential varies along the rod axis, not the radius; sample the
    // linear drop phi = -V z on a matching uniform z-grid.
    snap.coords = ph.coords;
    snap.phi.resize(n);
    for (int j = 0; j < n; ++j) {
      double z = -0.5 + static_cast<double>(j) / (n - 1);
      snap.phi[j] = -v * z;
    }
  } else {
    snap.coords = ph.coords;
    snap.phi.resize(n);
    double h = 1.0 / (n - 1);
    double phi = 0.5 * v;
    snap.phi[0] = phi;
    for (int j = 1; j < n; ++j) {
      phi -= cur * 0.5 * h *
             (std::exp(-theta[j - 1]) + std::exp(-theta[j]));
      snap.phi[j] = phi;
    }
  }
  out.profile_snapshots.push_back(std::move(snap));
}

// Shared adaptive trapezoid/backward-difference integrator with control
// switching, snapshot capture and blow-up detection.
TransientResult integrate(const ModelPhysics& ph, const EngineConfig& cfg,
                          const SolverOptions& opts) {
  opts.validate();
  const int n = ph.n;
  std::vector<double> theta(n, 0.0);
  if (opts.initial_theta) {
    if (static_cast<int>(opts.initial_theta->size()) != n)
      throw ValidationError("initial_theta",
                            "size must match the solver state size");
    theta = *opts.initial_theta;
  }
  for (int i = 0; i < n; ++i)
    if (ph.pinned[i]) theta[i] = 0.0;

  TransientResult out;
  ControlPhase phase = (cfg.mode == ScheduleMode::current_only)
                           ? ControlPhase::current
                           : ControlPhase::voltage;
  if (cfg.mode == ScheduleMode::current_only) out.switch_time = 0.0;

  const bool switching = cfg.mode == ScheduleMode::voltage_then_current &&
                         std::isfinite(cfg.current_limit);
  if (switching && phase == ControlPhase::voltage &&
      ph.switch_excess(theta) >= 0) {
    phase = ControlPhase::current;
    out.switch_time = 0.0;
  }

  // Times the integrator must land on exactly.
  std::vector<double> events;
  for (double ts : opts.snapshot_times)
    if (ts > 0 && ts < opts.t_end) events.push_back(ts);
  events.push_back(opts.t_end);
  std::size_t next_event = 0;

  double t = 0;
  record_sample(out, ph, t, theta, phase);
  if (!opts.snapshot_times.empty() && opts.snapshot_times.front() == 0.0)
    record_snapshot(out, ph, t, theta, phase);

  double dt = opts.dt_init;
  std::vector<double> f_now(n), s_tmp(n), ds_tmp(n), u(n);
  int consecutive_failures = 0;

  auto finish_blowup = [&](BlowupReason reason) {
    BlowupReport rep;
    rep.detected = true;
    rep.reason = reason;
    rep.t_estimate = t;
    rep.theta_max_at_stop = *std::max_element(theta.begin(), theta.end());
    out.blowup = rep;
  };

  while (t < opts.t_end) {
    double dt_cap = events[next_event] - t;
    double dt_try = std::min(dt, dt_cap);
    bool hits_event = dt_try >= dt_cap * (1 - 1e-14);
    if (hits_event) dt_try = dt_cap;

    eval_rhs(ph, theta, phase, f_now, s_tmp, ds_tmp);
    double err = 0;
    bool ok = attempt_step(ph, phase, theta, f_now, dt_try, opts, u, err);

    if (!ok || err > 1.0) {
      double shrink = ok ? std::max(0.1, std::min(0.9, 0.9 / std::sqrt(err)))
                         : 0.25;
      dt = dt_try * shrink;
      if (++consecutive_failures > 60)
        throw SolverError("step control failed to find an acceptable dt");
      if (dt < opts.dt_min) {
        double mx = *std::max_element(theta.begin(), theta.end());
        if (mx > 0.5 * opts.theta_cap) {
          finish_blowup(BlowupReason::dt_underflow);
          break;
        }
        throw SolverError("time step underflow at t = " + std::to_string(t));
      }
      continue;
    }
    consecutive_failures = 0;

    // Locate a control switch inside the accepted step, if one occurred.
    bool switched_here = false;
    if (switching && phase == ControlPhase::voltage &&
        ph.switch_excess(u) >= 0) {
      double lo = 0, hi = dt_try;
      // Replays trapezoid sub-steps of shrinking size; the event time is
      // resolved to 1e-8 absolute.
      std::vector<double> u_sub(n);
      for (int it = 0; it < 200 && hi - lo > 1e-8; ++it) {
        double mid = 0.5 * (lo + hi);
        std::vector<double> base(n);
        for (int i = 0; i < n; ++i)
          base[i] = theta[i] + 0.5 * mid * f_now[i];
        u_sub = theta;
        if (!solve_implicit(ph, phase, base, 0.5 * mid, opts, u_sub)) {
          hi = mid;  // treat a failed probe as past the event
          continue;
        }
        if (ph.switch_excess(u_sub) >= 0)
          hi = mid;
        else
          lo = mid;
      }
      double t_switch = t + hi;
      std::vector<double> base(n);
      for (int i = 0; i < n; ++i) base[i] = theta[i] + 0.5 * hi * f_now[i];
      u = theta;
      if (!solve_implicit(ph, phase, base, 0.5 * hi, opts, u)) {
        // Extremely unlikely: fall back to the full accepted step.
        u = theta;
        std::vector<double> base2(n);
        for (int i = 0; i < n; ++i)
          base2[i] = theta[i] + 0.5 * dt_try * f_now[i];
        solve_implicit(ph, phase, base2, 0.5 * dt_try, opts, u);
        t_switch = t + dt_try;
      }
      theta = u;
      t = t_switch;
      phase = ControlPhase::current;
      out.switch_time = t_switch;
      switched_here = true;
      record_sample(out, ph, t, theta, phase);
    } else {
      theta = u;
      t = hits_event ? events[next_event] : t + dt_try;
      record_sample(out, ph, t, theta, phase);
    }

    if (!switched_here && hits_event && t >= events[next_event]) {
      bool is_snapshot =
          std::find(opts.snapshot_times.begin(), opts.snapshot_times.end(),
                    events[next_event]) != opts.snapshot_times.end();
      if (is_snapshot) record_snapshot(out, ph, t, theta, phase);
      ++next_event;
    }

    double mx = *std::max_element(theta.begin(), theta.end());
    if (mx > opts.theta_cap) {
      finish_blowup(BlowupReason::theta_cap_exceeded);
      break;
    }

    if (!switched_here) {
      double grow = 0.9 / std::sqrt(std::max(err, 1e-12));
      dt = dt_try * std::min(5.0, std::max(0.2, grow));
    }
    dt = std::min(dt, opts.dt_max);
    if (dt < opts.dt_min) dt = opts.dt_min;
  }

  // A final snapshot exactly at t_end when requested.
  if (!out.blowup && !opts.snapshot_times.empty()) {
    for (double ts : opts.snapshot_times)
      if (ts == opts.t_end &&
          (out.profile_snapshots.empty() ||
           out.profile_snapshots.back().time != opts.t_end))
        record_snapshot(out, ph, t, theta, phase);
  }

  out.final_state = theta;
  return out;
}

ModelPhysics radial_physics(const DimensionlessGroups& g,
                            const ControlSchedule& schedule,
                            const SpatialGrid& grid) {
  grid.validate();
  schedule.validate();
  if (grid.geometry != Geometry::radial)
    throw ValidationError("geometry", "must be radial for solve_radial");
  ModelPhysics ph;
  const int n = grid.n_nodes();
  const double h = grid.spacing();
  ph.n = n;
  ph.coords = grid.nodes();
  ph.radial_potential = true;
  ph.pinned.assign(n, 0);
  ph.L_sub.assign(n, 0);
  ph.L_diag.assign(n, 0);
  ph.L_sup.assign(n, 0);
  // Axis row from symmetry (theta_r(0) = 0): the cylindrical Laplacian
  // limit is 4 (theta_1 - theta_0) / h^2.
  ph.L_diag[0] = -4.0 / (h * h);
  ph.L_sup[0] = 4.0 / (h * h);
  for (int i = 1; i + 1 < n; ++i) {
    double inv = 1.0 / (h * h);
    ph.L_sub[i] = inv * (1 - 0.5 / i);
    ph.L_diag[i] = -2 * inv;
    ph.L_sup[i] = inv * (1 + 0.5 / i);
  }
  // Rim row eliminates the ghost node with theta_r(1) = -beta theta(1);
  // the first-derivative part of the operator contributes -beta theta(1).
  ph.L_sub[n - 1] = 2.0 / (h * h);
  ph.L_diag[n - 1] = -2.0 / (h * h) - 2 * g.beta / h - g.beta;

  const double lambda = g.lambda;
  const double setpoint = schedule.voltage_setpoint;
  const double limit = schedule.current_limit;

  auto charge = [n, h](const std::vector<double>& theta) {
    // int_0^1 e^theta r dr by the trapezoid rule (axis weight is zero).
    double s = 0.5 * std::exp(theta[n - 1]);
    for (int i = 1; i + 1 < n; ++i) s += i * h * std::exp(theta[i]);
    return s * h;
  };

  ph.source = [n, lambda, setpoint, limit, charge](
                  const std::vector<double>& theta, ControlPhase phase,
                  std::vector<double>& s, std::vector<double>& ds) {
    double v = setpoint;
    if (phase == ControlPhase::current) v = limit / (2 * charge(theta));
    double lam_eff = lambda * v * v;
    for (int i = 0; i < n; ++i) {
      s[i] = lam_eff * std::exp(std::min(theta[i], 700.0));
      ds[i] = s[i];
    }
  };
  ph.readout = [setpoint, limit, charge](const std::vector<double>& theta,
                                         ControlPhase phase, double& v,
                                         double& cur) {
    double q = charge(theta);
    v = (phase == ControlPhase::current) ? limit / (2 * q) : setpoint;
    cur = 2 * v * q;
  };
  ph.switch_excess = [setpoint, limit, charge](
                         const std::vector<double>& theta) {
    return 2 * setpoint * charge(theta) - limit;
  };
  return ph;
}

ModelPhysics axial_like_physics(double diffusion, double lambda, double B,
                                double alpha, const ControlSchedule& schedule,
                                const SpatialGrid& grid) {
  grid.validate();
  schedule.validate();
  if (grid.geometry != Geometry::axial)
    throw ValidationError("geometry", "must be axial for this solver");
  ModelPhysics ph;
  const int n = grid.n_nodes();
  const double h = grid.spacing();
  ph.n = n;
  ph.coords = grid.nodes();
  ph.pinned.assign(n, 0);
  ph.L_sub.assign(n, 0);
  ph.L_diag.assign(n, 0);
  ph.L_sup.assign(n, 0);
  const double inv = diffusion / (h * h);
  const bool pinned_ends = std::isinf(alpha);
  for (int i = 1; i + 1 < n; ++i) {
    ph.L_sub[i] = inv;
    ph.L_diag[i] = -2 * inv - B;
    ph.L_sup[i] = inv;
  }
  if (pinned_ends) {
    ph.pinned[0] = 1;
    ph.pinned[n - 1] = 1;
  } else {
    // Ghost elimination with theta_z(-1/2) = +alpha theta and
    // theta_z(+1/2) = -alpha theta.
    ph.L_sup[0] = 2 * inv;
    ph.L_diag[0] = -2 * inv - 2 * inv * h * alpha - B;
    ph.L_sub[n - 1] = 2 * inv;
    ph.L_diag[n - 1] = -2 * inv - 2 * inv * h * alpha - B;
  }

  const double setpoint = schedule.voltage_setpoint;
  const double limit = schedule.current_limit;

  auto conductance_integral = [n, h](const std::vector<double>& theta) {
    // int exp(-theta) dz: the series resistance integral.
    double s = 0.5 * (std::exp(-theta[0]) + std::exp(-theta[n - 1]));
    for (int i = 1; i + 1 < n; ++i) s += std::exp(-theta[i]);
    return s * h;
  };

  ph.source = [n, lambda, setpoint, limit, conductance_integral](
                  const std::vector<double>& theta, ControlPhase phase,
                  std::vector<double>& s, std::vector<double>& ds) {
    double lam_eff;
    if (phase == ControlPhase::current) {
      lam_eff = lambda * limit * limit;
    } else {
      double j = conductance_integral(theta);
      lam_eff = lambda * setpoint * setpoint / (j * j);
    }
    for (int i = 0; i < n; ++i) {
      s[i] = lam_eff * std::exp(std::min(-theta[i], 700.0));
      ds[i] = -s[i];
    }
  };
  ph.readout = [setpoint, limit, conductance_integral](
                   const std::vector<double>& theta, ControlPhase phase,
                   double& v, double& cur) {
    double j = conductance_integral(theta);
    if (phase == ControlPhase::current) {
      cur = limit;
      v = limit * j;
    } else {
      v = setpoint;
      cur = setpoint / j;
    }
  };
  ph.switch_excess = [setpoint, limit, conductance_integral](
                         const std::vector<double>& theta) {
    return setpoint / conductance_integral(theta) - limit;
  };
  return ph;
}

}  // namespace

TransientResult solve_radial(const DimensionlessGroups& g,
                             const ControlSchedule& schedule,
                             const SpatialGrid& grid,
                             const SolverOptions& options) {
  ModelPhysics ph = radial_physics(g, schedule, grid);
  EngineConfig cfg{schedule.mode, schedule.current_limit};
  return integrate(ph, cfg, options);
}

TransientResult solve_axial(const DimensionlessGroups& g,
                            const ControlSchedule& schedule,
                            const SpatialGrid& grid,
                            const SolverOptions& options) {
  ModelPhysics ph = axial_like_physics(g.delta * g.delta, g.lambda, 0.0,
                                       g.alpha, schedule, grid);
  EngineConfig cfg{schedule.mode, schedule.current_limit};
  return integrate(ph, cfg, options);
}

TransientResult solve_high_aspect(const HighAspectGroups& ha,
                                  const ControlSchedule& schedule,
                                  const SpatialGrid& grid,
                                  const SolverOptions& options) {
  if (ha.Lambda < 0 || ha.B < 0)
    throw ValidationError("Lambda", "high-aspect groups must be nonnegative");
  ModelPhysics ph = axial_like_physics(1.0, ha.Lambda, ha.B, ha.alpha,
                                       schedule, grid);
  EngineConfig cfg{schedule.mode, schedule.current_limit};
  return integrate(ph, cfg, options);
}

TransientResult solve_lumped(const DimensionlessGroups& g,
                             const ControlSchedule& schedule,
                             const SolverOptions& options) {
  schedule.validate();
  ModelPhysics ph;
  ph.n = 1;
  ph.coords = {0.0};
  ph.pinned.assign(1, 0);
  ph.L_sub.assign(1, 0);
  ph.L_sup.assign(1, 0);
  // Linear cooling 2 (beta + delta^2 alpha) theta.
  const double cool = 2 * (g.beta + g.delta * g.delta * g.alpha);
  ph.L_diag.assign(1, -cool);
  const double lambda = g.lambda;
  const double limit = schedule.current_limit;

  // The defining balance fixes a unit source voltage; the heating law is
  // lambda min(e^theta, curlyI^2 e^-theta), phase-resolved so the implicit
  // solver sees a smooth branch on either side of the crossing.
  ph.source = [lambda, limit](const std::vector<double>& theta,
                              ControlPhase phase, std::vector<double>& s,
                              std::vector<double>& ds) {
    if (phase == ControlPhase::current) {
      s[0] = lambda * limit * limit * std::exp(std::min(-theta[0], 700.0));
      ds[0] = -s[0];
    } else {
      s[0] = lambda * std::exp(std::min(theta[0], 700.0));
      ds[0] = s[0];
    }
  };
  ph.readout = [limit](const std::vector<double>& theta, ControlPhase,
                       double& v, double& cur) {
    double e = std::exp(std::min(theta[0], 700.0));
    cur = std::min(e, limit);
    v = std::isfinite(limit) ? std::min(1.0, limit / e) : 1.0;
  };
  ph.switch_excess = [limit](const std::vector<double>& theta) {
    return std::exp(std::min(theta[0], 700.0)) - limit;
  };
  EngineConfig cfg{schedule.mode, schedule.current_limit};
  return integrate(ph, cfg, options);
}

}  // namespace flash
