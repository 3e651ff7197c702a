#include "flash/steady.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "numerics.hpp"

namespace flash {

namespace {

constexpr int kScanPoints = 10000;   // bracket-location grid size
constexpr double kRootTol = 1e-12;   // relative bisection tolerance
constexpr double kMaxTol = 1e-10;    // relative golden-section tolerance

// Radial states are parametrized by s = -ln c on (0, 2/beta); the upper end
// is where the profile loses positivity (c = b).
double radial_voltage_forcing(double s, double beta) {
  return 4 * beta * s * std::exp(-2 * s) * (1 - 0.5 * beta * s);
}

// log of the current-control forcing 4 beta s e^{2s} / (1 - beta s / 2),
// which overflows in direct form well inside the admissible s range.
double radial_current_log_forcing(double s, double beta) {
  return std::log(4 * beta * s) + 2 * s - std::log(1 - 0.5 * beta * s);
}

RadialSteadyState make_radial(double s, double beta, double forcing,
                              SteadyBranch branch) {
  RadialSteadyState st;
  st.c = std::exp(-s);
  st.b = 0.5 * beta * st.c * s;
  st.beta = beta;
  st.forcing = forcing;
  st.branch = branch;
  return st;
}

// Axial states are parametrized by the interior amplitude a on (0, pi).
double axial_b(double a, double alpha) {
  if (std::isinf(alpha)) return 0.0;
  return (2 * a / alpha) * std::tan(0.5 * a);
}

double axial_voltage_forcing(double a, double alpha) {
  double sh = std::sin(0.5 * a);
  return 8 * std::exp(-axial_b(a, alpha)) * sh * sh;
}

double axial_current_log_forcing(double a, double alpha) {
  return std::log(2 * a * a) + axial_b(a, alpha) -
         2 * std::log(std::cos(0.5 * a));
}

AxialSteadyState make_axial(double a, double alpha, double forcing,
                            SteadyBranch branch) {
  AxialSteadyState st;
  st.a = a;
  st.b = axial_b(a, alpha);
  st.alpha = alpha;
  st.forcing = forcing;
  st.branch = branch;
  return st;
}

// Shared bracket-scan: locates every sign change of f on a uniform grid over
// (lo, hi) and bisects each to kRootTol. Endpoints are approached but never
// evaluated exactly (the parametrizations degenerate there).
template <class F>
std::vector<double> scan_roots(F&& f, double lo, double hi) {
  std::vector<double> roots;
  double prev_x = lo + (hi - lo) * (1.0 / kScanPoints) * 1e-6;
  double prev_f = f(prev_x);
  for (int i = 1; i <= kScanPoints; ++i) {
    double x = lo + (hi - lo) * (static_cast<double>(i) / kScanPoints);
    if (i == kScanPoints) x = hi - (hi - lo) * 1e-12;
    double fx = f(x);
    if (prev_f == 0) {
      roots.push_back(prev_x);
    } else if ((prev_f > 0) != (fx > 0)) {
      roots.push_back(num::bisect(f, prev_x, x, prev_f, fx, kRootTol));
    }
    prev_x = x;
    prev_f = fx;
  }
  if (prev_f == 0) roots.push_back(prev_x);
  return roots;
}

}  // namespace

double radial_critical_lambda(double beta) {
  if (beta < 0) throw ValidationError("beta", "must be nonnegative");
  if (beta == 0) return 0.0;  // pure insulation: no steady state for lambda > 0
  double s_max = 2.0 / beta;
  double s_star = num::golden_max(
      [beta](double s) { return radial_voltage_forcing(s, beta); }, 0.0, s_max,
      kMaxTol);
  return radial_voltage_forcing(s_star, beta);
}

std::vector<RadialSteadyState> radial_steady_voltage(double lambda,
                                                     double beta) {
  if (lambda < 0) throw ValidationError("lambda", "must be nonnegative");
  if (beta < 0) throw ValidationError("beta", "must be nonnegative");
  if (lambda == 0)
    return {make_radial(0.0, beta, 0.0, SteadyBranch::stable)};
  if (beta == 0) return {};  // no steady state for any positive heating
  double s_max = 2.0 / beta;
  auto f = [lambda, beta](double s) {
    return radial_voltage_forcing(s, beta) - lambda;
  };
  std::vector<double> roots = scan_roots(f, 0.0, s_max);
  std::sort(roots.begin(), roots.end());
  std::vector<RadialSteadyState> out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    SteadyBranch branch = (i == 0) ? SteadyBranch::stable
                                   : SteadyBranch::unstable;
    out.push_back(make_radial(roots[i], beta, lambda, branch));
  }
  return out;
}

RadialSteadyState radial_steady_current(double lambda_I2, double beta) {
  if (!(lambda_I2 > 0))
    throw ValidationError("lambdaI2", "must be strictly positive");
  if (!(beta > 0))
    throw ValidationError(
        "beta", "must be strictly positive: an insulated surface admits no "
                "current-controlled steady state");
  double s_max = 2.0 / beta;
  double target = std::log(lambda_I2);
  auto f = [beta, target](double s) {
    return radial_current_log_forcing(s, beta) - target;
  };
  // The relation is monotone increasing in s; verify while bracketing.
  std::vector<double> roots = scan_roots(f, 0.0, s_max);
  if (roots.size() != 1)
    throw SolverError(
        "current-control relation did not cross the target exactly once");
  return make_radial(roots[0], beta, lambda_I2,
                     SteadyBranch::current_controlled);
}

double axial_critical_lambda(double alpha) {
  if (alpha < 0) throw ValidationError("alpha", "must be nonnegative");
  if (alpha == 0) return 0.0;  // insulated ends: no steady state
  double a_star = num::golden_max(
      [alpha](double a) { return axial_voltage_forcing(a, alpha); }, 0.0,
      std::numbers::pi, kMaxTol);
  return axial_voltage_forcing(a_star, alpha);
}

std::vector<AxialSteadyState> axial_steady_voltage(double Lambda,
                                                   double alpha) {
  if (Lambda < 0) throw ValidationError("Lambda", "must be nonnegative");
  if (alpha < 0) throw ValidationError("alpha", "must be nonnegative");
  if (Lambda == 0)
    return {make_axial(0.0, alpha, 0.0, SteadyBranch::stable)};
  if (alpha == 0) return {};  // insulated ends: no steady state
  auto f = [Lambda, alpha](double a) {
    return axial_voltage_forcing(a, alpha) - Lambda;
  };
  std::vector<double> roots = scan_roots(f, 0.0, std::numbers::pi);
  std::sort(roots.begin(), roots.end());
  std::vector<AxialSteadyState> out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    SteadyBranch branch = (i == 0) ? SteadyBranch::stable
                                   : SteadyBranch::unstable;
    out.push_back(make_axial(roots[i], alpha, Lambda, branch));
  }
  return out;
}

AxialSteadyState axial_steady_current(double Lambda_I2, double alpha) {
  if (!(Lambda_I2 > 0))
    throw ValidationError("LambdaI2", "must be strictly positive");
  if (!(alpha > 0))
    throw ValidationError(
        "alpha", "must be strictly positive (or infinite): insulated ends "
                 "admit no current-controlled steady state");
  double target = std::log(Lambda_I2);
  auto f = [alpha, target](double a) {
    return axial_current_log_forcing(a, alpha) - target;
  };
  std::vector<double> roots = scan_roots(f, 0.0, std::numbers::pi);
  if (roots.size() != 1)
    throw SolverError(
        "current-control relation did not cross the target exactly once");
  return make_axial(roots[0], alpha, Lambda_I2,
                    SteadyBranch::current_controlled);
}

std::vector<double> evaluate_profile(const RadialSteadyState& s,
                                     const std::vector<double>& r) {
  std::vector<double> theta(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] >= 0 && r[i] <= 1))
      throw ValidationError("coords", "radial coordinates must lie in [0,1]");
    theta[i] = -2 * std::log(s.c - s.b + s.b * r[i] * r[i]);
  }
  return theta;
}

std::vector<double> evaluate_profile(const AxialSteadyState& s,
                                     const std::vector<double>& z) {
  std::vector<double> theta(z.size());
  double cos_half = std::cos(0.5 * s.a);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!(z[i] >= -0.5 && z[i] <= 0.5))
      throw ValidationError("coords",
                            "axial coordinates must lie in [-1/2,1/2]");
    theta[i] = 2 * std::log(std::cos(s.a * z[i]) / cos_half) + s.b;
  }
  return theta;
}

LumpedCriterion lumped_flash_criterion(const DimensionlessGroups& g) {
  LumpedCriterion crit;
  crit.threshold =
      (2.0 / std::numbers::e) * (g.beta + g.delta * g.delta * g.alpha);
  crit.margin = g.lambda - crit.threshold;
  crit.flash = g.lambda > crit.threshold;
  return crit;
}

namespace {

// One steady slender-rod solution at center amplitude m: finds the local
// forcing mu = Lambda / J^2 for which the half-rod shoot from theta(0) = m,
// theta'(0) = 0 meets the end condition, together with the current integral
// J = int exp(-theta) dz. mu does not depend on J because only the combined
// coefficient mu multiplies the source; the damped fixed point below then
// settles J itself.
struct ShotResult {
  double mu = 0;
  double J = 0;
};

ShotResult shoot_amplitude(double m, double alpha, double B) {
  const bool pinned = std::isinf(alpha);
  // State: (theta, theta', accumulated int exp(-theta)). The exponent is
  // clamped because theta dives steeply negative for overshooting mu during
  // bracket expansion; the probe only needs the sign of the mismatch there.
  auto end_mismatch = [&](double mu, double* J_out) -> double {
    auto f = [B, mu](double, const std::array<double, 3>& y,
                     std::array<double, 3>& dy) {
      double e = std::exp(std::min(-y[0], 700.0));
      dy[0] = y[1];
      dy[1] = B * y[0] - mu * e;
      dy[2] = e;
    };
    std::array<double, 3> y0{m, 0.0, 0.0};
    std::array<double, 3> y1;
    try {
      y1 = num::integrate_rk45<3>(f, 0.0, 0.5, y0, 1e-12, 1e-14);
    } catch (const SolverError&) {
      // Step underflow happens only on the steep blow-down side.
      return -1e300;
    }
    if (J_out) *J_out = 2 * y1[2];
    if (pinned) return y1[0];
    return y1[1] + alpha * y1[0];
  };

  double g0 = end_mismatch(0.0, nullptr);
  if (!(g0 > 0))
    throw SolverError("shooting end condition not positive at zero forcing");
  double mu_hi = std::max(1.0, B * (m + 1));
  double g_hi = end_mismatch(mu_hi, nullptr);
  int guard = 0;
  while (g_hi >= 0) {
    mu_hi *= 2;
    g_hi = end_mismatch(mu_hi, nullptr);
    if (++guard > 200)
      throw SolverError("shooting forcing bracket did not close");
  }
  double mu = num::bisect([&](double x) { return end_mismatch(x, nullptr); },
                          0.0, mu_hi, g0, g_hi, kRootTol);
  ShotResult r;
  r.mu = mu;
  end_mismatch(mu, &r.J);
  return r;
}

// Lambda(m) via the documented inner iteration: shoot at amplitude m, then
// relax the nonlocal integral by the damped fixed point
// J_{k+1} = (J_k + J_hat) / 2 to 1e-10 (at most 200 passes). The shot value
// J_hat is invariant across passes (see shoot_amplitude), so the iteration
// is a scalar relaxation onto it; it is still run literally so that a
// non-contracting configuration surfaces as a failure rather than silently.
double high_aspect_forcing(double m, double alpha, double B, double* J_state) {
  ShotResult shot = shoot_amplitude(m, alpha, B);
  double J = (*J_state > 0) ? *J_state : 1.0;
  bool converged = false;
  for (int k = 0; k < 200; ++k) {
    double J_next = 0.5 * J + 0.5 * shot.J;
    bool done = std::abs(J_next - J) <= 1e-10 * std::max(1.0, std::abs(J_next));
    J = J_next;
    if (done) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw SolverError("nonlocal integral iteration did not converge");
  *J_state = J;
  return shot.mu * J * J;
}

}  // namespace

double high_aspect_critical(double alpha, double B) {
  if (alpha < 0) throw ValidationError("alpha", "must be nonnegative");
  if (B < 0) throw ValidationError("B", "must be nonnegative");
  if (alpha == 0 && B == 0) return 0.0;  // no cooling path: no steady state

  // Trace Lambda over center amplitudes on a log grid; the fold sits at
  // moderate amplitude, so the scan stops once the trace has decayed well
  // past its peak (the large-m tail has an exp(-m/2)-thin end layer that
  // costs effort and cannot contain the maximum).
  const double m_lo = 1e-3, m_hi = 30.0;
  const int n_scan = 140;
  double J_state = -1.0;
  double best_lambda = 0, best_log_m = std::log(m_lo);
  double last_converged = 0;
  int best_index = -1;
  std::vector<double> log_ms, lambdas;
  for (int i = 0; i < n_scan; ++i) {
    double lm = std::log(m_lo) +
                (std::log(m_hi) - std::log(m_lo)) * i / (n_scan - 1.0);
    double lam;
    try {
      lam = high_aspect_forcing(std::exp(lm), alpha, B, &J_state);
    } catch (const SolverError& e) {
      throw ContinuationError(
          std::string("amplitude continuation failed: ") + e.what(),
          last_converged);
    }
    log_ms.push_back(lm);
    lambdas.push_back(lam);
    last_converged = std::max(last_converged, lam);
    if (lam > best_lambda) {
      best_lambda = lam;
      best_log_m = lm;
      best_index = i;
    }
    if (best_index >= 0 && static_cast<int>(lambdas.size()) - 1 > best_index &&
        lam < best_lambda / 100)
      break;
  }

  // Refine around the grid maximum.
  double lo = best_log_m, hi = best_log_m;
  for (std::size_t i = 0; i < log_ms.size(); ++i) {
    if (lambdas[i] == best_lambda) {
      lo = (i == 0) ? log_ms[0] : log_ms[i - 1];
      hi = (i + 1 < log_ms.size()) ? log_ms[i + 1] : log_ms[i];
      break;
    }
  }
  try {
    double lm_star = num::golden_max(
        [&](double lm) {
          return high_aspect_forcing(std::exp(lm), alpha, B, &J_state);
        },
        lo, hi, kMaxTol);
    return high_aspect_forcing(std::exp(lm_star), alpha, B, &J_state);
  } catch (const SolverError& e) {
    throw ContinuationError(
        std::string("amplitude refinement failed: ") + e.what(),
        last_converged);
  }
}

}  // namespace flash
