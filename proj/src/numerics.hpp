#pragma once

// Small numerical kernels shared by the library internals. Everything here
// is deterministic and allocation-light; nothing is exported.

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "flash/types.hpp"

namespace flash::num {

// Root of f on [lo, hi] by bisection. Requires f(lo) and f(hi) of opposite
// sign (zero counts as either). Converges to rel_tol on the bracket width
// relative to the midpoint magnitude (absolute near zero).
template <class F>
double bisect(F&& f, double lo, double hi, double f_lo, double f_hi,
              double rel_tol = 1e-12, int max_iter = 200) {
  if (f_lo == 0) return lo;
  if (f_hi == 0) return hi;
  if ((f_lo > 0) == (f_hi > 0))
    throw SolverError("bisection bracket does not change sign");
  for (int i = 0; i < max_iter; ++i) {
    double mid = 0.5 * (lo + hi);
    double f_mid = f(mid);
    if (f_mid == 0) return mid;
    if ((f_mid > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= rel_tol * (std::abs(mid) + 1e-300)) break;
  }
  return 0.5 * (lo + hi);
}

template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol = 1e-12,
              int max_iter = 200) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  return bisect(std::forward<F>(f), lo, hi, f_lo, f_hi, rel_tol, max_iter);
}

// Location of the maximum of a unimodal f on [lo, hi] by golden-section
// search, to rel_tol on the interval width.
template <class F>
double golden_max(F&& f, double lo, double hi, double rel_tol = 1e-10,
                  int max_iter = 400) {
  const double inv_phi = 0.6180339887498948482;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < max_iter; ++i) {
    if (hi - lo <= rel_tol * (std::abs(lo) + std::abs(hi) + 1e-300)) break;
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

// In-place Thomas algorithm for a tridiagonal system. sub[0] and sup[n-1]
// are ignored. diag and rhs are overwritten; the solution lands in rhs.
inline void solve_tridiagonal(std::vector<double>& sub, std::vector<double>& diag,
                              std::vector<double>& sup, std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
  }
}

// Trapezoid rule on a uniform grid with node values v and spacing h.
inline double trapezoid(const std::vector<double>& v, double h) {
  double s = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
  return s * h;
}

// Trapezoid rule for int f(r) r dr on the uniform radial grid r_i = i h.
template <class F>
double trapezoid_radial(F&& f, const std::vector<double>& theta, double h) {
  const std::size_t n = theta.size();
  double s = 0.5 * (n - 1) * h * f(theta.back());  // r = 1 end; axis term is 0
  for (std::size_t i = 1; i + 1 < n; ++i) s += i * h * f(theta[i]);
  return s * h;
}

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems,
// used by the steady-state shooting solver. Integrates y' = f(x, y) from
// x0 to x1 with per-step error control; calls back after each accepted step.
template <std::size_t N, class F>
std::array<double, N> integrate_rk45(F&& f, double x0, double x1,
                                     std::array<double, N> y, double rel_tol,
                                     double abs_tol) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double dir = (x1 >= x0) ? 1.0 : -1.0;
  double x = x0;
  double h = dir * std::min(std::abs(x1 - x0), 1e-2);
  std::array<double, N> k1, k2, k3, k4, k5, k6, k7, yt, y5;
  f(x, y, k1);
  int guard = 0;
  while (dir * (x1 - x) > 0) {
    if (++guard > 1000000)
      throw SolverError("shooting integrator exceeded step budget");
    if (dir * (x + h - x1) > 0) h = x1 - x;
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * a21 * k1[i];
    f(x + c2 * h, yt, k2);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(x + c3 * h, yt, k3);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(x + c4 * h, yt, k4);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(x + c5 * h, yt, k5);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                          a64 * k4[i] + a65 * k5[i]);
    f(x + h, yt, k6);
    for (std::size_t i = 0; i < N; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                          b6 * k6[i]);
    f(x + h, y5, k7);
    double err = 0;
    for (std::size_t i = 0; i < N; ++i) {
      double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                      e6 * k6[i] + e7 * k7[i]);
      double w = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err += (e / w) * (e / w);
    }
    err = std::sqrt(err / N);
    if (err <= 1.0) {
      x += h;
      y = y5;
      k1 = k7;  // first-same-as-last
    }
    double scale = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    scale = std::min(5.0, std::max(0.2, scale));
    h *= scale;
    if (std::abs(h) < 1e-15 * (std::abs(x) + 1))
      throw SolverError("shooting integrator step underflow");
  }
  return y;
}

}  // namespace flash::num
