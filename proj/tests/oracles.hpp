// Test-only numerical oracles, independent of the library's evaluation path:
// adaptive Simpson quadrature, a quadrature-based exponential integral, and
// direct integration of the two defining probabilities behind each hop CDF.

#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include "crnoma/analytic.hpp"
#include "crnoma/config.hpp"

namespace oracle {

inline double simpson_rec(const std::function<double(double)>& f, double a,
                          double b, double fa, double fm, double fb,
                          double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12, int depth = 48) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Ei(x) for x < 0 from the defining integral,
/// Ei(-a) = -e^-a * int_0^inf e^-s / (s + a) ds.
inline double ei_quadrature(double x) {
  const double a = -x;
  const double body = integrate(
      [a](double s) { return std::exp(-s) / (s + a); }, 0.0, 60.0, 1e-14);
  return -std::exp(-a) * body;
}

/// Direct integration of the cap-slack branch probability
/// Pr[G < Z*K_d + M_d + L, Y < Lam] for exponential G, Y, Z.
inline double delta_quadrature(const crnoma::AnalyticCoefficients& c) {
  const double y_mass =
      std::isinf(c.lambda_big) ? 1.0
                               : 1.0 - std::exp(-c.lambda_cap * c.lambda_big);
  // Substitution u = e^(-lambda_int * z).
  const double z_mass = integrate(
      [&](double u) {
        if (u <= 0.0) return 1.0;  // z -> inf
        const double z = -std::log(u) / c.lambda_int;
        double arg = c.l_csi + c.m_delta;
        if (c.k_delta > 0.0) arg += c.k_delta * z;
        return 1.0 - std::exp(-c.lambda_des * arg);
      },
      0.0, 1.0, 1e-11);
  return y_mass * z_mass;
}

/// Direct integration of the cap-bound branch probability
/// Pr[G < Z*Y*K_u + Y*M_u + L, Y > Lam].
inline double upsilon_quadrature(const crnoma::AnalyticCoefficients& c) {
  if (std::isinf(c.lambda_big)) return 0.0;
  const double head = std::exp(-c.lambda_cap * c.lambda_big);
  // u = e^(-lambda_int z), t = e^(-lambda_cap (y - Lam)).
  const double body = integrate(
      [&](double u) {
        const double z = u <= 0.0 ? std::numeric_limits<double>::infinity()
                                  : -std::log(u) / c.lambda_int;
        return integrate(
            [&](double t) {
              const double y =
                  t <= 0.0 ? std::numeric_limits<double>::infinity()
                           : c.lambda_big - std::log(t) / c.lambda_cap;
              double arg = c.l_csi;
              if (c.m_ups > 0.0) arg += c.m_ups * y;
              if (c.k_ups > 0.0 && z > 0.0) arg += c.k_ups * z * y;
              return 1.0 - std::exp(-c.lambda_des * arg);
            },
            0.0, 1.0, 1e-10, 30);
      },
      0.0, 1.0, 1e-9, 30);
  return head * body;
}

}  // namespace oracle
