#pragma once

namespace jsccplan {

/// First exponential integral E1(g) = integral_g^inf exp(-t)/t dt.
/// Series expansion below 1, continued fraction above; relative error
/// is within 1e-12 over [1e-6, 50]. Strictly decreasing, divergent at 0.
/// Throws std::domain_error for g <= 0.
double exp_integral_e1(double g);

/// E1(exp(x)). Unlike exp_integral_e1 this stays well defined when the
/// argument exp(x) would underflow a double (E1(e^x) ~ -x - gamma there).
double exp_integral_e1_of_log(double x);

/// Solves E1(d) = c for d by bisection in log space to relative tolerance
/// rel_tol on d. Returns ln(d). Throws std::domain_error for c <= 0.
double min_threshold_log(double c, double rel_tol = 1e-10);

/// Solves E1(d) = c for d. E1 is strictly decreasing and unbounded near 0,
/// so the solution exists and is unique; g >= d is equivalent to E1(g) <= c.
/// Results below the smallest normal double are clamped to it (the clamped
/// value still satisfies E1(d) <= c); use min_threshold_log for the exact
/// log-domain value in that extreme range.
double min_threshold(double c, double rel_tol = 1e-10);

}  // namespace jsccplan
