#pragma once

#include <functional>

namespace rhlab {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature on [a, b] with global
/// bisection of the worst interval until the summed error estimate drops
/// below max(rel_tol * |value|, abs_tol).
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol = 1e-10, double abs_tol = 0.0,
                              int max_intervals = 2000);

/// int_{u0}^{u1} (a + b s)^q s^{-kappa-1} ds for 0 <= u0 < u1, a, b >= 0 and
/// a + b s > 0 on the open interval. Closed forms when a = 0, b = 0, or q is a
/// small integer; adaptive quadrature otherwise. Returns +inf when the
/// integral diverges at u0 = 0.
double power_piece_integral(double a, double b, double q, double kappa, double u0, double u1,
                            double rel_tol = 1e-10);

/// int_{u0}^{u1} s^e ds, computed without cancellation for u1 close to u0.
double power_integral(double e, double u0, double u1);

}  // namespace rhlab
