#pragma once

#include <complex>
#include <functional>

namespace retorsion {

struct QuadResult {
    double value = 0.0;
    double error = 0.0; // estimated absolute error
    bool converged = false;
    int evaluations = 0;
};

struct QuadResultC {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    bool converged = false;
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod (7/15) on a finite interval. Endpoints are never
// evaluated, so integrable endpoint singularities are fine; the subdivision
// budget caps the work and the result reports the achieved error either way.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-12, double rel_tol = 1e-12, int max_intervals = 4000);

QuadResultC integrate_complex(const std::function<std::complex<double>(double)>& f, double a,
                              double b, double abs_tol = 1e-12, double rel_tol = 1e-12,
                              int max_intervals = 4000);

// Integral over (a, infinity) via the rational substitution x = a + u/(1-u).
QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double abs_tol = 1e-12, double rel_tol = 1e-12,
                                 int max_intervals = 4000);

} // namespace retorsion
