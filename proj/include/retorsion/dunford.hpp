#pragma once

#include "retorsion/spectra.hpp"

namespace retorsion {

struct DunfordResult {
    double value = 0.0;         // heat trace recovered from the contour
    double direct = 0.0;        // spectral sum over the same lines
    double rel_err = 0.0;
    double imag_residual = 0.0; // |Im| of the recovered trace, should be ~0
    int evaluations = 0;
};

// Heat trace in degree k through the nu-th resolvent power: a sector contour
// around [0, infinity) is traded for the spectral sum,
//   tr e^{-t Delta} = (nu-1)!/t^{nu-1} * 1/(2 pi i) int_Gamma e^{-tz} tr (Delta - z)^{-nu} dz,
// with Gamma running in from +inf e^{-i angle}, around the origin through the
// negative real axis, and back out to +inf e^{+i angle}. Zero modes sit inside
// the loop and are picked up automatically.
DunfordResult dunford_heat_trace(const SpectralModel& m, int k, double t, int nu,
                                 double angle = 0.7853981633974483, double tol = 1e-11);

} // namespace retorsion
