#pragma once

#include "retorsion/mellin.hpp"

namespace retorsion {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Taylor coefficients of 1/Gamma at 0 (a_1 = 1, a_2 = gamma, ...), as a jet
// with lowest order 1. Built from the standard zeta-value recurrence.
LaurentJet<double> inv_gamma_jet(int nterms);

// Laurent jet of Gamma at 0: 1/s - gamma + (gamma^2/2 + pi^2/12) s - ...
LaurentJet<double> gamma_jet(int nterms);

// 1/Gamma(s) for real s; zero at the poles of Gamma.
double inv_gamma(double s);

// Hurwitz zeta sum_{n>=0} (n+a)^{-s} for a > 0, s != 1, continued by
// Euler-Maclaurin with the remainder controlled by the first omitted
// Bernoulli term. Serves as the independent ladder-spectrum oracle.
double hurwitz_zeta(double s, double a);

// d/ds at s=0 of the Hurwitz zeta: log Gamma(a) - log(2 pi)/2.
double hurwitz_zeta_deriv0(double a);

double riemann_zeta(double s);

// Digamma and trigamma by upward recurrence into the asymptotic window;
// defined away from the nonpositive integers.
double digamma(double x);
double trigamma(double x);

} // namespace retorsion
