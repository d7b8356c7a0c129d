#pragma once

#include "retorsion/expansion.hpp"
#include "retorsion/quadrature.hpp"

#include <vector>

namespace retorsion {

// Antiderivative of x^alpha log^k x with no integration constant:
//   alpha != -1: x^{alpha+1} sum_{j=0}^{k} (-1)^{k-j} (k!/j!) (alpha+1)^{-(k-j+1)} log^j x
//   alpha == -1: log^{k+1} x / (k+1)
// In both cases the finite part of its value vanishes at the relevant end,
// which is what makes the split-point bookkeeping below exact.
double power_log_antiderivative(const Rational& alpha, int k, double x);

struct RegIntResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
};

// Regularized integral over (0, infinity): the finite part at 0 of
// int_eps^split plus the finite part at infinity of int_split^R. Requires an
// integrable remainder at 0 (order > -1) and a decaying one at infinity
// (order < -1, or exponentially small). The result does not depend on the
// split point.
RegIntResult regularized_integral(const PhgSample& s, double split = 1.0, double tol = 1e-12);

struct RegLimit {
    double value = 0.0;              // constant term of the expansion
    std::vector<double> log_coeffs;  // coefficients of log^l, l = 1, 2, ...
    bool pure = true;                // true when all log coefficients vanish
};

// Constant term of an expansion at its end; in strict mode a nonzero log
// coefficient is an error rather than a report.
RegLimit regularized_limit(const Expansion& e, bool strict = false, double log_tol = 0.0);

PhgSample rescale_sample(const PhgSample& s, double lambda);

struct ChangeOfVarResult {
    double direct = 0.0;     // regularized integral of x -> f(lambda x)
    double predicted = 0.0;  // (base + sum_l c_l log^l lambda) / lambda
    double base = 0.0;       // regularized integral of f
    std::vector<double> c;   // c[l-1] = c_l
};

// Scaling rule for the regularized integral. Only x^{-1} log^k terms break
// naive invariance: each end contributes log^{k+1}(lambda)/(k+1) with
// opposite signs, so c_l = (b_l-1 - a_l-1)/l with a, b the x^{-1} log^{l-1}
// coefficients at 0 and infinity.
ChangeOfVarResult change_of_variable(const PhgSample& s, double lambda, double tol = 1e-12);

struct SigmaFP {
    double finite_part = 0.0;
    std::vector<double> principal; // principal[i] multiplies sigma^{-(i+1)}
    double error = 0.0;
};

// Finite part at sigma = 0 of int_0^1 x^sigma f(x) dx.
SigmaFP sigma_finite_part(const PhgSample& s, double tol = 1e-12);

struct FitResult {
    std::vector<double> coeffs;
    double condition = 0.0;
    double residual = 0.0; // rms residual over rms data
};

// Least-squares fit of y ~ sum_i c_i x^{alpha_i} log^{k_i} x on given nodes.
// Degenerate bases (duplicate exponents, more terms than nodes) are rejected.
FitResult fit_expansion(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<std::pair<Rational, int>>& basis);

// Independent route to the sigma finite part: evaluate T(eps) = int_eps^1 f
// numerically on a geometric ladder, fit the epsilon-expansion implied by the
// declared terms, and take its regularized limit.
RegLimit epsilon_limit_path(const PhgSample& s, double eps0 = 1e-2, double ratio = 0.5,
                            int ladder = 12, double tol = 1e-12);

} // namespace retorsion
