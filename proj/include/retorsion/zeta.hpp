#pragma once

#include "retorsion/mellin.hpp"
#include "retorsion/spectra.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace retorsion {

// Heat trace data feeding the zeta continuation: one-sided expansions of the
// full trace at both ends, plus the kernel dimension whose constant gets
// subtracted before the Mellin transform.
struct HeatTraceExpansion {
    Expansion short_time;  // End::zero
    Expansion long_time;   // End::infinity
    int kernel_dim = 0;
};

// The expansions a built-in model carries for one form degree.
HeatTraceExpansion heat_trace_data(const SpectralModel& m, int degree);

// Laurent data of zeta at s = 0: at most a simple pole (a log term in the
// trace produces one), then the regular value and derivative.
struct ZetaZeroJet {
    double pole = 0.0;
    double value = 0.0;
    double deriv = 0.0;
};

// Meromorphic continuation of sum m(lambda) lambda^{-s} built from the Mellin
// transform of the heat trace split at t = 1. Every expansion term continues
// to an exact rational pole term; the two remainder integrals converge on the
// strip the declared remainders reach. Construction does the numeric work
// (the two zero-jet integrals, run on separate slots when threads allow);
// the value object is immutable afterwards and safe to share.
class ZetaFn {
public:
    ZetaFn(ModelPtr m, int degree, double tol = 1e-11);
    ZetaFn(std::function<double(double)> trace, HeatTraceExpansion data, double tol = 1e-11);

    // Continued value. Throws domain_error within 1e-9 of a genuine pole and
    // outside the strip the declared remainders reach.
    double eval(double s) const;

    // Direct eigenvalue sum with the cutoff grown until the increment is
    // negligible. Model-backed instances only; needs s comfortably above
    // dim/2.
    double eval_dirichlet(double s, double tol = 1e-10) const;

    // Cross-check route: the first few eigenvalue lines summed exactly, the
    // remainder trace continued with a Taylor-adjusted short-time expansion.
    double eval_subtracted(double s, int head_lines = 6) const;

    const ZetaZeroJet& at_zero() const { return at_zero_; }

    // Poles of the continued zeta with exact-arithmetic principal parts;
    // locations where the 1/Gamma zero eats the Mellin pole are omitted.
    std::vector<MeromorphicValue> poles() const;

    int degree() const { return degree_; }
    int kernel_dim() const { return data_.kernel_dim; }

private:
    struct GPole {
        Rational p;
        int m = 1;
        double c = 0.0;
    };

    void build();
    double remainder0(double s) const;
    double remainder_inf(double s) const;

    ModelPtr model_;
    int degree_ = -1;
    std::function<double(double)> trace_;
    HeatTraceExpansion data_;
    double tol_ = 1e-11;
    std::vector<GPole> gpoles_;
    double r0_at0_ = 0.0;
    double rinf_at0_ = 0.0;
    ZetaZeroJet at_zero_;
};

ZetaFn zeta_continue(ModelPtr m, int degree);
std::pair<double, double> zeta_reg_at_zero(const ZetaFn& z);

struct DegreeZeta {
    int k = 0;
    double zeta0 = 0.0;
    double dzeta0 = 0.0;
    int betti = 0;
};

struct TorsionConvention {
    int sign = +1;
    std::string orientation = "even-degree determinant factors inverted";
};

struct TorsionResult {
    std::vector<DegreeZeta> per_degree;
    double logT = 0.0;
    TorsionConvention convention;
};

// log T = sign * 1/2 * sum_k (-1)^k k zeta_k'(0).
TorsionResult log_torsion(const ModelPtr& m);

// Square Gram matrix of the chosen harmonic representatives in one degree;
// an empty matrix marks a trivial slot.
using Gram = std::vector<std::vector<double>>;

struct DetLineElement {
    std::vector<Gram> gram;  // index = degree
};

// L2 norm of a determinant-line element: product over degrees of
// det(G_k)^{s_k / 2} with s_k = (-1)^{k+1}, so even-degree factors enter
// inverted. Throws on a singular or non-positive Gram determinant.
double det_line_l2_norm(const DetLineElement& e);

// Ray-Singer norm: T(M) times the L2 norm; an element with no Gram data
// (acyclic model, canonical trivialization) gets T itself.
double torsion_norm(const ModelPtr& m, const DetLineElement& e);

// Constant function and unit-integral 1-form on the circle of length L.
DetLineElement circle_topological_element(double L);

struct VanishingReport {
    std::vector<double> residuals;  // |sum_j (-1)^j j zeta_j(s)| per sample
    double deriv_combo = 0.0;       // same combination on zeta'(0)
};

// The alternating weighted zeta sum on an even-dimensional closed model,
// evaluated at the samples and differentiated at 0.
VanishingReport even_dim_vanishing(const ModelPtr& modelF, const std::vector<double>& s_samples);

// Regularized fibrewise cone trace in pure scaling form: degree k carries
// sum_l log_coeff[k][l] * log^l t and nothing else. A flat cone has every
// coefficient zero, the radial regularized integral of r^b having killed the
// whole density.
struct ConeTraceForm {
    int b = 1;                                     // link dimension
    std::vector<std::vector<Rational>> log_coeff;  // [degree][log power]
};

ConeTraceForm flat_cone(int b);

// Builds the scaling form from per-degree expansions, rejecting any term
// with a nonzero exponent. Coefficients must be rational to within 1e-12.
ConeTraceForm cone_form(int b, const std::vector<Expansion>& per_degree);

// Numeric route to the same vanishing: the radial regularized integral of
// r^b times the fibrewise coefficient, at time t.
double cone_numeric_trace(int b, int degree, double t);

struct WedgeReport {
    double logT = 0.0;
    bool cone_zetas_vanish = false;       // exact, per degree and log power
    bool harmonic_term_vanishes = false;  // the correction's shifted log powers
    std::vector<double> f_residuals;      // alternating zeta sums on the factor
    double f_deriv_combo = 0.0;
};

// Torsion of the model wedge over an even-dimensional factor: each piece of
// the alternating sum vanishes, the first two exactly in rational
// arithmetic, the third within the factor's zeta accuracy.
WedgeReport wedge_torsion(const ConeTraceForm& cone, const ModelPtr& modelF);

} // namespace retorsion
