#pragma once

#include "retorsion/expansion.hpp"

#include <memory>
#include <string>
#include <vector>

namespace retorsion {

// One eigenvalue line: lambda with its multiplicity.
struct EigenLine {
    double lambda = 0.0;
    int mult = 0;
};

// A model geometry with explicitly known Hodge Laplacian spectra. Heat traces
// include the zero modes; eigenvalues() lists the nonzero spectrum only.
class SpectralModel {
public:
    virtual ~SpectralModel() = default;

    virtual std::string name() const = 0;
    virtual int dim() const = 0;
    virtual int betti(int k) const = 0;
    virtual std::vector<EigenLine> eigenvalues(int k, double below) const = 0;
    virtual double heat_trace(int k, double t) const = 0;
    // Expansion of heat_trace(k, .) as t -> 0.
    virtual Expansion short_time(int k) const = 0;

    double volume() const { return volume_; }
    double heat_trace_nonzero(int k, double t) const { return heat_trace(k, t) - betti(k); }
    int euler_char() const;
    // Smallest nonzero eigenvalue across a degree (doubling search).
    double spectral_gap(int k) const;

protected:
    double volume_ = 1.0;
};

using ModelPtr = std::shared_ptr<const SpectralModel>;

enum class IntervalBC { relative, absolute };

ModelPtr make_point();
ModelPtr make_circle(double length, double holonomy = 0.0);
ModelPtr make_interval(double length, IntervalBC bc);
ModelPtr make_torus(const std::vector<double>& lengths);
ModelPtr make_product(ModelPtr a, ModelPtr b);
// Explicit finite spectrum: nonzero lines per degree plus kernel dimensions.
ModelPtr make_truncated(std::vector<std::vector<EigenLine>> lines, std::vector<int> betti);

// Alternating heat-trace sums over form degrees.
double supertrace(const SpectralModel& m, double t);
double weighted_supertrace(const SpectralModel& m, double t);
double weighted_supertrace_nonzero(const SpectralModel& m, double t);

// Scalar heat sums on the circle and the interval, Poisson-switched so both
// regimes cost a handful of terms.
double circle_scalar_trace(double length, double holonomy, double t);
double dirichlet_trace(double length, double t);
double neumann_trace(double length, double t);

// Merge nearby lines and sort; `below` trims the result.
std::vector<EigenLine> merge_lines(std::vector<EigenLine> lines, double below);
// All sums a + b below the cutoff, with zero lines passed through explicitly.
std::vector<EigenLine> convolve_lines(const std::vector<EigenLine>& a,
                                      const std::vector<EigenLine>& b, double below);

// Gaussian heat kernel on R^n.
double free_heat_kernel(int n, double t, const std::vector<double>& x,
                        const std::vector<double>& y);
// Coefficient of the fibrewise cone trace on degree-k forms over a b-sphere
// link: binom(b+1, k) (4 pi)^{-(b+1)/2}.
double cone_trace_coefficient(int b, int k);

} // namespace retorsion
