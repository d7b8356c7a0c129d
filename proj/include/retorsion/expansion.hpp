#pragma once

#include "retorsion/rational.hpp"

#include <functional>
#include <vector>

namespace retorsion {

// One expansion term coeff * x^alpha log^k x with exact exponent.
struct ExpTerm {
    Rational alpha;
    int k = 0;
    double coeff = 0.0;
};

// One-sided asymptotic expansion of a function of x > 0.
//
// At End::zero the terms describe x -> 0+ and the remainder after stripping
// them is O(x^remainder_order); at End::infinity they describe x -> infinity
// with remainder O(x^remainder_order) (a negative order). exp_small marks
// remainders decaying faster than any power, in which case remainder_order
// only tags where the listed terms stop.
struct Expansion {
    enum class End { zero, infinity };

    End end = End::zero;
    std::vector<ExpTerm> terms;
    double remainder_order = 0.0;
    bool exp_small = false;

    Expansion() = default;
    Expansion(End e, std::vector<ExpTerm> ts, double rem, bool exp_decay = false);

    double main_part(double x) const;
    double coeff_at(const Rational& alpha, int k) const;
    int max_log_power_at(const Rational& alpha) const;
};

// A sampled function together with its declared expansions at both ends.
struct PhgSample {
    std::function<double(double)> f;
    Expansion at_zero;     // End::zero
    Expansion at_infinity; // End::infinity

    PhgSample() = default;
    PhgSample(std::function<double(double)> fn, Expansion z, Expansion inf);
};

// Checks |f - main_part| against the declared remainder order on a geometric
// grid toward the relevant end. Returns false when the measured decay falls
// short by more than `slack` orders.
bool validate_expansion(const std::function<double(double)>& f, const Expansion& e,
                        double slack = 0.5);

// Termwise algebra on expansions at the same end. Terms are merged; the
// remainder order of a product accounts for the cross terms.
Expansion expansion_add(const Expansion& a, const Expansion& b);
Expansion expansion_scaled(const Expansion& a, double c);
Expansion expansion_product(const Expansion& a, const Expansion& b);

} // namespace retorsion
