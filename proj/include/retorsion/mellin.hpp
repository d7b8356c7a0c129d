#pragma once

#include "retorsion/rational.hpp"

#include <vector>

namespace retorsion {

// Truncated Laurent series around a fixed point: sum of c[i] * u^(lo+i) where
// u = s - s0. Coefficient type is Rational for the symbolic layer and double
// for the numeric one.
template <typename T>
struct LaurentJet {
    int lo = 0;
    std::vector<T> coef;

    T at(int order) const {
        int i = order - lo;
        if (i < 0 || i >= static_cast<int>(coef.size())) return T(0);
        return coef[i];
    }
    int hi() const { return lo + static_cast<int>(coef.size()) - 1; }
};

LaurentJet<double> to_double_jet(const LaurentJet<Rational>& j);

// Multiply two double jets, truncating at order hi_cap.
LaurentJet<double> jet_mul(const LaurentJet<double>& a, const LaurentJet<double>& b, int hi_cap);
LaurentJet<double> jet_add(const LaurentJet<double>& a, const LaurentJet<double>& b);

// Finite sum of exact pole terms c / (s - p)^m over the rationals. Closed
// under addition, with a decidable zero test; this is where the half-line
// Mellin integrals of x^alpha log^k x live.
class PoleCombo {
public:
    struct Term {
        Rational p;  // pole location
        int m;       // order >= 1
        Rational c;  // coefficient
    };

    PoleCombo() = default;

    void add_term(const Rational& p, int m, const Rational& c);
    PoleCombo& operator+=(const PoleCombo& other);
    friend PoleCombo operator+(PoleCombo a, const PoleCombo& b) { return a += b; }

    void scale(const Rational& c);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Exact Laurent expansion around s0, orders lo..hi inclusive. Poles at s0
    // land in the principal part; other poles contribute analytic binomial
    // tails.
    LaurentJet<Rational> laurent_at(const Rational& s0, int lo, int hi) const;

    double eval(double s) const;

private:
    std::vector<Term> terms_; // sorted by (p, m), zero coefficients dropped
};

enum class MellinSide { unit, tail };

// Meromorphic continuation in s of the two half-line Mellin integrals of
// x^alpha log^k x:
//   unit: int_0^1   x^{alpha+s-1} log^k x dx = (-1)^k     k! / (s+alpha)^{k+1}
//   tail: int_1^inf x^{alpha+s-1} log^k x dx = (-1)^{k+1} k! / (s+alpha)^{k+1}
// valid a priori for Re(s) > -alpha resp. Re(s) < -alpha; the two continue to
// mirror-image rational functions.
PoleCombo mellin_term(const Rational& alpha, int k, MellinSide side);

// The unit and tail continuations sum to the zero rational function; this is
// the cancellation making every regularized integral of a pure power or
// power-log vanish. Checked exactly.
bool reg_int_zero_check(const Rational& alpha, int k);

// Value + local structure of a meromorphic function at one point: principal
// part coefficients (principal[i] multiplies (s-s0)^{-(i+1)}) and the first
// few regular Taylor coefficients.
struct MeromorphicValue {
    double location = 0.0;
    std::vector<double> principal;
    std::vector<double> regular;

    bool has_pole() const;
    double eval(double s) const;
};

} // namespace retorsion
