#pragma once

#include "retorsion/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace retorsion {

// One exponent/log-power pair (alpha, k): stands for x^alpha log^k(x).
// alpha may be complex with rational real and imaginary parts; k >= 0.
struct IndexTerm {
    Rational re;
    Rational im;
    int k = 0;

    friend bool operator==(const IndexTerm& a, const IndexTerm& b) {
        return a.re == b.re && a.im == b.im && a.k == b.k;
    }
    friend bool operator<(const IndexTerm& a, const IndexTerm& b) {
        if (a.re != b.re) return a.re < b.re;
        if (a.im != b.im) return a.im < b.im;
        return a.k < b.k;
    }
};

// Discrete index set, stored as a minimal generator list. The set it stands
// for is the closure of the generators under
//   (alpha, k)  ->  (alpha + l, k')   for l in N0, 0 <= k' <= k,
// so generators with larger real part or smaller log power are redundant.
// Membership is decidable (exactly) below the cutoff on Re(alpha); above it
// queries are refused rather than guessed.
class IndexSet {
public:
    static constexpr int kDefaultCutoff = 10;

    IndexSet() : cutoff_(kDefaultCutoff) {}
    explicit IndexSet(std::vector<IndexTerm> gens, int cutoff = kDefaultCutoff);

    static IndexSet empty(int cutoff = kDefaultCutoff) { return IndexSet({}, cutoff); }
    // N0 x {0}: nonnegative integers, no logs.
    static IndexSet smooth(int cutoff = kDefaultCutoff);
    static IndexSet single(Rational re, int k, int cutoff = kDefaultCutoff);

    const std::vector<IndexTerm>& generators() const { return gens_; }
    int cutoff() const { return cutoff_; }
    bool is_empty() const { return gens_.empty(); }

    // Exact membership in the closure; nullopt when Re(alpha) exceeds the
    // cutoff (undecidable from the stored data by design).
    std::optional<bool> contains(const IndexTerm& t) const;

    // All closure elements with Re(alpha) <= bound (bound <= cutoff enforced).
    std::vector<IndexTerm> enumerate_below(const Rational& bound) const;

    // E >= c: every Re(alpha) >= c and k == 0 whenever Re(alpha) == c.
    // E >  c: every Re(alpha) > c. Empty set satisfies every bound.
    bool check_bound(const Rational& c, bool strict) const;

    // Infimum of Re(alpha) over the set, plus whether a log power sits at it.
    // nullopt for the empty set.
    struct Inf {
        Rational value;
        bool log_at_inf;
    };
    std::optional<Inf> infimum() const;

    friend bool operator==(const IndexSet& a, const IndexSet& b) {
        return a.gens_ == b.gens_ && a.cutoff_ == b.cutoff_;
    }

    std::string str() const;
    static IndexSet parse(const std::string& text);

private:
    void normalize();

    std::vector<IndexTerm> gens_;
    int cutoff_;
};

// Plain union of the underlying sets.
IndexSet set_union(const IndexSet& a, const IndexSet& b);

// Extended union  E u_bar F = E u F u {(alpha, k+l+1) : (alpha,k) in E, (alpha,l) in F},
// taken over the closures (common alpha may only appear after closure).
IndexSet extended_union(const IndexSet& a, const IndexSet& b);

// {(alpha+beta, k+l)} over the two closures; empty operand gives empty sum.
IndexSet minkowski_sum(const IndexSet& a, const IndexSet& b);

// Minkowski sum with the single term (shift, 0).
IndexSet shift(const IndexSet& a, const Rational& by);

// Index family on the three boundary faces of the blown-up quadrant:
// (10) and (01) are the side faces, (11) the front face.
struct IndexTriple {
    IndexSet e10;
    IndexSet e11;
    IndexSet e01;
};

// Pushforward of a b-fibration integral with polyhomogeneous weight:
//   F10 = (E11 + E'10) u_bar E10
//   F11 = (E10 + E'01) u_bar (E11 + E'11)
//   F01 = (E01 + E'11) u_bar E'01
IndexTriple pushforward_triple(const IndexTriple& u, const IndexTriple& w);

// Index family of the cutoff weight 1_{x3 <= x2}: nothing at (10), smooth at
// the front face and at (01). (The log-power ceiling forced by the index-set
// axioms caps what an indicator can carry at these faces; all log powers at
// a fixed alpha would violate the per-exponent finiteness rule, so the
// weight is recorded with k = 0 throughout.)
IndexTriple indicator_weight_triple(int cutoff = IndexSet::kDefaultCutoff);

enum class Face { sc, zf, phif0, bf0, lb0, rb0 };

const char* face_name(Face f);

struct FaceBound {
    Rational c;
    bool strict = false; // false: ">= c", true: "> c"
};

// Stated lower bounds per face, plus (for the heat-trace construction) the
// assembled index sets behind them.
struct FaceBounds {
    std::vector<std::pair<Face, FaceBound>> bounds;

    const FaceBound* find(Face f) const;
};

// Resolvent-power index bounds for the sigma-th power of the resolvent on a
// phi-manifold with base dimension b >= 2:
//   sc >= 0, phif0 >= min{0, -2 sigma + (b+1)}, bf0 >= -2 sigma,
//   lb0, rb0 > -2 (sigma - 1), zf >= -2 sigma.
// sigma = 1 reduces to the resolvent bounds themselves.
FaceBounds resolvent_power_bounds(int sigma, int b);

struct HeatTraceBounds {
    FaceBounds stated;       // sc >= 0, zf >= 0, phif0 >= b+1
    IndexSet sc, zf, phif0;  // assembled sets, combined over contour pieces
    // Per-contribution breakdown (rays at infinity / arc / segments).
    IndexSet rays_sc, rays_zf, rays_phif0;
    IndexSet arc_sc, arc_zf, arc_phif0;
    IndexSet seg_sc, seg_zf, seg_phif0;
};

// Long-time heat-trace index bounds from the contour representation of
// e^{-t Delta} through the nu-th resolvent power. Inputs are the trace-level
// resolvent bounds sc >= 0, zf >= -2 nu, phif0 >= -2 nu + (b+1); the three
// contour pieces contribute
//   rays at infinity: exponentially decaying away from sc,
//   arc:              all faces shifted by 2 nu,
//   segments:         arc shifts plus the sc set transferred into phif0
//                     across the corner (codimension weight b+1),
// and the result is the face-wise combination. Requires nu >= 1, b >= 2.
HeatTraceBounds heat_trace_bounds(int nu, int b);

} // namespace retorsion
