#pragma once

#include <utility>
#include <vector>

#include "retorsion/zeta.hpp"

namespace retorsion {

enum class CohFlavor { absolute, relative, l2_reduced };

struct CohomologyProfile {
    std::vector<std::pair<int, int>> dims;  // (degree, dimension)
    CohFlavor flavor = CohFlavor::absolute;
    int rank = 1;
};

// Dimensions along an exact chain of finite-dimensional spaces.
struct ExactSequence {
    std::vector<int> dims;
};

bool alternating_sum_check(const ExactSequence& seq);

struct ThetaDims {
    int h1 = 0;
    int h_top_minus_1 = 0;
    std::vector<int> middle;  // degrees 2 .. m-2
};

// End-of-sequence arithmetic for the interpolating complex: degree 0 is
// pinned to the bundle rank on a connected base, the top degree is supplied,
// and everything between follows from the two six-term sequences plus the
// direct-sum splitting in the inner degrees.  rel_n and rel_k are indexed by
// degree 0..m, boundary by degree 0..m-1.
ThetaDims theta_dims(int m, int rank, int h0, int hm, const std::vector<int>& rel_n,
                     const std::vector<int>& rel_k, const std::vector<int>& boundary);

// 2^{chi/2} with chi = rank times the alternating dimension sum.
double chi_factor(const CohomologyProfile& boundary);

struct GluingReport {
    double torsion_glued = 0.0;
    double torsion_left = 0.0;   // relative half
    double torsion_right = 0.0;  // absolute half
    double glued = 0.0;          // torsion times fused element norm
    double left = 0.0;
    double right = 0.0;
    double chi_factor = 0.0;     // 2^{chi(boundary)/2}
    double ratio = 0.0;          // glued * chi_factor / (left * right)
    double tolerance = 0.0;
    ExactSequence sequence;      // dimensions along the cut sequence
    double det_circle = 0.0;     // zeta determinant of the glued circle
    double det_interval = 0.0;   // Dirichlet determinant of one half
};

// Cuts the circle of circumference 2L into two length-L intervals, one with
// relative and one with absolute conditions, fuses the determinant-line
// elements along the sequence of the cut, and compares the torsion norms.
GluingReport circle_gluing_check(double L, double tolerance = 1e-6);

}  // namespace retorsion
