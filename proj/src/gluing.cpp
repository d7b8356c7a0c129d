#include "retorsion/gluing.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "retorsion/quadrature.hpp"
#include "retorsion/spectra.hpp"

namespace retorsion {

bool alternating_sum_check(const ExactSequence& seq) {
    long sum = 0;
    int sign = 1;
    for (int d : seq.dims) {
        if (d < 0) throw std::invalid_argument("negative dimension in exact sequence");
        sum += sign * static_cast<long>(d);
        sign = -sign;
    }
    return sum == 0;
}

ThetaDims theta_dims(int m, int rank, int h0, int hm, const std::vector<int>& rel_n,
                     const std::vector<int>& rel_k, const std::vector<int>& boundary) {
    if (m < 3) throw std::invalid_argument("end formulas need dimension at least 3");
    if (rank < 1) throw std::invalid_argument("bundle rank must be positive");
    if (hm < 0) throw std::invalid_argument("negative input dimension");
    if (h0 != rank)
        throw std::invalid_argument("degree zero is pinned to the rank on a connected base");
    auto at = [](const std::vector<int>& v, int k) {
        if (k < 0 || k >= static_cast<int>(v.size())) return 0;
        int d = v[static_cast<std::size_t>(k)];
        if (d < 0) throw std::invalid_argument("negative input dimension");
        return d;
    };
    ThetaDims out;
    out.h1 = h0 - at(rel_n, 0) - at(rel_k, 0) - at(boundary, 0) + at(rel_n, 1) + at(rel_k, 1);
    out.h_top_minus_1 = hm - at(rel_n, m) - at(rel_k, m) + at(boundary, m - 1) +
                        at(rel_n, m - 1) + at(rel_k, m - 1);
    if (out.h1 < 0 || out.h_top_minus_1 < 0)
        throw std::invalid_argument("inconsistent cohomology input");
    for (int k = 2; k <= m - 2; ++k) out.middle.push_back(at(rel_n, k) + at(rel_k, k));
    return out;
}

double chi_factor(const CohomologyProfile& boundary) {
    if (boundary.rank < 1) throw std::invalid_argument("bundle rank must be positive");
    long chi = 0;
    for (const auto& [k, d] : boundary.dims) {
        if (d < 0) throw std::invalid_argument("negative dimension in profile");
        chi += ((k % 2 == 0) ? 1 : -1) * static_cast<long>(d);
    }
    chi *= boundary.rank;
    return std::pow(2.0, 0.5 * static_cast<double>(chi));
}

GluingReport circle_gluing_check(double L, double tolerance) {
    if (L <= 0.0) throw std::invalid_argument("interval length must be positive");
    if (tolerance <= 0.0) throw std::invalid_argument("tolerance must be positive");

    auto circle = make_circle(2.0 * L);
    auto half_rel = make_interval(L, IntervalBC::relative);
    auto half_abs = make_interval(L, IntervalBC::absolute);

    GluingReport r;
    r.tolerance = tolerance;
    r.torsion_glued = std::exp(log_torsion(circle).logT);
    r.torsion_left = std::exp(log_torsion(half_rel).logT);
    r.torsion_right = std::exp(log_torsion(half_abs).logT);

    // Sequence of the cut; every space is at most a line.  The restriction
    // to the absolute half and the extension from the relative half are
    // isomorphisms, the connecting map vanishes because both endpoints of
    // the relative half meet the same piece.
    r.sequence.dims = {0,
                       circle->betti(0),
                       half_abs->betti(0),
                       half_rel->betti(1),
                       circle->betti(1),
                       0};
    if (!alternating_sum_check(r.sequence))
        throw std::logic_error("cut sequence fails the alternating dimension sum");

    // Gram entries of the harmonic representatives, from quadrature rather
    // than by hand: constants on each piece, the unit-period one-form on the
    // relative half, and its image of total period one on the circle.
    double len = 2.0 * L;
    auto unit = [](double) { return 1.0; };
    auto density_circle = [len](double) { return 1.0 / (len * len); };
    auto density_rel = [L](double) { return 1.0 / (L * L); };
    double g_circle0 = integrate(unit, 0.0, len).value;
    double g_circle1 = integrate(density_circle, 0.0, len).value;
    double g_rel1 = integrate(density_rel, 0.0, L).value;
    double g_abs0 = integrate(unit, 0.0, L).value;

    DetLineElement fused{{{{g_circle0}}, {{g_circle1}}}};
    DetLineElement left_elem{{{}, {{g_rel1}}}};
    DetLineElement right_elem{{{{g_abs0}}}};

    r.glued = r.torsion_glued * det_line_l2_norm(fused);
    r.left = r.torsion_left * det_line_l2_norm(left_elem);
    r.right = r.torsion_right * det_line_l2_norm(right_elem);

    CohomologyProfile boundary{{{0, 2}}, CohFlavor::absolute, 1};
    r.chi_factor = chi_factor(boundary);
    r.ratio = r.glued * r.chi_factor / (r.left * r.right);

    r.det_circle = std::exp(-ZetaFn(circle, 0).at_zero().deriv);
    r.det_interval = std::exp(-ZetaFn(half_rel, 0).at_zero().deriv);
    return r;
}

}  // namespace retorsion
