#include "retorsion/dunford.hpp"

#include "retorsion/quadrature.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace retorsion {

DunfordResult dunford_heat_trace(const SpectralModel& m, int k, double t, int nu, double angle,
                                 double tol) {
    if (t <= 0.0) throw std::invalid_argument("need t > 0");
    if (nu < 1) throw std::invalid_argument("need nu >= 1");
    if (!(angle > 0.0 && angle < M_PI / 2.0))
        throw std::invalid_argument("sector angle must lie in (0, pi/2)");

    const double cutoff = 46.0 / t;
    auto lines = m.eigenvalues(k, cutoff);
    int b = m.betti(k);
    if (b > 0) lines.insert(lines.begin(), EigenLine{0.0, b});
    if (lines.empty()) return DunfordResult{0.0, 0.0, 0.0, 0.0, 0};

    double direct = 0.0;
    double gap = 0.0;
    for (const auto& l : lines) {
        direct += l.mult * std::exp(-t * l.lambda);
        if (gap == 0.0 && l.lambda > 1e-12) gap = l.lambda;
    }

    using C = std::complex<double>;
    auto resolvent_pow = [&](C z) {
        C s{0.0, 0.0};
        for (const auto& l : lines) s += static_cast<double>(l.mult) * std::pow(C(l.lambda) - z, -nu);
        return s;
    };

    const double r0 = gap > 0.0 ? std::min(0.5 * gap, 1.0) : 0.5;
    const double R = 46.0 / (t * std::cos(angle)) + r0 + 1.0;
    const C ei_lo = std::polar(1.0, -angle);
    const C ei_hi = std::polar(1.0, angle);

    // rays: the lower one runs inward, the upper one outward
    auto lower = integrate_complex(
        [&](double r) { C z = r * ei_lo; return std::exp(-t * z) * resolvent_pow(z) * ei_lo; },
        r0, R, tol, tol);
    auto upper = integrate_complex(
        [&](double r) { C z = r * ei_hi; return std::exp(-t * z) * resolvent_pow(z) * ei_hi; },
        r0, R, tol, tol);
    // arc of radius r0 from -angle to angle - 2 pi, through the negative axis
    auto arc = integrate_complex(
        [&](double u) {
            C z = std::polar(r0, -angle - u);
            C dz = C(0.0, -1.0) * z;
            return std::exp(-t * z) * resolvent_pow(z) * dz;
        },
        0.0, 2.0 * M_PI - 2.0 * angle, tol, tol);

    C loop = -lower.value + arc.value + upper.value;
    double fac = 1.0;
    for (int j = 1; j < nu; ++j) fac *= j;
    C trace = loop * fac / (std::pow(t, nu - 1) * C(0.0, 2.0 * M_PI));

    DunfordResult out;
    out.value = trace.real();
    out.direct = direct;
    out.rel_err = std::abs(out.value - direct) / std::max(std::abs(direct), 1e-300);
    out.imag_residual = std::abs(trace.imag());
    out.evaluations = lower.evaluations + upper.evaluations + arc.evaluations;
    return out;
}

} // namespace retorsion
