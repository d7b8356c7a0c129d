#include "retorsion/special.hpp"

#include <cmath>
#include <stdexcept>

namespace retorsion {

namespace {

// B_2, B_4, ..., B_22.
constexpr double kBernoulli[] = {
    1.0 / 6.0,       -1.0 / 30.0,     1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,      -691.0 / 2730.0, 7.0 / 6.0,       -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0, 854513.0 / 138.0};

} // namespace

LaurentJet<double> inv_gamma_jet(int nterms) {
    if (nterms < 1) throw std::invalid_argument("need at least one term");
    // (k-1) c_k = gamma c_{k-1} + sum_{j=2}^{k-1} (-1)^{j+1} zeta(j) c_{k-j}
    std::vector<double> c(static_cast<std::size_t>(nterms) + 1, 0.0);
    c[1] = 1.0;
    if (nterms >= 2) c[2] = kEulerGamma;
    for (int k = 3; k <= nterms; ++k) {
        double acc = kEulerGamma * c[static_cast<std::size_t>(k - 1)];
        for (int j = 2; j <= k - 1; ++j) {
            double z = std::riemann_zeta(static_cast<double>(j));
            acc += ((j % 2 == 1) ? 1.0 : -1.0) * z * c[static_cast<std::size_t>(k - j)];
        }
        c[static_cast<std::size_t>(k)] = acc / (k - 1);
    }
    LaurentJet<double> out;
    out.lo = 1;
    out.coef.assign(c.begin() + 1, c.end());
    return out;
}

LaurentJet<double> gamma_jet(int nterms) {
    // Invert s * (1 + a_1 s + a_2 s^2 + ...) term by term.
    LaurentJet<double> ig = inv_gamma_jet(nterms + 1);
    std::vector<double> a(static_cast<std::size_t>(nterms) + 1, 0.0);
    for (int k = 1; k <= nterms; ++k) a[static_cast<std::size_t>(k)] = ig.at(k + 1);
    std::vector<double> b(static_cast<std::size_t>(nterms) + 1, 0.0);
    b[0] = 1.0;
    for (int k = 1; k <= nterms; ++k) {
        double acc = -a[static_cast<std::size_t>(k)];
        for (int j = 1; j < k; ++j) acc -= a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
        b[static_cast<std::size_t>(k)] = acc;
    }
    LaurentJet<double> out;
    out.lo = -1;
    out.coef = std::move(b);
    return out;
}

double inv_gamma(double s) {
    if (s <= 0.0 && s == std::floor(s)) return 0.0;
    return 1.0 / std::tgamma(s);
}

double hurwitz_zeta(double s, double a) {
    if (a <= 0.0) throw std::invalid_argument("hurwitz zeta needs a > 0");
    if (s == 1.0) throw std::invalid_argument("hurwitz zeta pole at s = 1");
    constexpr int N = 25;
    constexpr int J = 10;
    if (s < -(2.0 * J - 1.0)) throw std::invalid_argument("s below the Euler-Maclaurin window");
    double sum = 0.0;
    for (int n = 0; n < N; ++n) sum += std::pow(n + a, -s);
    double w = N + a;
    sum += std::pow(w, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(w, -s);
    // Rising factorial s(s+1)...(s+2j-2) against w^{-s-2j+1}.
    double rising = s;
    double wpow = std::pow(w, -s - 1.0);
    for (int j = 1; j <= J; ++j) {
        sum += kBernoulli[j - 1] / std::tgamma(2.0 * j + 1.0) * rising * wpow;
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        wpow /= w * w;
    }
    return sum;
}

double hurwitz_zeta_deriv0(double a) {
    if (a <= 0.0) throw std::invalid_argument("hurwitz zeta needs a > 0");
    return std::lgamma(a) - 0.5 * std::log(2.0 * M_PI);
}

double riemann_zeta(double s) {
    if (s == 1.0) throw std::invalid_argument("zeta pole at s = 1");
    return std::riemann_zeta(s);
}

double digamma(double x) {
    if (x == std::floor(x) && x <= 0.0) throw std::domain_error("digamma pole");
    double acc = 0.0;
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double r2 = 1.0 / (x * x);
    double v = std::log(x) - 0.5 / x;
    double p = r2;
    for (int j = 1; j <= 8; ++j) {
        v -= kBernoulli[j - 1] / (2.0 * j) * p;
        p *= r2;
    }
    return acc + v;
}

double trigamma(double x) {
    if (x == std::floor(x) && x <= 0.0) throw std::domain_error("trigamma pole");
    double acc = 0.0;
    while (x < 12.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    double r = 1.0 / x;
    double r2 = r * r;
    double v = r + 0.5 * r2;
    double p = r * r2;
    for (int j = 1; j <= 8; ++j) {
        v += kBernoulli[j - 1] * p;
        p *= r2;
    }
    return acc + v;
}

} // namespace retorsion
