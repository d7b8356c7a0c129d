#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "retorsion/mellin.hpp"
#include "retorsion/quadrature.hpp"
#include "retorsion/reg_integral.hpp"
#include "retorsion/special.hpp"

#include <cmath>

using namespace retorsion;
using doctest::Approx;

TEST_CASE("mellin terms take their closed rational form") {
    // unit side at alpha = -2, k = 1: -1!/(s-2)^2... coefficient (-1)^1 1! = -1
    PoleCombo u = mellin_term(Rational(-2), 1, MellinSide::unit);
    REQUIRE(u.terms().size() == 1);
    CHECK(u.terms()[0].p == Rational(2));
    CHECK(u.terms()[0].m == 2);
    CHECK(u.terms()[0].c == Rational(-1));

    PoleCombo t = mellin_term(Rational(-2), 1, MellinSide::tail);
    CHECK(t.terms()[0].c == Rational(1));

    // numeric check on each side of its own convergence strip
    double s_unit = 3.0; // s + alpha = 1 > 0
    auto qi = integrate([&](double x) { return std::pow(x, s_unit - 3.0) * std::log(x); }, 0.0,
                        1.0);
    CHECK(qi.value == Approx(u.eval(s_unit)).epsilon(1e-10));

    double s_tail = 0.5; // s + alpha = -1.5 < 0
    auto qt = integrate_to_infinity(
        [&](double x) { return std::pow(x, s_tail - 3.0) * std::log(x); }, 1.0);
    CHECK(qt.value == Approx(t.eval(s_tail)).epsilon(1e-10));
}

TEST_CASE("unit and tail mellin terms cancel exactly") {
    for (int twice_alpha = -12; twice_alpha <= 0; ++twice_alpha)
        for (int k = 0; k <= 3; ++k)
            CHECK(reg_int_zero_check(Rational(twice_alpha, 2), k));
}

TEST_CASE("pole combos expand to correct Laurent jets") {
    PoleCombo c;
    c.add_term(Rational(0), 2, Rational(3));   // 3/s^2
    c.add_term(Rational(1), 1, Rational(-2));  // -2/(s-1)
    auto jet = c.laurent_at(Rational(0), -3, 3);
    CHECK(jet.at(-3) == Rational(0));
    CHECK(jet.at(-2) == Rational(3));
    CHECK(jet.at(-1) == Rational(0));
    // -2/(s-1) = 2 + 2s + 2s^2 + ...
    CHECK(jet.at(0) == Rational(2));
    CHECK(jet.at(1) == Rational(2));
    CHECK(jet.at(2) == Rational(2));

    // numeric agreement near the expansion point
    double s = 0.05;
    double jv = 3.0 / (s * s) + 2.0 + 2.0 * s + 2.0 * s * s + 2.0 * s * s * s;
    CHECK(c.eval(s) == Approx(jv).epsilon(1e-4));

    PoleCombo z = mellin_term(Rational(-1, 2), 2, MellinSide::unit);
    z += mellin_term(Rational(-1, 2), 2, MellinSide::tail);
    CHECK(z.is_zero());
}

TEST_CASE("inverse gamma jet matches the classical coefficients") {
    auto ig = inv_gamma_jet(5);
    const double g = kEulerGamma;
    const double pi2 = M_PI * M_PI;
    CHECK(ig.at(1) == Approx(1.0).epsilon(1e-15));
    CHECK(ig.at(2) == Approx(g).epsilon(1e-15));
    CHECK(ig.at(3) == Approx(g * g / 2.0 - pi2 / 12.0).epsilon(1e-14));
    CHECK(ig.at(4) ==
          Approx(g * g * g / 6.0 - g * pi2 / 12.0 + riemann_zeta(3.0) / 3.0).epsilon(1e-14));

    auto gj = gamma_jet(5);
    CHECK(gj.at(-1) == Approx(1.0));
    CHECK(gj.at(0) == Approx(-g).epsilon(1e-14));
    CHECK(gj.at(1) == Approx(g * g / 2.0 + pi2 / 12.0).epsilon(1e-13));

    // Gamma * (1/Gamma) = 1 through order 3
    auto prod = jet_mul(gj, ig, 3);
    CHECK(prod.at(0) == Approx(1.0).epsilon(1e-13));
    for (int o = 1; o <= 3; ++o) CHECK(prod.at(o) == Approx(0.0).epsilon(1e-12));

    // jet evaluation against tgamma at small s
    double s = 0.01, acc = 0.0;
    for (int o = gj.lo; o <= gj.hi(); ++o) acc += gj.at(o) * std::pow(s, o);
    CHECK(acc == Approx(std::tgamma(s)).epsilon(1e-9));
}

TEST_CASE("hurwitz zeta oracle hits closed forms") {
    CHECK(hurwitz_zeta(2.0, 1.0) == Approx(riemann_zeta(2.0)).epsilon(1e-12));
    CHECK(hurwitz_zeta(3.5, 1.0) == Approx(riemann_zeta(3.5)).epsilon(1e-12));
    CHECK(hurwitz_zeta(-0.5, 1.0) == Approx(riemann_zeta(-0.5)).epsilon(1e-12));
    CHECK(hurwitz_zeta(2.0, 0.5) == Approx(M_PI * M_PI / 2.0).epsilon(1e-12));
    for (double a : {0.25, 0.5, 0.75, 1.0, 1.5})
        CHECK(hurwitz_zeta(0.0, a) == Approx(0.5 - a).epsilon(1e-12));
    CHECK(hurwitz_zeta_deriv0(1.0) == Approx(-0.5 * std::log(2.0 * M_PI)).epsilon(1e-14));
    CHECK_THROWS_AS(hurwitz_zeta(2.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(hurwitz_zeta(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("power-log antiderivatives differentiate back") {
    auto deriv = [](const Rational& alpha, int k, double x) {
        double h = 1e-6 * x;
        return (power_log_antiderivative(alpha, k, x + h) -
                power_log_antiderivative(alpha, k, x - h)) /
               (2.0 * h);
    };
    for (auto [alpha, k] : std::vector<std::pair<Rational, int>>{
             {Rational(0), 1}, {Rational(-2), 0}, {Rational(-1), 2}, {Rational(-3, 2), 1},
             {Rational(2), 3}}) {
        for (double x : {0.3, 1.7}) {
            double want = std::pow(x, alpha.to_double()) * std::pow(std::log(x), k);
            CHECK(deriv(alpha, k, x) == Approx(want).epsilon(1e-6));
        }
    }
    CHECK(power_log_antiderivative(Rational(0), 1, 2.0) ==
          Approx(2.0 * (std::log(2.0) - 1.0)).epsilon(1e-14));
}

namespace {

PhgSample sample_exp_over_x() {
    // e^{-x}/x: x^{-1} - 1 + x/2 - x^2/6 at 0, exponentially small at infinity
    Expansion z(Expansion::End::zero,
                {{Rational(-1), 0, 1.0}, {Rational(0), 0, -1.0}, {Rational(1), 0, 0.5},
                 {Rational(2), 0, -1.0 / 6.0}},
                2.5);
    Expansion inf(Expansion::End::infinity, {}, -50.0, true);
    return PhgSample([](double x) { return std::exp(-x) / x; }, z, inf);
}

PhgSample sample_one_over_1px() {
    std::vector<ExpTerm> tail;
    for (int j = 1; j <= 6; ++j)
        tail.push_back(ExpTerm{Rational(-j), 0, (j % 2 == 1) ? 1.0 : -1.0});
    Expansion z(Expansion::End::zero, {}, 0.0);
    Expansion inf(Expansion::End::infinity, std::move(tail), -6.5);
    return PhgSample([](double x) { return 1.0 / (1.0 + x); }, z, inf);
}

} // namespace

TEST_CASE("regularized integrals reproduce closed forms") {
    // plain convergent integral comes out unchanged
    {
        Expansion z(Expansion::End::zero, {}, 0.0);
        Expansion inf(Expansion::End::infinity, {}, -40.0, true);
        PhgSample s([](double x) { return std::exp(-x); }, z, inf);
        auto r = regularized_integral(s);
        CHECK(r.converged);
        CHECK(r.value == Approx(1.0).epsilon(1e-11));
    }
    // 1/(1+x): antiderivative log(1+R) has vanishing constant term at infinity
    {
        auto r = regularized_integral(sample_one_over_1px());
        CHECK(std::abs(r.value) < 1e-10);
    }
    // pure powers and power-logs vanish identically
    {
        for (auto [alpha, k] : std::vector<std::pair<Rational, int>>{
                 {Rational(-2), 0}, {Rational(-1), 0}, {Rational(-1), 2}, {Rational(-3, 2), 0}}) {
            double a = alpha.to_double();
            int kk = k;
            Expansion z(Expansion::End::zero, {{alpha, k, 1.0}}, 100.0, true);
            Expansion inf(Expansion::End::infinity, {{alpha, k, 1.0}}, -100.0, true);
            PhgSample s([a, kk](double x) { return std::pow(x, a) * std::pow(std::log(x), kk); },
                        z, inf);
            for (double split : {0.5, 1.0, 2.0}) {
                auto r = regularized_integral(s, split);
                CHECK(std::abs(r.value) < 1e-10);
            }
        }
    }
    // e^{-x}/x has finite part -gamma
    {
        auto r = regularized_integral(sample_exp_over_x());
        CHECK(r.value == Approx(-kEulerGamma).epsilon(1e-10));
        for (double split : {0.5, 2.0})
            CHECK(regularized_integral(sample_exp_over_x(), split).value ==
                  Approx(-kEulerGamma).epsilon(1e-9));
    }
    // 1/(1+x^2) is plain convergent: pi/2
    {
        std::vector<ExpTerm> tail;
        for (int j = 1; j <= 3; ++j)
            tail.push_back(ExpTerm{Rational(-2 * j), 0, (j % 2 == 1) ? 1.0 : -1.0});
        Expansion z(Expansion::End::zero, {}, 0.0);
        Expansion inf(Expansion::End::infinity, std::move(tail), -7.5);
        PhgSample s([](double x) { return 1.0 / (1.0 + x * x); }, z, inf);
        CHECK(regularized_integral(s).value == Approx(M_PI / 2.0).epsilon(1e-11));
    }
}

TEST_CASE("regularized integral rejects non-integrable declarations") {
    Expansion z(Expansion::End::zero, {}, -1.5);
    Expansion inf(Expansion::End::infinity, {}, -40.0, true);
    CHECK_THROWS_AS(regularized_integral(PhgSample([](double x) { return x; }, z, inf)),
                    std::invalid_argument);
    Expansion z2(Expansion::End::zero, {}, 0.0);
    Expansion inf2(Expansion::End::infinity, {}, -0.5);
    CHECK_THROWS_AS(regularized_integral(PhgSample([](double x) { return x; }, z2, inf2)),
                    std::invalid_argument);
}

TEST_CASE("regularized limit reads the constant term and flags logs") {
    Expansion e(Expansion::End::zero,
                {{Rational(-1), 0, 4.0}, {Rational(0), 0, -1.0}, {Rational(0), 1, 0.5}}, 0.5);
    auto r = regularized_limit(e);
    CHECK(r.value == Approx(-1.0));
    REQUIRE(r.log_coeffs.size() == 1);
    CHECK(r.log_coeffs[0] == Approx(0.5));
    CHECK_FALSE(r.pure);
    CHECK_THROWS_AS(regularized_limit(e, true), std::domain_error);
}

TEST_CASE("change of variable: scaling rule against the rescaled integral") {
    // 1/(1+x) at lambda = e: value is 1/e with c_1 = 1
    auto s = sample_one_over_1px();
    auto r = change_of_variable(s, std::exp(1.0));
    REQUIRE(r.c.size() == 1);
    CHECK(r.c[0] == Approx(1.0));
    CHECK(r.predicted == Approx(std::exp(-1.0)).epsilon(1e-10));
    CHECK(r.direct == Approx(r.predicted).epsilon(1e-9));

    // e^{-x}/x: direct value (-(gamma) - log lambda)/lambda
    for (double lambda : {0.25, 0.5, 2.0, 10.0}) {
        auto c = change_of_variable(sample_exp_over_x(), lambda);
        double want = (-kEulerGamma - std::log(lambda)) / lambda;
        CHECK(c.direct == Approx(want).epsilon(1e-8));
        CHECK(c.predicted == Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("sigma finite part and the epsilon ladder agree") {
    // x^{-2}: T(eps) = 1/eps - 1, finite part -1
    {
        Expansion z(Expansion::End::zero, {{Rational(-2), 0, 1.0}}, 10.0, true);
        Expansion inf(Expansion::End::infinity, {{Rational(-2), 0, 1.0}}, -10.0, true);
        PhgSample s([](double x) { return 1.0 / (x * x); }, z, inf);
        auto fp = sigma_finite_part(s);
        CHECK(fp.finite_part == Approx(-1.0).epsilon(1e-11));
        CHECK(fp.principal.empty());
        auto lim = epsilon_limit_path(s);
        CHECK(lim.value == Approx(-1.0).epsilon(1e-9));
    }
    // x^{-1}: pole 1/sigma, finite part 0
    {
        Expansion z(Expansion::End::zero, {{Rational(-1), 0, 1.0}}, 10.0, true);
        Expansion inf(Expansion::End::infinity, {{Rational(-1), 0, 1.0}}, -10.0, true);
        PhgSample s([](double x) { return 1.0 / x; }, z, inf);
        auto fp = sigma_finite_part(s);
        CHECK(std::abs(fp.finite_part) < 1e-12);
        REQUIRE(fp.principal.size() == 1);
        CHECK(fp.principal[0] == Approx(1.0));
        auto lim = epsilon_limit_path(s);
        CHECK(std::abs(lim.value) < 1e-9);
        REQUIRE(lim.log_coeffs.size() == 1);
        CHECK(lim.log_coeffs[0] == Approx(-1.0).epsilon(1e-8));
    }
    // smooth: finite part is the plain integral
    {
        Expansion z(Expansion::End::zero, {}, 0.0);
        Expansion inf(Expansion::End::infinity, {}, -40.0, true);
        PhgSample s([](double x) { return std::exp(-x); }, z, inf);
        auto fp = sigma_finite_part(s);
        CHECK(fp.finite_part == Approx(1.0 - std::exp(-1.0)).epsilon(1e-11));
        auto lim = epsilon_limit_path(s);
        CHECK(lim.value == Approx(fp.finite_part).epsilon(1e-9));
    }
    // mixed logs: x^{-1} log x + x^{-3/2} + 3
    {
        Expansion z(Expansion::End::zero,
                    {{Rational(-1), 1, 1.0}, {Rational(-3, 2), 0, 1.0}, {Rational(0), 0, 3.0}},
                    0.9, true);
        Expansion inf(Expansion::End::infinity, {{Rational(-3, 2), 0, 1.0}}, -10.0, true);
        PhgSample s(
            [](double x) { return std::log(x) / x + std::pow(x, -1.5) + 3.0; }, z, inf);
        auto fp = sigma_finite_part(s);
        // finite parts: 0 (log pole), -2, +3
        CHECK(fp.finite_part == Approx(1.0).epsilon(1e-10));
        REQUIRE(fp.principal.size() == 2);
        CHECK(fp.principal[1] == Approx(-1.0)); // -1/sigma^2
        auto lim = epsilon_limit_path(s);
        CHECK(lim.value == Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("expansion fits recover coefficients and report conditioning") {
    std::vector<double> xs, ys;
    for (int i = 0; i < 14; ++i) {
        double x = 0.5 * std::pow(0.6, i);
        xs.push_back(x);
        ys.push_back(2.0 / x - 3.0 + 0.25 * std::log(x) + 0.125 * x);
    }
    std::vector<std::pair<Rational, int>> basis = {
        {Rational(-1), 0}, {Rational(0), 0}, {Rational(0), 1}, {Rational(1), 0}};
    auto fit = fit_expansion(xs, ys, basis);
    CHECK(fit.coeffs[0] == Approx(2.0).epsilon(1e-10));
    CHECK(fit.coeffs[1] == Approx(-3.0).epsilon(1e-8));
    CHECK(fit.coeffs[2] == Approx(0.25).epsilon(1e-8));
    CHECK(fit.coeffs[3] == Approx(0.125).epsilon(1e-6));
    CHECK(fit.condition > 1.0);
    CHECK(fit.residual < 1e-10);

    CHECK_THROWS_AS(fit_expansion(xs, ys, {{Rational(0), 0}, {Rational(0), 0}}),
                    std::invalid_argument);
    std::vector<double> short_x(xs.begin(), xs.begin() + 2), short_y(ys.begin(), ys.begin() + 2);
    CHECK_THROWS_AS(fit_expansion(short_x, short_y, basis), std::invalid_argument);
}

TEST_CASE("expansion validation checks the declared remainder") {
    Expansion good(Expansion::End::zero, {{Rational(-1), 0, 1.0}, {Rational(0), 0, -0.5}}, 0.9);
    CHECK(validate_expansion([](double x) { return 1.0 / x - 0.5 + x * std::log(x); }, good));
    Expansion bad(Expansion::End::zero, {{Rational(-1), 0, 1.0}}, 1.0);
    CHECK_FALSE(validate_expansion([](double x) { return 1.0 / x + 3.0; }, bad));
    Expansion tail(Expansion::End::infinity, {{Rational(-1), 0, 2.0}}, -1.9);
    CHECK(validate_expansion([](double x) { return 2.0 / x - 3.0 / (x * x); }, tail));
}
