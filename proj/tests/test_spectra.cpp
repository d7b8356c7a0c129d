#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "retorsion/dunford.hpp"
#include "retorsion/spectra.hpp"

#include <cmath>

using namespace retorsion;
using doctest::Approx;

namespace {

// wide plain lattice sums, independent of the switched implementations
double oracle_circle(double L, double theta, double t) {
    double s = 0.0;
    for (int n = -400; n <= 400; ++n) {
        double mu = (2.0 * M_PI * n + theta) / L;
        s += std::exp(-t * mu * mu);
    }
    return s;
}

double oracle_dirichlet(double L, double t) {
    double s = 0.0;
    for (int n = 1; n <= 4000; ++n) s += std::exp(-t * (M_PI * n / L) * (M_PI * n / L));
    return s;
}

} // namespace

TEST_CASE("scalar heat sums agree with wide lattice sums on both sides of the switch") {
    for (double L : {1.0, 2.0 * M_PI, 10.0})
        for (double theta : {0.0, 1.2, M_PI})
            for (double t : {0.05, 0.3, 1.0, 3.0, 20.0}) {
                double got = circle_scalar_trace(L, theta, t);
                double want = oracle_circle(L, theta, t);
                CHECK(got == Approx(want).epsilon(1e-13));
            }
    for (double L : {1.0, M_PI, 4.0})
        for (double t : {0.002, 0.05, 0.3, 1.0, 8.0}) {
            CHECK(dirichlet_trace(L, t) == Approx(oracle_dirichlet(L, t)).epsilon(1e-13));
            CHECK(neumann_trace(L, t) ==
                  Approx(oracle_dirichlet(L, t) + 1.0).epsilon(1e-13));
        }
}

TEST_CASE("betti numbers and euler characteristics") {
    auto s1 = make_circle(2.0 * M_PI);
    CHECK(s1->betti(0) == 1);
    CHECK(s1->betti(1) == 1);
    CHECK(s1->euler_char() == 0);

    auto tw = make_circle(1.0, M_PI / 2.0);
    CHECK(tw->betti(0) == 0);
    CHECK(tw->betti(1) == 0);

    auto rel = make_interval(1.0, IntervalBC::relative);
    CHECK(rel->betti(0) == 0);
    CHECK(rel->betti(1) == 1);
    CHECK(rel->euler_char() == -1);
    auto abs = make_interval(1.0, IntervalBC::absolute);
    CHECK(abs->betti(0) == 1);
    CHECK(abs->betti(1) == 0);
    CHECK(abs->euler_char() == 1);

    auto t2 = make_torus({2.0 * M_PI, 1.0});
    CHECK(t2->betti(0) == 1);
    CHECK(t2->betti(1) == 2);
    CHECK(t2->betti(2) == 1);
    CHECK(t2->euler_char() == 0);

    auto prod = make_product(rel, s1);
    CHECK(prod->dim() == 2);
    CHECK(prod->betti(0) == 0);
    CHECK(prod->betti(1) == 1);
    CHECK(prod->betti(2) == 1);
    CHECK(prod->euler_char() == 0);

    CHECK(make_point()->euler_char() == 1);
}

TEST_CASE("alternating trace sums sit at the euler characteristic for all t") {
    std::vector<ModelPtr> models = {
        make_point(),
        make_circle(2.0 * M_PI),
        make_circle(1.0, M_PI / 3.0),
        make_interval(1.0, IntervalBC::relative),
        make_interval(2.5, IntervalBC::absolute),
        make_torus({2.0 * M_PI, 1.0}),
        make_product(make_interval(1.0, IntervalBC::relative),
                     make_interval(2.0, IntervalBC::absolute)),
        make_product(make_interval(1.0, IntervalBC::absolute), make_circle(3.0)),
    };
    for (const auto& m : models) {
        double chi = m->euler_char();
        for (double t : {0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0})
            CHECK(supertrace(*m, t) == Approx(chi).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("eigenvalue enumeration carries the right lines and sums back to the trace") {
    auto s1 = make_circle(2.0 * M_PI);
    auto lines = s1->eigenvalues(0, 10.0);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].lambda == Approx(1.0));
    CHECK(lines[0].mult == 2);
    CHECK(lines[1].lambda == Approx(4.0));
    CHECK(lines[1].mult == 2);
    CHECK(lines[2].lambda == Approx(9.0));
    CHECK(lines[2].mult == 2);

    auto half = make_circle(2.0 * M_PI, M_PI); // antiperiodic: (n + 1/2)^2, doubled
    auto hl = half->eigenvalues(0, 5.0);
    REQUIRE(hl.size() == 2);
    CHECK(hl[0].lambda == Approx(0.25));
    CHECK(hl[0].mult == 2);
    CHECK(hl[1].lambda == Approx(2.25));
    CHECK(hl[1].mult == 2);

    auto t2 = make_torus({2.0 * M_PI, 2.0 * M_PI});
    auto dl = t2->eigenvalues(1, 1.5);
    REQUIRE(dl.size() == 1);
    CHECK(dl[0].lambda == Approx(1.0));
    CHECK(dl[0].mult == 8); // 4 lattice vectors, form multiplicity 2

    // partial spectral sums reproduce the trace once the tail is negligible
    for (const auto& m : {make_circle(5.0, 0.7), make_torus({2.0 * M_PI, 1.0}),
                          make_interval(M_PI, IntervalBC::relative)}) {
        for (int k = 0; k <= m->dim(); ++k) {
            double t = 1.5;
            double s = m->betti(k);
            for (const auto& l : m->eigenvalues(k, 46.0 / t))
                s += l.mult * std::exp(-l.lambda * t);
            CHECK(s == Approx(m->heat_trace(k, t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("a torus is the product of its circles") {
    auto t2 = make_torus({2.0 * M_PI, 1.3});
    auto p2 = make_product(make_circle(2.0 * M_PI), make_circle(1.3));
    for (int k = 0; k <= 2; ++k) {
        CHECK(t2->betti(k) == p2->betti(k));
        for (double t : {0.2, 1.0, 6.0})
            CHECK(t2->heat_trace(k, t) == Approx(p2->heat_trace(k, t)).epsilon(1e-13));
        auto a = t2->eigenvalues(k, 30.0);
        auto b = p2->eigenvalues(k, 30.0);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].lambda == Approx(b[i].lambda).epsilon(1e-12));
            CHECK(a[i].mult == b[i].mult);
        }
    }
}

TEST_CASE("closed models have symmetric degrees") {
    for (const auto& m : {make_circle(2.0), make_torus({1.0, 2.0}),
                          make_product(make_circle(1.0), make_circle(4.0))}) {
        for (int k = 0; k <= m->dim(); ++k) {
            CHECK(m->betti(k) == m->betti(m->dim() - k));
            for (double t : {0.3, 2.0})
                CHECK(m->heat_trace(k, t) ==
                      Approx(m->heat_trace(m->dim() - k, t)).epsilon(1e-13));
        }
    }
}

TEST_CASE("short-time expansions validate against the traces") {
    std::vector<ModelPtr> models = {
        make_circle(2.0 * M_PI),
        make_circle(1.0, 2.0),
        make_interval(1.0, IntervalBC::relative),
        make_interval(3.0, IntervalBC::absolute),
        make_torus({2.0 * M_PI, 1.0}),
        make_product(make_interval(2.0, IntervalBC::relative), make_circle(3.0)),
        make_truncated({{{0.5, 1}, {1.3, 2}}, {{0.5, 1}}}, {1, 0}),
    };
    for (const auto& m : models)
        for (int k = 0; k <= m->dim(); ++k) {
            auto e = m->short_time(k);
            CHECK(validate_expansion([&](double t) { return m->heat_trace(k, t); }, e));
        }
}

TEST_CASE("leading short-time coefficient is vol/(4 pi)^{m/2} times the form count") {
    auto s1 = make_circle(5.0);
    CHECK(s1->short_time(0).coeff_at(Rational(-1, 2), 0) ==
          Approx(5.0 / std::sqrt(4.0 * M_PI)).epsilon(1e-15));

    auto t2 = make_torus({2.0 * M_PI, 1.0});
    CHECK(t2->short_time(1).coeff_at(Rational(-1), 0) ==
          Approx(2.0 * t2->volume() / (4.0 * M_PI)).epsilon(1e-15));

    auto prod = make_product(make_interval(2.0, IntervalBC::relative), make_circle(3.0));
    auto e0 = prod->short_time(0);
    CHECK(e0.coeff_at(Rational(-1), 0) == Approx(6.0 / (4.0 * M_PI)).epsilon(1e-14));
    // cross term: Dirichlet boundary constant times the circle leading term
    CHECK(e0.coeff_at(Rational(-1, 2), 0) ==
          Approx(-0.5 * 3.0 / (2.0 * std::sqrt(M_PI))).epsilon(1e-14));
}

TEST_CASE("spectral gaps") {
    CHECK(make_circle(2.0 * M_PI)->spectral_gap(0) == Approx(1.0));
    CHECK(make_circle(2.0 * M_PI, M_PI / 2.0)->spectral_gap(0) == Approx(1.0 / 16.0));
    CHECK(make_interval(M_PI, IntervalBC::relative)->spectral_gap(1) == Approx(1.0));
}

TEST_CASE("weighted alternating sums on a circle reduce to the single-degree trace") {
    auto s1 = make_circle(2.0);
    for (double t : {0.3, 1.0})
        CHECK(weighted_supertrace(*s1, t) == Approx(-s1->heat_trace(1, t)).epsilon(1e-14));
    CHECK(weighted_supertrace_nonzero(*s1, 0.7) ==
          Approx(-s1->heat_trace_nonzero(1, 0.7)).epsilon(1e-13));
}

TEST_CASE("truncated models report their list verbatim") {
    auto tr = make_truncated({{{0.5, 1}, {1.3, 2}}, {{2.0, 1}}}, {1, 0});
    CHECK(tr->dim() == 1);
    CHECK(tr->heat_trace(0, 2.0) ==
          Approx(1.0 + std::exp(-1.0) + 2.0 * std::exp(-2.6)).epsilon(1e-15));
    CHECK(tr->heat_trace(1, 2.0) == Approx(std::exp(-4.0)).epsilon(1e-15));
    auto lines = tr->eigenvalues(0, 1.0);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].lambda == Approx(0.5));
    CHECK_THROWS_AS(make_truncated({{{-1.0, 1}}}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(make_truncated({{{1.0, 1}}, {}}, {0}), std::invalid_argument);
}

TEST_CASE("free heat kernel scales parabolically") {
    std::vector<double> x = {0.4, -0.2, 1.1}, y = {-0.3, 0.5, 0.9};
    for (double lam : {0.5, 2.0, 3.7}) {
        std::vector<double> lx = x, ly = y;
        for (auto& v : lx) v *= lam;
        for (auto& v : ly) v *= lam;
        double lhs = free_heat_kernel(3, lam * lam * 0.7, lx, ly);
        double rhs = std::pow(lam, -3.0) * free_heat_kernel(3, 0.7, x, y);
        CHECK(lhs == Approx(rhs).epsilon(1e-14));
    }
    CHECK(free_heat_kernel(1, 0.25, {0.0}, {0.0}) == Approx(1.0 / std::sqrt(M_PI)));
}

TEST_CASE("cone trace coefficients") {
    CHECK(cone_trace_coefficient(1, 0) == Approx(1.0 / (4.0 * M_PI)));
    CHECK(cone_trace_coefficient(1, 1) == Approx(2.0 / (4.0 * M_PI)));
    CHECK(cone_trace_coefficient(1, 2) == Approx(1.0 / (4.0 * M_PI)));
    CHECK(cone_trace_coefficient(2, 1) == Approx(3.0 * std::pow(4.0 * M_PI, -1.5)));
    CHECK(cone_trace_coefficient(2, 4) == 0.0);
    // alternating sum over k vanishes: (1-1)^{b+1}
    for (int b : {1, 2, 3}) {
        double s = 0.0;
        for (int k = 0; k <= b + 1; ++k)
            s += (k % 2 == 0 ? 1.0 : -1.0) * cone_trace_coefficient(b, k);
        CHECK(s == Approx(0.0).epsilon(1e-15).scale(1.0));
    }
}

TEST_CASE("contour-recovered heat traces match the spectral sums") {
    // single eigenvalue: the machinery against e^{-t}
    auto one = make_truncated({{{1.0, 1}}}, {0});
    for (int nu : {1, 2, 3})
        for (double t : {0.5, 1.0}) {
            auto r = dunford_heat_trace(*one, 0, t, nu);
            CHECK(r.direct == Approx(std::exp(-t)).epsilon(1e-14));
            CHECK(r.rel_err < 1e-8);
            CHECK(r.imag_residual < 1e-9);
        }
    // zero modes ride along
    auto withker = make_truncated({{{1.0, 3}}}, {2});
    auto rk = dunford_heat_trace(*withker, 0, 1.0, 2);
    CHECK(rk.direct == Approx(2.0 + 3.0 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(rk.rel_err < 1e-8);

    // model geometries
    auto s1 = make_circle(2.0 * M_PI);
    auto iv = make_interval(1.0, IntervalBC::absolute);
    for (int nu : {1, 2, 3}) {
        for (double t : {0.8, 2.0}) {
            auto rc = dunford_heat_trace(*s1, 0, t, nu);
            CHECK(rc.rel_err < 1e-6);
            auto ri = dunford_heat_trace(*iv, 0, t, nu);
            CHECK(ri.rel_err < 1e-6);
        }
    }
    CHECK_THROWS_AS(dunford_heat_trace(*s1, 0, -1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(dunford_heat_trace(*s1, 0, 1.0, 0), std::invalid_argument);
}
