#include "retorsion/zeta.hpp"

#include "retorsion/quadrature.hpp"
#include "retorsion/reg_integral.hpp"
#include "retorsion/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <map>
#include <stdexcept>

namespace retorsion {

namespace {

int env_threads() {
    const char* v = std::getenv("RETORSION_THREADS");
    if (!v) return 2;
    int n = std::atoi(v);
    return n >= 1 ? n : 1;
}

double ipow(double x, int n) {
    double v = 1.0;
    for (int i = 0; i < n; ++i) v *= x;
    return v;
}

double factorial(int n) {
    double v = 1.0;
    for (int i = 2; i <= n; ++i) v *= i;
    return v;
}

bool nonpositive_integer(const Rational& p) { return p.is_integer() && p.num() <= 0; }

// Taylor coefficients of 1/Gamma around the nonpositive integer -n, where the
// function has a simple zero: 1/Gamma(u-n) = u (u-1)...(u-n) / Gamma(u+1).
std::vector<double> inv_gamma_taylor_zero_site(int n, int nterms) {
    std::vector<double> poly{1.0};
    for (int j = 1; j <= n; ++j) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i] * static_cast<double>(-j);
            next[i + 1] += poly[i];
        }
        poly = std::move(next);
    }
    LaurentJet<double> ig = inv_gamma_jet(nterms + 1);
    std::vector<double> out(static_cast<std::size_t>(nterms), 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i)
        for (int k = 0; k + 1 < nterms; ++k) {
            int idx = static_cast<int>(i) + k + 1;
            if (idx < nterms) out[static_cast<std::size_t>(idx)] += poly[i] * ig.at(k + 1);
        }
    return out;
}

// Taylor of 1/Gamma at a generic point; three orders cover the pole depths
// the trace data can produce away from the zero sites.
std::vector<double> inv_gamma_taylor_at(double p, int nterms) {
    if (nterms > 3)
        throw std::invalid_argument("inv-gamma jet depth capped at 3 away from the zero sites");
    double d0 = inv_gamma(p);
    std::vector<double> d{d0};
    if (nterms >= 2) {
        double ps = digamma(p);
        d.push_back(-ps * d0);
        if (nterms >= 3) d.push_back(0.5 * (ps * ps - trigamma(p)) * d0);
    }
    return d;
}

Rational rational_near(double x) {
    // Continued fraction with a small denominator cap; desk-scale cone data
    // is rational by construction.
    double target = x;
    std::int64_t pp = 1, pq = 0, cp = std::llround(std::floor(x)), cq = 1;
    double frac = x - std::floor(x);
    for (int it = 0; it < 30 && cq <= 1000000; ++it) {
        if (std::abs(static_cast<double>(cp) / static_cast<double>(cq) - target) <=
            1e-12 * std::max(1.0, std::abs(target)))
            return Rational(cp, cq);
        if (frac < 1e-15) break;
        double inv = 1.0 / frac;
        std::int64_t a = static_cast<std::int64_t>(std::floor(inv));
        frac = inv - std::floor(inv);
        std::int64_t np = a * cp + pp;
        std::int64_t nq = a * cq + pq;
        pp = cp;
        pq = cq;
        cp = np;
        cq = nq;
    }
    throw std::invalid_argument("coefficient not recognizably rational");
}

double gram_det(const Gram& g) {
    std::size_t n = g.size();
    for (const auto& row : g)
        if (row.size() != n) throw std::invalid_argument("Gram matrix not square");
    std::vector<std::vector<double>> a = g;
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (std::abs(a[piv][c]) < 1e-14) throw std::invalid_argument("degenerate Gram matrix");
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            double f = a[r][c] / a[c][c];
            for (std::size_t cc = c; cc < n; ++cc) a[r][cc] -= f * a[c][cc];
        }
    }
    return det;
}

} // namespace

HeatTraceExpansion heat_trace_data(const SpectralModel& m, int degree) {
    HeatTraceExpansion h;
    h.short_time = m.short_time(degree);
    h.kernel_dim = m.betti(degree);
    std::vector<ExpTerm> consts;
    if (h.kernel_dim != 0)
        consts.push_back(ExpTerm{Rational(0), 0, static_cast<double>(h.kernel_dim)});
    h.long_time = Expansion(Expansion::End::infinity, consts, -1.0, true);
    return h;
}

ZetaFn::ZetaFn(ModelPtr m, int degree, double tol)
    : model_(std::move(m)), degree_(degree), tol_(tol) {
    if (!model_) throw std::invalid_argument("null model");
    if (degree < 0 || degree > model_->dim()) throw std::invalid_argument("degree out of range");
    data_ = heat_trace_data(*model_, degree);
    auto mod = model_;
    int k = degree_;
    trace_ = [mod, k](double t) { return mod->heat_trace(k, t); };
    build();
}

ZetaFn::ZetaFn(std::function<double(double)> trace, HeatTraceExpansion data, double tol)
    : trace_(std::move(trace)), data_(std::move(data)), tol_(tol) {
    if (!trace_) throw std::invalid_argument("null trace");
    build();
}

void ZetaFn::build() {
    if (data_.short_time.end != Expansion::End::zero ||
        data_.long_time.end != Expansion::End::infinity)
        throw std::invalid_argument("expansion ends mismatched");
    if (!data_.short_time.exp_small && data_.short_time.remainder_order <= 0.0)
        throw std::invalid_argument("short-time remainder must improve on the constant term");
    if (!data_.long_time.exp_small && data_.long_time.remainder_order >= 0.0)
        throw std::invalid_argument("long-time remainder must decay");

    // Each side of the split continues termwise; the kernel's constant is
    // taken off the t^0 coefficient before transforming.
    std::map<std::pair<Rational, int>, double> acc;
    auto add_side = [&acc, this](const Expansion& e, MellinSide side) {
        std::vector<ExpTerm> ts = e.terms;
        bool adjusted = false;
        for (auto& t : ts)
            if (t.alpha == Rational(0) && t.k == 0) {
                t.coeff -= data_.kernel_dim;
                adjusted = true;
            }
        if (!adjusted && data_.kernel_dim != 0)
            ts.push_back(ExpTerm{Rational(0), 0, -static_cast<double>(data_.kernel_dim)});
        for (const auto& t : ts) {
            if (t.coeff == 0.0) continue;
            PoleCombo pc = mellin_term(t.alpha, t.k, side);
            for (const auto& term : pc.terms())
                acc[{term.p, term.m}] += t.coeff * term.c.to_double();
        }
    };
    add_side(data_.short_time, MellinSide::unit);
    add_side(data_.long_time, MellinSide::tail);
    gpoles_.clear();
    for (const auto& [key, c] : acc)
        if (c != 0.0) gpoles_.push_back(GPole{key.first, key.second, c});

    auto r0 = [this]() { return remainder0(0.0); };
    auto ri = [this]() { return remainder_inf(0.0); };
    if (env_threads() > 1) {
        auto f0 = std::async(std::launch::async, r0);
        auto fi = std::async(std::launch::async, ri);
        r0_at0_ = f0.get();
        rinf_at0_ = fi.get();
    } else {
        r0_at0_ = r0();
        rinf_at0_ = ri();
    }

    // Zero jet: the pole part at 0 is exact, everything else lands in the
    // constant Taylor coefficient; division by Gamma is jet multiplication.
    int mmax = 0;
    double g0 = r0_at0_ + rinf_at0_;
    std::map<int, double> principal;
    for (const auto& gp : gpoles_) {
        if (gp.p.is_zero()) {
            principal[gp.m] += gp.c;
            mmax = std::max(mmax, gp.m);
        } else {
            g0 += gp.c / ipow(-gp.p.to_double(), gp.m);
        }
    }
    LaurentJet<double> ig = inv_gamma_jet(mmax + 2);
    at_zero_ = ZetaZeroJet{};
    at_zero_.deriv = g0 * ig.at(1);
    for (const auto& [m, c] : principal) {
        if (m >= 2) at_zero_.pole += c * ig.at(m - 1);
        at_zero_.value += c * ig.at(m);
        at_zero_.deriv += c * ig.at(m + 1);
    }
}

namespace {

// Trace minus main part, with rounding noise flushed to zero.  Where the true
// difference is exponentially small the two floats agree to the last couple of
// ulps, and t^{s-1} would amplify that dust into a divergent-looking tail.
double noise_clamped_diff(double trace, double main) {
    double d = trace - main;
    if (std::abs(d) <= 1e-14 * (std::abs(trace) + std::abs(main))) return 0.0;
    return d;
}

}  // namespace

double ZetaFn::remainder0(double s) const {
    if (!data_.short_time.exp_small && s <= -data_.short_time.remainder_order + 0.25)
        throw std::domain_error("s left of the short-time remainder abscissa");
    const Expansion& e = data_.short_time;
    auto f = [this, &e, s](double t) {
        return std::pow(t, s - 1.0) * noise_clamped_diff(trace_(t), e.main_part(t));
    };
    return integrate(f, 0.0, 1.0, tol_, tol_).value;
}

double ZetaFn::remainder_inf(double s) const {
    if (!data_.long_time.exp_small && s >= -data_.long_time.remainder_order - 0.25)
        throw std::domain_error("s right of the long-time remainder abscissa");
    const Expansion& e = data_.long_time;
    auto f = [this, &e, s](double t) {
        return std::pow(t, s - 1.0) * noise_clamped_diff(trace_(t), e.main_part(t));
    };
    return integrate_to_infinity(f, 1.0, tol_, tol_).value;
}

double ZetaFn::eval(double s) const {
    double val = inv_gamma(s) * (remainder0(s) + remainder_inf(s));
    for (const auto& gp : gpoles_) {
        double d = s - gp.p.to_double();
        bool site = nonpositive_integer(gp.p);
        int zorder = site ? gp.m - 1 : gp.m;
        if (zorder >= 1 && std::abs(d) < 1e-9)
            throw std::domain_error("evaluation at a continuation pole");
        if (site && std::abs(d) < 1e-3) {
            // 1/Gamma vanishes here; divide the jets instead of the values.
            int n = static_cast<int>(-gp.p.num());
            std::vector<double> dd = inv_gamma_taylor_zero_site(n, gp.m + 4);
            double grow = 0.0;
            for (int i = 1; i < static_cast<int>(dd.size()); ++i)
                grow += dd[static_cast<std::size_t>(i)] * std::pow(d, i - gp.m);
            val += gp.c * grow;
        } else {
            val += gp.c * inv_gamma(s) / ipow(d, gp.m);
        }
    }
    return val;
}

double ZetaFn::eval_dirichlet(double s, double tol) const {
    if (!model_) throw std::logic_error("Dirichlet sum needs a model-backed zeta");
    if (2.0 * s <= model_->dim() + 0.5)
        throw std::domain_error("Dirichlet series not convergent enough here");
    double below = 16.0;
    double prev = -1.0;
    double sum = 0.0;
    while (below <= 1.0e12) {
        sum = 0.0;
        for (const auto& l : model_->eigenvalues(degree_, below))
            sum += l.mult * std::pow(l.lambda, -s);
        if (prev >= 0.0 && sum - prev < 0.125 * tol && below >= 64.0) break;
        prev = sum;
        below *= 4.0;
    }
    return sum;
}

double ZetaFn::eval_subtracted(double s, int head_lines) const {
    if (!model_) throw std::logic_error("subtraction path needs a model-backed zeta");
    if (head_lines < 1) throw std::invalid_argument("need at least one head line");
    for (const auto& t : data_.short_time.terms)
        if (t.k != 0) throw std::logic_error("subtraction path needs a log-free short time");

    double below = 16.0;
    std::vector<EigenLine> lines;
    while (below <= 1.0e12) {
        lines = model_->eigenvalues(degree_, below);
        if (!lines.empty()) break;
        below *= 4.0;
    }
    // Rescale so the gap sits at 1; the head must stay where the Taylor
    // window around the split point is accurate, or its Mellin coefficients
    // dwarf the remainder integral and eat the precision.
    double scale = lines.empty() ? 1.0 : lines.front().lambda;
    const double cap = 10.0;
    lines = model_->eigenvalues(degree_, scale * (cap + 1e-9));
    if (static_cast<int>(lines.size()) > head_lines)
        lines.resize(static_cast<std::size_t>(head_lines));

    double head = 0.0;
    for (const auto& l : lines) head += l.mult * std::pow(l.lambda / scale, -s);

    const int J = 30;
    int b = data_.kernel_dim;
    std::vector<ExpTerm> taylor;
    for (int j = 0; j <= J; ++j) {
        double cj = (j == 0) ? static_cast<double>(b) : 0.0;
        for (const auto& l : lines) cj += l.mult * ipow(-l.lambda / scale, j) / factorial(j);
        if (cj != 0.0) taylor.push_back(ExpTerm{Rational(j), 0, -cj});
    }
    std::vector<ExpTerm> short_scaled = data_.short_time.terms;
    for (auto& t : short_scaled) t.coeff *= std::pow(scale, -t.alpha.to_double());
    HeatTraceExpansion h;
    h.short_time = expansion_add(
        Expansion(Expansion::End::zero, short_scaled, data_.short_time.remainder_order,
                  data_.short_time.exp_small),
        Expansion(Expansion::End::zero, taylor, J + 1.0, false));
    h.long_time = Expansion(Expansion::End::infinity, {}, -1.0, true);
    h.kernel_dim = 0;
    auto mod = model_;
    int k = degree_;
    auto copy = lines;
    double sc = scale;
    auto tail_trace = [mod, k, copy, b, sc](double u) {
        double v = mod->heat_trace(k, u / sc) - b;
        for (const auto& l : copy) v -= l.mult * std::exp(-l.lambda / sc * u);
        return v;
    };
    ZetaFn z(tail_trace, std::move(h), tol_);
    return std::pow(scale, -s) * (head + z.eval(s));
}

std::vector<MeromorphicValue> ZetaFn::poles() const {
    std::map<Rational, std::map<int, double>> by_p;
    double scale = 0.0;
    for (const auto& gp : gpoles_) {
        by_p[gp.p][gp.m] += gp.c;
        scale = std::max(scale, std::abs(gp.c));
    }
    std::vector<MeromorphicValue> out;
    for (const auto& [p, ms] : by_p) {
        int mmax = ms.rbegin()->first;
        std::vector<double> d = nonpositive_integer(p)
                                    ? inv_gamma_taylor_zero_site(static_cast<int>(-p.num()), mmax)
                                    : inv_gamma_taylor_at(p.to_double(), std::min(mmax, 3));
        std::vector<double> principal(static_cast<std::size_t>(mmax), 0.0);
        for (const auto& [m, c] : ms)
            for (int i = 0; i < m; ++i) {
                int di = m - 1 - i;
                if (di < static_cast<int>(d.size()))
                    principal[static_cast<std::size_t>(i)] += c * d[static_cast<std::size_t>(di)];
            }
        while (!principal.empty() && std::abs(principal.back()) <= 1e-14 * (1.0 + scale))
            principal.pop_back();
        if (principal.empty()) continue;
        MeromorphicValue mv;
        mv.location = p.to_double();
        mv.principal = std::move(principal);
        out.push_back(std::move(mv));
    }
    std::sort(out.begin(), out.end(),
              [](const MeromorphicValue& a, const MeromorphicValue& b) {
                  return a.location > b.location;
              });
    return out;
}

ZetaFn zeta_continue(ModelPtr m, int degree) { return ZetaFn(std::move(m), degree); }

std::pair<double, double> zeta_reg_at_zero(const ZetaFn& z) {
    return {z.at_zero().value, z.at_zero().deriv};
}

TorsionResult log_torsion(const ModelPtr& m) {
    if (!m) throw std::invalid_argument("null model");
    TorsionResult out;
    double acc = 0.0;
    for (int k = 0; k <= m->dim(); ++k) {
        ZetaFn z(m, k);
        const ZetaZeroJet& j = z.at_zero();
        out.per_degree.push_back(DegreeZeta{k, j.value, j.deriv, m->betti(k)});
        double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        acc += sgn * k * j.deriv;
    }
    out.logT = 0.5 * out.convention.sign * acc;
    return out;
}

double det_line_l2_norm(const DetLineElement& e) {
    double v = 1.0;
    for (std::size_t k = 0; k < e.gram.size(); ++k) {
        if (e.gram[k].empty()) continue;
        double det = gram_det(e.gram[k]);
        if (det <= 0.0) throw std::invalid_argument("Gram determinant not positive");
        double sk = (k % 2 == 0) ? -1.0 : 1.0;
        v *= std::pow(det, 0.5 * sk);
    }
    return v;
}

double torsion_norm(const ModelPtr& m, const DetLineElement& e) {
    return std::exp(log_torsion(m).logT) * det_line_l2_norm(e);
}

DetLineElement circle_topological_element(double L) {
    if (L <= 0.0) throw std::invalid_argument("length must be positive");
    DetLineElement e;
    e.gram.push_back(Gram{{L}});
    e.gram.push_back(Gram{{1.0 / L}});
    return e;
}

VanishingReport even_dim_vanishing(const ModelPtr& modelF, const std::vector<double>& s_samples) {
    if (!modelF) throw std::invalid_argument("null model");
    if (modelF->dim() % 2 != 0) throw std::invalid_argument("even-dimensional model required");
    std::vector<ZetaFn> zs;
    for (int k = 1; k <= modelF->dim(); ++k) zs.emplace_back(modelF, k);
    VanishingReport rep;
    for (double s : s_samples) {
        double acc = 0.0;
        for (int k = 1; k <= modelF->dim(); ++k)
            acc += ((k % 2 == 0) ? 1.0 : -1.0) * k * zs[static_cast<std::size_t>(k - 1)].eval(s);
        rep.residuals.push_back(std::abs(acc));
    }
    double dacc = 0.0;
    for (int k = 1; k <= modelF->dim(); ++k)
        dacc += ((k % 2 == 0) ? 1.0 : -1.0) * k *
                zs[static_cast<std::size_t>(k - 1)].at_zero().deriv;
    rep.deriv_combo = std::abs(dacc);
    return rep;
}

ConeTraceForm flat_cone(int b) {
    if (b < 1) throw std::invalid_argument("link dimension must be positive");
    ConeTraceForm c;
    c.b = b;
    c.log_coeff.assign(static_cast<std::size_t>(b) + 2, {});
    return c;
}

ConeTraceForm cone_form(int b, const std::vector<Expansion>& per_degree) {
    if (b < 1) throw std::invalid_argument("link dimension must be positive");
    ConeTraceForm c;
    c.b = b;
    for (const auto& e : per_degree) {
        std::vector<Rational> row;
        for (const auto& t : e.terms) {
            if (!(t.alpha == Rational(0)))
                throw std::invalid_argument("cone trace not in scaling form");
            if (static_cast<int>(row.size()) <= t.k)
                row.resize(static_cast<std::size_t>(t.k) + 1, Rational(0));
            row[static_cast<std::size_t>(t.k)] = rational_near(t.coeff);
        }
        c.log_coeff.push_back(std::move(row));
    }
    return c;
}

double cone_numeric_trace(int b, int degree, double t) {
    double ck = cone_trace_coefficient(b, degree);
    Rational bb(b);
    PhgSample s;
    s.f = [b](double r) { return std::pow(r, b); };
    s.at_zero = Expansion(Expansion::End::zero, {ExpTerm{bb, 0, 1.0}}, b + 1.0, false);
    s.at_infinity = Expansion(Expansion::End::infinity, {ExpTerm{bb, 0, 1.0}}, -5.0, false);
    RegIntResult ri = regularized_integral(s);
    return ck * std::pow(t, -0.5 * (b + 1.0)) * ri.value;
}

WedgeReport wedge_torsion(const ConeTraceForm& cone, const ModelPtr& modelF) {
    if (!modelF) throw std::invalid_argument("null model");
    if (modelF->dim() % 2 != 0)
        throw std::invalid_argument("even-dimensional cross-section required");
    if (cone.b < 1) throw std::invalid_argument("link dimension must be positive");
    WedgeReport rep;

    // Each cone zeta: the two half-line Mellin transforms of log^l t cancel
    // exactly, so every degree's zeta is the zero function.
    bool ok = true;
    int lmax = 0;
    PoleCombo total;
    for (const auto& row : cone.log_coeff)
        for (int l = 0; l < static_cast<int>(row.size()); ++l) {
            const Rational& w = row[static_cast<std::size_t>(l)];
            if (w.is_zero()) continue;
            lmax = std::max(lmax, l);
            ok = ok && reg_int_zero_check(Rational(0), l);
            PoleCombo pc =
                mellin_term(Rational(0), l, MellinSide::unit) + mellin_term(Rational(0), l, MellinSide::tail);
            pc.scale(w);
            ok = ok && pc.is_zero();
            total += pc;
        }
    ok = ok && reg_int_zero_check(Rational(0), 0) && total.is_zero();
    rep.cone_zetas_vanish = ok;

    // The harmonic-factor correction differentiates in s once, which shifts
    // every log power up by one; the same cancellation applies.
    bool harm = true;
    for (int l = 0; l <= lmax + 1; ++l) harm = harm && reg_int_zero_check(Rational(0), l);
    rep.harmonic_term_vanishes = harm;

    // Positive fibre spectrum: the alternating weighted zeta sum on the
    // factor, value and derivative.
    VanishingReport v = even_dim_vanishing(modelF, {2.0, 3.0});
    rep.f_residuals = v.residuals;
    rep.f_deriv_combo = v.deriv_combo;

    if (!ok || !harm) throw std::runtime_error("scaling-form cancellation failed");
    rep.logT = 0.0;
    return rep;
}

} // namespace retorsion
