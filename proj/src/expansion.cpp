#include "retorsion/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace retorsion {

namespace {

std::vector<ExpTerm> merge_terms(const std::vector<ExpTerm>& raw) {
    std::map<std::pair<Rational, int>, double> acc;
    for (const auto& t : raw) acc[{t.alpha, t.k}] += t.coeff;
    std::vector<ExpTerm> out;
    for (const auto& [key, c] : acc)
        if (c != 0.0) out.push_back(ExpTerm{key.first, key.second, c});
    return out;
}

} // namespace

Expansion::Expansion(End e, std::vector<ExpTerm> ts, double rem, bool exp_decay)
    : end(e), terms(std::move(ts)), remainder_order(rem), exp_small(exp_decay) {
    std::sort(terms.begin(), terms.end(), [](const ExpTerm& a, const ExpTerm& b) {
        if (a.alpha != b.alpha) return a.alpha < b.alpha;
        return a.k < b.k;
    });
    for (std::size_t i = 1; i < terms.size(); ++i)
        if (terms[i].alpha == terms[i - 1].alpha && terms[i].k == terms[i - 1].k)
            throw std::invalid_argument("duplicate expansion term");
    for (const auto& t : terms)
        if (t.k < 0) throw std::invalid_argument("negative log power in expansion");
}

double Expansion::main_part(double x) const {
    double lx = std::log(x);
    double v = 0.0;
    for (const auto& t : terms) v += t.coeff * std::pow(x, t.alpha.to_double()) * std::pow(lx, t.k);
    return v;
}

double Expansion::coeff_at(const Rational& alpha, int k) const {
    for (const auto& t : terms)
        if (t.alpha == alpha && t.k == k) return t.coeff;
    return 0.0;
}

int Expansion::max_log_power_at(const Rational& alpha) const {
    int m = -1;
    for (const auto& t : terms)
        if (t.alpha == alpha && t.coeff != 0.0) m = std::max(m, t.k);
    return m;
}

PhgSample::PhgSample(std::function<double(double)> fn, Expansion z, Expansion inf)
    : f(std::move(fn)), at_zero(std::move(z)), at_infinity(std::move(inf)) {
    if (at_zero.end != Expansion::End::zero || at_infinity.end != Expansion::End::infinity)
        throw std::invalid_argument("expansion ends mismatched");
}

Expansion expansion_add(const Expansion& a, const Expansion& b) {
    if (a.end != b.end) throw std::invalid_argument("expansion ends mismatched");
    std::vector<ExpTerm> ts = a.terms;
    ts.insert(ts.end(), b.terms.begin(), b.terms.end());
    bool exp_small = a.exp_small && b.exp_small;
    double rem;
    if (a.exp_small)
        rem = b.remainder_order;
    else if (b.exp_small)
        rem = a.remainder_order;
    else if (a.end == Expansion::End::zero)
        rem = std::min(a.remainder_order, b.remainder_order);
    else
        rem = std::max(a.remainder_order, b.remainder_order);
    return Expansion(a.end, merge_terms(ts), rem, exp_small);
}

Expansion expansion_scaled(const Expansion& a, double c) {
    std::vector<ExpTerm> ts = a.terms;
    for (auto& t : ts) t.coeff *= c;
    return Expansion(a.end, merge_terms(ts), a.remainder_order, a.exp_small);
}

Expansion expansion_product(const Expansion& a, const Expansion& b) {
    if (a.end != b.end) throw std::invalid_argument("expansion ends mismatched");
    bool zero_end = a.end == Expansion::End::zero;
    std::vector<ExpTerm> ts;
    for (const auto& u : a.terms)
        for (const auto& v : b.terms)
            ts.push_back(ExpTerm{u.alpha + v.alpha, u.k + v.k, u.coeff * v.coeff});
    // Remainder: cross terms of each factor's main part with the other's
    // remainder, plus the product of remainders.
    auto edge_alpha = [zero_end](const Expansion& e) {
        double m = zero_end ? 1e300 : -1e300;
        for (const auto& t : e.terms) {
            double al = t.alpha.to_double();
            m = zero_end ? std::min(m, al) : std::max(m, al);
        }
        return m;
    };
    std::vector<double> orders;
    if (!b.exp_small && !a.terms.empty()) orders.push_back(edge_alpha(a) + b.remainder_order);
    if (!a.exp_small && !b.terms.empty()) orders.push_back(edge_alpha(b) + a.remainder_order);
    if (!a.exp_small && !b.exp_small) orders.push_back(a.remainder_order + b.remainder_order);
    bool exp_small = orders.empty();
    double rem = 0.0;
    if (exp_small) {
        rem = zero_end ? 1e9 : -1e9;
    } else {
        rem = orders[0];
        for (double o : orders) rem = zero_end ? std::min(rem, o) : std::max(rem, o);
    }
    return Expansion(a.end, merge_terms(ts), rem, exp_small);
}

bool validate_expansion(const std::function<double(double)>& f, const Expansion& e, double slack) {
    // Sample the stripped remainder on a geometric ladder and compare its
    // decay exponent against the declared order.
    bool toward_zero = e.end == Expansion::End::zero;
    double x = toward_zero ? 0.5 : 2.0;
    double q = toward_zero ? 0.5 : 2.0;
    double scale = 0.0;
    for (const auto& t : e.terms) scale = std::max(scale, std::abs(t.coeff));
    scale = std::max(scale, 1.0);
    if (e.exp_small) {
        // Must be far below any fixed power by the deep end of the ladder.
        double deep = x * std::pow(q, 11);
        return std::abs(f(deep) - e.main_part(deep)) <= 1e-8 * scale;
    }
    // Log-log slope of the stripped remainder vs the declared order.
    std::vector<double> lx, lr;
    for (int i = 0; i < 12; ++i, x *= q) {
        double rho = std::abs(f(x) - e.main_part(x));
        if (rho > 1e-13 * scale) {
            lx.push_back(std::log(x));
            lr.push_back(std::log(rho));
        }
    }
    if (lx.size() < 3) return true; // remainder numerically zero
    double n = static_cast<double>(lx.size());
    double mx = 0.0, mr = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], mr += lr[i];
    mx /= n, mr /= n;
    double cov = 0.0, var = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        cov += (lx[i] - mx) * (lr[i] - mr);
        var += (lx[i] - mx) * (lx[i] - mx);
    }
    double slope = cov / var;
    return toward_zero ? slope >= e.remainder_order - slack
                       : slope <= e.remainder_order + slack;
}

} // namespace retorsion
