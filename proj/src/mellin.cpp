#include "retorsion/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace retorsion {

LaurentJet<double> to_double_jet(const LaurentJet<Rational>& j) {
    LaurentJet<double> out;
    out.lo = j.lo;
    out.coef.reserve(j.coef.size());
    for (const auto& c : j.coef) out.coef.push_back(c.to_double());
    return out;
}

LaurentJet<double> jet_mul(const LaurentJet<double>& a, const LaurentJet<double>& b, int hi_cap) {
    LaurentJet<double> out;
    out.lo = a.lo + b.lo;
    int n = hi_cap - out.lo + 1;
    if (n <= 0) return out;
    out.coef.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t i = 0; i < a.coef.size(); ++i)
        for (std::size_t j = 0; j < b.coef.size(); ++j) {
            std::size_t k = i + j;
            if (k < out.coef.size()) out.coef[k] += a.coef[i] * b.coef[j];
        }
    return out;
}

LaurentJet<double> jet_add(const LaurentJet<double>& a, const LaurentJet<double>& b) {
    LaurentJet<double> out;
    out.lo = std::min(a.lo, b.lo);
    int hi = std::max(a.hi(), b.hi());
    out.coef.assign(static_cast<std::size_t>(hi - out.lo + 1), 0.0);
    for (int o = out.lo; o <= hi; ++o) out.coef[static_cast<std::size_t>(o - out.lo)] = a.at(o) + b.at(o);
    return out;
}

void PoleCombo::add_term(const Rational& p, int m, const Rational& c) {
    if (m < 1) throw std::invalid_argument("pole order must be >= 1");
    if (c.is_zero()) return;
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const Term& t) { return t.p == p && t.m == m; });
    if (it != terms_.end()) {
        it->c += c;
        if (it->c.is_zero()) terms_.erase(it);
        return;
    }
    Term t{p, m, c};
    auto pos = std::lower_bound(terms_.begin(), terms_.end(), t, [](const Term& a, const Term& b) {
        if (a.p != b.p) return a.p < b.p;
        return a.m < b.m;
    });
    terms_.insert(pos, t);
}

PoleCombo& PoleCombo::operator+=(const PoleCombo& other) {
    for (const auto& t : other.terms_) add_term(t.p, t.m, t.c);
    return *this;
}

void PoleCombo::scale(const Rational& c) {
    if (c.is_zero()) { terms_.clear(); return; }
    for (auto& t : terms_) t.c *= c;
}

LaurentJet<Rational> PoleCombo::laurent_at(const Rational& s0, int lo, int hi) const {
    if (hi < lo) throw std::invalid_argument("empty jet window");
    LaurentJet<Rational> out;
    out.lo = lo;
    out.coef.assign(static_cast<std::size_t>(hi - lo + 1), Rational(0));
    auto bump = [&](int order, const Rational& c) {
        if (order < lo || order > hi) return;
        out.coef[static_cast<std::size_t>(order - lo)] += c;
    };
    for (const auto& t : terms_) {
        if (t.p == s0) {
            bump(-t.m, t.c);
            continue;
        }
        // c/(s-p)^m = c * (d + u)^{-m}, d = s0 - p:
        // sum_j binom(-m, j) d^{-m-j} u^j with binom(-m,j) = (-1)^j C(m+j-1, j).
        Rational d = s0 - t.p;
        Rational dpow = Rational(1);
        for (int i = 0; i < t.m; ++i) dpow /= d;
        Rational binom(1);
        for (int j = 0; j <= hi; ++j) {
            if (j > 0) {
                binom *= Rational(-(t.m + j - 1), j);
                dpow /= d;
            }
            bump(j, t.c * binom * dpow);
        }
    }
    return out;
}

double PoleCombo::eval(double s) const {
    double v = 0.0;
    for (const auto& t : terms_) v += t.c.to_double() * std::pow(s - t.p.to_double(), -t.m);
    return v;
}

PoleCombo mellin_term(const Rational& alpha, int k, MellinSide side) {
    if (k < 0) throw std::invalid_argument("log power must be >= 0");
    Rational c(1);
    for (int i = 2; i <= k; ++i) c *= Rational(i); // k!
    bool neg = (side == MellinSide::unit) ? (k % 2 == 1) : (k % 2 == 0);
    if (neg) c = -c;
    PoleCombo out;
    out.add_term(-alpha, k + 1, c);
    return out;
}

bool reg_int_zero_check(const Rational& alpha, int k) {
    PoleCombo s = mellin_term(alpha, k, MellinSide::unit);
    s += mellin_term(alpha, k, MellinSide::tail);
    return s.is_zero();
}

bool MeromorphicValue::has_pole() const {
    for (double c : principal)
        if (c != 0.0) return true;
    return false;
}

double MeromorphicValue::eval(double s) const {
    double u = s - location;
    double v = 0.0;
    for (std::size_t i = 0; i < principal.size(); ++i)
        v += principal[i] * std::pow(u, -static_cast<double>(i + 1));
    double up = 1.0;
    for (std::size_t j = 0; j < regular.size(); ++j) {
        v += regular[j] * up;
        up *= u;
    }
    return v;
}

} // namespace retorsion
