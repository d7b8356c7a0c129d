#include "retorsion/index_set.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace retorsion {

namespace {

// g generates (g.alpha + l, k' <= g.k); t is redundant next to g when it lies
// in that cone.
bool dominates(const IndexTerm& g, const IndexTerm& t) {
    if (g.im != t.im || t.k > g.k) return false;
    Rational d = t.re - g.re;
    return d.is_integer() && d.num() >= 0;
}

} // namespace

IndexSet::IndexSet(std::vector<IndexTerm> gens, int cutoff)
    : gens_(std::move(gens)), cutoff_(cutoff) {
    for (const auto& t : gens_)
        if (t.k < 0) throw std::invalid_argument("index term with negative log power");
    normalize();
}

IndexSet IndexSet::smooth(int cutoff) { return single(Rational(0), 0, cutoff); }

IndexSet IndexSet::single(Rational re, int k, int cutoff) {
    return IndexSet({IndexTerm{re, Rational(0), k}}, cutoff);
}

void IndexSet::normalize() {
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    std::vector<IndexTerm> kept;
    for (const auto& t : gens_) {
        bool dom = false;
        for (const auto& g : gens_) {
            if (g == t) continue;
            if (dominates(g, t)) { dom = true; break; }
        }
        if (!dom) kept.push_back(t);
    }
    gens_ = std::move(kept);
}

std::optional<bool> IndexSet::contains(const IndexTerm& t) const {
    if (t.re > Rational(cutoff_)) return std::nullopt;
    for (const auto& g : gens_)
        if (dominates(g, t) || g == t) return true;
    return false;
}

std::vector<IndexTerm> IndexSet::enumerate_below(const Rational& bound) const {
    if (bound > Rational(cutoff_))
        throw std::invalid_argument("enumeration bound exceeds cutoff");
    std::vector<IndexTerm> out;
    for (const auto& g : gens_) {
        for (Rational re = g.re; re <= bound; re += Rational(1)) {
            for (int k = 0; k <= g.k; ++k) out.push_back(IndexTerm{re, g.im, k});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool IndexSet::check_bound(const Rational& c, bool strict) const {
    for (const auto& g : gens_) {
        if (strict) {
            if (!(g.re > c)) return false;
        } else {
            if (g.re < c) return false;
            if (g.re == c && g.k > 0) return false;
        }
    }
    return true;
}

std::optional<IndexSet::Inf> IndexSet::infimum() const {
    if (gens_.empty()) return std::nullopt;
    Rational m = gens_.front().re;
    for (const auto& g : gens_)
        if (g.re < m) m = g.re;
    bool log_at = false;
    for (const auto& g : gens_)
        if (g.re == m && g.k > 0) log_at = true;
    return Inf{m, log_at};
}

std::string IndexSet::str() const {
    std::string s = "{";
    bool first = true;
    for (const auto& g : gens_) {
        if (!first) s += ",";
        first = false;
        s += "(" + g.re.str();
        if (!g.im.is_zero()) {
            if (g.im.num() >= 0) s += "+";
            s += g.im.str() + "i";
        }
        s += "," + std::to_string(g.k) + ")";
    }
    s += "}; cutoff=" + std::to_string(cutoff_);
    return s;
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw std::invalid_argument(std::string("index set parse: expected '") + c +
                                        "' at position " + std::to_string(i));
    }
    bool eat_word(const char* w) {
        skip_ws();
        std::size_t j = i;
        for (const char* p = w; *p; ++p, ++j)
            if (j >= s.size() || s[j] != *p) return false;
        i = j;
        return true;
    }
    std::int64_t integer() {
        skip_ws();
        bool neg = eat('-');
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw std::invalid_argument("index set parse: expected integer at position " +
                                        std::to_string(i));
        std::int64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            ++i;
        }
        return neg ? -v : v;
    }
    Rational rational() {
        std::int64_t n = integer();
        if (eat('/')) return Rational(n, integer());
        return Rational(n);
    }
};

} // namespace

IndexSet IndexSet::parse(const std::string& text) {
    Cursor c{text};
    c.expect('{');
    std::vector<IndexTerm> gens;
    c.skip_ws();
    if (!c.eat('}')) {
        while (true) {
            c.expect('(');
            IndexTerm t;
            t.re = c.rational();
            c.skip_ws();
            if (c.i < text.size() && (text[c.i] == '+' || text[c.i] == '-')) {
                Rational im = c.rational();
                if (!c.eat('i'))
                    throw std::invalid_argument("index set parse: expected 'i' at position " +
                                                std::to_string(c.i));
                t.im = im;
            }
            c.expect(',');
            std::int64_t k = c.integer();
            if (k < 0) throw std::invalid_argument("index set parse: negative log power");
            t.k = static_cast<int>(k);
            c.expect(')');
            gens.push_back(t);
            if (c.eat('}')) break;
            c.expect(',');
        }
    }
    int cutoff = kDefaultCutoff;
    if (c.eat(';')) {
        if (!c.eat_word("cutoff")) throw std::invalid_argument("index set parse: expected 'cutoff'");
        c.expect('=');
        cutoff = static_cast<int>(c.integer());
    }
    c.skip_ws();
    if (c.i != text.size())
        throw std::invalid_argument("index set parse: trailing input at position " +
                                    std::to_string(c.i));
    return IndexSet(std::move(gens), cutoff);
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    std::vector<IndexTerm> gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    return IndexSet(std::move(gens), std::min(a.cutoff(), b.cutoff()));
}

IndexSet extended_union(const IndexSet& a, const IndexSet& b) {
    std::vector<IndexTerm> gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    // Two generator cones share exponents iff the imaginary parts agree and
    // the real parts differ by an integer; the shared ladder starts at the
    // larger real part, where the maximal combined log power lives.
    for (const auto& g : a.generators()) {
        for (const auto& h : b.generators()) {
            if (g.im != h.im) continue;
            Rational d = g.re - h.re;
            if (!d.is_integer()) continue;
            gens.push_back(IndexTerm{std::max(g.re, h.re), g.im, g.k + h.k + 1});
        }
    }
    return IndexSet(std::move(gens), std::min(a.cutoff(), b.cutoff()));
}

IndexSet minkowski_sum(const IndexSet& a, const IndexSet& b) {
    std::vector<IndexTerm> gens;
    for (const auto& g : a.generators())
        for (const auto& h : b.generators())
            gens.push_back(IndexTerm{g.re + h.re, g.im + h.im, g.k + h.k});
    return IndexSet(std::move(gens), std::min(a.cutoff(), b.cutoff()));
}

IndexSet shift(const IndexSet& a, const Rational& by) {
    std::vector<IndexTerm> gens = a.generators();
    for (auto& g : gens) g.re += by;
    return IndexSet(std::move(gens), a.cutoff());
}

IndexTriple pushforward_triple(const IndexTriple& u, const IndexTriple& w) {
    IndexTriple out;
    out.e10 = extended_union(minkowski_sum(u.e11, w.e10), u.e10);
    out.e11 = extended_union(minkowski_sum(u.e10, w.e01), minkowski_sum(u.e11, w.e11));
    out.e01 = extended_union(minkowski_sum(u.e01, w.e11), w.e01);
    return out;
}

IndexTriple indicator_weight_triple(int cutoff) {
    return IndexTriple{IndexSet::empty(cutoff), IndexSet::smooth(cutoff),
                       IndexSet::smooth(cutoff)};
}

const char* face_name(Face f) {
    switch (f) {
        case Face::sc: return "sc";
        case Face::zf: return "zf";
        case Face::phif0: return "phif0";
        case Face::bf0: return "bf0";
        case Face::lb0: return "lb0";
        case Face::rb0: return "rb0";
    }
    return "?";
}

const FaceBound* FaceBounds::find(Face f) const {
    for (const auto& [face, b] : bounds)
        if (face == f) return &b;
    return nullptr;
}

FaceBounds resolvent_power_bounds(int sigma, int b) {
    if (sigma < 1) throw std::invalid_argument("resolvent power must be >= 1");
    if (b < 2) throw std::invalid_argument("base dimension must be >= 2");
    FaceBounds fb;
    Rational phif0 = std::min(Rational(0), Rational(-2 * sigma + b + 1));
    fb.bounds.push_back({Face::sc, {Rational(0), false}});
    fb.bounds.push_back({Face::phif0, {phif0, false}});
    fb.bounds.push_back({Face::bf0, {Rational(-2 * sigma), false}});
    fb.bounds.push_back({Face::lb0, {Rational(-2 * (sigma - 1)), true}});
    fb.bounds.push_back({Face::rb0, {Rational(-2 * (sigma - 1)), true}});
    fb.bounds.push_back({Face::zf, {Rational(-2 * sigma), false}});
    return fb;
}

HeatTraceBounds heat_trace_bounds(int nu, int b) {
    if (nu < 1) throw std::invalid_argument("resolvent power must be >= 1");
    if (b < 2) throw std::invalid_argument("base dimension must be >= 2");

    // Trace-level resolvent bounds feeding the contour: the fibre integration
    // leaves sc >= 0, zf >= -2 nu, phif0 >= -2 nu + (b+1).
    IndexSet f_sc = IndexSet::single(Rational(0), 0);
    IndexSet f_zf = IndexSet::single(Rational(-2 * nu), 0);
    IndexSet f_phif0 = IndexSet::single(Rational(-2 * nu + b + 1), 0);

    HeatTraceBounds out;

    // Rays at infinity: exponential decay in t kills zf and phif0 entirely.
    out.rays_sc = f_sc;
    out.rays_zf = IndexSet::empty();
    out.rays_phif0 = IndexSet::empty();

    // Arc at radius 1/t: the t^{-nu} prefactor lifts to a 2 nu shift at the
    // temporal faces.
    out.arc_sc = f_sc;
    out.arc_zf = shift(f_zf, Rational(2 * nu));
    out.arc_phif0 = shift(f_phif0, Rational(2 * nu));

    // Segments between 1/t and 1: same shifts, and the sc behaviour of the
    // integrand is carried into phif0 across the corner, weighted by the
    // corner codimension b+1 on top of the segment shift.
    out.seg_sc = f_sc;
    out.seg_zf = shift(f_zf, Rational(2 * nu));
    out.seg_phif0 = extended_union(shift(f_phif0, Rational(2 * nu)),
                                   shift(f_sc, Rational(2 * nu + b + 1)));

    out.sc = set_union(set_union(out.rays_sc, out.arc_sc), out.seg_sc);
    out.zf = set_union(set_union(out.rays_zf, out.arc_zf), out.seg_zf);
    out.phif0 = set_union(set_union(out.rays_phif0, out.arc_phif0), out.seg_phif0);

    out.stated.bounds.push_back({Face::sc, {Rational(0), false}});
    out.stated.bounds.push_back({Face::zf, {Rational(0), false}});
    out.stated.bounds.push_back({Face::phif0, {Rational(b + 1), false}});

    if (!out.sc.check_bound(Rational(0), false) || !out.zf.check_bound(Rational(0), false) ||
        !out.phif0.check_bound(Rational(b + 1), false))
        throw std::logic_error("heat trace bound assembly violated the stated bounds");
    return out;
}

} // namespace retorsion
