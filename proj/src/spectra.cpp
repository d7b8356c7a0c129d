#include "retorsion/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace retorsion {

namespace {

constexpr double kExpCut = 46.0; // e^{-46} ~ 1e-20

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

void drop_zero_lines(std::vector<EigenLine>& lines) {
    lines.erase(std::remove_if(lines.begin(), lines.end(),
                               [](const EigenLine& l) { return l.lambda <= 1e-12; }),
                lines.end());
}

} // namespace

int SpectralModel::euler_char() const {
    int chi = 0;
    for (int k = 0; k <= dim(); ++k) chi += (k % 2 == 0 ? 1 : -1) * betti(k);
    return chi;
}

double SpectralModel::spectral_gap(int k) const {
    for (double cap = 1.0; cap < 1e12; cap *= 4.0) {
        auto lines = eigenvalues(k, cap);
        if (!lines.empty()) return lines.front().lambda;
    }
    throw std::runtime_error("no nonzero spectrum found in degree " + std::to_string(k));
}

std::vector<EigenLine> merge_lines(std::vector<EigenLine> lines, double below) {
    std::sort(lines.begin(), lines.end(),
              [](const EigenLine& a, const EigenLine& b) { return a.lambda < b.lambda; });
    std::vector<EigenLine> out;
    for (const auto& l : lines) {
        if (l.lambda >= below || l.mult == 0) continue;
        if (!out.empty() && std::abs(l.lambda - out.back().lambda) <=
                                1e-9 * (1.0 + std::abs(l.lambda))) {
            out.back().mult += l.mult;
        } else {
            out.push_back(l);
        }
    }
    return out;
}

std::vector<EigenLine> convolve_lines(const std::vector<EigenLine>& a,
                                      const std::vector<EigenLine>& b, double below) {
    std::vector<EigenLine> sums;
    for (const auto& u : a)
        for (const auto& v : b) {
            double s = u.lambda + v.lambda;
            if (s < below) sums.push_back(EigenLine{s, u.mult * v.mult});
        }
    return merge_lines(std::move(sums), below);
}

double circle_scalar_trace(double length, double holonomy, double t) {
    if (length <= 0.0 || t <= 0.0) throw std::invalid_argument("need length > 0, t > 0");
    double L = length;
    if (t < L * L / (4.0 * M_PI)) {
        // dual sum
        double s = 1.0;
        for (int k = 1;; ++k) {
            double e = static_cast<double>(k) * k * L * L / (4.0 * t);
            if (e > kExpCut) break;
            s += 2.0 * std::cos(k * holonomy) * std::exp(-e);
        }
        return L / std::sqrt(4.0 * M_PI * t) * s;
    }
    double s = 0.0;
    int span = static_cast<int>(L * std::sqrt(kExpCut / t) / (2.0 * M_PI)) + 2;
    for (int n = -span; n <= span; ++n) {
        double mu = (2.0 * M_PI * n + holonomy) / L;
        double e = t * mu * mu;
        if (e <= kExpCut) s += std::exp(-e);
    }
    return s;
}

double dirichlet_trace(double length, double t) {
    if (length <= 0.0 || t <= 0.0) throw std::invalid_argument("need length > 0, t > 0");
    double L = length;
    if (t < L * L / M_PI) {
        double s = 0.0;
        for (int k = 1;; ++k) {
            double e = static_cast<double>(k) * k * L * L / t;
            if (e > kExpCut) break;
            s += std::exp(-e);
        }
        return L / (2.0 * std::sqrt(M_PI * t)) - 0.5 + L / std::sqrt(M_PI * t) * s;
    }
    double s = 0.0;
    for (int n = 1;; ++n) {
        double e = t * (M_PI * n / L) * (M_PI * n / L);
        if (e > kExpCut) break;
        s += std::exp(-e);
    }
    return s;
}

double neumann_trace(double length, double t) { return dirichlet_trace(length, t) + 1.0; }

namespace {

class PointModel final : public SpectralModel {
public:
    PointModel() { volume_ = 1.0; }
    std::string name() const override { return "point"; }
    int dim() const override { return 0; }
    int betti(int k) const override { return k == 0 ? 1 : 0; }
    std::vector<EigenLine> eigenvalues(int, double) const override { return {}; }
    double heat_trace(int k, double) const override { return k == 0 ? 1.0 : 0.0; }
    Expansion short_time(int k) const override {
        std::vector<ExpTerm> ts;
        if (k == 0) ts.push_back(ExpTerm{Rational(0), 0, 1.0});
        return Expansion(Expansion::End::zero, std::move(ts), 1e9, true);
    }
};

class CircleModel final : public SpectralModel {
public:
    CircleModel(double length, double holonomy) : L_(length), theta_(holonomy) {
        if (L_ <= 0.0) throw std::invalid_argument("circle needs length > 0");
        volume_ = L_;
        double th = std::fmod(theta_, 2.0 * M_PI);
        if (th < 0.0) th += 2.0 * M_PI;
        trivial_ = th < 1e-12 || 2.0 * M_PI - th < 1e-12;
    }
    std::string name() const override {
        return "circle(length=" + fmt(L_) + (trivial_ ? "" : ",holonomy=" + fmt(theta_)) + ")";
    }
    int dim() const override { return 1; }
    int betti(int k) const override { return (k == 0 || k == 1) && trivial_ ? 1 : 0; }
    std::vector<EigenLine> eigenvalues(int k, double below) const override {
        if (k != 0 && k != 1) return {};
        std::vector<EigenLine> lines;
        double r = L_ * std::sqrt(std::max(below, 0.0)) / (2.0 * M_PI);
        int lo = static_cast<int>(std::floor(-r - theta_ / (2.0 * M_PI))) - 1;
        int hi = static_cast<int>(std::ceil(r - theta_ / (2.0 * M_PI))) + 1;
        for (int n = lo; n <= hi; ++n) {
            double mu = (2.0 * M_PI * n + theta_) / L_;
            lines.push_back(EigenLine{mu * mu, 1});
        }
        auto merged = merge_lines(std::move(lines), below);
        drop_zero_lines(merged);
        return merged;
    }
    double heat_trace(int k, double t) const override {
        if (k != 0 && k != 1) return 0.0;
        return circle_scalar_trace(L_, theta_, t);
    }
    Expansion short_time(int k) const override {
        std::vector<ExpTerm> ts;
        if (k == 0 || k == 1)
            ts.push_back(ExpTerm{Rational(-1, 2), 0, L_ / (2.0 * std::sqrt(M_PI))});
        return Expansion(Expansion::End::zero, std::move(ts), 1e9, true);
    }

private:
    double L_, theta_;
    bool trivial_;
};

class IntervalModel final : public SpectralModel {
public:
    IntervalModel(double length, IntervalBC bc) : L_(length), bc_(bc) {
        if (L_ <= 0.0) throw std::invalid_argument("interval needs length > 0");
        volume_ = L_;
    }
    std::string name() const override {
        return std::string("interval(length=") + fmt(L_) +
               (bc_ == IntervalBC::relative ? ",bc=relative)" : ",bc=absolute)");
    }
    int dim() const override { return 1; }
    int betti(int k) const override {
        if (bc_ == IntervalBC::relative) return k == 1 ? 1 : 0;
        return k == 0 ? 1 : 0;
    }
    std::vector<EigenLine> eigenvalues(int k, double below) const override {
        // Dirichlet and Neumann share the nonzero spectrum.
        if (k != 0 && k != 1) return {};
        std::vector<EigenLine> lines;
        for (int n = 1;; ++n) {
            double lam = (M_PI * n / L_) * (M_PI * n / L_);
            if (lam >= below) break;
            lines.push_back(EigenLine{lam, 1});
        }
        return lines;
    }
    double heat_trace(int k, double t) const override {
        if (k != 0 && k != 1) return 0.0;
        bool dirichlet = (k == 0) == (bc_ == IntervalBC::relative);
        return dirichlet ? dirichlet_trace(L_, t) : neumann_trace(L_, t);
    }
    Expansion short_time(int k) const override {
        std::vector<ExpTerm> ts;
        if (k == 0 || k == 1) {
            bool dirichlet = (k == 0) == (bc_ == IntervalBC::relative);
            ts.push_back(ExpTerm{Rational(-1, 2), 0, L_ / (2.0 * std::sqrt(M_PI))});
            ts.push_back(ExpTerm{Rational(0), 0, dirichlet ? -0.5 : 0.5});
        }
        return Expansion(Expansion::End::zero, std::move(ts), 1e9, true);
    }

private:
    double L_;
    IntervalBC bc_;
};

class TorusModel final : public SpectralModel {
public:
    explicit TorusModel(std::vector<double> lengths) : Ls_(std::move(lengths)) {
        if (Ls_.empty()) throw std::invalid_argument("torus needs at least one length");
        volume_ = 1.0;
        for (double L : Ls_) {
            if (L <= 0.0) throw std::invalid_argument("torus needs lengths > 0");
            volume_ *= L;
        }
    }
    std::string name() const override {
        std::string s = "torus(lengths=";
        for (std::size_t i = 0; i < Ls_.size(); ++i) s += (i ? "," : "") + fmt(Ls_[i]);
        return s + ")";
    }
    int dim() const override { return static_cast<int>(Ls_.size()); }
    int betti(int k) const override { return static_cast<int>(binom(dim(), k)); }
    std::vector<EigenLine> eigenvalues(int k, double below) const override {
        if (k < 0 || k > dim()) return {};
        std::vector<EigenLine> cur{EigenLine{0.0, 1}};
        for (double L : Ls_) {
            std::vector<EigenLine> circ{EigenLine{0.0, 1}};
            for (int n = 1;; ++n) {
                double lam = (2.0 * M_PI * n / L) * (2.0 * M_PI * n / L);
                if (lam >= below) break;
                circ.push_back(EigenLine{lam, 2});
            }
            cur = convolve_lines(cur, circ, below);
        }
        drop_zero_lines(cur);
        int mult = static_cast<int>(binom(dim(), k));
        for (auto& l : cur) l.mult *= mult;
        return cur;
    }
    double heat_trace(int k, double t) const override {
        if (k < 0 || k > dim()) return 0.0;
        double s = 1.0;
        for (double L : Ls_) s *= circle_scalar_trace(L, 0.0, t);
        return static_cast<double>(binom(dim(), k)) * s;
    }
    Expansion short_time(int k) const override {
        std::vector<ExpTerm> ts;
        if (k >= 0 && k <= dim()) {
            double c = static_cast<double>(binom(dim(), k)) * volume_ /
                       std::pow(4.0 * M_PI, dim() / 2.0);
            ts.push_back(ExpTerm{Rational(-dim(), 2), 0, c});
        }
        return Expansion(Expansion::End::zero, std::move(ts), 1e9, true);
    }

private:
    std::vector<double> Ls_;
};

class ProductModel final : public SpectralModel {
public:
    ProductModel(ModelPtr a, ModelPtr b) : a_(std::move(a)), b_(std::move(b)) {
        if (!a_ || !b_) throw std::invalid_argument("product needs two factors");
        volume_ = a_->volume() * b_->volume();
    }
    std::string name() const override {
        return "product(" + a_->name() + "," + b_->name() + ")";
    }
    int dim() const override { return a_->dim() + b_->dim(); }
    int betti(int k) const override {
        int s = 0;
        for (int i = 0; i <= a_->dim(); ++i)
            if (k - i >= 0 && k - i <= b_->dim()) s += a_->betti(i) * b_->betti(k - i);
        return s;
    }
    std::vector<EigenLine> eigenvalues(int k, double below) const override {
        std::vector<EigenLine> all;
        for (int i = 0; i <= a_->dim(); ++i) {
            int j = k - i;
            if (j < 0 || j > b_->dim()) continue;
            auto la = a_->eigenvalues(i, below);
            if (a_->betti(i) > 0) la.push_back(EigenLine{0.0, a_->betti(i)});
            auto lb = b_->eigenvalues(j, below);
            if (b_->betti(j) > 0) lb.push_back(EigenLine{0.0, b_->betti(j)});
            auto conv = convolve_lines(la, lb, below);
            all.insert(all.end(), conv.begin(), conv.end());
        }
        auto merged = merge_lines(std::move(all), below);
        drop_zero_lines(merged);
        return merged;
    }
    double heat_trace(int k, double t) const override {
        double s = 0.0;
        for (int i = 0; i <= a_->dim(); ++i) {
            int j = k - i;
            if (j < 0 || j > b_->dim()) continue;
            s += a_->heat_trace(i, t) * b_->heat_trace(j, t);
        }
        return s;
    }
    Expansion short_time(int k) const override {
        Expansion acc(Expansion::End::zero, {}, 1e9, true);
        for (int i = 0; i <= a_->dim(); ++i) {
            int j = k - i;
            if (j < 0 || j > b_->dim()) continue;
            acc = expansion_add(acc, expansion_product(a_->short_time(i), b_->short_time(j)));
        }
        return acc;
    }

private:
    ModelPtr a_, b_;
};

class TruncatedModel final : public SpectralModel {
public:
    TruncatedModel(std::vector<std::vector<EigenLine>> lines, std::vector<int> betti)
        : lines_(std::move(lines)), betti_(std::move(betti)) {
        if (betti_.empty()) throw std::invalid_argument("truncated model needs betti numbers");
        if (lines_.size() != betti_.size())
            throw std::invalid_argument("truncated model: one line list per degree");
        for (auto& ls : lines_) {
            for (const auto& l : ls)
                if (l.lambda <= 0.0 || l.mult <= 0)
                    throw std::invalid_argument("truncated model needs positive lines");
            ls = merge_lines(std::move(ls), 1e300);
        }
        volume_ = 0.0;
    }
    std::string name() const override { return "truncated"; }
    int dim() const override { return static_cast<int>(betti_.size()) - 1; }
    int betti(int k) const override {
        return k >= 0 && k < static_cast<int>(betti_.size()) ? betti_[k] : 0;
    }
    std::vector<EigenLine> eigenvalues(int k, double below) const override {
        if (k < 0 || k >= static_cast<int>(lines_.size())) return {};
        std::vector<EigenLine> out;
        for (const auto& l : lines_[k])
            if (l.lambda < below) out.push_back(l);
        return out;
    }
    double heat_trace(int k, double t) const override {
        if (k < 0 || k >= static_cast<int>(lines_.size())) return 0.0;
        double s = betti_[k];
        for (const auto& l : lines_[k]) s += l.mult * std::exp(-l.lambda * t);
        return s;
    }
    Expansion short_time(int k) const override {
        std::vector<ExpTerm> ts;
        if (k >= 0 && k < static_cast<int>(lines_.size())) {
            for (int j = 0; j <= 8; ++j) {
                double c = j == 0 ? betti_[k] : 0.0;
                double fac = 1.0;
                for (int i = 1; i <= j; ++i) fac *= i;
                for (const auto& l : lines_[k]) c += l.mult * std::pow(-l.lambda, j) / fac;
                if (c != 0.0) ts.push_back(ExpTerm{Rational(j), 0, c});
            }
        }
        return Expansion(Expansion::End::zero, std::move(ts), 9.0);
    }

private:
    std::vector<std::vector<EigenLine>> lines_;
    std::vector<int> betti_;
};

} // namespace

ModelPtr make_point() { return std::make_shared<PointModel>(); }
ModelPtr make_circle(double length, double holonomy) {
    return std::make_shared<CircleModel>(length, holonomy);
}
ModelPtr make_interval(double length, IntervalBC bc) {
    return std::make_shared<IntervalModel>(length, bc);
}
ModelPtr make_torus(const std::vector<double>& lengths) {
    return std::make_shared<TorusModel>(lengths);
}
ModelPtr make_product(ModelPtr a, ModelPtr b) {
    return std::make_shared<ProductModel>(std::move(a), std::move(b));
}
ModelPtr make_truncated(std::vector<std::vector<EigenLine>> lines, std::vector<int> betti) {
    return std::make_shared<TruncatedModel>(std::move(lines), std::move(betti));
}

double supertrace(const SpectralModel& m, double t) {
    double s = 0.0;
    for (int k = 0; k <= m.dim(); ++k) s += (k % 2 == 0 ? 1.0 : -1.0) * m.heat_trace(k, t);
    return s;
}

double weighted_supertrace(const SpectralModel& m, double t) {
    double s = 0.0;
    for (int k = 1; k <= m.dim(); ++k)
        s += (k % 2 == 0 ? 1.0 : -1.0) * k * m.heat_trace(k, t);
    return s;
}

double weighted_supertrace_nonzero(const SpectralModel& m, double t) {
    double s = 0.0;
    for (int k = 1; k <= m.dim(); ++k)
        s += (k % 2 == 0 ? 1.0 : -1.0) * k * m.heat_trace_nonzero(k, t);
    return s;
}

double free_heat_kernel(int n, double t, const std::vector<double>& x,
                        const std::vector<double>& y) {
    if (n < 1 || static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw std::invalid_argument("free_heat_kernel: dimension mismatch");
    if (t <= 0.0) throw std::invalid_argument("free_heat_kernel: need t > 0");
    double d2 = 0.0;
    for (int i = 0; i < n; ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
    return std::pow(4.0 * M_PI * t, -0.5 * n) * std::exp(-d2 / (4.0 * t));
}

double cone_trace_coefficient(int b, int k) {
    if (b < 1) throw std::invalid_argument("cone link dimension must be >= 1");
    if (k < 0 || k > b + 1) return 0.0;
    return static_cast<double>(binom(b + 1, k)) * std::pow(4.0 * M_PI, -0.5 * (b + 1));
}

} // namespace retorsion
