#include "retorsion/reg_integral.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <map>
#include <stdexcept>

namespace retorsion {

double power_log_antiderivative(const Rational& alpha, int k, double x) {
    double lx = std::log(x);
    if (alpha == Rational(-1)) return std::pow(lx, k + 1) / (k + 1);
    double a1 = alpha.to_double() + 1.0;
    double xa = std::pow(x, a1);
    // sum_{j=0}^{k} (-1)^{k-j} (k!/j!) a1^{-(k-j+1)} log^j x
    double sum = 0.0;
    double fac = 1.0; // k!/j! for the current j, built downward
    double sign = 1.0;
    double apow = 1.0 / a1;
    // iterate j = k down to 0
    for (int j = k; j >= 0; --j) {
        sum += sign * fac * apow * std::pow(lx, j);
        sign = -sign;
        fac *= j; // (k!/j!) * j = k!/(j-1)!
        apow /= a1;
    }
    return xa * sum;
}

namespace {

void check_sample(const PhgSample& s) {
    if (!s.f) throw std::invalid_argument("sample has no evaluator");
    if (!s.at_zero.exp_small && s.at_zero.remainder_order <= -1.0)
        throw std::invalid_argument("remainder at 0 not integrable");
    if (!s.at_infinity.exp_small && s.at_infinity.remainder_order >= -1.0)
        throw std::invalid_argument("remainder at infinity not integrable");
}

} // namespace

RegIntResult regularized_integral(const PhgSample& s, double split, double tol) {
    check_sample(s);
    if (!(split > 0.0)) throw std::invalid_argument("split point must be positive");

    double value = 0.0;
    for (const auto& t : s.at_zero.terms)
        value += t.coeff * power_log_antiderivative(t.alpha, t.k, split);
    for (const auto& t : s.at_infinity.terms)
        value -= t.coeff * power_log_antiderivative(t.alpha, t.k, split);

    auto lower = integrate([&](double x) { return s.f(x) - s.at_zero.main_part(x); }, 0.0, split,
                           tol, tol);
    auto upper = integrate_to_infinity(
        [&](double x) { return s.f(x) - s.at_infinity.main_part(x); }, split, tol, tol);

    RegIntResult r;
    r.value = value + lower.value + upper.value;
    r.error = lower.error + upper.error;
    r.converged = lower.converged && upper.converged;
    return r;
}

RegLimit regularized_limit(const Expansion& e, bool strict, double log_tol) {
    RegLimit out;
    out.value = e.coeff_at(Rational(0), 0);
    int kmax = e.max_log_power_at(Rational(0));
    for (int k = 1; k <= kmax; ++k) {
        double c = e.coeff_at(Rational(0), k);
        if (std::abs(c) > log_tol) out.pure = false;
        out.log_coeffs.push_back(c);
    }
    if (strict && !out.pure)
        throw std::domain_error("regularized limit hit a log term in strict mode");
    return out;
}

PhgSample rescale_sample(const PhgSample& s, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("scale must be positive");
    auto transform = [lambda](const Expansion& e) {
        // a x^alpha log^k(lambda x) expands binomially in log lambda.
        std::map<std::pair<Rational, int>, double> acc;
        double ll = std::log(lambda);
        for (const auto& t : e.terms) {
            double la = std::pow(lambda, t.alpha.to_double());
            double binom = 1.0; // C(k, j), built downward from j = k
            for (int j = t.k; j >= 0; --j) {
                acc[{t.alpha, j}] += t.coeff * la * binom * std::pow(ll, t.k - j);
                binom *= static_cast<double>(j) / static_cast<double>(t.k - j + 1);
            }
        }
        std::vector<ExpTerm> ts;
        for (const auto& [key, c] : acc) ts.push_back(ExpTerm{key.first, key.second, c});
        return Expansion(e.end, std::move(ts), e.remainder_order, e.exp_small);
    };
    PhgSample out;
    auto f = s.f;
    out.f = [f, lambda](double x) { return f(lambda * x); };
    out.at_zero = transform(s.at_zero);
    out.at_infinity = transform(s.at_infinity);
    return out;
}

ChangeOfVarResult change_of_variable(const PhgSample& s, double lambda, double tol) {
    check_sample(s);
    ChangeOfVarResult out;
    // Substituting u = lambda x maps the split point 1 to 1/lambda; using the
    // image split keeps both transformed expansions inside the region where
    // their main parts are small, which the quadrature of the remainders
    // needs once lambda is far from 1.
    out.direct = regularized_integral(rescale_sample(s, lambda), 1.0 / lambda, tol).value;
    out.base = regularized_integral(s, 1.0, tol).value;

    int n0 = s.at_zero.max_log_power_at(Rational(-1));
    int ni = s.at_infinity.max_log_power_at(Rational(-1));
    int nf = std::max(n0, ni) + 1;
    double ll = std::log(lambda);
    double predicted = out.base;
    for (int l = 1; l <= nf; ++l) {
        double cl = (s.at_infinity.coeff_at(Rational(-1), l - 1) -
                     s.at_zero.coeff_at(Rational(-1), l - 1)) /
                    static_cast<double>(l);
        out.c.push_back(cl);
        predicted += cl * std::pow(ll, l);
    }
    out.predicted = predicted / lambda;
    return out;
}

SigmaFP sigma_finite_part(const PhgSample& s, double tol) {
    if (!s.f) throw std::invalid_argument("sample has no evaluator");
    if (!s.at_zero.exp_small && s.at_zero.remainder_order <= -1.0)
        throw std::invalid_argument("remainder at 0 not integrable");
    SigmaFP out;
    int pmax = 0;
    for (const auto& t : s.at_zero.terms)
        if (t.alpha == Rational(-1)) pmax = std::max(pmax, t.k + 1);
    out.principal.assign(static_cast<std::size_t>(pmax), 0.0);
    double value = 0.0;
    for (const auto& t : s.at_zero.terms) {
        if (t.alpha == Rational(-1)) {
            // int_0^1 x^{sigma-1} log^k = (-1)^k k! sigma^{-(k+1)}: pure pole.
            double fac = 1.0;
            for (int i = 2; i <= t.k; ++i) fac *= i;
            out.principal[static_cast<std::size_t>(t.k)] += t.coeff * ((t.k % 2 == 1) ? -fac : fac);
        } else {
            value += t.coeff * power_log_antiderivative(t.alpha, t.k, 1.0);
        }
    }
    auto rem = integrate([&](double x) { return s.f(x) - s.at_zero.main_part(x); }, 0.0, 1.0, tol,
                         tol);
    out.finite_part = value + rem.value;
    out.error = rem.error;
    return out;
}

FitResult fit_expansion(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<std::pair<Rational, int>>& basis) {
    if (xs.size() != ys.size()) throw std::invalid_argument("node/value size mismatch");
    if (basis.empty()) throw std::invalid_argument("empty basis");
    if (xs.size() < basis.size()) throw std::invalid_argument("fewer nodes than basis terms");
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (basis[i] == basis[j]) throw std::invalid_argument("duplicate basis term");

    const auto rows = static_cast<Eigen::Index>(xs.size());
    const auto cols = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd A(rows, cols);
    Eigen::VectorXd y(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        double x = xs[static_cast<std::size_t>(r)];
        double lx = std::log(x);
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto& [alpha, k] = basis[static_cast<std::size_t>(c)];
            A(r, c) = std::pow(x, alpha.to_double()) * std::pow(lx, k);
        }
        y(r) = ys[static_cast<std::size_t>(r)];
    }
    // Column scaling keeps the condition number about the geometry of the
    // basis rather than raw magnitudes.
    Eigen::VectorXd scale(cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        double n = A.col(c).norm();
        if (n == 0.0) throw std::invalid_argument("basis column vanishes on the nodes");
        scale(c) = n;
        A.col(c) /= n;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    FitResult out;
    const auto& sv = svd.singularValues();
    out.condition = sv(0) / sv(sv.size() - 1);
    Eigen::VectorXd c = svd.solve(y);
    Eigen::VectorXd resid = A * c - y;
    double ynorm = y.norm();
    out.residual = ynorm > 0.0 ? resid.norm() / ynorm : resid.norm();
    out.coeffs.resize(static_cast<std::size_t>(cols));
    for (Eigen::Index i = 0; i < cols; ++i)
        out.coeffs[static_cast<std::size_t>(i)] = c(i) / scale(i);
    return out;
}

RegLimit epsilon_limit_path(const PhgSample& s, double eps0, double ratio, int ladder,
                            double tol) {
    if (!s.f) throw std::invalid_argument("sample has no evaluator");
    // Basis for T(eps): the antiderivative of each declared term, plus the
    // constant slot the limit reads off.
    std::vector<std::pair<Rational, int>> basis;
    basis.push_back({Rational(0), 0});
    for (const auto& t : s.at_zero.terms) {
        if (t.alpha == Rational(-1)) {
            basis.push_back({Rational(0), t.k + 1});
        } else {
            for (int j = 0; j <= t.k; ++j) basis.push_back({t.alpha + Rational(1), j});
        }
    }
    // Slack powers soak up the integrated remainder below the declared terms.
    for (int j = 1; j <= 3; ++j) basis.push_back({Rational(j), 0});
    std::sort(basis.begin(), basis.end());
    basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
    // High powers whose whole contribution over the ladder sits below the
    // quadrature accuracy cannot be fitted; keeping them only starves the
    // solve of rows and poisons its conditioning.
    double lg = std::abs(std::log(eps0));
    std::erase_if(basis, [&](const std::pair<Rational, int>& b) {
        double re = b.first.to_double();
        return re > 0.0 && std::pow(eps0, re) * std::pow(std::max(1.0, lg), b.second) < 100.0 * tol;
    });
    // Constant slot may coincide with an (0,0) antiderivative power; fine.
    std::vector<double> xs, ys;
    double eps = eps0;
    for (int i = 0; i < ladder; ++i, eps *= ratio) {
        auto q = integrate(s.f, eps, 1.0, tol, tol);
        xs.push_back(eps);
        ys.push_back(q.value);
    }
    FitResult fit = fit_expansion(xs, ys, basis);
    std::vector<ExpTerm> ts;
    for (std::size_t i = 0; i < basis.size(); ++i)
        ts.push_back(ExpTerm{basis[i].first, basis[i].second, fit.coeffs[i]});
    Expansion e(Expansion::End::zero, std::move(ts), 1e9);
    return regularized_limit(e);
}

} // namespace retorsion
