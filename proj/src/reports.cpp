#include "retorsion/reports.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "retorsion/expr.hpp"
#include "retorsion/index_set.hpp"
#include "retorsion/json_out.hpp"
#include "retorsion/reg_integral.hpp"

namespace retorsion {

namespace {

using nlohmann::json;

void emit_at_zero(JsonWriter& w, const ZetaZeroJet& jet) {
    w.key("at_zero").begin_object();
    w.key("pole").value(jet.pole);
    w.key("value").value(jet.value);
    w.key("deriv").value(jet.deriv);
    w.end_object();
}

}  // namespace

std::string model_info_json(const GeometryDesc& d, const ModelPtr& m) {
    if (!m) throw std::invalid_argument("null model");
    JsonWriter w;
    w.begin_object();
    w.key("descriptor").raw(emit_geometry(d));
    w.key("name").value(m->name());
    w.key("dim").value(m->dim());
    w.key("betti").begin_array();
    for (int k = 0; k <= m->dim(); ++k) w.value(m->betti(k));
    w.end_array();
    w.key("euler_char").value(m->euler_char());
    w.key("volume").value(m->volume());
    w.end_object();
    return w.str();
}

std::string torsion_report_json(const ModelPtr& m) {
    TorsionResult t = log_torsion(m);
    JsonWriter w;
    w.begin_object();
    w.key("tolerance").value(1e-11);  // continuation target per degree
    w.key("per_degree").begin_array();
    for (const auto& d : t.per_degree) {
        w.begin_object();
        w.key("k").value(d.k);
        w.key("zeta0").value(d.zeta0);
        w.key("dzeta0").value(d.dzeta0);
        w.key("betti").value(d.betti);
        w.end_object();
    }
    w.end_array();
    w.key("logT").value(t.logT);
    w.key("torsion").value(std::exp(t.logT));
    w.key("convention").begin_object();
    w.key("sign").value(t.convention.sign);
    w.key("orientation").value(t.convention.orientation);
    w.end_object();
    w.end_object();
    return w.str();
}

std::string zeta_report_json(const ModelPtr& m, int degree, const std::vector<double>& s_values,
                             double tol) {
    ZetaFn z(m, degree, tol);
    JsonWriter w;
    w.begin_object();
    w.key("degree").value(degree);
    w.key("tolerance").value(tol);
    w.key("values").begin_array();
    for (double s : s_values) {
        w.begin_object();
        w.key("s").value(s);
        w.key("value").value(z.eval(s));
        w.end_object();
    }
    w.end_array();
    emit_at_zero(w, z.at_zero());
    w.key("poles").begin_array();
    for (const auto& p : z.poles()) {
        w.begin_object();
        w.key("location").value(p.location);
        w.key("principal").begin_array();
        for (double c : p.principal) w.value(c);
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

std::string glue_report_json(const GluingReport& r) {
    JsonWriter w;
    w.begin_object();
    w.key("left").value(r.left);
    w.key("right").value(r.right);
    w.key("glued").value(r.glued);
    w.key("chi_factor").value(r.chi_factor);
    w.key("ratio").value(r.ratio);
    w.key("tolerance").value(r.tolerance);
    w.end_object();
    return w.str();
}

std::string trace_table_csv(const ModelPtr& m, int degree, const std::vector<double>& grid) {
    if (!m) throw std::invalid_argument("null model");
    if (degree < 0 || degree > m->dim()) throw std::invalid_argument("degree out of range");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] <= 0.0) throw std::invalid_argument("grid must be positive");
        if (i > 0 && grid[i] <= grid[i - 1]) throw std::invalid_argument("grid must be ascending");
    }
    Expansion head = m->short_time(degree);
    // Each row is compared against the declared expansion of its own end,
    // switching at the Mellin split t = 1; past it the declared tail is the
    // kernel constant, so the residual decays at both ends of a wide grid.
    double tail = static_cast<double>(m->betti(degree));
    std::string out = "t,trace,partial_sum,residual\n";
    for (double t : grid) {
        double tr = m->heat_trace(degree, t);
        double ps = t <= 1.0 ? head.main_part(t) : tail;
        out += json_double(t) + "," + json_double(tr) + "," + json_double(ps) + "," +
               json_double(tr - ps) + "\n";
    }
    return out;
}

namespace {

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw std::invalid_argument("exponent must be an integer or a \"p/q\" string");
}

Expansion expansion_from_json(const json& j, Expansion::End end) {
    if (!j.is_object()) throw std::invalid_argument("expansion must be an object");
    for (const auto& item : j.items())
        if (item.key() != "terms" && item.key() != "remainder" && item.key() != "exp_small")
            throw std::invalid_argument("unknown expansion key \"" + item.key() + "\"");
    std::vector<ExpTerm> terms;
    if (j.contains("terms")) {
        if (!j["terms"].is_array()) throw std::invalid_argument("terms must be an array");
        for (const auto& t : j["terms"]) {
            if (!t.is_array() || t.size() != 3)
                throw std::invalid_argument("each term must be [alpha, k, c]");
            ExpTerm e;
            e.alpha = rational_from_json(t[0]);
            if (!t[1].is_number_integer() || t[1].get<long>() < 0)
                throw std::invalid_argument("log power must be a nonnegative integer");
            e.k = static_cast<int>(t[1].get<long>());
            if (!t[2].is_number()) throw std::invalid_argument("coefficient must be a number");
            e.coeff = t[2].get<double>();
            terms.push_back(e);
        }
    }
    bool exp_small = j.contains("exp_small") && j["exp_small"].is_boolean() &&
                     j["exp_small"].get<bool>();
    double rem;
    if (j.contains("remainder")) {
        if (!j["remainder"].is_number()) throw std::invalid_argument("remainder must be a number");
        rem = j["remainder"].get<double>();
    } else if (exp_small) {
        rem = end == Expansion::End::zero ? 1.0 : -1.0;
    } else {
        throw std::invalid_argument("expansion needs a remainder order unless exp_small");
    }
    return Expansion(end, std::move(terms), rem, exp_small);
}

}  // namespace

std::string regint_run_json(const std::string& request_json) {
    json req;
    try {
        req = json::parse(request_json);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("regint request is not valid JSON (") + e.what() +
                                    ")");
    }
    if (!req.is_object()) throw std::invalid_argument("regint request must be an object");
    for (const auto& item : req.items()) {
        const std::string& k = item.key();
        if (k != "expr" && k != "at_zero" && k != "at_infinity" && k != "split" &&
            k != "tolerance")
            throw std::invalid_argument("unknown regint key \"" + k + "\"");
    }
    if (!req.contains("expr") || !req["expr"].is_string())
        throw std::invalid_argument("regint request needs an \"expr\" string");
    if (!req.contains("at_zero") || !req.contains("at_infinity"))
        throw std::invalid_argument("regint request needs at_zero and at_infinity expansions");
    auto f = parse_expression(req["expr"].get<std::string>());
    PhgSample sample(f, expansion_from_json(req["at_zero"], Expansion::End::zero),
                     expansion_from_json(req["at_infinity"], Expansion::End::infinity));
    double split = 1.0, tol = 1e-12;
    if (req.contains("split")) split = req["split"].get<double>();
    if (req.contains("tolerance")) tol = req["tolerance"].get<double>();
    if (!(split > 0.0) || !(tol > 0.0))
        throw std::invalid_argument("split and tolerance must be positive");
    RegIntResult r = regularized_integral(sample, split, tol);
    JsonWriter w;
    w.begin_object();
    w.key("value").value(r.value);
    w.key("error_estimate").value(r.error);
    w.key("converged").value(r.converged);
    w.end_object();
    return w.str();
}

namespace {

IndexTriple triple_from_text(const std::string& text) {
    std::size_t a = text.find('|');
    std::size_t b = a == std::string::npos ? std::string::npos : text.find('|', a + 1);
    if (b == std::string::npos)
        throw std::invalid_argument("a triple is three sets separated by '|'");
    IndexTriple t;
    t.e10 = IndexSet::parse(text.substr(0, a));
    t.e11 = IndexSet::parse(text.substr(a + 1, b - a - 1));
    t.e01 = IndexSet::parse(text.substr(b + 1));
    return t;
}

}  // namespace

std::string suite_report_json(const std::vector<CriterionResult>& results) {
    int failed = 0;
    JsonWriter w;
    w.begin_object();
    w.key("criteria").begin_array();
    for (const auto& r : results) {
        w.begin_object();
        w.key("name").value(r.name);
        w.key("passed").value(r.passed);
        w.key("detail").value(r.detail);
        w.end_object();
        if (!r.passed) ++failed;
    }
    w.end_array();
    w.key("passed").value(static_cast<int>(results.size()) - failed);
    w.key("failed").value(failed);
    w.key("all_passed").value(failed == 0);
    w.end_object();
    return w.str();
}

std::string indexset_op_text(const std::string& op, const std::vector<std::string>& args) {
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw std::invalid_argument("operation \"" + op + "\" takes " + std::to_string(n) +
                                        " arguments");
    };
    if (op == "eunion") {
        need(2);
        return extended_union(IndexSet::parse(args[0]), IndexSet::parse(args[1])).str();
    }
    if (op == "union") {
        need(2);
        return set_union(IndexSet::parse(args[0]), IndexSet::parse(args[1])).str();
    }
    if (op == "msum") {
        need(2);
        return minkowski_sum(IndexSet::parse(args[0]), IndexSet::parse(args[1])).str();
    }
    if (op == "shift") {
        need(2);
        return shift(IndexSet::parse(args[0]), Rational::parse(args[1])).str();
    }
    if (op == "pushforward") {
        need(2);
        IndexTriple r = pushforward_triple(triple_from_text(args[0]), triple_from_text(args[1]));
        return "F10 = " + r.e10.str() + "\nF11 = " + r.e11.str() + "\nF01 = " + r.e01.str();
    }
    throw std::invalid_argument("unknown index set operation \"" + op + "\"");
}

}  // namespace retorsion
