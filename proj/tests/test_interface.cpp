#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "retorsion/expr.hpp"
#include "retorsion/geometry_json.hpp"
#include "retorsion/gluing.hpp"
#include "retorsion/json_out.hpp"
#include "retorsion/rational.hpp"
#include "retorsion/reports.hpp"

using namespace retorsion;
using doctest::Approx;

TEST_CASE("rational parsing") {
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(Rational::parse("-3/4") == Rational(-3, 4));
    CHECK(Rational::parse(" 7/2") == Rational(7, 2));
    CHECK(Rational::parse("-0") == Rational(0));
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
}

TEST_CASE("expression parser") {
    auto f = parse_expression("2*x^2 - 3*x + 1");
    CHECK(f(2.0) == Approx(3.0));
    CHECK(f(0.0) == Approx(1.0));

    // ^ binds right and tighter than unary minus on the left
    auto g = parse_expression("2^3^2");
    CHECK(g(0.0) == Approx(512.0));
    auto h = parse_expression("-x^2");
    CHECK(h(3.0) == Approx(-9.0));
    auto p = parse_expression("x^-1");
    CHECK(p(4.0) == Approx(0.25));

    auto q = parse_expression("exp(-x) * log(1 + x) / sqrt(x)");
    double x = 0.7;
    CHECK(q(x) == Approx(std::exp(-x) * std::log1p(x) / std::sqrt(x)));
    auto trig = parse_expression("sin(x)^2 + cos(x)^2");
    CHECK(trig(1.3) == Approx(1.0));

    CHECK_THROWS_AS(parse_expression(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_expression("2 +"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expression("log x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expression("(1 + x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expression("1 + y"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expression("1 2"), std::invalid_argument);
}

TEST_CASE("geometry parse and canonical emission") {
    GeometryDesc c = parse_geometry("{\"kind\": \"circle\", \"length\": 2.0}");
    CHECK(c.kind == GeometryDesc::Kind::circle);
    CHECK(c.length == 2.0);
    CHECK(c.holonomy == 0.0);
    CHECK(emit_geometry(c) == "{\"kind\":\"circle\",\"length\":2}");

    // key order and whitespace are free on input, fixed on output
    GeometryDesc c2 = parse_geometry("{ \"holonomy\": 1.5, \"kind\": \"circle\", \"length\": 1 }");
    CHECK(emit_geometry(c2) == "{\"kind\":\"circle\",\"length\":1,\"holonomy\":1.5}");

    GeometryDesc iv = parse_geometry("{\"kind\":\"interval\",\"length\":3,\"bc\":\"absolute\"}");
    CHECK(iv.bc == IntervalBC::absolute);
    CHECK(emit_geometry(iv) == "{\"kind\":\"interval\",\"length\":3,\"bc\":\"absolute\"}");

    GeometryDesc t = parse_geometry("{\"kind\":\"torus\",\"lengths\":[1,2.5]}");
    CHECK(emit_geometry(t) == "{\"kind\":\"torus\",\"lengths\":[1,2.5]}");

    std::string prod =
        "{\"kind\":\"product\",\"factors\":[{\"kind\":\"circle\",\"length\":1},"
        "{\"kind\":\"interval\",\"length\":1,\"bc\":\"relative\"}]}";
    CHECK(emit_geometry(parse_geometry(prod)) == prod);

    // round trip is idempotent on every kind
    for (const std::string& text :
         {std::string("{\"kind\":\"point\"}"), std::string("{\"kind\":\"circle\",\"length\":7}"),
          prod,
          std::string("{\"kind\":\"truncated\",\"eigenvalues\":{\"0\":[[1,1],[4,2]]},"
                      "\"betti\":[1]}")}) {
        std::string canonical = emit_geometry(parse_geometry(text));
        CHECK(emit_geometry(parse_geometry(canonical)) == canonical);
    }
}

TEST_CASE("geometry rejects malformed descriptors") {
    CHECK_THROWS_AS(parse_geometry("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_geometry("[1,2]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_geometry("{\"kind\":\"klein bottle\"}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_geometry("{\"kind\":\"circle\"}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_geometry("{\"kind\":\"circle\",\"length\":-1}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_geometry("{\"kind\":\"circle\",\"length\":1,\"radius\":2}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_geometry("{\"kind\":\"interval\",\"length\":1,\"bc\":\"dirichlet\"}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_geometry("{\"kind\":\"interval\",\"length\":1}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_geometry("{\"kind\":\"torus\",\"lengths\":[]}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        parse_geometry("{\"kind\":\"product\",\"factors\":[{\"kind\":\"point\"}]}"),
        std::invalid_argument);
    CHECK_THROWS_AS(parse_geometry("{\"kind\":\"truncated\",\"eigenvalues\":{}}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        parse_geometry("{\"kind\":\"truncated\",\"eigenvalues\":{\"x\":[[1,1]]}}"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_geometry("{\"kind\":\"truncated\",\"eigenvalues\":{\"0\":[[1,0]]}}"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_geometry("{\"kind\":\"truncated\",\"eigenvalues\":{\"0\":[[-1,1]]}}"),
        std::invalid_argument);
}

TEST_CASE("built models match their descriptors") {
    ModelPtr circle = build_model(parse_geometry("{\"kind\":\"circle\",\"length\":2}"));
    CHECK(circle->dim() == 1);
    CHECK(circle->volume() == Approx(2.0));
    CHECK(circle->betti(0) == 1);

    ModelPtr prod = build_model(parse_geometry(
        "{\"kind\":\"product\",\"factors\":[{\"kind\":\"circle\",\"length\":1},"
        "{\"kind\":\"circle\",\"length\":2},{\"kind\":\"circle\",\"length\":3}]}"));
    CHECK(prod->dim() == 3);
    CHECK(prod->volume() == Approx(6.0));
    CHECK(prod->betti(1) == 3);

    ModelPtr torus = build_model(parse_geometry("{\"kind\":\"torus\",\"lengths\":[1,2,3]}"));
    // same spectrum as the triple product, so the traces agree
    CHECK(torus->heat_trace(1, 0.3) == Approx(prod->heat_trace(1, 0.3)).epsilon(1e-12));

    ModelPtr tr = build_model(parse_geometry(
        "{\"kind\":\"truncated\",\"eigenvalues\":{\"0\":[[1,2]]},\"betti\":[1]}"));
    CHECK(tr->dim() == 0);
    CHECK(tr->heat_trace(0, 1.0) == Approx(1.0 + 2.0 * std::exp(-1.0)));
}

TEST_CASE("json writer basics") {
    JsonWriter w;
    w.begin_object();
    w.key("a").value(1);
    w.key("b").begin_array();
    w.value(true);
    w.value("x\"y\n");
    w.end_array();
    w.end_object();
    CHECK(w.str() == "{\"a\":1,\"b\":[true,\"x\\\"y\\n\"]}");

    CHECK(json_double(0.1) == "0.10000000000000001");
    CHECK(json_double(-3.0) == "-3");
    CHECK_THROWS_AS(json_double(std::nan("")), std::invalid_argument);

    JsonWriter bad;
    bad.begin_array();
    CHECK_THROWS_AS(bad.key("k"), std::logic_error);
}

TEST_CASE("model info and torsion reports") {
    GeometryDesc d = parse_geometry("{\"kind\":\"circle\",\"length\":2}");
    ModelPtr m = build_model(d);
    std::string info = model_info_json(d, m);
    CHECK(info == model_info_json(d, m));  // byte stable
    auto j = nlohmann::json::parse(info);
    CHECK(j["descriptor"]["kind"] == "circle");
    CHECK(j["dim"] == 1);
    CHECK(j["betti"] == nlohmann::json::array({1, 1}));
    CHECK(j["euler_char"] == 0);
    CHECK(j["volume"].get<double>() == Approx(2.0));

    std::string tors = torsion_report_json(m);
    CHECK(tors == torsion_report_json(m));
    auto tj = nlohmann::json::parse(tors);
    CHECK(tj["per_degree"].size() == 2);
    CHECK(tj["torsion"].get<double>() == Approx(2.0).epsilon(1e-10));
    CHECK(tj["convention"]["sign"] == 1);
}

TEST_CASE("zeta report structure") {
    ModelPtr m = build_model(parse_geometry("{\"kind\":\"circle\",\"length\":1}"));
    std::string rep = zeta_report_json(m, 0, {2.0, 3.0}, 1e-10);
    CHECK(rep == zeta_report_json(m, 0, {2.0, 3.0}, 1e-10));
    auto j = nlohmann::json::parse(rep);
    CHECK(j["degree"] == 0);
    REQUIRE(j["values"].size() == 2);
    CHECK(j["values"][0]["s"].get<double>() == 2.0);
    CHECK(j["at_zero"]["value"].get<double>() == Approx(-1.0).epsilon(1e-9));
    REQUIRE(!j["poles"].empty());
    CHECK(j["poles"][0]["location"].get<double>() == Approx(0.5));
}

TEST_CASE("glue report shape") {
    GluingReport r = circle_gluing_check(1.0);
    auto j = nlohmann::json::parse(glue_report_json(r));
    CHECK(j.size() == 6);
    CHECK(j["ratio"].get<double>() == Approx(1.0).epsilon(1e-8));
    CHECK(j["chi_factor"].get<double>() == Approx(2.0));
}

TEST_CASE("trace table") {
    ModelPtr m = build_model(parse_geometry("{\"kind\":\"circle\",\"length\":1}"));
    CHECK(trace_table_csv(m, 0, {}) == "t,trace,partial_sum,residual\n");
    std::string table = trace_table_csv(m, 0, {0.5, 1.0});
    CHECK(table == trace_table_csv(m, 0, {0.5, 1.0}));
    CHECK(table.substr(0, 30) == "t,trace,partial_sum,residual\n0");
    int rows = 0;
    for (char ch : table)
        if (ch == '\n') ++rows;
    CHECK(rows == 3);
    CHECK_THROWS_AS(trace_table_csv(m, 5, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(trace_table_csv(m, 0, {1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(trace_table_csv(m, 0, {-1.0}), std::invalid_argument);

    // on a wide geometric grid the residual is measured against the declared
    // expansion of the nearer end, so it dies off at both extremes
    std::vector<double> wide;
    for (int e = -10; e <= 4; ++e) wide.push_back(std::ldexp(1.0, e));
    std::string t2 = trace_table_csv(m, 0, wide);
    std::vector<double> resid;
    std::istringstream lines(t2);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line))
        resid.push_back(std::stod(line.substr(line.rfind(',') + 1)));
    REQUIRE(resid.size() == wide.size());
    CHECK(std::abs(resid.front()) < 1e-12);
    CHECK(std::abs(resid.back()) < 1e-12);
}

TEST_CASE("regint request round trip") {
    // int_0^inf e^{-x} dx, expansions honest at both ends
    std::string req =
        "{\"expr\":\"exp(-x)\","
        "\"at_zero\":{\"terms\":[[0,0,1],[1,0,-1]],\"remainder\":2},"
        "\"at_infinity\":{\"exp_small\":true}}";
    auto j = nlohmann::json::parse(regint_run_json(req));
    CHECK(j["value"].get<double>() == Approx(1.0).epsilon(1e-10));
    CHECK(j["converged"].get<bool>());

    // pure power: the regularized integral vanishes identically
    std::string zero =
        "{\"expr\":\"x^(-1/2)\",\"split\":2.5,"
        "\"at_zero\":{\"terms\":[[\"-1/2\",0,1]],\"remainder\":10},"
        "\"at_infinity\":{\"terms\":[[\"-1/2\",0,1]],\"remainder\":-10}}";
    auto z = nlohmann::json::parse(regint_run_json(zero));
    CHECK(z["value"].get<double>() == Approx(0.0).scale(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(regint_run_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(regint_run_json("{\"expr\":\"x\"}"), std::invalid_argument);
    CHECK_THROWS_AS(regint_run_json(
                        "{\"expr\":\"x\",\"at_zero\":{\"terms\":[]},"
                        "\"at_infinity\":{\"exp_small\":true},\"extra\":1}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(regint_run_json(
                        "{\"expr\":\"x\",\"at_zero\":{\"terms\":[[0,0,1]]},"
                        "\"at_infinity\":{\"exp_small\":true}}"),
                    std::invalid_argument);  // at_zero has no remainder
}

TEST_CASE("index set operations by text") {
    CHECK(indexset_op_text("eunion", {"{(0,0)}", "{(0,0)}"}) == "{(0,1)}; cutoff=10");
    // (1,0) sits in the closure of (0,0), so only the higher-log generator survives
    CHECK(indexset_op_text("union", {"{(0,0)}", "{(1,1)}"}) == "{(0,0),(1,1)}; cutoff=10");
    CHECK(indexset_op_text("msum", {"{(1,0)}", "{(2,1)}"}) == "{(3,1)}; cutoff=10");
    CHECK(indexset_op_text("shift", {"{(0,0)}", "3/2"}) == "{(3/2,0)}; cutoff=10");

    std::string push = indexset_op_text(
        "pushforward", {"{(0,0)}|{(0,0)}|{(0,0)}", "{(0,0)}|{(0,0)}|{(0,0)}"});
    CHECK(push.substr(0, 6) == "F10 = ");
    CHECK(push.find("\nF11 = ") != std::string::npos);
    CHECK(push.find("\nF01 = ") != std::string::npos);

    CHECK_THROWS_AS(indexset_op_text("eunion", {"{(0,0)}"}), std::invalid_argument);
    CHECK_THROWS_AS(indexset_op_text("frobnicate", {"a", "b"}), std::invalid_argument);
    CHECK_THROWS_AS(indexset_op_text("pushforward", {"{(0,0)}", "{(0,0)}"}),
                    std::invalid_argument);
}
