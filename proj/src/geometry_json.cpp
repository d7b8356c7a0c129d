#include "retorsion/geometry_json.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "retorsion/json_out.hpp"

namespace retorsion {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument("geometry: " + msg); }

void check_keys(const json& j, std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (item.key() == k) ok = true;
        if (!ok) bad("unknown key \"" + item.key() + "\"");
    }
}

double positive_number(const json& j, const char* what) {
    if (!j.is_number()) bad(std::string(what) + " must be a number");
    double v = j.get<double>();
    if (!std::isfinite(v) || v <= 0.0) bad(std::string(what) + " must be positive and finite");
    return v;
}

GeometryDesc parse_node(const json& j);

GeometryDesc parse_truncated(const json& j) {
    GeometryDesc d;
    d.kind = GeometryDesc::Kind::truncated;
    check_keys(j, {"kind", "eigenvalues", "betti"});
    if (!j.contains("eigenvalues") || !j["eigenvalues"].is_object())
        bad("truncated needs an \"eigenvalues\" object keyed by degree");
    std::map<int, std::vector<EigenLine>> by_degree;
    for (const auto& item : j["eigenvalues"].items()) {
        const std::string& key = item.key();
        char* end = nullptr;
        long deg = std::strtol(key.c_str(), &end, 10);
        if (key.empty() || *end != '\0' || deg < 0 || deg > 64)
            bad("eigenvalue degree key \"" + key + "\" is not a small nonnegative integer");
        if (!item.value().is_array()) bad("eigenvalues per degree must be an array");
        std::vector<EigenLine> lines;
        for (const auto& pair : item.value()) {
            if (!pair.is_array() || pair.size() != 2) bad("each line must be [lambda, mult]");
            EigenLine l;
            l.lambda = positive_number(pair[0], "eigenvalue");
            if (!pair[1].is_number_integer() || pair[1].get<long>() < 1)
                bad("multiplicity must be a positive integer");
            l.mult = static_cast<int>(pair[1].get<long>());
            lines.push_back(l);
        }
        by_degree[static_cast<int>(deg)] = std::move(lines);
    }
    int top = by_degree.empty() ? -1 : by_degree.rbegin()->first;
    if (j.contains("betti")) {
        if (!j["betti"].is_array()) bad("betti must be an array");
        for (const auto& b : j["betti"]) {
            if (!b.is_number_integer() || b.get<long>() < 0)
                bad("betti entries must be nonnegative integers");
            d.betti.push_back(static_cast<int>(b.get<long>()));
        }
        top = std::max(top, static_cast<int>(d.betti.size()) - 1);
    }
    if (top < 0) bad("truncated model is empty");
    d.lines.assign(static_cast<std::size_t>(top) + 1, {});
    for (auto& [deg, lines] : by_degree) d.lines[static_cast<std::size_t>(deg)] = std::move(lines);
    d.betti.resize(static_cast<std::size_t>(top) + 1, 0);
    return d;
}

GeometryDesc parse_node(const json& j) {
    if (!j.is_object()) bad("descriptor must be a JSON object");
    if (!j.contains("kind") || !j["kind"].is_string()) bad("missing \"kind\"");
    std::string kind = j["kind"].get<std::string>();
    GeometryDesc d;
    if (kind == "point") {
        d.kind = GeometryDesc::Kind::point;
        check_keys(j, {"kind"});
    } else if (kind == "circle") {
        d.kind = GeometryDesc::Kind::circle;
        check_keys(j, {"kind", "length", "holonomy"});
        if (!j.contains("length")) bad("circle needs a length");
        d.length = positive_number(j["length"], "length");
        if (j.contains("holonomy")) {
            if (!j["holonomy"].is_number()) bad("holonomy must be a number");
            d.holonomy = j["holonomy"].get<double>();
            if (!std::isfinite(d.holonomy)) bad("holonomy must be finite");
        }
    } else if (kind == "interval") {
        d.kind = GeometryDesc::Kind::interval;
        check_keys(j, {"kind", "length", "bc"});
        if (!j.contains("length")) bad("interval needs a length");
        d.length = positive_number(j["length"], "length");
        if (!j.contains("bc") || !j["bc"].is_string()) bad("interval needs bc");
        std::string bc = j["bc"].get<std::string>();
        if (bc == "relative")
            d.bc = IntervalBC::relative;
        else if (bc == "absolute")
            d.bc = IntervalBC::absolute;
        else
            bad("bc must be \"relative\" or \"absolute\"");
    } else if (kind == "torus") {
        d.kind = GeometryDesc::Kind::torus;
        check_keys(j, {"kind", "lengths"});
        if (!j.contains("lengths") || !j["lengths"].is_array() || j["lengths"].empty())
            bad("torus needs a nonempty lengths array");
        for (const auto& l : j["lengths"]) d.lengths.push_back(positive_number(l, "length"));
    } else if (kind == "product") {
        d.kind = GeometryDesc::Kind::product;
        check_keys(j, {"kind", "factors"});
        if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].size() < 2)
            bad("product needs at least two factors");
        for (const auto& f : j["factors"]) d.factors.push_back(parse_node(f));
    } else if (kind == "truncated") {
        d = parse_truncated(j);
    } else {
        bad("unknown kind \"" + kind + "\"");
    }
    return d;
}

void emit_node(JsonWriter& w, const GeometryDesc& d) {
    w.begin_object();
    switch (d.kind) {
        case GeometryDesc::Kind::point:
            w.key("kind").value("point");
            break;
        case GeometryDesc::Kind::circle:
            w.key("kind").value("circle");
            w.key("length").value(d.length);
            if (d.holonomy != 0.0) w.key("holonomy").value(d.holonomy);
            break;
        case GeometryDesc::Kind::interval:
            w.key("kind").value("interval");
            w.key("length").value(d.length);
            w.key("bc").value(d.bc == IntervalBC::relative ? "relative" : "absolute");
            break;
        case GeometryDesc::Kind::torus:
            w.key("kind").value("torus");
            w.key("lengths").begin_array();
            for (double l : d.lengths) w.value(l);
            w.end_array();
            break;
        case GeometryDesc::Kind::product:
            w.key("kind").value("product");
            w.key("factors").begin_array();
            for (const auto& f : d.factors) emit_node(w, f);
            w.end_array();
            break;
        case GeometryDesc::Kind::truncated: {
            w.key("kind").value("truncated");
            w.key("eigenvalues").begin_object();
            for (std::size_t k = 0; k < d.lines.size(); ++k) {
                w.key(std::to_string(k)).begin_array();
                for (const auto& l : d.lines[k]) {
                    w.begin_array();
                    w.value(l.lambda);
                    w.value(l.mult);
                    w.end_array();
                }
                w.end_array();
            }
            w.end_object();
            bool any = false;
            for (int b : d.betti) any = any || b != 0;
            if (any) {
                w.key("betti").begin_array();
                for (int b : d.betti) w.value(b);
                w.end_array();
            }
            break;
        }
    }
    w.end_object();
}

}  // namespace

GeometryDesc parse_geometry(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad(std::string("not valid JSON (") + e.what() + ")");
    }
    return parse_node(j);
}

std::string emit_geometry(const GeometryDesc& d) {
    JsonWriter w;
    emit_node(w, d);
    return w.str();
}

ModelPtr build_model(const GeometryDesc& d) {
    switch (d.kind) {
        case GeometryDesc::Kind::point:
            return make_point();
        case GeometryDesc::Kind::circle:
            return make_circle(d.length, d.holonomy);
        case GeometryDesc::Kind::interval:
            return make_interval(d.length, d.bc);
        case GeometryDesc::Kind::torus:
            return make_torus(d.lengths);
        case GeometryDesc::Kind::product: {
            ModelPtr m = build_model(d.factors.front());
            for (std::size_t i = 1; i < d.factors.size(); ++i)
                m = make_product(m, build_model(d.factors[i]));
            return m;
        }
        case GeometryDesc::Kind::truncated:
            return make_truncated(d.lines, d.betti);
    }
    throw std::logic_error("unreachable geometry kind");
}

}  // namespace retorsion
