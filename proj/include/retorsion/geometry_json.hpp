#pragma once

#include <string>
#include <vector>

#include "retorsion/spectra.hpp"

namespace retorsion {

// Parsed geometry descriptor. Only the fields of the active kind are
// meaningful; emit_geometry writes them back in canonical form.
struct GeometryDesc {
    enum class Kind { point, circle, interval, torus, product, truncated };
    Kind kind = Kind::point;
    double length = 0.0;
    double holonomy = 0.0;
    IntervalBC bc = IntervalBC::relative;
    std::vector<double> lengths;
    std::vector<GeometryDesc> factors;
    std::vector<std::vector<EigenLine>> lines;  // truncated, per degree
    std::vector<int> betti;                     // truncated kernel dimensions
};

// Strict parse: unknown keys, wrong types, and out-of-range values all throw
// std::invalid_argument. The grammar matches the emitted canonical form.
GeometryDesc parse_geometry(const std::string& json_text);

// Canonical descriptor text: fixed key order, %.17g numbers. Emitting a
// parsed descriptor and reparsing gives the same canonical text back.
std::string emit_geometry(const GeometryDesc& d);

ModelPtr build_model(const GeometryDesc& d);

}  // namespace retorsion
