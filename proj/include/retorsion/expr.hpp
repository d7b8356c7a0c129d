#pragma once

#include <functional>
#include <string>

namespace retorsion {

// One-variable expression in x: numbers, + - * / ^, parentheses, and the
// functions log, exp, sqrt, sin, cos. Malformed input throws
// std::invalid_argument with the offending position.
std::function<double(double)> parse_expression(const std::string& text);

}  // namespace retorsion
