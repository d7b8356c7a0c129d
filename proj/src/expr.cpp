#include "retorsion/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace retorsion {

namespace {

using Fn = std::function<double(double)>;

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("expression: " + msg + " at position " + std::to_string(pos));
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    Fn sum() {
        Fn left = term();
        while (true) {
            if (eat('+')) {
                Fn right = term();
                left = [left, right](double x) { return left(x) + right(x); };
            } else if (eat('-')) {
                Fn right = term();
                left = [left, right](double x) { return left(x) - right(x); };
            } else {
                return left;
            }
        }
    }

    Fn term() {
        Fn left = unary();
        while (true) {
            if (eat('*')) {
                Fn right = unary();
                left = [left, right](double x) { return left(x) * right(x); };
            } else if (eat('/')) {
                Fn right = unary();
                left = [left, right](double x) { return left(x) / right(x); };
            } else {
                return left;
            }
        }
    }

    Fn unary() {
        if (eat('-')) {
            Fn inner = unary();
            return [inner](double x) { return -inner(x); };
        }
        return power();
    }

    Fn power() {
        Fn base = primary();
        if (eat('^')) {
            Fn exponent = unary();  // right associative, allows -x in the exponent
            return [base, exponent](double x) { return std::pow(base(x), exponent(x)); };
        }
        return base;
    }

    Fn primary() {
        char c = peek();
        if (c == '(') {
            ++pos;
            Fn inner = sum();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* start = text.c_str() + pos;
            char* end = nullptr;
            double v = std::strtod(start, &end);
            if (end == start) fail("expected a number");
            pos += static_cast<std::size_t>(end - start);
            return [v](double) { return v; };
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
            std::string name = text.substr(start, pos - start);
            if (name == "x") return [](double x) { return x; };
            if (!eat('(')) fail("expected '(' after \"" + name + "\"");
            Fn arg = sum();
            if (!eat(')')) fail("expected ')'");
            if (name == "log") return [arg](double x) { return std::log(arg(x)); };
            if (name == "exp") return [arg](double x) { return std::exp(arg(x)); };
            if (name == "sqrt") return [arg](double x) { return std::sqrt(arg(x)); };
            if (name == "sin") return [arg](double x) { return std::sin(arg(x)); };
            if (name == "cos") return [arg](double x) { return std::cos(arg(x)); };
            pos = start;
            fail("unknown function \"" + name + "\"");
        }
        fail("unexpected input");
    }
};

}  // namespace

std::function<double(double)> parse_expression(const std::string& text) {
    Parser p{text};
    Fn f = p.sum();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return f;
}

}  // namespace retorsion
