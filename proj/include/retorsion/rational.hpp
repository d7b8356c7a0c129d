#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace retorsion {

// Exact rational arithmetic on int64 with overflow checking. Exponents in
// index sets stay small (desk scale), so 64 bits is plenty; we still guard
// every product so a bad input fails loudly instead of wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { reduce(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                        checked_mul(a.den_, b.den_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(checked_sub(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                        checked_mul(a.den_, b.den_));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return Rational(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
    }
    Rational operator-() const { return Rational(-num_, den_); }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    // "p" for integers, "p/q" otherwise.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Inverse of str(): "p" or "p/q", optional sign, nothing else.
    static Rational parse(const std::string& text) {
        std::size_t slash = text.find('/');
        try {
            std::size_t used = 0;
            if (slash == std::string::npos) {
                std::int64_t n = std::stoll(text, &used);
                if (used != text.size()) throw std::invalid_argument(text);
                return Rational(n);
            }
            std::int64_t n = std::stoll(text.substr(0, slash), &used);
            if (used != slash) throw std::invalid_argument(text);
            std::int64_t d = std::stoll(text.substr(slash + 1), &used);
            if (used != text.size() - slash - 1) throw std::invalid_argument(text);
            return Rational(n, d);
        } catch (const std::domain_error&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("not a rational: \"" + text + "\"");
        }
    }

private:
    void reduce() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        __int128 r = static_cast<__int128>(a) * b;
        if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("rational overflow");
        return static_cast<std::int64_t>(r);
    }
    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        __int128 r = static_cast<__int128>(a) + b;
        if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("rational overflow");
        return static_cast<std::int64_t>(r);
    }
    static std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
        __int128 r = static_cast<__int128>(a) - b;
        if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("rational overflow");
        return static_cast<std::int64_t>(r);
    }

    std::int64_t num_;
    std::int64_t den_;
};

} // namespace retorsion
