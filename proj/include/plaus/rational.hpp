#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <string>

#include "plaus/errors.hpp"

namespace plaus {

// Exact rational on int64 with 128-bit intermediates. Always normalized:
// gcd(num, den) == 1, den > 0, zero is 0/1. Overflow on narrowing throws
// InternalError instead of wrapping; the quantities in this toolkit are
// small (plausibilities, dyadic weights, masses on tiny frames), so an
// overflow means a bug, not a capacity problem.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by design
    Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return raw(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        I128 n = I128(a.num_) * b.den_ + I128(b.num_) * a.den_;
        I128 d = I128(a.den_) * b.den_;
        return normalized(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return normalized(I128(a.num_) * b.num_, I128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw SemanticError("rational division by zero");
        return normalized(I128(a.num_) * b.den_, I128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        I128 lhs = I128(a.num_) * b.den_;
        I128 rhs = I128(b.num_) * a.den_;
        return lhs < rhs   ? std::strong_ordering::less
               : lhs > rhs ? std::strong_ordering::greater
                           : std::strong_ordering::equal;
    }

    Rational abs() const { return raw(num_ < 0 ? -num_ : num_, den_); }

    // Saturates to [lo, hi].
    Rational clamped(const Rational& lo, const Rational& hi) const {
        if (*this < lo) return lo;
        if (*this > hi) return hi;
        return *this;
    }

    double to_double() const { return double(num_) / double(den_); }

    // Canonical text: "2/3", "-1", "0".
    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

    // Fixed 6-place decimal, round half to even. Used in reports so that
    // byte-stable output never hinges on printf behaviour.
    std::string decimal6() const;

private:
    using I128 = __int128;

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;

    static Rational raw(std::int64_t n, std::int64_t d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }

    void assign(std::int64_t num, std::int64_t den) {
        if (den == 0) throw SemanticError("rational with zero denominator");
        *this = normalized(num, den);
    }

    static Rational normalized(I128 num, I128 den) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        I128 g = gcd128(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (den == 0) throw SemanticError("rational with zero denominator");
        return raw(narrow(num), narrow(den));
    }

    static I128 gcd128(I128 a, I128 b) {
        while (b != 0) {
            I128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    static std::int64_t narrow(I128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw InternalError("rational overflow");
        return std::int64_t(v);
    }
};

inline std::string Rational::decimal6() const {
    const I128 kScale = 1000000;
    I128 t = I128(num_ < 0 ? -num_ : num_) * kScale;
    I128 q = t / den_;
    I128 r = t % den_;
    // round half to even
    if (2 * r > den_ || (2 * r == den_ && (q & 1) != 0)) ++q;
    std::string sign = (num_ < 0 && q != 0) ? "-" : "";
    std::int64_t whole = std::int64_t(q / kScale);
    std::int64_t frac = std::int64_t(q % kScale);
    std::string fs = std::to_string(frac);
    fs.insert(0, 6 - fs.size(), '0');
    return sign + std::to_string(whole) + "." + fs;
}

}  // namespace plaus
