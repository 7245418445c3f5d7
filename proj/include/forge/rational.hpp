#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "forge/errors.hpp"

namespace forge {

// Exact rational arithmetic on int64 numerator / positive int64 denominator,
// eagerly reduced so that equality is structural.  Intermediate products run
// through __int128; a result that does not fit back into int64 throws rather
// than silently wrapping.
class Rational {
public:
    constexpr Rational() = default;

    Rational(std::int64_t n) : num_(n), den_(1) {}

    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (d == 0) throw domain_error("rational/zero-den", "denominator must be nonzero");
        reduce_small();
    }

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_positive() const { return num_ > 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_, tag{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw domain_error("rational/div-zero", "division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // "p/q", or just "p" when q = 1.
    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

    static Rational parse(std::string_view text) {
        auto r = try_parse(text);
        if (!r) throw parse_error("rational/parse", "invalid rational: '" + std::string(text) + "'");
        return *r;
    }

    static std::optional<Rational> try_parse(std::string_view text) {
        auto slash = text.find('/');
        std::int64_t n = 0, d = 1;
        if (slash == std::string_view::npos) {
            if (!parse_int(text, n)) return std::nullopt;
        } else {
            if (!parse_int(text.substr(0, slash), n)) return std::nullopt;
            if (!parse_int(text.substr(slash + 1), d)) return std::nullopt;
            if (d == 0) return std::nullopt;
        }
        return Rational(n, d);
    }

    // Floor of num/den as an integer (toward negative infinity).
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    std::int64_t ceil() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }

private:
    using i128 = __int128;
    struct tag {};

    Rational(std::int64_t n, std::int64_t d, tag) : num_(n), den_(d) {}

    static Rational make(i128 n, i128 d) {
        if (d < 0) { n = -n; d = -d; }
        if (n == 0) return Rational();
        i128 g = gcd128(n < 0 ? -n : n, d);
        n /= g;
        d /= g;
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw domain_error("rational/overflow", "rational arithmetic overflow");
        return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d), tag{});
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a;
    }

    void reduce_small() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        if (num_ == 0) { den_ = 1; return; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        num_ /= g;
        den_ /= g;
    }

    static bool parse_int(std::string_view s, std::int64_t& out) {
        if (s.empty()) return false;
        std::size_t i = 0;
        bool neg = false;
        if (s[0] == '-' || s[0] == '+') { neg = s[0] == '-'; i = 1; }
        if (i == s.size()) return false;
        i128 v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') return false;
            v = v * 10 + (s[i] - '0');
            if (v > INT64_MAX) return false;
        }
        out = static_cast<std::int64_t>(neg ? -v : v);
        return true;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

inline std::int64_t lcm_i64(std::int64_t a, std::int64_t b) {
    return a / std::gcd(a, b) * b;
}

}  // namespace forge
