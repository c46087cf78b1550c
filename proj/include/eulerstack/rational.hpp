#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "eulerstack/error.hpp"

namespace eulerstack {

// Exact rational arithmetic on 64-bit integers. Every identity the engine
// checks is an exact equality, so there is no floating point anywhere.
// Intermediates go through 128-bit to detect overflow instead of wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return from_wide(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0)
            throw Error(ErrorCode::Undefined, "division by zero");
        return from_wide((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }

    // Canonical form: "p" for integers, otherwise "p/q" with q > 0.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p" or "p/q" with optional sign on p.
    static Rational parse(const std::string& text);

private:
    static Rational from_wide(__int128 n, __int128 d) {
        if (d == 0)
            throw Error(ErrorCode::Undefined, "zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = wide_gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw Error(ErrorCode::Overflow, "rational out of 64-bit range");
        Rational r;
        r.num_ = (std::int64_t)n;
        r.den_ = (std::int64_t)d;
        return r;
    }

    static __int128 wide_gcd(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        *this = from_wide(num_, den_);
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        size_t used = 0;
        std::int64_t n = std::stoll(text.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? text.size() : slash))
            throw Error(ErrorCode::Parse, "bad rational '" + text + "'");
        if (slash == std::string::npos) return Rational(n);
        std::string dpart = text.substr(slash + 1);
        std::int64_t d = std::stoll(dpart, &used);
        if (used != dpart.size() || d <= 0)
            throw Error(ErrorCode::Parse, "bad rational '" + text + "'");
        return Rational(n, d);
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::Parse, "bad rational '" + text + "'");
    } catch (const std::out_of_range&) {
        throw Error(ErrorCode::Parse, "rational out of range '" + text + "'");
    }
}

// A rational extended by the single value infinity, the codomain of weight
// functions. Infinity only ever arises from inverting a zero weight; it is
// confined to weight evaluation, and arithmetic that would need a value for
// infinity times zero signals Undefined instead of inventing one.
class ExtRational {
public:
    ExtRational() : infinite_(false), value_(0) {}
    ExtRational(const Rational& r) : infinite_(false), value_(r) {}
    ExtRational(std::int64_t n) : infinite_(false), value_(n) {}

    static ExtRational infinity() {
        ExtRational e;
        e.infinite_ = true;
        return e;
    }

    bool is_infinite() const { return infinite_; }
    bool is_zero() const { return !infinite_ && value_.is_zero(); }

    // Throws Undefined when infinite.
    const Rational& finite_value() const {
        if (infinite_)
            throw Error(ErrorCode::Undefined, "infinite weight used as a number");
        return value_;
    }

    // 1/0 = infinity and 1/infinity = 0; this is the only place the engine
    // crosses between zero and infinity.
    ExtRational reciprocal() const {
        if (infinite_) return ExtRational(Rational(0));
        if (value_.is_zero()) return infinity();
        return ExtRational(Rational(1) / value_);
    }

    friend ExtRational operator*(const ExtRational& a, const ExtRational& b) {
        if (a.infinite_ || b.infinite_) {
            if (a.is_zero() || b.is_zero())
                throw Error(ErrorCode::Undefined, "infinity times zero");
            return infinity();
        }
        return ExtRational(a.value_ * b.value_);
    }

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.infinite_ != b.infinite_) return false;
        return a.infinite_ || a.value_ == b.value_;
    }
    friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }

    std::string str() const { return infinite_ ? "inf" : value_.str(); }

private:
    bool infinite_;
    Rational value_;
};

} // namespace eulerstack
