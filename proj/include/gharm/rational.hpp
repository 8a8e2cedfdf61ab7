#pragma once

// Exact reduced fractions over BigInt. Invariants: den > 0 and
// gcd(|num|, den) == 1 at all times; zero is 0/1.

#include "gharm/bigint.hpp"

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gharm {

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    /// Strict parser: "p/q" or "p" with optional sign, nothing else.
    static Rational parse(std::string_view text) {
        auto is_int = [](std::string_view s) {
            if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
            if (s.empty()) return false;
            for (char c : s)
                if (c < '0' || c > '9') return false;
            return true;
        };
        const auto slash = text.find('/');
        std::string_view ns = text.substr(0, slash);
        std::string_view ds = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
        if (!is_int(ns) || !is_int(ds)) throw std::invalid_argument("rational: expected \"p\" or \"p/q\"");
        return Rational(BigInt(std::string(ns)), BigInt(std::string(ds)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const { return Rational(BigInt(-num_), den_, reduced_tag{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(BigInt(a.num_ * b.den_ + b.num_ * a.den_), BigInt(a.den_ * b.den_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(BigInt(a.num_ * b.den_ - b.num_ * a.den_), BigInt(a.den_ * b.den_));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(BigInt(a.num_ * b.num_), BigInt(a.den_ * b.den_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational: division by zero");
        return Rational(BigInt(a.num_ * b.den_), BigInt(a.den_ * b.num_));
    }

    Rational& operator+=(const Rational& r) { return *this = *this + r; }
    Rational& operator-=(const Rational& r) { return *this = *this - r; }
    Rational& operator*=(const Rational& r) { return *this = *this * r; }
    Rational& operator/=(const Rational& r) { return *this = *this / r; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const BigInt l = a.num_ * b.den_, r = b.num_ * a.den_;
        return l < r ? std::strong_ordering::less
                     : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational reciprocal() const {
        if (num_ == 0) throw std::domain_error("rational: reciprocal of zero");
        return Rational(den_, num_);
    }

    /// Integer power; negative exponents go through the reciprocal.
    Rational pow(long e) const {
        if (e < 0) return reciprocal().pow(-e);
        Rational base = *this, acc = 1;
        for (; e; e >>= 1, base *= base)
            if (e & 1) acc *= base;
        return acc;
    }

    double to_double() const {
        namespace mp = boost::multiprecision;
        return mp::cpp_rational(num_, den_).convert_to<double>();
    }

    /// "7/5" for true fractions, bare "3" for integers.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    struct reduced_tag {};
    Rational(BigInt num, BigInt den, reduced_tag) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (den_ == 0) throw std::domain_error("rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        BigInt g = gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

/// Free-function form of the reducing constructor.
inline Rational reduce(BigInt num, BigInt den) { return Rational(std::move(num), std::move(den)); }

} // namespace gharm
