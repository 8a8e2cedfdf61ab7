#pragma once

// Exact numbers a + b*sqrt(m) with rational a, b and a squarefree radicand
// m >= 0. One instance of the solver only ever works inside a single
// extension field, so arithmetic requires matching radicands (a rational
// operand is compatible with everything).
//
// Canonical form: b == 0 implies m == 0, and m is never 0 or 1 when b != 0.

#include "gharm/bigint.hpp"
#include "gharm/rational.hpp"

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace gharm {

class QuadExt {
public:
    QuadExt() = default;
    QuadExt(long long n) : a_(n) {}
    QuadExt(Rational r) : a_(std::move(r)) {}
    QuadExt(Rational a, Rational b, BigInt m) : a_(std::move(a)), b_(std::move(b)), m_(std::move(m)) {
        if (m_ < 0) throw std::domain_error("quadext: negative radicand");
        if (!b_.is_zero() && m_ > 1) {
            auto split = squarefree_split(m_);
            if (split.square_root != 1) {
                b_ *= Rational(split.square_root);
                m_ = split.squarefree;
            }
        }
        canonicalize();
    }

    /// Principal square root of a non-negative rational, expressed exactly:
    /// sqrt(p/q) = sqrt(p*q)/q.
    static QuadExt sqrt_of(const Rational& r) {
        if (r.sign() < 0) throw std::domain_error("quadext: square root of negative rational");
        auto split = squarefree_split(BigInt(r.num() * r.den()));
        return QuadExt(Rational(0), Rational(split.square_root, r.den()), split.squarefree);
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const BigInt& radicand() const { return m_; }

    bool is_rational() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    const Rational& rational() const {
        if (!is_rational()) throw std::domain_error("quadext: value is irrational");
        return a_;
    }

    QuadExt conjugate() const { return raw(a_, -b_, m_); }

    /// a^2 - b^2 m, the field norm; rational and nonzero for nonzero values.
    Rational norm() const { return a_ * a_ - b_ * b_ * Rational(m_); }

    QuadExt operator-() const { return raw(-a_, -b_, m_); }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        return raw(x.a_ + y.a_, x.b_ + y.b_, joint(x, y));
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
        return raw(x.a_ - y.a_, x.b_ - y.b_, joint(x, y));
    }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        const BigInt m = joint(x, y);
        return raw(x.a_ * y.a_ + x.b_ * y.b_ * Rational(m), x.a_ * y.b_ + x.b_ * y.a_, m);
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
        if (y.is_zero()) throw std::domain_error("quadext: division by zero");
        const Rational n = y.norm();
        return x * y.conjugate() * QuadExt(n.reciprocal());
    }

    QuadExt& operator+=(const QuadExt& r) { return *this = *this + r; }
    QuadExt& operator-=(const QuadExt& r) { return *this = *this - r; }
    QuadExt& operator*=(const QuadExt& r) { return *this = *this * r; }
    QuadExt& operator/=(const QuadExt& r) { return *this = *this / r; }

    /// Exact sign. For b != 0 the radicand is squarefree >= 2, so
    /// a^2 == b^2 m cannot happen with a, b both nonzero.
    int sign() const {
        const int sa = a_.sign(), sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        const int st = (a_ * a_ - b_ * b_ * Rational(m_)).sign();
        if (st == 0) throw std::logic_error("quadext: non-canonical radicand");
        return st > 0 ? sa : sb;
    }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.m_ == y.m_;
    }
    friend bool operator<(const QuadExt& x, const QuadExt& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QuadExt& x, const QuadExt& y) { return (x - y).sign() > 0; }
    friend bool operator<=(const QuadExt& x, const QuadExt& y) { return (x - y).sign() <= 0; }
    friend bool operator>=(const QuadExt& x, const QuadExt& y) { return (x - y).sign() >= 0; }

    /// Conversion avoids the cancellation a ~ -b*sqrt(m) by routing the
    /// mixed-sign case through the conjugate: x = norm / conj(x).
    double to_double() const {
        if (b_.is_zero()) return a_.to_double();
        const double root = std::sqrt(m_.convert_to<double>());
        if (a_.sign() * b_.sign() >= 0) return a_.to_double() + b_.to_double() * root;
        const double conj = a_.to_double() - b_.to_double() * root;
        return norm().to_double() / conj;
    }

    /// Debug form "a+b*sqrt(m)"; rational values print as plain fractions.
    std::string str() const {
        if (is_rational()) return a_.str();
        std::string s = a_.is_zero() ? std::string() : a_.str();
        if (b_.sign() > 0 && !s.empty()) s += "+";
        s += b_.str() + "*sqrt(" + m_.str() + ")";
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << x.str(); }

private:
    static QuadExt raw(Rational a, Rational b, BigInt m) {
        QuadExt x;
        x.a_ = std::move(a);
        x.b_ = std::move(b);
        x.m_ = std::move(m);
        x.canonicalize();
        return x;
    }

    static BigInt joint(const QuadExt& x, const QuadExt& y) {
        if (x.b_.is_zero()) return y.m_;
        if (y.b_.is_zero() || x.m_ == y.m_) return x.m_;
        throw std::logic_error("quadext: mixing distinct radicands");
    }

    void canonicalize() {
        if (m_ == 1) {
            a_ += b_;
            b_ = Rational(0);
        }
        if (m_ == 0) b_ = Rational(0); // b*sqrt(0) contributes nothing
        if (b_.is_zero()) m_ = 0;
    }

    Rational a_;
    Rational b_;
    BigInt m_ = 0;
};

/// Both roots of a x^2 + b x + c = 0 exactly, sorted ascending. Each root
/// collapses to rational form exactly when the discriminant is a rational
/// square.
inline std::pair<QuadExt, QuadExt> quad_solve(const Rational& a, const Rational& b, const Rational& c) {
    if (a.is_zero()) throw std::domain_error("quad_solve: leading coefficient is zero");
    const Rational disc = b * b - Rational(4) * a * c;
    if (disc.sign() < 0) throw std::domain_error("quad_solve: negative discriminant");
    const QuadExt root = QuadExt::sqrt_of(disc);
    const QuadExt two_a = QuadExt(a * Rational(2));
    QuadExt r1 = (QuadExt(-b) - root) / two_a;
    QuadExt r2 = (QuadExt(-b) + root) / two_a;
    if (r2 < r1) std::swap(r1, r2);
    return {r1, r2};
}

} // namespace gharm
