#pragma once

// Per-(gamma, N) constants of the quasiradial solution family, kept exact:
// the growth exponent k (largest root of the characteristic equation), the
// auxiliary constant lambda, the geometry parameter mu, the angular period
// T = 2*pi/N, the apex height z0, the quasialgebraic exponent alpha and the
// conjugate growth exponent k*.
//
// Everything lives in the single quadratic extension generated by
// sqrt(N^2 gamma^2 - 2N + 1); the identities tying the constants together
// are verified exactly on construction.

#include "gharm/json_writer.hpp"
#include "gharm/quadext.hpp"
#include "gharm/rational.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace gharm {

/// Admissible equation parameter: rational with |gamma| > 1, or exactly 1.
class Gamma {
public:
    explicit Gamma(Rational v) : value_(std::move(v)) {
        const Rational one(1);
        if (!(value_ == one || value_.abs() > one))
            throw std::domain_error("gamma: need |gamma| > 1 or gamma == 1");
    }

    static Gamma parse(std::string_view text) { return Gamma(Rational::parse(text)); }

    const Rational& value() const { return value_; }
    bool is_one() const { return value_ == Rational(1); }
    bool is_negative() const { return value_.sign() < 0; }

    const BigInt& p() const { return value_.num(); }
    const BigInt& q() const { return value_.den(); }

    Gamma negated() const { return Gamma(-value_); }
    Gamma abs() const { return Gamma(value_.abs()); }

    friend bool operator==(const Gamma& a, const Gamma& b) { return a.value_ == b.value_; }

private:
    Rational value_;
};

struct Spectrum {
    Gamma gamma;
    int n;

    QuadExt k;       // largest root of the characteristic equation; 1 for n == 1
    QuadExt k_small; // the discarded smaller root, kept for diagnostics
    QuadExt lambda;  // k (mu-1)/(mu+1) == sqrt(k^2 - 2k/(gamma+1)) > 0
    QuadExt mu;      // (k+lambda)/(k-lambda); |mu| > 2N-1 unless gamma == 1

    Rational t_rat;               // period T = 2*pi*t_rat; equals 1/N
    std::optional<QuadExt> alpha; // 2/(k(2N-1) - N); absent for n == 1
    std::optional<QuadExt> k_conj; // conjugate exponent; absent for gamma == 1

    double z0 = 0.0; // apex height lambda^(k-1)/k^k, floating point

    double period() const { return 2.0 * M_PI * t_rat.to_double(); }
};

namespace detail {

/// Coefficients of the characteristic equation
/// (2N-1)(gamma+1) k^2 - 2(N^2 gamma + 2N - 1) k + N^2 (1+gamma) = 0.
struct CharCoeffs {
    Rational a, b, c;
};

inline CharCoeffs char_coeffs(const Gamma& gamma, int n) {
    const Rational g = gamma.value();
    const Rational n2(static_cast<long long>(n) * n);
    const Rational two_n_1(2LL * n - 1);
    return {two_n_1 * (g + Rational(1)), Rational(-2) * (n2 * g + two_n_1), n2 * (Rational(1) + g)};
}

inline void require_valid(const Gamma&, int n) {
    if (n < 1) throw std::domain_error("spectrum: n must be a positive integer");
}

} // namespace detail

/// Radicand N^2 gamma^2 - 2N + 1 shared by every constant of the spectrum.
inline Rational spectrum_radicand(const Gamma& gamma, int n) {
    const Rational g = gamma.value();
    return Rational(static_cast<long long>(n) * n) * g * g - Rational(2LL * n - 1);
}

/// Largest root of the characteristic equation; equals 1 exactly for n == 1
/// and exceeds 1 for n >= 2.
inline QuadExt solve_k(const Gamma& gamma, int n) {
    detail::require_valid(gamma, n);
    if (n == 1) return QuadExt(Rational(1));
    const auto [a, b, c] = detail::char_coeffs(gamma, n);
    const auto roots = quad_solve(a, b, c);
    return roots.second;
}

/// mu(gamma, N): the root of mu^2 - 2 gamma N mu + (2N-1) = 0 selected by
/// the sign of gamma (mu > 1 for gamma >= 1, mu < -1 for gamma < -1).
inline QuadExt solve_mu(const Gamma& gamma, int n) {
    detail::require_valid(gamma, n);
    const QuadExt root = QuadExt::sqrt_of(spectrum_radicand(gamma, n));
    const QuadExt ng = QuadExt(gamma.value() * Rational(n));
    return gamma.is_negative() ? ng - root : ng + root;
}

/// Exact identity audit; throws std::logic_error naming the first failure.
inline void check_spectrum_identities(const Spectrum& s) {
    const Rational g = s.gamma.value();
    const long long n = s.n;
    const auto fail = [&](const char* what) {
        throw std::logic_error(std::string("spectrum identity violated: ") + what);
    };

    const auto [a, b, c] = detail::char_coeffs(s.gamma, s.n);
    if (!(QuadExt(a) * s.k * s.k + QuadExt(b) * s.k + QuadExt(c)).is_zero()) fail("characteristic equation");
    if (s.n >= 2 && !(s.k > QuadExt(Rational(1)))) fail("k > 1 for N >= 2");
    if (s.n == 1 && !(s.k == QuadExt(Rational(1)))) fail("k == 1 for N == 1");

    const QuadExt one(Rational(1));
    if (!(s.lambda * s.lambda == s.k * s.k - QuadExt(Rational(2)) * s.k / QuadExt(g + Rational(1))))
        fail("lambda^2 = k^2 - 2k/(gamma+1)");
    if (s.lambda.sign() <= 0) fail("lambda > 0");
    if (!(QuadExt(Rational(n)) * (s.k - one) == QuadExt(Rational(n - 1)) * s.lambda))
        fail("(k-1)/lambda = (N-1)/N");

    if (!(s.mu * (s.k - s.lambda) == s.k + s.lambda)) fail("mu = (k+lambda)/(k-lambda)");
    if (!(s.k * QuadExt(Rational(2)) * s.mu * QuadExt(g + Rational(1)) == (one + s.mu) * (one + s.mu)))
        fail("k = (1+mu)^2/(2mu(gamma+1))");
    if (!(QuadExt(Rational(2LL * n)) * (s.mu * QuadExt(g) - one) == s.mu * s.mu - one))
        fail("N = (mu^2-1)/(2(mu gamma - 1))");
    if (!(s.mu * s.mu - QuadExt(g * Rational(2 * n)) * s.mu + QuadExt(Rational(2 * n - 1))).is_zero())
        fail("mu^2 - 2 gamma N mu + (2N-1) = 0");

    const QuadExt band(Rational(2 * n - 1));
    if (s.gamma.is_one()) {
        if (!(s.mu == band)) fail("mu = 2N-1 at gamma = 1");
    } else if (g.sign() > 0) {
        if (s.n >= 2 && !(s.mu > band)) fail("mu > 2N-1 for gamma > 1");
    } else {
        if (s.n >= 2 && !(s.mu < -band)) fail("mu < -(2N-1) for gamma < -1");
    }

    if (!(s.t_rat == Rational(1, n))) fail("T = 2*pi/N");

    if (s.k_conj) {
        const QuadExt lhs = s.k * QuadExt(Rational(1) + g) + *s.k_conj * QuadExt(Rational(1) - g);
        if (!(lhs == QuadExt(Rational(2)))) fail("k(1+gamma) + k*(1-gamma) = 2");
    }
    if (s.alpha) {
        const QuadExt denom = s.k * band - QuadExt(Rational(n));
        if (!(*s.alpha * denom == QuadExt(Rational(2)))) fail("alpha = 2/(k(2N-1) - N)");
    }
}

/// Assemble the full spectrum. gamma == 1 requires n >= 2 (the N = 1 wave
/// degenerates there); every identity is checked exactly before returning.
inline Spectrum make_spectrum(const Gamma& gamma, int n) {
    detail::require_valid(gamma, n);
    if (gamma.is_one() && n == 1)
        throw std::domain_error("spectrum: gamma = 1 requires n >= 2");

    const QuadExt one(Rational(1));
    QuadExt k, k_small;
    if (n == 1) {
        k = one;
        k_small = one;
    } else {
        const auto [a, b, c] = detail::char_coeffs(gamma, n);
        const auto roots = quad_solve(a, b, c);
        k_small = roots.first;
        k = roots.second;
    }

    const QuadExt mu = solve_mu(gamma, n);
    // lambda from mu keeps the value inside the same extension; positivity
    // and the defining square identity are audited below.
    const QuadExt lambda = k * (mu - one) / (mu + one);

    Spectrum s{gamma,
               n,
               k,
               k_small,
               lambda,
               mu,
               Rational(1, n),
               std::nullopt,
               std::nullopt,
               0.0};

    if (n >= 2) s.alpha = QuadExt(Rational(2)) / (k * QuadExt(Rational(2 * n - 1)) - QuadExt(Rational(n)));
    if (!gamma.is_one()) {
        const Rational g = gamma.value();
        s.k_conj = (QuadExt(Rational(2)) - k * QuadExt(Rational(1) + g)) / QuadExt(Rational(1) - g);
    }

    const double kd = k.to_double();
    const double ld = lambda.to_double();
    s.z0 = std::exp((kd - 1.0) * std::log(ld) - kd * std::log(kd));

    check_spectrum_identities(s);
    return s;
}

/// k* with k(1+gamma) + k*(1-gamma) = 2; rejects gamma == 1 where the
/// relation degenerates.
inline QuadExt conjugate_exponent(const Spectrum& s) {
    if (s.gamma.is_one()) throw std::domain_error("conjugate exponent: not defined for gamma = 1");
    return *s.k_conj;
}

inline std::string spectrum_to_json(const Spectrum& s) {
    JsonWriter w;
    w.begin_object();
    if (s.alpha)
        w.key("alpha").value(*s.alpha);
    else
        w.key("alpha").value_null();
    w.key("gamma").value(s.gamma.value());
    w.key("k").value(s.k);
    if (s.k_conj)
        w.key("k_conj").value(*s.k_conj);
    else
        w.key("k_conj").value_null();
    w.key("k_small").value(s.k_small);
    w.key("lambda").value(s.lambda);
    w.key("mu").value(s.mu);
    w.key("n").value(s.n);
    w.key("period").value(s.period());
    w.key("period_over_2pi").value(s.t_rat);
    w.key("z0").value(s.z0);
    w.end_object();
    return w.str();
}

} // namespace gharm
