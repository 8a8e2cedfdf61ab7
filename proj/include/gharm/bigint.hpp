#pragma once

// Arbitrary-precision integer helpers on top of boost::multiprecision:
// floor square root, perfect-square testing and squarefree decomposition.
// These are the primitives the diophantine layer is built from.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>

namespace gharm {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt abs(const BigInt& n) { return n < 0 ? BigInt(-n) : n; }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g = boost::multiprecision::gcd(a, b);
    return g < 0 ? BigInt(-g) : g;
}

namespace detail {

// floor(sqrt(n)) for 64-bit n: float estimate plus exact fixup.
inline std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while (r + 1 <= n / (r + 1)) ++r;
    return r;
}

// Squares can only end in one of 12 residues mod 64.
inline bool square_residue_mod64(unsigned r) {
    constexpr std::uint64_t mask = (1ULL << 0) | (1ULL << 1) | (1ULL << 4) | (1ULL << 9) |
                                   (1ULL << 16) | (1ULL << 17) | (1ULL << 25) | (1ULL << 33) |
                                   (1ULL << 36) | (1ULL << 41) | (1ULL << 49) | (1ULL << 57);
    return (mask >> (r & 63u)) & 1u;
}

} // namespace detail

/// floor(sqrt(n)) via integer Newton iteration. The iterate starts above
/// the root and decreases monotonically; the first non-decrease stops it.
inline BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    if (n < 2) return n;
    if (n <= std::numeric_limits<std::uint64_t>::max())
        return BigInt(detail::isqrt_u64(n.convert_to<std::uint64_t>()));
    const std::size_t bits = boost::multiprecision::msb(n) + 1;
    BigInt x = BigInt(1) << (bits / 2 + 1); // >= sqrt(n)
    for (;;) {
        BigInt y = (x + n / x) >> 1;
        if (y >= x) return x;
        x = y;
    }
}

/// d with d*d == n and d >= 0, or empty when n is not a square (negative
/// n included).
inline std::optional<BigInt> is_perfect_square(const BigInt& n) {
    if (n < 0) return std::nullopt;
    if (!detail::square_residue_mod64(static_cast<unsigned>(n & 63u))) return std::nullopt;
    BigInt d = isqrt(n);
    if (d * d == n) return d;
    return std::nullopt;
}

struct SquarefreeSplit {
    BigInt square_root; // s
    BigInt squarefree;  // m, with n = s*s*m
};

/// Decompose n >= 0 as s^2 * m with m squarefree. Trial division keeps the
/// cost proportional to the smallest prime factors; radicands in this
/// project stay far below the bound where the tail could hide a square.
inline SquarefreeSplit squarefree_split(const BigInt& n) {
    if (n < 0) throw std::domain_error("squarefree_split: negative argument");
    if (n == 0) return {BigInt(1), BigInt(0)};
    if (auto d = is_perfect_square(n)) return {*d, BigInt(1)};

    constexpr std::uint64_t trial_bound = 1u << 20;
    BigInt s = 1, m = 1, r = n;
    auto strip = [&](std::uint64_t p) {
        const BigInt pb(p);
        unsigned e = 0;
        while (r % pb == 0) {
            r /= pb;
            ++e;
        }
        for (unsigned i = 0; i + 1 < e; i += 2) s *= pb;
        if (e & 1u) m *= pb;
    };
    strip(2);
    for (std::uint64_t p = 3; p <= trial_bound && BigInt(p) * p <= r; p += 2) strip(p);

    if (r == 1) return {s, m};
    if (BigInt(trial_bound) * trial_bound > r) {
        // r is prime
        return {s, BigInt(m * r)};
    }
    if (auto d = is_perfect_square(r)) return {BigInt(s * *d), m};
    if (r < BigInt(trial_bound) * trial_bound * trial_bound) {
        // no factor <= trial_bound and not a square: at most two primes, squarefree
        return {s, BigInt(m * r)};
    }
    throw std::domain_error("squarefree_split: radicand too large to certify");
}

} // namespace gharm
