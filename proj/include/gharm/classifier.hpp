#pragma once

// Exact classification of the rational parameters gamma = p/q admitting
// algebraic quasiradial solutions. For fixed (gamma, N) the three
// equivalent tests are
//
//   (i)   D = N^2 p^2 - q^2 (2N-1) is a squared integer,
//   (ii)  A^2 q - 2ABpN + q(2N-1)B^2 = 0 has a coprime solution A > B >= 1,
//   (iii) the growth exponent k(gamma, N) is rational,
//
// and the admissible N are bounded by N < q^2(p^2 + 2 - q^2)/(2p^2), which
// makes the certificate set finite. Each certificate also carries the
// parametrization value s in (0,1) with gamma = (2N-1+s^2)/(2sN).

#include "gharm/json_writer.hpp"
#include "gharm/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace gharm {

enum class Series { minimal, maximal, maximal_even, interior };

inline const char* series_name(Series s) {
    switch (s) {
    case Series::minimal: return "minimal";
    case Series::maximal: return "maximal";
    case Series::maximal_even: return "maximal_even";
    case Series::interior: return "interior";
    }
    return "?";
}

struct AlgebraicCertificate {
    int n = 0;
    BigInt d;           // d * d == discriminant
    Rational k;         // rational growth exponent
    BigInt discriminant; // N^2 p^2 - q^2 (2N-1)
    Rational pell_s;    // representative in (0,1)
    BigInt dioph_a;
    BigInt dioph_b;
    Series series = Series::interior;
};

struct AlgebraicClass {
    Gamma gamma;
    bool all_n = false; // gamma == 1: every N >= 2 is algebraic
    long long n_bound = 1;
    std::vector<AlgebraicCertificate> certificates; // ascending n
};

/// D(gamma, N) = N^2 p^2 - q^2 (2N - 1), evaluated for |gamma| (the
/// negative-parameter class mirrors the positive one).
inline BigInt discriminant(const Gamma& gamma, int n) {
    if (n < 2) throw std::domain_error("discriminant: n must be >= 2");
    const BigInt p = abs(gamma.p());
    const BigInt& q = gamma.q();
    return BigInt(n) * n * p * p - q * q * (2 * n - 1);
}

/// Largest N with N < q^2 (p^2 + 2 - q^2) / (2 p^2), clamped to 1 when the
/// range is empty.
inline long long n_bound(const Gamma& gamma) {
    if (gamma.is_one()) throw std::domain_error("n_bound: unbounded for gamma = 1");
    const BigInt p = abs(gamma.p());
    const BigInt& q = gamma.q();
    const BigInt num = q * q * (p * p + 2 - q * q);
    const BigInt den = 2 * p * p;
    if (num <= den) return 1;
    BigInt fl = num / den;
    if (fl * den == num) --fl; // strict inequality
    return fl < 1 ? 1 : fl.convert_to<long long>();
}

// --- the three equivalent algebraicity tests, each through its own route ---

/// (i) squared-integer discriminant.
inline std::optional<BigInt> test_square_discriminant(const BigInt& p, const BigInt& q, int n) {
    return is_perfect_square(BigInt(BigInt(n) * n * p * p - q * q * (2 * n - 1)));
}

/// (ii) coprime A > B >= 1 with A^2 q - 2ABpN + q(2N-1)B^2 = 0, taken from
/// the larger root of the associated quadratic and verified by direct
/// substitution.
inline std::optional<std::pair<BigInt, BigInt>> test_dioph(const BigInt& p, const BigInt& q, int n) {
    // roots of q V^2 - 2pN V + q(2N-1); discriminant/4 = N^2 p^2 - q^2(2N-1)
    const auto d = is_perfect_square(BigInt(BigInt(n) * n * p * p - q * q * (2 * n - 1)));
    if (!d) return std::nullopt;
    const Rational v2(BigInt(n) * p + *d, q);
    const BigInt a = v2.num(), b = v2.den();
    if (!(a > b && b >= 1)) return std::nullopt;
    if (a * a * q - 2 * a * b * p * n + q * (2 * n - 1) * b * b != 0) return std::nullopt;
    return std::make_pair(a, b);
}

/// (iii) rational growth exponent, decided through the characteristic
/// equation's own discriminant.
inline std::optional<Rational> test_rational_k(const Gamma& gamma, int n) {
    if (n == 1) return Rational(1);
    const auto [a, b, c] = detail::char_coeffs(gamma, n);
    const Rational disc = b * b - Rational(4) * a * c;
    if (disc.sign() < 0) return std::nullopt;
    const auto sn = is_perfect_square(disc.num());
    if (!sn) return std::nullopt;
    const auto sd = is_perfect_square(disc.den());
    if (!sd) return std::nullopt;
    const Rational root(*sn, *sd);
    // larger root; the orientation flips with the sign of the leading term
    return a.sign() > 0 ? (-b + root) / (Rational(2) * a) : (-b - root) / (Rational(2) * a);
}

namespace detail {

inline Series classify_series(const BigInt& q, const BigInt& p, int n) {
    const bool odd = (q % 2) != 0;
    if (odd && p == q + 2 && BigInt(2 * n) == q - 1) return Series::minimal;
    if (odd && p == q * q - 2 && BigInt(4 * n) == q * q - 1) return Series::maximal;
    if (!odd && BigInt(2) * p == q * q - 2 && BigInt(4 * n) == q * q - 4) return Series::maximal_even;
    return Series::interior;
}

/// Build a fully cross-checked certificate for |gamma| = p/q at index n.
inline AlgebraicCertificate make_certificate(const BigInt& p, const BigInt& q, int n, BigInt d) {
    const Gamma g_abs{Rational(p, q)};
    AlgebraicCertificate cert;
    cert.n = n;
    cert.discriminant = discriminant(g_abs, n);
    cert.d = std::move(d);
    if (cert.d * cert.d != cert.discriminant)
        throw std::logic_error("certificate: d^2 != discriminant");

    const auto k = test_rational_k(g_abs, n);
    if (!k) throw std::logic_error("certificate: k is not rational");
    cert.k = *k;
    // spectrum route must agree exactly
    const QuadExt ks = solve_k(g_abs, n);
    if (!ks.is_rational() || !(ks.rational() == cert.k))
        throw std::logic_error("certificate: spectrum k mismatch");

    const auto ab = test_dioph(p, q, n);
    if (!ab) throw std::logic_error("certificate: no diophantine solution");
    cert.dioph_a = ab->first;
    cert.dioph_b = ab->second;
    const Rational mu(cert.dioph_a, cert.dioph_b);
    if (!(mu > Rational(2 * n - 1))) throw std::logic_error("certificate: mu <= 2N-1");
    // k = (1+mu)^2 / (2 mu (gamma+1))
    const Rational krat = (Rational(1) + mu) * (Rational(1) + mu) /
                          (Rational(2) * mu * (g_abs.value() + Rational(1)));
    if (!(krat == cert.k)) throw std::logic_error("certificate: k/mu relation");

    Rational s(BigInt(n) * p - cert.d, q);
    if (!(s > Rational(0))) throw std::logic_error("certificate: pell s <= 0");
    if (s >= Rational(1)) s = Rational(2 * n - 1) / s; // involution representative
    if (!(s > Rational(0) && s < Rational(1))) throw std::logic_error("certificate: pell s out of (0,1)");
    // substitution oracle: gamma == (2N-1+s^2)/(2sN)
    if (!((Rational(2 * n - 1) + s * s) / (Rational(2 * n) * s) == g_abs.value()))
        throw std::logic_error("certificate: pell parametrization mismatch");
    cert.pell_s = s;

    cert.series = classify_series(q, p, n);
    return cert;
}

inline int worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("GH_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

} // namespace detail

/// Full classification of gamma. For gamma == 1 the class is the "all N"
/// sentinel; negative gamma mirrors to |gamma| and keeps its sign tag.
inline AlgebraicClass classify(const Gamma& gamma) {
    AlgebraicClass out{gamma, false, 1, {}};
    if (gamma.is_one()) {
        out.all_n = true;
        out.n_bound = 0;
        return out;
    }
    const BigInt p = abs(gamma.p());
    const BigInt& q = gamma.q();
    out.n_bound = n_bound(gamma);
    for (long long n = 2; n <= out.n_bound; ++n) {
        if (auto d = test_square_discriminant(p, q, static_cast<int>(n)))
            out.certificates.push_back(detail::make_certificate(p, q, static_cast<int>(n), *d));
    }
    return out;
}

/// The (A, B) certificate for an algebraic (gamma, N).
inline std::pair<BigInt, BigInt> dioph_solution(const Gamma& gamma, int n) {
    const auto ab = test_dioph(abs(gamma.p()), gamma.q(), n);
    if (!ab) throw std::domain_error("dioph_solution: discriminant is not a square");
    return *ab;
}

/// The parametrization value s in (0,1) for an algebraic (gamma, N).
inline Rational pell_s(const Gamma& gamma, int n) {
    const BigInt p = abs(gamma.p());
    const auto d = test_square_discriminant(p, gamma.q(), n);
    if (!d) throw std::domain_error("pell_s: discriminant is not a square");
    Rational s(BigInt(n) * p - *d, gamma.q());
    if (s >= Rational(1)) s = Rational(2 * n - 1) / s;
    return s;
}

/// gamma = (2N-1+s^2)/(2sN) for s in (0,1); the result always classifies
/// with n among its certificates.
inline Gamma gamma_from_s(const Rational& s, int n) {
    if (n < 2) throw std::domain_error("gamma_from_s: n must be >= 2");
    if (!(s > Rational(0) && s < Rational(1)))
        throw std::domain_error("gamma_from_s: s must lie in (0,1)");
    return Gamma((Rational(2 * n - 1) + s * s) / (Rational(2 * n) * s));
}

/// gamma = (2n+3)/(2n+1): the unique parameter whose only algebraic index
/// is n, with p = q + 2.
inline Gamma minimal_series(int n) {
    if (n < 2) throw std::domain_error("minimal_series: n must be >= 2");
    return Gamma(Rational(2LL * n + 3, 2LL * n + 1));
}

/// Equality case of the upper band for denominator q: odd q = 2s+1 gives
/// gamma = (q^2-2)/q with N = s(s+1); even q = 2s gives gamma = (2s^2-1)/q
/// with N = s^2 - 1. Empty for q < 3.
inline std::optional<std::pair<Gamma, int>> maximal_series(int q) {
    if (q < 3) return std::nullopt;
    const long long qq = static_cast<long long>(q) * q;
    if (q % 2 == 1) {
        const long long s = (q - 1) / 2;
        return std::make_pair(Gamma(Rational(qq - 2, q)), static_cast<int>(s * (s + 1)));
    }
    const long long s = q / 2;
    return std::make_pair(Gamma(Rational(qq / 2 - 1, q)), static_cast<int>(s * s - 1));
}

struct EnumRow {
    long long q = 0;
    long long p = 0;
    AlgebraicCertificate cert;
};

/// Every algebraic gamma = p/q with 3 <= q <= q_max, each with all of its
/// certificates, sorted by (q, p, N). The default scan uses the sharp band
/// q+2 <= p <= q^2-2 (halved upper end for even q); full_band rescans the
/// loose band q+1 <= p <= q^2-1 so tests can confirm nothing is missed.
inline std::vector<EnumRow> enumerate_certificates(int q_max, bool full_band = false, int threads = 0) {
    if (q_max < 3) throw std::domain_error("enumerate: q_max must be >= 3");
    std::vector<std::vector<EnumRow>> per_q(static_cast<std::size_t>(q_max) + 1);
    std::atomic<int> next_q{3};
    std::exception_ptr worker_error;
    std::mutex error_mutex;
    const int workers = std::min(detail::worker_count(threads), q_max - 2);

    auto scan_q = [&](int q) {
        std::vector<EnumRow>& rows = per_q[static_cast<std::size_t>(q)];
        const long long qq = static_cast<long long>(q) * q;
        const long long p_lo = full_band ? q + 1 : q + 2;
        const long long p_hi = full_band ? qq - 1 : (q % 2 == 1 ? qq - 2 : qq / 2 - 1);
        for (long long p = p_lo; p <= p_hi; ++p) {
            if (gcd(BigInt(p), BigInt(q)) != 1) continue;
            const Gamma g{Rational(p, q)};
            const long long bound = n_bound(g);
            for (long long n = 2; n <= bound; ++n) {
                if (auto d = test_square_discriminant(BigInt(p), BigInt(q), static_cast<int>(n)))
                    rows.push_back({q, p, detail::make_certificate(BigInt(p), BigInt(q),
                                                                   static_cast<int>(n), *d)});
            }
        }
    };

    auto work = [&] {
        try {
            for (;;) {
                const int q = next_q.fetch_add(1);
                if (q > q_max) return;
                scan_q(q);
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!worker_error) worker_error = std::current_exception();
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (worker_error) std::rethrow_exception(worker_error);

    std::vector<EnumRow> rows;
    for (int q = 3; q <= q_max; ++q)
        rows.insert(rows.end(), per_q[static_cast<std::size_t>(q)].begin(),
                    per_q[static_cast<std::size_t>(q)].end());
    return rows;
}

// --- serialization ---------------------------------------------------------

inline void certificate_to_json(JsonWriter& w, const AlgebraicCertificate& c) {
    w.begin_object();
    w.key("d").value(c.d);
    w.key("dioph_a").value(c.dioph_a);
    w.key("dioph_b").value(c.dioph_b);
    w.key("discriminant").value(c.discriminant);
    w.key("k").value(c.k);
    w.key("n").value(c.n);
    w.key("pell_s").value(c.pell_s);
    w.key("series").value(series_name(c.series));
    w.end_object();
}

inline std::string class_to_json(const AlgebraicClass& cls) {
    JsonWriter w;
    w.begin_object();
    w.key("all_n").value(cls.all_n);
    w.key("certificates");
    w.begin_array();
    for (const auto& c : cls.certificates) certificate_to_json(w, c);
    w.end_array();
    w.key("gamma").value(cls.gamma.value());
    w.key("n_bound").value(cls.n_bound);
    w.end_object();
    return w.str();
}

inline std::string rows_to_csv(const std::vector<EnumRow>& rows) {
    std::string out = "q,p,N,k,d,series\n";
    for (const auto& r : rows) {
        out += std::to_string(r.q) + "," + std::to_string(r.p) + "," + std::to_string(r.cert.n) + "," +
               r.cert.k.str() + "," + r.cert.d.str() + "," + series_name(r.cert.series) + "\n";
    }
    return out;
}

inline std::string rows_to_json(const std::vector<EnumRow>& rows) {
    JsonWriter w;
    w.begin_array();
    for (const auto& r : rows) {
        w.begin_object();
        w.key("certificate");
        certificate_to_json(w, r.cert);
        w.key("p").value(static_cast<long long>(r.p));
        w.key("q").value(static_cast<long long>(r.q));
        w.end_object();
    }
    w.end_array();
    return w.str();
}

} // namespace gharm
