#include <catch2/catch_amalgamated.hpp>

#include "gharm/classifier.hpp"

#include <random>
#include <set>
#include <tuple>

using namespace gharm;

namespace {

std::mt19937_64 rng(0x7777aaaaULL);

} // namespace

TEST_CASE("discriminant values") {
    CHECK(discriminant(Gamma(Rational(7, 5)), 2) == 121);
    CHECK(discriminant(Gamma(Rational(7, 3)), 2) == 169);
    CHECK(discriminant(Gamma(Rational(5, 3)), 2) == 73);
    CHECK(discriminant(Gamma(Rational(-7, 5)), 2) == 121); // mirrors to |gamma|
    CHECK_THROWS_AS(discriminant(Gamma(Rational(7, 5)), 1), std::domain_error);
}

TEST_CASE("index bound") {
    CHECK(n_bound(Gamma(Rational(5, 3))) == 3);   // 81/25 = 3.24
    CHECK(n_bound(Gamma(Rational(7, 5))) == 6);   // 325/49 ~ 6.63
    CHECK(n_bound(Gamma(Rational(2))) == 1);      // 5/8: empty range
    CHECK(n_bound(Gamma(Rational(-7, 5))) == 6);
    // exact integer bound is excluded by strictness: q=2 gives (p^2-2)/p^2*2 ...
    // construct a case where num/den is integral
    CHECK(n_bound(Gamma(Rational(3, 2))) == 1);   // 4*(9+2-4)/(2*9) = 28/18 -> 1
}

TEST_CASE("classification of the flagship parameters") {
    const AlgebraicClass a = classify(Gamma(Rational(7, 5)));
    REQUIRE(a.certificates.size() == 1);
    CHECK(a.certificates[0].n == 2);
    CHECK(a.certificates[0].k == Rational(3, 2));
    CHECK(a.certificates[0].d == 11);
    CHECK(a.certificates[0].series == Series::minimal);

    CHECK(classify(Gamma(Rational(2))).certificates.empty());

    const AlgebraicClass b = classify(Gamma(Rational(7, 4)));
    REQUIRE(b.certificates.size() == 1);
    CHECK(b.certificates[0].n == 3);
    CHECK(b.certificates[0].series == Series::maximal_even);
    CHECK(b.certificates[0].d == 19);

    const AlgebraicClass one = classify(Gamma(Rational(1)));
    CHECK(one.all_n);
    CHECK(one.certificates.empty());
}

TEST_CASE("negative gamma mirrors the classification") {
    for (const char* text : {"7/5", "7/3", "23/5", "9/7"}) {
        const auto pos = classify(Gamma::parse(text));
        const auto neg = classify(Gamma(-Rational::parse(text)));
        REQUIRE(pos.certificates.size() == neg.certificates.size());
        for (std::size_t i = 0; i < pos.certificates.size(); ++i) {
            CHECK(pos.certificates[i].n == neg.certificates[i].n);
            CHECK(pos.certificates[i].k == neg.certificates[i].k);
        }
    }
}

TEST_CASE("diophantine certificates") {
    CHECK(dioph_solution(Gamma(Rational(7, 5)), 2) == std::make_pair(BigInt(5), BigInt(1)));
    CHECK(dioph_solution(Gamma(Rational(7, 3)), 2) == std::make_pair(BigInt(9), BigInt(1)));
    CHECK(dioph_solution(Gamma(Rational(7, 4)), 3) == std::make_pair(BigInt(10), BigInt(1)));
    CHECK_THROWS_AS(dioph_solution(Gamma(Rational(5, 3)), 2), std::domain_error);

    // A/B solves the quadratic and exceeds 2N-1
    const auto [A, B] = dioph_solution(Gamma(Rational(23, 5)), 6);
    CHECK(A * A * 5 - 2 * A * B * 23 * 6 + 5 * 11 * B * B == 0);
    CHECK(A > 11 * B);

    // B > 1 happens: mu = (pN+d)/q need not clear the denominator
    CHECK(discriminant(Gamma(Rational(31, 24)), 2) == 2116);
    const auto [A2, B2] = dioph_solution(Gamma(Rational(31, 24)), 2);
    CHECK(A2 == 9);
    CHECK(B2 == 2);
    CHECK(A2 * A2 * 24 - 2 * A2 * B2 * 31 * 2 + 24 * 3 * B2 * B2 == 0);
}

TEST_CASE("pell representative") {
    // substitution oracle: s must satisfy gamma == (2N-1+s^2)/(2sN)
    const Rational s75 = pell_s(Gamma(Rational(7, 5)), 2);
    CHECK(s75 == Rational(3, 5));
    CHECK((Rational(3) + s75 * s75) / (Rational(4) * s75) == Rational(7, 5));

    CHECK(pell_s(Gamma(Rational(13, 8)), 2) == Rational(1, 2));
    CHECK(discriminant(Gamma(Rational(13, 8)), 2) == 484);

    CHECK(gamma_from_s(Rational(1, 2), 2).value() == Rational(13, 8));
    CHECK(gamma_from_s(Rational(1, 3), 3).value() == Rational(23, 9));
    CHECK_THROWS_AS(gamma_from_s(Rational(3, 2), 2), std::domain_error);
    CHECK_THROWS_AS(gamma_from_s(Rational(1), 2), std::domain_error);
}

TEST_CASE("pell round trip on random parameters") {
    std::uniform_int_distribution<int> nd(2, 8), vd(2, 9);
    for (int i = 0; i < 100; ++i) {
        const int n = nd(rng);
        const int v = vd(rng);
        const int u = std::uniform_int_distribution<int>(1, v - 1)(rng);
        const Rational s(u, v);
        const Gamma g = gamma_from_s(s, n);
        CHECK(g.value() > Rational(1));
        CHECK(pell_s(g, n) == s);
        const auto cls = classify(g);
        bool found = false;
        for (const auto& c : cls.certificates) found |= c.n == n;
        CHECK(found);
    }
}

TEST_CASE("pell representative inverts on every certificate") {
    for (const auto& r : enumerate_certificates(12)) {
        const Gamma g{Rational(r.p, r.q)};
        CHECK(gamma_from_s(r.cert.pell_s, r.cert.n) == g);
        CHECK(pell_s(g, r.cert.n) == r.cert.pell_s);
        CHECK(r.cert.pell_s > Rational(0));
        CHECK(r.cert.pell_s < Rational(1));
    }
}

TEST_CASE("minimal series") {
    CHECK(minimal_series(2).value() == Rational(7, 5));
    CHECK(minimal_series(3).value() == Rational(9, 7));
    for (int n = 2; n <= 12; ++n) {
        const Gamma g = minimal_series(n);
        CHECK(g.p() == g.q() + 2);
        CHECK(g.q() % 2 == 1);
        const auto cls = classify(g);
        REQUIRE(cls.certificates.size() == 1);
        CHECK(cls.certificates[0].n == n);
        CHECK(cls.certificates[0].series == Series::minimal);
    }
}

TEST_CASE("maximal series") {
    const auto m3 = maximal_series(3);
    REQUIRE(m3);
    CHECK(m3->first.value() == Rational(7, 3));
    CHECK(m3->second == 2);

    const auto m4 = maximal_series(4);
    REQUIRE(m4);
    CHECK(m4->first.value() == Rational(7, 4));
    CHECK(m4->second == 3);

    const auto m5 = maximal_series(5);
    REQUIRE(m5);
    CHECK(m5->first.value() == Rational(23, 5));
    CHECK(m5->second == 6);
    CHECK(discriminant(m5->first, 6) == 18769);
    CHECK(is_perfect_square(BigInt(18769)).value() == 137);

    CHECK_FALSE(maximal_series(2).has_value());

    for (int q = 3; q <= 14; ++q) {
        const auto m = maximal_series(q);
        REQUIRE(m);
        const auto cls = classify(m->first);
        bool found = false;
        for (const auto& c : cls.certificates) {
            if (c.n != m->second) continue;
            found = true;
            CHECK(c.series == (q % 2 ? Series::maximal : Series::maximal_even));
        }
        CHECK(found);
    }
}

TEST_CASE("enumeration at q_max = 3") {
    const auto rows = enumerate_certificates(3);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].q == 3);
    CHECK(rows[0].p == 7);
    CHECK(rows[0].cert.n == 2);
    CHECK(rows[0].cert.k == Rational(5, 3));
    CHECK(rows[0].cert.d == 13);
}

TEST_CASE("enumeration bands and ordering") {
    const auto rows = enumerate_certificates(14);
    long long prev_q = 0, prev_p = 0;
    int prev_n = 0;
    for (const auto& r : rows) {
        // sorted by (q, p, N)
        const bool ordered = r.q > prev_q || (r.q == prev_q && (r.p > prev_p || (r.p == prev_p && r.cert.n > prev_n)));
        CHECK(ordered);
        prev_q = r.q;
        prev_p = r.p;
        prev_n = r.cert.n;

        CHECK(r.q >= 3);
        CHECK(r.p >= r.q + 2);
        CHECK(r.p <= r.q * r.q - 2);
        if (r.q % 2 == 0) CHECK(2 * r.p <= r.q * r.q - 2);
        // no integer gamma ever appears
        CHECK(r.q > 1);
        CHECK(r.p % r.q != 0);
        // certificate respects the finiteness bound strictly
        CHECK(BigInt(r.cert.n) * 2 * r.p * r.p < BigInt(r.q) * r.q * (BigInt(r.p) * r.p + 2 - BigInt(r.q) * r.q));

        // series sharpness: the band edges occur only at their equality cases
        if (r.p == r.q + 2) {
            CHECK(r.q % 2 == 1);
            CHECK(2 * r.cert.n == r.q - 1);
            CHECK(r.cert.series == Series::minimal);
        }
        if (r.p == r.q * r.q - 2) {
            CHECK(r.q % 2 == 1);
            CHECK(4 * r.cert.n == r.q * r.q - 1);
            CHECK(r.cert.series == Series::maximal);
        }
        if (r.q % 2 == 0 && 2 * r.p == r.q * r.q - 2) {
            CHECK(4 * r.cert.n == r.q * r.q - 4);
            CHECK(r.cert.series == Series::maximal_even);
        }
    }

    // The loose band q+1..q^2-1 additionally contains the boundary family
    // p = q^2-1 with N = (q^2-1)/2 for odd q (d = Np-1 is attainable there:
    // gamma = 8/3 has the algebraic 4-solution with k = 22/7), and nothing
    // else. Nothing ever appears at p = q+1.
    const auto loose = enumerate_certificates(14, /*full_band=*/true);
    std::set<std::tuple<long long, long long, int>> sharp_keys;
    for (const auto& r : rows) sharp_keys.insert({r.q, r.p, r.cert.n});
    std::set<std::tuple<long long, long long, int>> extras;
    for (const auto& r : loose) {
        CHECK(r.p > r.q + 1);
        if (!sharp_keys.count({r.q, r.p, r.cert.n})) extras.insert({r.q, r.p, r.cert.n});
    }
    std::set<std::tuple<long long, long long, int>> expected;
    for (long long q = 3; q <= 13; q += 2)
        expected.insert({q, q * q - 1, static_cast<int>((q * q - 1) / 2)});
    CHECK(extras == expected);
    CHECK(loose.size() == rows.size() + expected.size());
}

TEST_CASE("triple equivalence on a scan window") {
    for (int q = 3; q <= 8; ++q)
        for (long long p = q + 1; p <= static_cast<long long>(q) * q - 1; ++p) {
            if (gcd(BigInt(p), BigInt(q)) != 1) continue;
            const Gamma g{Rational(p, q)};
            for (long long n = 2; n <= n_bound(g); ++n) {
                const auto d = test_square_discriminant(BigInt(p), BigInt(q), static_cast<int>(n));
                const auto ab = test_dioph(BigInt(p), BigInt(q), static_cast<int>(n));
                const auto k = test_rational_k(g, static_cast<int>(n));
                CHECK(d.has_value() == ab.has_value());
                CHECK(d.has_value() == k.has_value());
            }
        }
}

TEST_CASE("deterministic serialization") {
    const auto rows = enumerate_certificates(10, false, 4);
    const std::string csv1 = rows_to_csv(rows);
    const std::string csv2 = rows_to_csv(enumerate_certificates(10, false, 2));
    CHECK(csv1 == csv2);
    CHECK(csv1.rfind("q,p,N,k,d,series\n", 0) == 0);
    CHECK(csv1.find("3,7,2,5/3,13,maximal\n") != std::string::npos);
    CHECK(csv1.find("\r") == std::string::npos);

    const std::string json = class_to_json(classify(Gamma(Rational(7, 5))));
    CHECK(json.find("\"k\":\"3/2\"") != std::string::npos);
    CHECK(json.find("\"pell_s\":\"3/5\"") != std::string::npos);
    CHECK(json.find("\"series\":\"minimal\"") != std::string::npos);
}
