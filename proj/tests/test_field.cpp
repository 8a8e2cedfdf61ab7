#include <catch2/catch_amalgamated.hpp>

#include "gharm/field.hpp"

#include <random>

using namespace gharm;

namespace {

std::mt19937_64 rng(0x31415926ULL);

double urand(double lo, double hi) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

FieldConfig config(const char* gamma, int n, double C = 1.0, double psi = 0.0, double phi = 0.0,
                   bool adjoint = false) {
    return FieldConfig(make_spectrum(Gamma::parse(gamma), n), C, psi, phi, adjoint);
}

const double kAronssonC = std::pow(4.0, 4.0 / 3.0);

double aronsson_u(double x, double y) {
    return std::pow(std::fabs(x), 4.0 / 3.0) - std::pow(std::fabs(y), 4.0 / 3.0);
}

} // namespace

TEST_CASE("wave profile hits the apex and the zero") {
    const FieldConfig c = config("7/5", 2);
    const double z0 = c.spectrum().z0;
    CHECK(wave(c, 0.0) == Catch::Approx(z0).epsilon(1e-13));
    CHECK(std::fabs(wave(c, M_PI / 4.0)) < 1e-12); // T/4 with T = pi
    CHECK(wave_with_derivative(c, 0.0).fp == 0.0);

    // periodicity and the two symmetry rules
    for (double th : {0.1, 0.4, 1.3, 2.2, 5.9}) {
        const double T = 2.0 * M_PI / c.n();
        CHECK(wave(c, th + T) == Catch::Approx(wave(c, th)).margin(1e-10 * z0));
        CHECK(wave(c, th + 2.0 * M_PI) == Catch::Approx(wave(c, th)).margin(1e-10 * z0));
        CHECK(wave(c, -th) == Catch::Approx(wave(c, th)).margin(1e-12 * z0));
        CHECK(wave(c, T / 2.0 - th) == Catch::Approx(-wave(c, th)).margin(1e-12 * z0));
    }
}

TEST_CASE("wave values satisfy the phase-curve equation") {
    for (const char* g : {"7/5", "7/3", "23/5", "1"}) {
        for (int n : {2, 3}) {
            const FieldConfig c = config(g, n);
            for (int i = 0; i < 60; ++i) {
                const double th = 2.0 * M_PI * i / 60.0 + 0.013;
                const auto [f, fp] = wave_with_derivative(c, th);
                CHECK(phase_curve_residual(c.spectrum(), f, fp) < 1e-10);
            }
        }
    }
}

TEST_CASE("forward map at the collapse point") {
    const FieldConfig c = config("7/5", 2, 2.5);
    const auto [pt, u] = forward(c, {1.0, 0.0});
    CHECK(pt.x == Catch::Approx(6.0).epsilon(1e-15)); // mu + 1 = 6
    CHECK(pt.y == Catch::Approx(0.0).margin(1e-15));
    CHECK(u == Catch::Approx(2.5).epsilon(1e-15));

    const auto [origin, u0] = forward(c, {0.0, 1.234});
    CHECK(origin.x == 0.0);
    CHECK(origin.y == 0.0);
    CHECK(u0 == 0.0);
}

TEST_CASE("forward map reproduces the Aronsson 2-solution") {
    const FieldConfig c = config("1", 2, kAronssonC);
    for (int i = 0; i < 40; ++i) {
        const ParamPoint p{urand(0.2, 1.5), urand(0.0, 2.0 * M_PI)};
        const auto [pt, u] = forward(c, p);
        CHECK(u == Catch::Approx(aronsson_u(pt.x, pt.y)).margin(1e-10 * std::max(1.0, std::fabs(u))));
    }
}

TEST_CASE("inversion of the parametric map") {
    const FieldConfig c = config("7/5", 2);
    const ParamPoint p = invert(c, {6.0, 0.0});
    CHECK(p.h == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(std::min(p.tau, 2.0 * M_PI - p.tau) < 1e-12);

    CHECK_THROWS_AS(invert(c, {0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(invert(config("1", 2), {1.0, 0.0}), std::domain_error);
}

TEST_CASE("inversion against the 1-d argument oracle") {
    // (0, 4): tau solves 5 cos(tau) + cos(3 tau) = 0 with 5 sin(tau) - sin(3 tau) > 0
    const FieldConfig c = config("7/5", 2);
    auto g = [](double t) { return 5.0 * std::cos(t) + std::cos(3.0 * t); };
    double lo = 0.0, hi = M_PI; // g(0) = 6 > 0, g(pi) = -6 < 0
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0 ? lo : hi) = mid;
    }
    const double tau_oracle = 0.5 * (lo + hi);
    CHECK(5.0 * std::sin(tau_oracle) - std::sin(3.0 * tau_oracle) > 0);

    const ParamPoint p = invert(c, {0.0, 4.0});
    CHECK(p.tau == Catch::Approx(tau_oracle).epsilon(1e-10));
    const auto [pt, u] = forward(c, p);
    (void)u;
    CHECK(pt.x == Catch::Approx(0.0).margin(1e-10));
    CHECK(pt.y == Catch::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("round trip over the test matrix") {
    const std::pair<const char*, int> matrix[] = {
        {"7/5", 2}, {"7/3", 2}, {"7/4", 3}, {"23/5", 6}, {"-7/5", 2}};
    for (const auto& [g, n] : matrix) {
        const FieldConfig c = config(g, n, 1.0, 0.3); // nonzero rotation
        for (int i = 0; i < 60; ++i) {
            const ParamPoint p{urand(0.3, 2.5), urand(0.0, 2.0 * M_PI)};
            const auto [pt, u] = forward(c, p);
            (void)u;
            const ParamPoint q = invert(c, pt);
            double dtau = std::fabs(p.tau - q.tau);
            dtau = std::min(dtau, 2.0 * M_PI - dtau);
            CHECK(std::fabs(p.h - q.h) / p.h < 1e-10);
            CHECK(dtau < 1e-10);
        }
    }
}

TEST_CASE("point evaluation: Aronsson solution") {
    const FieldConfig c = config("1", 2, kAronssonC);
    CHECK(eval(c, {1.0, 0.0}) == Catch::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 50; ++i) {
        const PlanePoint pt{urand(-2.0, 2.0), urand(-2.0, 2.0)};
        if (pt.rho() < 0.05) continue;
        CHECK(eval(c, pt) ==
              Catch::Approx(aronsson_u(pt.x, pt.y)).margin(1e-10 * std::pow(pt.rho(), 4.0 / 3.0)));
    }
}

TEST_CASE("evaluation is zero along the wave zero ray") {
    const FieldConfig c = config("7/5", 2);
    // theta = T/4 = pi/4
    const PlanePoint pt{std::cos(M_PI / 4.0) * 1.7, std::sin(M_PI / 4.0) * 1.7};
    CHECK(std::fabs(eval(c, pt)) < 1e-10 * std::pow(1.7, c.k()));
}

TEST_CASE("homogeneity") {
    for (const char* g : {"7/5", "23/5", "1"}) {
        const int n = g[0] == '2' ? 6 : 2;
        const FieldConfig c = config(g, n);
        for (int i = 0; i < 25; ++i) {
            const double th = urand(0.0, 2.0 * M_PI);
            if (std::fabs(wave(c, th + c.polar_shift())) < 0.05 * c.spectrum().z0) continue;
            const PlanePoint pt{std::cos(th), std::sin(th)};
            const double u = eval(c, pt);
            for (double t : {2.0, 3.7}) {
                const double expect = std::pow(t, c.k()) * u;
                CHECK(eval(c, {t * pt.x, t * pt.y}) == Catch::Approx(expect).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("consistency between the inversion and polar routes") {
    for (const auto& [g, n] : {std::pair<const char*, int>{"7/5", 2}, {"7/4", 3}, {"-7/5", 2}}) {
        const FieldConfig c = config(g, n, 1.7, 0.25, 0.1);
        for (int i = 0; i < 60; ++i) {
            const double rho = urand(0.5, 2.0), th = urand(0.0, 2.0 * M_PI);
            const PlanePoint pt{rho * std::cos(th), rho * std::sin(th)};
            const double a = eval(c, pt), b = eval_polar(c, pt);
            CHECK(a == Catch::Approx(b).margin(1e-9 * std::pow(rho, c.k()) *
                                               std::fabs(c.amplitude())));
        }
    }
}

TEST_CASE("gradient: Euler identity and finite differences") {
    for (const auto& [g, n] : {std::pair<const char*, int>{"7/5", 2}, {"7/3", 2}, {"1", 3}}) {
        const FieldConfig c = config(g, n);
        int done = 0;
        while (done < 20) {
            const double rho = urand(0.5, 2.0), th = urand(0.0, 2.0 * M_PI);
            const double shifted = th + c.polar_shift();
            if (std::fabs(wave(c, shifted)) < 0.05 * c.spectrum().z0) continue;
            // keep FD stencils inside a smooth neighborhood at gamma = 1
            if (c.spectrum().gamma.is_one()) {
                const double step = M_PI / c.n();
                const double d = std::fabs(std::remainder(shifted, step));
                if (d < 0.02) continue;
            }
            const PlanePoint pt{rho * std::cos(th), rho * std::sin(th)};
            const auto [ux, uy] = gradient(c, pt);
            const double u = eval(c, pt);
            CHECK(pt.x * ux + pt.y * uy ==
                  Catch::Approx(c.k() * u).margin(1e-9 * rho * std::hypot(ux, uy)));

            const double d = 1e-5 * rho;
            const double fdx = (eval(c, {pt.x + d, pt.y}) - eval(c, {pt.x - d, pt.y})) / (2 * d);
            const double fdy = (eval(c, {pt.x, pt.y + d}) - eval(c, {pt.x, pt.y - d})) / (2 * d);
            CHECK(std::hypot(fdx - ux, fdy - uy) < 1e-6 * std::hypot(ux, uy));
            ++done;
        }
    }
}

TEST_CASE("gradient is radial on the apex ray") {
    const FieldConfig c = config("7/5", 2);
    const auto [pt, u] = forward(c, {1.0, 0.0}); // (6, 0)
    (void)u;
    const auto [ux, uy] = gradient(c, pt);
    CHECK(std::fabs(uy) < 1e-9 * std::hypot(ux, uy));
}

TEST_CASE("pde residual on annulus points") {
    for (const auto& [g, n] : {std::pair<const char*, int>{"7/5", 2}, {"7/4", 3}}) {
        const FieldConfig c = config(g, n);
        for (int i = 0; i < 100; ++i) {
            const double rho = 0.5 + 1.5 * (i % 10 + 0.5) / 10.0;
            const double th = 2.0 * M_PI * (i / 10 + 0.125) / 10.0;
            CHECK(pde_residual(c, {rho * std::cos(th), rho * std::sin(th)}) < 1e-6);
        }
    }
    // the Aronsson equation example
    CHECK(pde_residual(config("1", 2, kAronssonC), {1.0, 2.0}) < 1e-6);
    // gamma = 1 with a higher index, on an offset annulus grid
    {
        const FieldConfig c = config("1", 4);
        for (int i = 0; i < 48; ++i) {
            const double rho = 0.5 + 1.5 * (i % 6 + 0.5) / 6.0;
            const double th = 2.0 * M_PI * (i / 6 + 0.125) / 8.0;
            CHECK(pde_residual(c, {rho * std::cos(th), rho * std::sin(th)}) < 1e-6);
        }
    }
    // linear 1-solutions have no curvature at all
    CHECK(pde_residual(config("9/4", 1), {0.7, -0.4}) == 0.0);
}

TEST_CASE("conjugacy between gamma and -gamma") {
    const ConjugacyReport rep = conjugacy_check(config("7/5", 2));
    CHECK(rep.max_orthogonality < 1e-8);
    CHECK(rep.ratio_spread < 1e-6);
    CHECK(rep.exponent_identity);
    CHECK(rep.involution_max < 1e-10);
    CHECK(rep.c_estimate > 0.0);
    CHECK_THROWS_AS(conjugacy_check(config("1", 2)), std::domain_error);
}

TEST_CASE("aronsson polynomial identity") {
    CHECK(algebraic_identity_check({1.0, 0.0}) < 1e-12);
    CHECK(algebraic_identity_check({1.0, 1.0}) < 1e-12);
    for (int i = 0; i < 50; ++i) {
        const PlanePoint pt{urand(-2.0, 2.0), urand(-2.0, 2.0)};
        CHECK(algebraic_identity_check(pt) < 1e-9);
    }
}

TEST_CASE("phase curve samples") {
    const Spectrum s = make_spectrum(Gamma::parse("7/5"), 2);
    const auto [za, wa] = phase_curve_point(s, 0.0);
    CHECK(za == Catch::Approx(s.z0).epsilon(1e-13));
    CHECK(wa == 0.0);

    const auto [zb, wb] = phase_curve_point(s, 1e8);
    CHECK(std::fabs(zb) < 1e-7);
    CHECK(wb == Catch::Approx(-1.0).epsilon(1e-9));

    for (const auto& [z, w] : phase_curve_sample(s, 64)) CHECK(phase_curve_residual(s, z, w) < 1e-10);
}

TEST_CASE("verification suite passes and the negative control fails") {
    VerifyOptions opts;
    opts.grid_rho = 10;
    opts.grid_theta = 10;
    opts.random_points = 40;

    const VerifyReport ok = run_verification(config("7/5", 2), opts);
    CHECK(ok.passed);
    CHECK(ok.zero_rays == 4);
    CHECK(ok.residual_max < 1e-6);
    CHECK(ok.roundtrip_max < 1e-10);
    CHECK(ok.periodicity_max < 1e-9);
    CHECK(ok.homogeneity_max < 1e-9);
    CHECK(ok.euler_max < 1e-9);
    CHECK(ok.injectivity_min > 1e-6);
    CHECK(ok.to_json().find("\"passed\":true") != std::string::npos);
    CHECK(ok.to_json().find("\"config\":{\"adjoint\":false") != std::string::npos);

    VerifyOptions bad = opts;
    bad.perturb_k = 1e-3;
    CHECK_FALSE(run_verification(config("7/5", 2), bad).passed);
}
