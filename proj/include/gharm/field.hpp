#pragma once

// Plane evaluation of quasiradial solutions. The angular wave profile f_N
// solves (f'^2 + k^2 f^2)^k = (f'^2 + lambda^2 f^2)^(k-1); the solution
// itself is reached either through the parametric representation
//
//   x + iy = e^{i phi} h^{2N-1} (mu e^{i tau} + e^{-i((2N-1)tau + 2N psi)}),
//   u      = C h^{(2N-1)k} cos N(tau + psi),
//
// inverted point-wise (the argument of the bracket is strictly monotone in
// tau whenever |mu| > 2N-1), or through polar coordinates u ~ rho^k f_N.
// The two routes agree and double-check each other; everything else here
// (gradients, PDE residual, conjugacy and the verification suite) is built
// on top of them.

#include "gharm/json_writer.hpp"
#include "gharm/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace gharm {

struct PlanePoint {
    double x = 0.0;
    double y = 0.0;
    double rho() const { return std::hypot(x, y); }
    double theta() const { return std::atan2(y, x); }
};

struct ParamPoint {
    double h = 0.0;   // >= 0
    double tau = 0.0; // [0, 2*pi)
};

class FieldConfig {
public:
    explicit FieldConfig(Spectrum spectrum, double amplitude = 1.0, double rotation = 0.0,
                         double global_phase = 0.0, bool adjoint = false)
        : spectrum_(std::move(spectrum)), amplitude_(amplitude), rotation_(rotation),
          global_phase_(global_phase), adjoint_(adjoint) {
        if (amplitude_ == 0.0) throw std::domain_error("field: amplitude must be nonzero");
        n_ = spectrum_.n;
        k_ = spectrum_.k.to_double();
        lambda_ = spectrum_.lambda.to_double();
        mu_ = spectrum_.mu.to_double();
        gamma_ = spectrum_.gamma.value().to_double();
        psi_eff_ = rotation_ - (adjoint_ ? M_PI / (2.0 * n_) : 0.0);

        const QuadExt band{Rational(2LL * n_ - 1)};
        invertible_ = spectrum_.mu.sign() > 0 ? spectrum_.mu > band : spectrum_.mu < -band;

        // u = C h^{(2N-1)k} cos(N(tau+psi)) equals (C/c0) rho^k f_N(theta + shift)
        polar_scale_ = std::pow(std::fabs(mu_ + 1.0), k_) * spectrum_.z0;
        polar_shift_ = psi_eff_ - global_phase_ - (mu_ < 0.0 ? M_PI : 0.0);

        if (invertible_) assert_monotone_argument();
        assert_monotone_wave_angle();
    }

    const Spectrum& spectrum() const { return spectrum_; }
    double amplitude() const { return amplitude_; }
    double rotation() const { return rotation_; }
    double global_phase() const { return global_phase_; }
    bool is_adjoint() const { return adjoint_; }
    bool invertible() const { return invertible_; }

    int n() const { return n_; }
    double k() const { return k_; }
    double lambda() const { return lambda_; }
    double mu() const { return mu_; }
    double gamma() const { return gamma_; }
    double psi_eff() const { return psi_eff_; }
    double polar_scale() const { return polar_scale_; }
    double polar_shift() const { return polar_shift_; }

    /// Test hook: offset the floating growth exponent (negative control for
    /// the verification suite). The exact layer is untouched.
    FieldConfig with_perturbed_k(double eps) const {
        FieldConfig c = *this;
        c.k_ += eps;
        return c;
    }

private:
    // The lifted argument of mu e^{i tau} + e^{-i((2N-1)tau + 2N psi)};
    // strictly increasing and gaining exactly 2*pi per turn when
    // |mu| > 2N-1.
    friend double lifted_argument(const FieldConfig&, double);

    void assert_monotone_argument() const;
    void assert_monotone_wave_angle() const;

    Spectrum spectrum_;
    double amplitude_;
    double rotation_;
    double global_phase_;
    bool adjoint_;

    int n_ = 1;
    double k_ = 1.0, lambda_ = 0.0, mu_ = 0.0, gamma_ = 0.0;
    double psi_eff_ = 0.0, polar_scale_ = 1.0, polar_shift_ = 0.0;
    bool invertible_ = false;
};

inline double lifted_argument(const FieldConfig& c, double tau) {
    const double phase = 2.0 * c.n_ * (tau + c.psi_eff_);
    if (c.mu_ > 0.0) return tau + std::atan2(-std::sin(phase), c.mu_ + std::cos(phase));
    return tau + M_PI + std::atan2(std::sin(phase), -c.mu_ - std::cos(phase));
}

inline void FieldConfig::assert_monotone_argument() const {
    constexpr int samples = 512;
    double prev = lifted_argument(*this, 0.0);
    for (int i = 1; i <= samples; ++i) {
        const double cur = lifted_argument(*this, 2.0 * M_PI * i / samples);
        if (!(cur > prev)) throw std::logic_error("field: argument function is not increasing");
        prev = cur;
    }
    if (std::fabs(prev - lifted_argument(*this, 0.0) - 2.0 * M_PI) > 1e-9)
        throw std::logic_error("field: argument function winding is not one turn");
}

// theta(t) = arctan(t/k) - ((N-1)/N) arctan(t/lambda) must increase in t
// for the wave bisection to be well posed; checked on a geometric grid.
inline void FieldConfig::assert_monotone_wave_angle() const {
    const double coef = static_cast<double>(n_ - 1) / n_;
    double prev = 0.0, t = 1e-4;
    for (int i = 0; i < 64; ++i, t *= 1.5) {
        const double cur = std::atan(t / k_) - coef * std::atan(t / lambda_);
        if (!(cur > prev)) throw std::logic_error("field: wave angle map is not increasing");
        prev = cur;
    }
}

// --- wave profile -----------------------------------------------------------

namespace detail {

struct WavePoint {
    double f = 0.0;
    double fp = 0.0;
};

/// f and f' on the principal branch theta in [0, T/4], via the strictly
/// increasing map theta(t) = arctan(t/k) - ((N-1)/N) arctan(t/lambda).
inline WavePoint wave_core(const FieldConfig& c, double theta) {
    const double k = c.k(), lam = c.lambda();
    const double coef = static_cast<double>(c.n() - 1) / c.n();
    const double quarter = M_PI / (2.0 * c.n());
    if (theta <= 0.0) return {std::pow(lam, k - 1.0) / std::pow(k, k), 0.0};

    const double edge = quarter - theta;
    if (edge < 1e-8) return {edge, -1.0}; // z = (T/4 - theta) + O(edge^3), w -> -1

    const auto theta_of = [&](double t) { return std::atan(t / k) - coef * std::atan(t / lam); };
    double lo = 0.0, hi = 1.0;
    while (theta_of(hi) < theta) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e60) throw std::logic_error("wave: bracket growth failed");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (theta_of(mid) < theta ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    const double z =
        std::exp(0.5 * ((k - 1.0) * std::log(t * t + lam * lam) - k * std::log(t * t + k * k)));
    return {z, -t * z};
}

/// Principal branch extended to [-T/4, T/4] by evenness of f.
inline WavePoint wave_signed(const FieldConfig& c, double theta) {
    WavePoint p = wave_core(c, std::fabs(theta));
    if (theta < 0.0) p.fp = -p.fp;
    return p;
}

} // namespace detail

/// f_N(theta) and its derivative: 2*pi/N periodic, even, with
/// f_N(theta) = -f_N(T/2 - theta).
inline detail::WavePoint wave_with_derivative(const FieldConfig& c, double theta) {
    const double T = 2.0 * M_PI / c.n();
    double r = theta - T * std::floor(theta / T);
    if (r >= T) r -= T;
    if (r <= 0.25 * T) return detail::wave_signed(c, r);
    if (r <= 0.75 * T) {
        detail::WavePoint p = detail::wave_signed(c, 0.5 * T - r);
        return {-p.f, p.fp};
    }
    return detail::wave_signed(c, r - T);
}

inline double wave(const FieldConfig& c, double theta) { return wave_with_derivative(c, theta).f; }

// --- parametric map and its inverse ----------------------------------------

/// Image of (h, tau) and the solution value there.
inline std::pair<PlanePoint, double> forward(const FieldConfig& c, const ParamPoint& p) {
    const int n = c.n();
    const double arg2 = (2.0 * n - 1.0) * p.tau + 2.0 * n * c.psi_eff();
    const double scale = std::pow(p.h, 2.0 * n - 1.0);
    const double bx = scale * (c.mu() * std::cos(p.tau) + std::cos(arg2));
    const double by = scale * (c.mu() * std::sin(p.tau) - std::sin(arg2));
    const double cp = std::cos(c.global_phase()), sp = std::sin(c.global_phase());
    const PlanePoint pt{cp * bx - sp * by, sp * bx + cp * by};
    const double u = c.amplitude() * std::pow(p.h, (2.0 * n - 1.0) * c.k()) *
                     std::cos(n * (p.tau + c.psi_eff()));
    return {pt, u};
}

/// Unique (h, tau) with forward(c, .) == pt. Requires |mu| > 2N-1 (gamma
/// different from 1) and pt away from the origin.
inline ParamPoint invert(const FieldConfig& c, const PlanePoint& pt) {
    if (!c.invertible())
        throw std::domain_error("invert: parametric inversion requires |mu| > 2N-1");
    const double cp = std::cos(c.global_phase()), sp = std::sin(c.global_phase());
    const double zx = cp * pt.x + sp * pt.y;
    const double zy = -sp * pt.x + cp * pt.y;
    const double r = std::hypot(zx, zy);
    if (r == 0.0) throw std::domain_error("invert: the origin is the singular point");

    const int n = c.n();
    const double two_pi = 2.0 * M_PI;
    const double want = std::atan2(zy, zx);
    const double a0 = lifted_argument(c, 0.0);
    double target = want + two_pi * std::ceil((a0 - want) / two_pi - 1e-12);
    if (target < a0) target += two_pi;
    if (target >= a0 + two_pi) target -= two_pi;

    double lo = 0.0, hi = two_pi;
    for (int i = 0; i < 80 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (lifted_argument(c, mid) < target ? lo : hi) = mid;
    }
    double tau = 0.5 * (lo + hi);
    const auto modulus = [&](double t) {
        const double phase = 2.0 * n * (t + c.psi_eff());
        return std::sqrt(c.mu() * c.mu() + 2.0 * c.mu() * std::cos(phase) + 1.0);
    };
    double h = std::pow(r / modulus(tau), 1.0 / (2.0 * n - 1.0));

    // joint Newton polish on the derotated coordinates
    const auto residual = [&](double hh, double tt, double& fx, double& fy) {
        const double arg2 = (2.0 * n - 1.0) * tt + 2.0 * n * c.psi_eff();
        const double s = std::pow(hh, 2.0 * n - 1.0);
        fx = s * (c.mu() * std::cos(tt) + std::cos(arg2)) - zx;
        fy = s * (c.mu() * std::sin(tt) - std::sin(arg2)) - zy;
        return std::hypot(fx, fy);
    };
    double fx, fy;
    double best = residual(h, tau, fx, fy);
    for (int iter = 0; iter < 4 && best > 1e-16 * r; ++iter) {
        const double arg2 = (2.0 * n - 1.0) * tau + 2.0 * n * c.psi_eff();
        const double s = std::pow(h, 2.0 * n - 1.0);
        const double sh = (2.0 * n - 1.0) * std::pow(h, 2.0 * n - 2.0);
        const double xh = sh * (c.mu() * std::cos(tau) + std::cos(arg2));
        const double xt = s * (-c.mu() * std::sin(tau) - (2.0 * n - 1.0) * std::sin(arg2));
        const double yh = sh * (c.mu() * std::sin(tau) - std::sin(arg2));
        const double yt = s * (c.mu() * std::cos(tau) - (2.0 * n - 1.0) * std::cos(arg2));
        const double det = xh * yt - xt * yh;
        if (det == 0.0 || !std::isfinite(det)) break;
        const double dh = (fx * yt - fy * xt) / det;
        const double dt = (fy * xh - fx * yh) / det;
        const double h2 = h - dh, t2 = tau - dt;
        if (!(h2 > 0.0)) break;
        double gx, gy;
        const double next = residual(h2, t2, gx, gy);
        if (!(next < best)) break;
        h = h2;
        tau = t2;
        best = next;
    }

    tau -= two_pi * std::floor(tau / two_pi);
    return {h, tau};
}

// --- point evaluation -------------------------------------------------------

/// Polar-coordinate route: u = (C / c0) rho^k f_N(theta + shift).
inline double eval_polar(const FieldConfig& c, const PlanePoint& pt) {
    const double rho = pt.rho();
    if (rho == 0.0) return 0.0;
    const double f = wave(c, pt.theta() + c.polar_shift());
    return c.amplitude() / c.polar_scale() * std::pow(rho, c.k()) * f;
}

/// Solution value at a plane point. Inverts the parametric map when
/// |mu| > 2N-1 and falls back to the polar route at gamma = 1.
inline double eval(const FieldConfig& c, const PlanePoint& pt) {
    if (pt.x == 0.0 && pt.y == 0.0) return 0.0; // continuity, k > 0
    if (!c.invertible()) return eval_polar(c, pt);
    const ParamPoint p = invert(c, pt);
    return c.amplitude() * std::pow(p.h, (2.0 * c.n() - 1.0) * c.k()) *
           std::cos(c.n() * (p.tau + c.psi_eff()));
}

/// Gradient via the parametric Jacobian (or the polar formula at gamma = 1).
inline std::pair<double, double> gradient(const FieldConfig& c, const PlanePoint& pt) {
    if (pt.x == 0.0 && pt.y == 0.0) throw std::domain_error("gradient: origin is singular");
    const int n = c.n();
    if (!c.invertible()) {
        const double rho = pt.rho(), th = pt.theta();
        const auto [f, fp] = wave_with_derivative(c, th + c.polar_shift());
        const double scale = c.amplitude() / c.polar_scale() * std::pow(rho, c.k() - 1.0);
        const double ct = std::cos(th), st = std::sin(th);
        return {scale * (c.k() * f * ct - fp * st), scale * (c.k() * f * st + fp * ct)};
    }
    const ParamPoint p = invert(c, pt);
    const double arg2 = (2.0 * n - 1.0) * p.tau + 2.0 * n * c.psi_eff();
    const double s = std::pow(p.h, 2.0 * n - 1.0);
    const double sh = (2.0 * n - 1.0) * std::pow(p.h, 2.0 * n - 2.0);
    const double xh = sh * (c.mu() * std::cos(p.tau) + std::cos(arg2));
    const double xt = s * (-c.mu() * std::sin(p.tau) - (2.0 * n - 1.0) * std::sin(arg2));
    const double yh = sh * (c.mu() * std::sin(p.tau) - std::sin(arg2));
    const double yt = s * (c.mu() * std::cos(p.tau) - (2.0 * n - 1.0) * std::cos(arg2));
    const double det = xh * yt - xt * yh;
    if (det == 0.0 || !std::isfinite(det))
        throw std::logic_error("gradient: singular parametric jacobian");
    const double kk = (2.0 * n - 1.0) * c.k();
    const double uh = c.amplitude() * kk * std::pow(p.h, kk - 1.0) * std::cos(n * (p.tau + c.psi_eff()));
    const double ut = -c.amplitude() * n * std::pow(p.h, kk) * std::sin(n * (p.tau + c.psi_eff()));
    const double ux_b = (uh * yt - ut * yh) / det;
    const double uy_b = (ut * xh - uh * xt) / det;
    const double cp = std::cos(c.global_phase()), sp = std::sin(c.global_phase());
    return {cp * ux_b - sp * uy_b, sp * ux_b + cp * uy_b};
}

// --- PDE residual -----------------------------------------------------------

/// Relative residual of the quasilinear equation at pt, with analytic first
/// derivatives and fourth-order central differences (relative step 1e-3)
/// for the second ones. When the differenced Hessian sits below the
/// floating-point noise floor the residual is reported as zero: nothing is
/// measurable there (linear 1-solutions hit this path).
inline double pde_residual(const FieldConfig& c, const PlanePoint& pt) {
    const double rho = pt.rho();
    if (rho == 0.0) throw std::domain_error("pde_residual: origin is singular");
    const double d = 1e-3 * rho;
    const auto u = [&](double x, double y) { return eval(c, PlanePoint{x, y}); };

    double umax = 0.0;
    const auto record = [&](double v) {
        umax = std::max(umax, std::fabs(v));
        return v;
    };

    const double u0 = record(u(pt.x, pt.y));
    const auto second = [&](bool along_x) {
        const double up1 = record(along_x ? u(pt.x + d, pt.y) : u(pt.x, pt.y + d));
        const double um1 = record(along_x ? u(pt.x - d, pt.y) : u(pt.x, pt.y - d));
        const double up2 = record(along_x ? u(pt.x + 2 * d, pt.y) : u(pt.x, pt.y + 2 * d));
        const double um2 = record(along_x ? u(pt.x - 2 * d, pt.y) : u(pt.x, pt.y - 2 * d));
        return (-up2 + 16.0 * up1 - 30.0 * u0 + 16.0 * um1 - um2) / (12.0 * d * d);
    };
    const double uxx = second(true);
    const double uyy = second(false);

    // fourth-order cross derivative: two one-dimensional stencils composed
    static constexpr std::array<std::pair<int, double>, 4> stencil{
        {{-2, 1.0}, {-1, -8.0}, {1, 8.0}, {2, -1.0}}};
    double uxy = 0.0;
    for (const auto& [i, ci] : stencil)
        for (const auto& [j, cj] : stencil)
            uxy += ci * cj * record(u(pt.x + i * d, pt.y + j * d));
    uxy /= 144.0 * d * d;

    const auto [gx, gy] = gradient(c, pt);
    const double g = c.gamma();
    const double L = uxx * ((g + 1.0) * gx * gx + (g - 1.0) * gy * gy) + 4.0 * uxy * gx * gy +
                     uyy * ((g + 1.0) * gy * gy + (g - 1.0) * gx * gx);

    const double hess = std::fabs(uxx) + 2.0 * std::fabs(uxy) + std::fabs(uyy);
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * umax / (d * d);
    if (hess <= noise) return 0.0;
    return std::fabs(L) / ((gx * gx + gy * gy + 1e-300) * (hess + 1e-300));
}

// --- conjugacy --------------------------------------------------------------

struct ConjugacyReport {
    double max_orthogonality = 0.0; // |grad u . grad U*| / (|grad u||grad U*|)
    double ratio_spread = 0.0;      // relative spread of |grad U*| / |grad u|^e
    double c_estimate = 0.0;        // median of the sampled ratios
    double involution_max = 0.0;    // max |u** + u| / max|u|
    bool exponent_identity = false; // k(1+gamma) + k*(1-gamma) == 2, exact
};

/// Conjugate-pair checks between the basic solution for gamma and the
/// adjoint solution for -gamma, sampled over an annulus.
inline ConjugacyReport conjugacy_check(const FieldConfig& cfg, int samples = 50) {
    const Spectrum& s = cfg.spectrum();
    if (s.gamma.is_one()) throw std::domain_error("conjugacy_check: gamma = 1 has no conjugate");
    if (s.n < 2) throw std::domain_error("conjugacy_check: need N >= 2");

    const FieldConfig base(s);
    const FieldConfig conj(make_spectrum(s.gamma.negated(), s.n), 1.0, 0.0, 0.0, true);
    const FieldConfig twice(s, 1.0, -M_PI / s.n); // adjoint applied twice

    const double expo = ((s.gamma.value() + Rational(1)) / (s.gamma.value() - Rational(1))).to_double();

    ConjugacyReport rep;
    const QuadExt lhs = s.k * QuadExt(Rational(1) + s.gamma.value()) +
                        *s.k_conj * QuadExt(Rational(1) - s.gamma.value());
    rep.exponent_identity = lhs == QuadExt(Rational(2));

    std::vector<double> ratios;
    double umax = 0.0, inv_max = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double rho = 0.6 + 1.2 * i / (samples - 1.0);
        const double th = 2.0 * M_PI * std::fmod(0.618033988749895 * i + 0.09, 1.0);
        const PlanePoint pt{rho * std::cos(th), rho * std::sin(th)};
        const auto [gx, gy] = gradient(base, pt);
        const auto [Gx, Gy] = gradient(conj, pt);
        const double ng = std::hypot(gx, gy), nG = std::hypot(Gx, Gy);
        rep.max_orthogonality =
            std::max(rep.max_orthogonality, std::fabs(gx * Gx + gy * Gy) / (ng * nG));
        ratios.push_back(nG / std::pow(ng, expo));
        const double ub = eval(base, pt);
        umax = std::max(umax, std::fabs(ub));
        inv_max = std::max(inv_max, std::fabs(eval(twice, pt) + ub));
    }
    rep.involution_max = inv_max / umax;
    std::sort(ratios.begin(), ratios.end());
    rep.c_estimate = ratios[ratios.size() / 2];
    rep.ratio_spread = (ratios.back() - ratios.front()) / rep.c_estimate;
    return rep;
}

// --- the gamma = 1, N = 2 polynomial identity -------------------------------

/// |27 x^4 y^4 u^3 - (x^4 - y^4 - u^3)^3| normalized, for the built-in
/// configuration whose solution is x^{4/3} - y^{4/3}.
inline double algebraic_identity_check(const PlanePoint& pt) {
    static const FieldConfig cfg(make_spectrum(Gamma(Rational(1)), 2), std::pow(4.0, 4.0 / 3.0));
    const double u = eval(cfg, pt);
    const double x4 = std::pow(pt.x, 4), y4 = std::pow(pt.y, 4), u3 = u * u * u;
    const double lhs = 27.0 * x4 * y4 * u3;
    const double rhs = std::pow(x4 - y4 - u3, 3);
    return std::fabs(lhs - rhs) / std::max(std::fabs(lhs), 1.0);
}

// --- phase curve -------------------------------------------------------------

/// (z, w)(t) on the phase curve (w^2+k^2 z^2)^k = (w^2+lambda^2 z^2)^{k-1}.
inline std::pair<double, double> phase_curve_point(const Spectrum& s, double t) {
    const double k = s.k.to_double(), lam = s.lambda.to_double();
    const double z =
        std::exp(0.5 * ((k - 1.0) * std::log(t * t + lam * lam) - k * std::log(t * t + k * k)));
    return {z, -t * z};
}

/// Relative deviation of (z, w) from the phase curve.
inline double phase_curve_residual(const Spectrum& s, double z, double w) {
    const double k = s.k.to_double(), lam = s.lambda.to_double();
    const double t1 = std::exp(k * std::log(w * w + k * k * z * z));
    const double t2 = std::exp((k - 1.0) * std::log(w * w + lam * lam * z * z));
    return std::fabs(t1 - t2) / std::max({std::fabs(t1), std::fabs(t2), 1e-300});
}

/// Sample of the curve over a symmetric tangent-spaced t-grid.
inline std::vector<std::pair<double, double>> phase_curve_sample(const Spectrum& s, int count) {
    if (s.n < 2) throw std::domain_error("phase_curve_sample: need N >= 2");
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double v = -1.0 + 2.0 * (i + 0.5) / count;
        out.push_back(phase_curve_point(s, std::tan(0.5 * M_PI * v * 0.999)));
    }
    return out;
}

// --- verification suite ------------------------------------------------------

struct VerifyOptions {
    int grid_rho = 20;
    int grid_theta = 20;
    double rho_min = 0.5;
    double rho_max = 2.0;
    int random_points = 100;
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    double perturb_k = 0.0; // negative-control knob
};

struct VerifyReport {
    std::string gamma;
    int n = 0;
    bool invertible = false;
    double amplitude = 1.0;
    double rotation = 0.0;
    double global_phase = 0.0;
    bool adjoint = false;
    VerifyOptions opts;

    double roundtrip_max = 0.0;
    double homogeneity_max = 0.0;
    double periodicity_max = 0.0;
    double consistency_max = 0.0;
    double euler_max = 0.0;
    double gradient_fd_max = 0.0;
    double residual_max = 0.0;
    double residual_mean = 0.0;
    PlanePoint worst_point;
    int zero_rays = 0;
    double injectivity_min = 0.0;
    std::optional<ConjugacyReport> conjugacy;
    std::optional<double> aronsson_max;

    bool passed = false;
    std::string to_json() const;
};

namespace detail {

inline double rel_diff(double a, double b) {
    return std::fabs(a - b) / (std::max(std::fabs(a), std::fabs(b)) + 1e-300);
}

} // namespace detail

inline VerifyReport run_verification(const FieldConfig& cfg0, const VerifyOptions& opts = {}) {
    const FieldConfig cfg = opts.perturb_k != 0.0 ? cfg0.with_perturbed_k(opts.perturb_k) : cfg0;
    VerifyReport rep;
    rep.gamma = cfg.spectrum().gamma.value().str();
    rep.n = cfg.n();
    rep.invertible = cfg.invertible();
    rep.amplitude = cfg.amplitude();
    rep.rotation = cfg.rotation();
    rep.global_phase = cfg.global_phase();
    rep.adjoint = cfg.is_adjoint();
    rep.opts = opts;

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double z0 = cfg.spectrum().z0;

    // random test points; keep them clear of the solution's zero rays so
    // that relative comparisons stay meaningful
    std::vector<PlanePoint> pts;
    while (pts.size() < static_cast<std::size_t>(opts.random_points)) {
        const double rho = opts.rho_min + (opts.rho_max - opts.rho_min) * unit(rng);
        const double th = 2.0 * M_PI * unit(rng);
        if (std::fabs(wave(cfg, th + cfg.polar_shift())) < 0.05 * z0) continue;
        pts.push_back({rho * std::cos(th), rho * std::sin(th)});
    }

    // round trip of the parametric map
    if (cfg.invertible()) {
        for (int i = 0; i < opts.random_points; ++i) {
            const ParamPoint p{0.5 + 1.5 * unit(rng), 2.0 * M_PI * unit(rng)};
            const auto [pt, u] = forward(cfg, p);
            (void)u;
            const ParamPoint q = invert(cfg, pt);
            double dtau = std::fabs(p.tau - q.tau);
            dtau = std::min(dtau, 2.0 * M_PI - dtau);
            rep.roundtrip_max = std::max({rep.roundtrip_max, std::fabs(p.h - q.h) / p.h, dtau});
        }
    }

    // homogeneity and rotation periodicity
    for (const auto& pt : pts) {
        const double u = eval(cfg, pt);
        for (const double t : {0.1, 0.5, 2.0, 3.7, 10.0}) {
            const double scaled = eval(cfg, PlanePoint{t * pt.x, t * pt.y});
            rep.homogeneity_max =
                std::max(rep.homogeneity_max, detail::rel_diff(scaled, std::pow(t, cfg.k()) * u));
        }
        const double rot = 2.0 * M_PI / cfg.n();
        const PlanePoint turned{pt.x * std::cos(rot) - pt.y * std::sin(rot),
                                pt.x * std::sin(rot) + pt.y * std::cos(rot)};
        rep.periodicity_max = std::max(rep.periodicity_max, detail::rel_diff(eval(cfg, turned), u));
        rep.consistency_max = std::max(rep.consistency_max, detail::rel_diff(u, eval_polar(cfg, pt)));
    }

    // Euler identity and finite-difference gradient check
    int fd_done = 0;
    for (const auto& pt : pts) {
        const auto [gx, gy] = gradient(cfg, pt);
        const double u = eval(cfg, pt);
        const double rho = pt.rho();
        rep.euler_max = std::max(rep.euler_max, std::fabs(pt.x * gx + pt.y * gy - cfg.k() * u) /
                                                    (rho * std::hypot(gx, gy)));
        if (fd_done < 20) {
            const double d = 1e-5 * rho;
            const double fdx =
                (eval(cfg, {pt.x + d, pt.y}) - eval(cfg, {pt.x - d, pt.y})) / (2.0 * d);
            const double fdy =
                (eval(cfg, {pt.x, pt.y + d}) - eval(cfg, {pt.x, pt.y - d})) / (2.0 * d);
            rep.gradient_fd_max = std::max(
                rep.gradient_fd_max, std::hypot(fdx - gx, fdy - gy) / std::hypot(gx, gy));
            ++fd_done;
        }
    }

    // PDE residual over the annulus grid; the angular offset keeps gamma=1
    // grids away from the rays where the solution is only C^{1,alpha}
    double sum = 0.0;
    for (int i = 0; i < opts.grid_rho; ++i) {
        const double rho =
            opts.rho_min + (opts.rho_max - opts.rho_min) * (i + 0.5) / opts.grid_rho;
        for (int j = 0; j < opts.grid_theta; ++j) {
            const double th = 2.0 * M_PI * (j + 0.125) / opts.grid_theta;
            const PlanePoint pt{rho * std::cos(th), rho * std::sin(th)};
            const double res = pde_residual(cfg, pt);
            sum += res;
            if (res > rep.residual_max) {
                rep.residual_max = res;
                rep.worst_point = pt;
            }
        }
    }
    rep.residual_mean = sum / (opts.grid_rho * opts.grid_theta);

    // sign structure on the unit circle: u vanishes on exactly 2N rays
    {
        const int m = 16 * cfg.n();
        int changes = 0;
        double prev = eval(cfg, {std::cos(0.05), std::sin(0.05)});
        for (int i = 1; i <= m; ++i) {
            const double th = 0.05 + 2.0 * M_PI * i / m;
            const double cur = eval(cfg, {std::cos(th), std::sin(th)});
            if (prev * cur < 0.0) ++changes;
            prev = cur;
        }
        rep.zero_rays = changes;
    }

    // injectivity sampling on a parameter grid
    {
        std::vector<PlanePoint> img;
        for (int i = 0; i < 100; ++i)
            for (int j = 0; j < 100; ++j) {
                const ParamPoint p{0.5 + 1.5 * (i + 0.5) / 100.0, 2.0 * M_PI * (j + 0.37) / 100.0};
                img.push_back(forward(cfg, p).first);
            }
        std::sort(img.begin(), img.end(),
                  [](const PlanePoint& a, const PlanePoint& b) { return a.x < b.x; });
        double min_d = 1e300;
        for (std::size_t i = 0; i < img.size(); ++i)
            for (std::size_t j = i + 1; j < img.size() && img[j].x - img[i].x < 1e-6; ++j)
                min_d = std::min(min_d, std::hypot(img[j].x - img[i].x, img[j].y - img[i].y));
        rep.injectivity_min = min_d; // 1e300 means no pair came close at all
    }

    if (!cfg.spectrum().gamma.is_one() && cfg.n() >= 2)
        rep.conjugacy = conjugacy_check(cfg);

    if (cfg.spectrum().gamma.is_one() && cfg.n() == 2) {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const PlanePoint pt{-2.0 + 4.0 * unit(rng), -2.0 + 4.0 * unit(rng)};
            worst = std::max(worst, algebraic_identity_check(pt));
        }
        rep.aronsson_max = worst;
    }

    bool ok = rep.homogeneity_max < 1e-9 && rep.periodicity_max < 1e-9 &&
              rep.consistency_max < 1e-9 && rep.euler_max < 1e-9 && rep.gradient_fd_max < 1e-6 &&
              rep.residual_max < 1e-6 && rep.zero_rays == 2 * cfg.n() && rep.injectivity_min > 1e-6;
    if (cfg.invertible()) ok = ok && rep.roundtrip_max < 1e-10;
    if (rep.conjugacy)
        ok = ok && rep.conjugacy->max_orthogonality < 1e-8 && rep.conjugacy->ratio_spread < 1e-6 &&
             rep.conjugacy->exponent_identity && rep.conjugacy->involution_max < 1e-10;
    if (rep.aronsson_max) ok = ok && *rep.aronsson_max < 1e-9;
    rep.passed = ok;
    return rep;
}

inline std::string VerifyReport::to_json() const {
    JsonWriter w;
    w.begin_object();
    if (aronsson_max)
        w.key("aronsson_max").value(*aronsson_max);
    else
        w.key("aronsson_max").value_null();
    w.key("config");
    w.begin_object();
    w.key("adjoint").value(adjoint);
    w.key("amplitude").value(amplitude);
    w.key("gamma").value(gamma);
    w.key("global_phase").value(global_phase);
    w.key("n").value(n);
    w.key("rotation").value(rotation);
    w.end_object();
    if (conjugacy) {
        w.key("conjugacy");
        w.begin_object();
        w.key("c_estimate").value(conjugacy->c_estimate);
        w.key("exponent_identity").value(conjugacy->exponent_identity);
        w.key("involution_max").value(conjugacy->involution_max);
        w.key("max_orthogonality").value(conjugacy->max_orthogonality);
        w.key("ratio_spread").value(conjugacy->ratio_spread);
        w.end_object();
    } else {
        w.key("conjugacy").value_null();
    }
    w.key("consistency_max").value(consistency_max);
    w.key("euler_max").value(euler_max);
    w.key("gamma").value(gamma);
    w.key("gradient_fd_max").value(gradient_fd_max);
    w.key("grid");
    w.begin_object();
    w.key("rho_max").value(opts.rho_max);
    w.key("rho_min").value(opts.rho_min);
    w.key("rho_steps").value(opts.grid_rho);
    w.key("theta_steps").value(opts.grid_theta);
    w.end_object();
    w.key("homogeneity_max").value(homogeneity_max);
    w.key("injectivity_min").value(injectivity_min);
    w.key("invertible").value(invertible);
    w.key("n").value(n);
    w.key("passed").value(passed);
    w.key("periodicity_max").value(periodicity_max);
    w.key("residual_max").value(residual_max);
    w.key("residual_mean").value(residual_mean);
    w.key("roundtrip_max").value(roundtrip_max);
    w.key("worst_point");
    w.begin_object();
    w.key("x").value(worst_point.x);
    w.key("y").value(worst_point.y);
    w.end_object();
    w.key("zero_rays").value(zero_rays);
    w.end_object();
    return w.str();
}

} // namespace gharm
