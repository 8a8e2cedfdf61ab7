// gharm: classify which rational parameters admit algebraic quasiradial
// solutions of the gamma-harmonic equation, evaluate those solutions in
// the plane, and verify the defining identities numerically.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include "gharm/classifier.hpp"
#include "gharm/field.hpp"
#include "gharm/json_writer.hpp"
#include "gharm/spectrum.hpp"
#include "gharm/svg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace gharm;

int emit(const std::string& content, const std::string& out_path) {
    std::string body = content;
    if (body.empty() || body.back() != '\n') body += '\n';
    if (out_path.empty()) {
        std::cout << body;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output path: " << out_path << "\n";
        return 2;
    }
    f << body;
    f.flush();
    if (!f.good()) {
        std::cerr << "error: failed writing: " << out_path << "\n";
        return 2;
    }
    return 0;
}

struct Cli {
    // shared flags
    std::string gamma_text;
    int n = 2;
    std::string out_path;
    std::string format = "json";

    // enumerate / diagram
    int q_max = 30;
    bool full_band = false;
    int threads = 0;

    // eval / wave
    double x = 1.0, y = 0.0;
    double psi = 0.0, phi = 0.0, amplitude = 1.0;
    bool adjoint = false;
    double theta = 0.0;
    int samples = 0;
    int grid = 0;
    double extent = 2.0;

    // verify
    VerifyOptions vopts;
};

int run_spectrum(const Cli& a) {
    const Spectrum s = make_spectrum(Gamma::parse(a.gamma_text), a.n);
    return emit(spectrum_to_json(s), a.out_path);
}

int run_classify(const Cli& a) {
    const AlgebraicClass cls = classify(Gamma::parse(a.gamma_text));
    return emit(class_to_json(cls), a.out_path);
}

int run_enumerate(const Cli& a) {
    if (a.format != "json" && a.format != "csv") {
        std::cerr << "error: --format must be json or csv\n";
        return 2;
    }
    const auto rows = enumerate_certificates(a.q_max, a.full_band, a.threads);
    return emit(a.format == "csv" ? rows_to_csv(rows) : rows_to_json(rows), a.out_path);
}

int run_diagram(const Cli& a) {
    const auto rows = enumerate_certificates(a.q_max, false, a.threads);
    return emit(diagram_svg(rows, a.q_max), a.out_path);
}

FieldConfig build_config(const Cli& a) {
    return FieldConfig(make_spectrum(Gamma::parse(a.gamma_text), a.n), a.amplitude, a.psi, a.phi,
                       a.adjoint);
}

int run_eval(const Cli& a) {
    const FieldConfig cfg = build_config(a);
    if (a.grid > 0) {
        // CSV field dump over a centered square, origin excluded
        std::string csv = "x,y,u,ux,uy\n";
        for (int i = 0; i < a.grid; ++i)
            for (int j = 0; j < a.grid; ++j) {
                const double px = -a.extent + 2.0 * a.extent * (i + 0.5) / a.grid;
                const double py = -a.extent + 2.0 * a.extent * (j + 0.5) / a.grid;
                const PlanePoint pt{px, py};
                if (pt.rho() < 1e-12) continue;
                const auto [ux, uy] = gradient(cfg, pt);
                csv += json_double(px) + "," + json_double(py) + "," + json_double(eval(cfg, pt)) +
                       "," + json_double(ux) + "," + json_double(uy) + "\n";
            }
        return emit(csv, a.out_path);
    }
    const PlanePoint pt{a.x, a.y};
    const auto [ux, uy] = gradient(cfg, pt);
    JsonWriter w;
    w.begin_object();
    w.key("u").value(eval(cfg, pt));
    w.key("ux").value(ux);
    w.key("uy").value(uy);
    w.end_object();
    return emit(w.str(), a.out_path);
}

int run_wave(const Cli& a) {
    const FieldConfig cfg(make_spectrum(Gamma::parse(a.gamma_text), a.n));
    if (a.samples > 0) {
        std::string csv = "theta,f,fprime\n";
        for (int i = 0; i < a.samples; ++i) {
            const double th = 2.0 * M_PI * i / a.samples;
            const auto [f, fp] = wave_with_derivative(cfg, th);
            csv += json_double(th) + "," + json_double(f) + "," + json_double(fp) + "\n";
        }
        return emit(csv, a.out_path);
    }
    const auto [f, fp] = wave_with_derivative(cfg, a.theta);
    JsonWriter w;
    w.begin_object();
    w.key("f").value(f);
    w.key("fprime").value(fp);
    w.key("theta").value(a.theta);
    w.end_object();
    return emit(w.str(), a.out_path);
}

int run_verify(const Cli& a) {
    const FieldConfig cfg = build_config(a);
    const VerifyReport rep = run_verification(cfg, a.vopts);
    const int rc = emit(rep.to_json(), a.out_path);
    if (rc != 0) return rc;
    return rep.passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasiradial solutions of the gamma-harmonic equation: "
                 "algebraicity classification, evaluation, verification"};
    app.require_subcommand(1);
    Cli a;

    const auto add_gamma = [&](CLI::App* sub) {
        sub->add_option("--gamma", a.gamma_text, "parameter as \"p/q\" or integer (exact rational)")
            ->required();
    };

    auto* sp = app.add_subcommand("spectrum", "per-(gamma,N) constants as JSON");
    add_gamma(sp);
    sp->add_option("--n", a.n, "solution index N")->required();
    sp->add_option("--out", a.out_path, "output path (default stdout)");

    auto* cl = app.add_subcommand("classify", "algebraic indices of gamma with certificates");
    add_gamma(cl);
    cl->add_option("--out", a.out_path, "output path (default stdout)");

    auto* en = app.add_subcommand("enumerate", "all algebraic p/q with 3 <= q <= qmax");
    en->add_option("--qmax", a.q_max, "largest denominator")->required();
    en->add_option("--format", a.format, "json or csv");
    en->add_option("--out", a.out_path, "output path (default stdout)");
    en->add_flag("--full-band", a.full_band, "rescan the loose band q+1..q^2-1 (debug)");
    en->add_option("--threads", a.threads, "worker count (default GH_THREADS or hardware)");

    auto* di = app.add_subcommand("diagram", "q-p scatter of the algebraic parameters as SVG");
    di->add_option("--qmax", a.q_max, "largest denominator")->required();
    di->add_option("--out", a.out_path, "output SVG path")->required();
    di->add_option("--threads", a.threads, "worker count");

    auto* ev = app.add_subcommand("eval", "solution value and gradient at a point");
    add_gamma(ev);
    ev->add_option("--n", a.n, "solution index N")->required();
    ev->add_option("--x", a.x, "x coordinate");
    ev->add_option("--y", a.y, "y coordinate");
    ev->add_option("--psi", a.psi, "rotation of the solution");
    ev->add_option("--phi", a.phi, "global rotation of the picture");
    ev->add_option("--amplitude", a.amplitude, "amplitude C");
    ev->add_flag("--adjoint", a.adjoint, "evaluate the adjoint solution");
    ev->add_option("--grid", a.grid, "dump an MxM field grid as CSV instead");
    ev->add_option("--extent", a.extent, "half-width of the dumped grid");
    ev->add_option("--out", a.out_path, "output path (default stdout)");

    auto* wv = app.add_subcommand("wave", "angular profile f_N");
    add_gamma(wv);
    wv->add_option("--n", a.n, "solution index N")->required();
    wv->add_option("--theta", a.theta, "angle to evaluate at");
    wv->add_option("--samples", a.samples, "dump this many samples over a full turn as CSV");
    wv->add_option("--out", a.out_path, "output path (default stdout)");

    auto* vf = app.add_subcommand("verify", "run the invariant suite, exit 1 on failure");
    add_gamma(vf);
    vf->add_option("--n", a.n, "solution index N")->required();
    vf->add_option("--psi", a.psi, "rotation of the solution");
    vf->add_option("--amplitude", a.amplitude, "amplitude C");
    vf->add_flag("--adjoint", a.adjoint, "verify the adjoint solution");
    vf->add_option("--grid-rho", a.vopts.grid_rho, "radial grid steps");
    vf->add_option("--grid-theta", a.vopts.grid_theta, "angular grid steps");
    vf->add_option("--rho-min", a.vopts.rho_min, "inner annulus radius");
    vf->add_option("--rho-max", a.vopts.rho_max, "outer annulus radius");
    vf->add_option("--points", a.vopts.random_points, "random sample count");
    vf->add_option("--seed", a.vopts.seed, "random seed");
    vf->add_option("--perturb-k", a.vopts.perturb_k,
                   "offset the floating growth exponent (negative control)");
    vf->add_option("--out", a.out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sp->parsed()) return run_spectrum(a);
        if (cl->parsed()) return run_classify(a);
        if (en->parsed()) return run_enumerate(a);
        if (di->parsed()) return run_diagram(a);
        if (ev->parsed()) return run_eval(a);
        if (wv->parsed()) return run_wave(a);
        if (vf->parsed()) return run_verify(a);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
