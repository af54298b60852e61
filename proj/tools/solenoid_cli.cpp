// solenoid: command-line front end for the skew-product library.
//
// Exit codes: 0 success (including Undetermined verdicts), 1 malformed input,
// 2 numerical failure or an unsolvable equation where a solution was required.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "solenoid/error.hpp"
#include "solenoid/io.hpp"
#include "solenoid/perturbed.hpp"

using namespace solenoid;

namespace {

struct Globals {
    int ell = 2;
    double lambda = 0.5;
    std::string tau;
    int grid = kDefaultGrid;
    double tol = 1e-6;
    std::uint64_t seed = 1;
    std::string out;
    bool grid_given = false;
};

CircleFunction load_tau(const Globals& g)
{
    if (g.tau.empty()) throw InputError("--tau is required");
    return tau_from_json(load_json_arg(g.tau), g.grid);
}

void emit(const Globals& g, const std::string& text)
{
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw InputError("cannot write '" + g.out + "'");
    f << text;
}

void emit(const Globals& g, const json& j) { emit(g, j.dump(2) + "\n"); }

BoundaryPair boundaries_for(const SkewParams& p, const Globals& g)
{
    return boundary_fixed_point(p, p.tau.n(), g.tol);
}

double or_default(double v, double fallback) { return v > 0.0 ? v : fallback; }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Attractors of skew products (theta, t) -> (ell theta, lambda t + tau(theta))"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--ell", g.ell, "degree of the base map")->check(CLI::Range(2, 64));
    app.add_option("--lambda", g.lambda, "fiber contraction in (0,1)");
    app.add_option("--tau", g.tau, "tau spec: JSON file or inline JSON");
    auto* grid_opt = app.add_option("--grid", g.grid, "samples on the circle")->check(CLI::PositiveNumber);
    app.add_option("--tol", g.tol, "convergence tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--out", g.out, "output file (stdout if absent)");

    auto* boundaries = app.add_subcommand("boundaries", "CSV of rho- and rho+");

    double tol_j = 0.0, tol_a = 0.0;
    auto* classify_cmd = app.add_subcommand("classify", "topological verdict as JSON");
    classify_cmd->add_option("--tol-j", tol_j, "Jordan threshold (default 10 tol)");
    classify_cmd->add_option("--tol-a", tol_a, "annulus threshold (default 10 tol)");

    ScanOptions scan;
    auto* scan_cmd = app.add_subcommand("scan-jordan", "lambdas at which tau is in the image of L");
    scan_cmd->add_option("--lo", scan.grid.lo, "lower end of the lambda grid");
    scan_cmd->add_option("--hi", scan.grid.hi, "upper end of the lambda grid");
    scan_cmd->add_option("--points", scan.grid.points, "grid points")->check(CLI::Range(2, 100000));
    scan_cmd->add_option("--k-cap", scan.k_cap, "largest base frequency tested");

    int k_max = -1;
    auto* solve_cmd = app.add_subcommand("solve-cohomology", "solve mu o m_ell - lambda mu = tau");
    solve_cmd->add_option("--k-max", k_max, "frequency cutoff");

    auto* decompose_cmd = app.add_subcommand("decompose", "peel L_lambda factors off tau");

    int max_period = 8;
    auto* birkhoff_cmd = app.add_subcommand("birkhoff", "periodic orbit sums and coboundary witnesses");
    birkhoff_cmd->add_option("--max-period", max_period, "longest period enumerated")->check(CLI::Range(1, 40));

    std::string example_name;
    int width = 512, height = 256, n_points = 20000;
    auto* render_cmd = app.add_subcommand("render", "PGM raster of the band and a sample cloud");
    render_cmd->add_option("--example", example_name, "built-in example (fat-hole)");
    render_cmd->add_option("--width", width)->check(CLI::Range(1, 16384));
    render_cmd->add_option("--height", height)->check(CLI::Range(1, 16384));
    render_cmd->add_option("--points", n_points, "attractor samples (0 for band only)")->check(CLI::NonNegativeNumber);

    double c_mod = 0.0, c_arg = 0.0;
    bool verify = false;
    auto* example_cmd = app.add_subcommand("example", "built-in constructions");
    example_cmd->require_subcommand(1);
    auto* fat_cmd = example_cmd->add_subcommand("fat-hole", "parameters and tau of the fat-hole example");
    fat_cmd->add_flag("--verify", verify, "also solve and verify the construction");
    auto* lq_cmd = example_cmd->add_subcommand("log-quadratic", "classify z -> (lambda|z| + 1 - lambda) z^2/|z|^2 + c");
    lq_cmd->add_option("--c-mod", c_mod, "|c|");
    lq_cmd->add_option("--c-arg", c_arg, "arg c in turns");

    std::string map_kind = "affine";
    double delta = 0.0, alpha = 0.0;
    int delta_k = 1;
    std::string csv_path;
    auto* pert_cmd = app.add_subcommand("perturbed", "boundaries and verdict for a non-affine cylinder map");
    pert_cmd->add_option("--map", map_kind, "affine | log-quadratic | rescaled-limit")
        ->check(CLI::IsMember({"affine", "log-quadratic", "rescaled-limit"}));
    pert_cmd->add_option("--delta", delta, "add delta sin(2 pi k theta) to the fiber map");
    pert_cmd->add_option("--k", delta_k, "frequency of the vertical perturbation")->check(CLI::PositiveNumber);
    pert_cmd->add_option("--c-mod", c_mod, "|c| for log-quadratic");
    pert_cmd->add_option("--c-arg", c_arg, "arg c in turns for log-quadratic");
    pert_cmd->add_option("--alpha", alpha, "phase of the rescaled limit");
    pert_cmd->add_option("--csv", csv_path, "also write the boundaries as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    g.grid_given = grid_opt->count() > 0;

    try {
        if (*boundaries) {
            auto p = make_params(g.ell, g.lambda, load_tau(g));
            std::ostringstream os;
            write_boundaries_csv(os, boundaries_for(p, g));
            emit(g, os.str());
        } else if (*classify_cmd) {
            auto p = make_params(g.ell, g.lambda, load_tau(g));
            auto b = boundaries_for(p, g);
            emit(g, to_json(classify(p, b, or_default(tol_j, 10 * g.tol), or_default(tol_a, 10 * g.tol))));
        } else if (*scan_cmd) {
            scan.tol = g.tol;
            emit(g, to_json(scan_jordan(g.ell, load_tau(g), scan)));
        } else if (*solve_cmd) {
            auto r = solve_L(g.ell, g.lambda, load_tau(g), k_max, g.tol);
            json j = {{"solvable", r.solvable()}, {"residual", r12(r.residual)}};
            if (r.solvable()) j["mu"] = tau_to_json(*r.mu);
            else j["reason"] = r.reason;
            emit(g, j);
            if (!r.solvable()) throw NumericFailure("NotSolvable: " + r.reason);
        } else if (*decompose_cmd) {
            ScanOptions o;
            o.tol = g.tol;
            emit(g, to_json(decompose(g.ell, load_tau(g), o), g.tol));
        } else if (*birkhoff_cmd) {
            auto tau = load_tau(g);
            auto v = coboundary_witness(tau, g.ell, max_period);
            json j = to_json(birkhoff_extremes(tau, g.ell, max_period));
            j["not_coboundary"] = v.not_coboundary;
            j["mean_subtracted"] = v.mean_subtracted;
            emit(g, j);
        } else if (*render_cmd) {
            std::optional<FatHoleParams> fp;
            CircleFunction tau;
            if (example_name == "fat-hole") {
                fp = fat_hole_params(g.lambda);
                tau = build_fat_hole(*fp, g.grid_given ? g.grid : fat_hole_default_grid(*fp));
            } else if (!example_name.empty()) {
                throw InputError("unknown example '" + example_name + "'");
            } else {
                tau = load_tau(g);
            }
            auto p = make_params(fp ? 2 : g.ell, g.lambda, tau);
            auto b = boundaries_for(p, g);
            auto img = make_raster(width, height, p.t0);
            render_band(img, b, 80);
            if (fp) {
                for (int c = 0; c < width; ++c) {
                    const double th = (c + 0.5) / width;
                    const int top = img.row_of(fat_hole_region_top(*fp, th));
                    const int bot = img.row_of(evaluate(b.rho_minus, th));
                    for (int r = top; r <= bot; ++r) img.at(r, c) = 160;
                }
            }
            if (n_points > 0)
                render_points(img, sample_attractor(p, n_points, depth_for_resolution(p, 1e-6), g.seed), 255);
            std::ostringstream os;
            write_pgm(os, img);
            emit(g, os.str());
        } else if (*fat_cmd) {
            auto fp = fat_hole_params(g.lambda);
            const int n = g.grid_given ? g.grid : fat_hole_default_grid(fp);
            json inv = json::object();
            for (const auto& [name, ok] : check_fat_hole_params(fp)) inv[name] = ok;
            json j = {{"tau", {{"type", "fat_hole"}, {"lambda", fp.lambda}, {"grid", n}}},
                      {"params", to_json(fp)},
                      {"invariants", inv}};
            if (verify) {
                auto p = make_params(2, fp.lambda, build_fat_hole(fp, n));
                auto b = boundaries_for(p, g);
                j["report"] = to_json(verify_fat_hole(p, fp, b, 1e-3));
                j["classification"] = to_json(classify(p, b, 10 * g.tol, 10 * g.tol));
            }
            emit(g, j);
        } else if (*lq_cmd) {
            const int n = g.grid_given ? g.grid : 512;
            auto e = annulus_scan_log_quadratic(g.lambda, {c_mod}, {c_arg}, n, g.tol).front();
            if (!e.ok) throw NumericFailure(e.failure);
            emit(g, json{{"c_mod", e.c_mod},
                         {"c_arg", e.alpha},
                         {"verdict", e.verdict},
                         {"jordan_gap", r12(e.jordan_gap)},
                         {"annulus_margin", r12(e.margin)},
                         {"constants", to_json(e.constants)}});
        } else if (*pert_cmd) {
            const int n = g.grid_given ? g.grid : 512;
            CylinderMap F;
            if (map_kind == "affine") F = affine_lift(make_params(g.ell, g.lambda, load_tau(g)));
            else if (map_kind == "log-quadratic")
                F = log_quadratic_map(g.lambda, std::polar(c_mod, 2 * std::numbers::pi * c_arg));
            else F = rescaled_limit(g.lambda, alpha);
            if (delta != 0.0) F = vertical_perturbation(F, delta, delta_k);
            auto gc = estimate_constants(F);
            auto b = perturbed_boundaries(F, gc, n, g.tol);
            json j = to_json(classify_perturbed(F, b, 10 * g.tol, 10 * g.tol));
            j["constants"] = to_json(gc);
            j["iterations"] = b.iterations;
            j["residual"] = r12(b.residual);
            if (!csv_path.empty()) {
                std::ofstream f(csv_path);
                if (!f) throw InputError("cannot write '" + csv_path + "'");
                write_boundaries_csv(f, b);
            }
            emit(g, j);
        }
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const NumericFailure& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 2;
    }
    return 0;
}
