// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "solenoid/affine_dynamics.hpp"
#include "solenoid/cohomology.hpp"
#include "solenoid/examples.hpp"
#include "solenoid/periodic_orbits.hpp"
#include "solenoid/perturbed.hpp"
#include "solenoid/topology.hpp"

using namespace solenoid;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

CircleFunction cos1(int n = 4096) { return from_trig_poly({{1, 1.0, 0.0}}, 0.0, n); }

double sup_diff(const CircleFunction& a, const CircleFunction& b)
{
    return (a.samples - b.samples).cwiseAbs().maxCoeff();
}

// Lower and upper bounds on sup |p'| from a dense scan plus a second-derivative margin.
std::pair<double, double> lip_interval(const TrigPoly& p, int m = 8192)
{
    double lo = 0.0, second = 0.0;
    for (int i = 0; i < m; ++i) lo = std::max(lo, std::abs(p.derivative(static_cast<double>(i) / m)));
    for (const auto& t : p.terms) second += 4 * pi * pi * t.k * t.k * (std::abs(t.cos_c) + std::abs(t.sin_c));
    return {lo, lo + second / (2.0 * m)};
}

void jordan_reconstruction(Outcome& o)
{
    auto mu = cos1();
    auto p = make_params(2, 0.5, apply_L(2, 0.5, mu));
    auto b = boundary_fixed_point(p, 4096, 1e-6);
    const double ep = sup_diff(b.rho_plus, mu), em = sup_diff(b.rho_minus, mu);
    auto c = classify(p, b, 1e-5, 1e-5);
    auto roots = scan_jordan(2, p.tau);
    o.detail << "|rho+ - mu|=" << ep << " |rho- - mu|=" << em << " verdict=" << to_string(c.verdict) << " roots=";
    for (const auto& r : roots) o.detail << "(" << r.lambda << ", m" << r.multiplicity << ")";
    o.require(ep < 1e-5 && em < 1e-5, "boundaries");
    o.require(c.verdict == Verdict::JordanCurve, "verdict");
    o.require(roots.size() == 1 && std::abs(roots[0].lambda - 0.5) < 1e-3 && roots[0].multiplicity == 1, "roots");
}

void exact_boundary_value(Outcome& o)
{
    auto p = make_params(2, 0.9, cos1());
    auto b = boundary_fixed_point(p, 4096, 1e-6);
    const double r0 = b.rho_plus.samples[0];
    o.detail << "rho+(0)=" << r0;
    o.require(std::abs(r0 - 10.0) < 1e-4, "rho+(0)");

    double worst = 0.0;
    for (double l : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99}) {
        auto d = dk_functional(2, p.tau, l, 1);
        worst = std::max(worst, std::abs(d.value - 1.0) - d.truncation_error);
    }
    o.detail << " max|D_1-1|-trunc=" << worst;
    o.require(worst <= 1e-12, "D_1");

    auto v = coboundary_witness(p.tau, 2, 8);
    o.require(v.not_coboundary && v.positive && v.negative, "witness");
    if (v.positive && v.negative) {
        const double sp = *v.positive->birkhoff_sum, sn = *v.negative->birkhoff_sum;
        o.detail << " S(0)=" << sp << " S({1/3,2/3})=" << sn;
        o.require(v.positive->period == 1 && v.positive->points[0] == 0.0 && std::abs(sp - 1.0) < 1e-10,
                  "positive orbit");
        o.require(v.negative->period == 2 && v.negative->j == 1 && std::abs(sn + 1.0) < 1e-10, "negative orbit");
    }
}

void annulus_emergence(Outcome& o)
{
    bool some = false;
    for (double l : {0.9, 0.95, 0.99}) {
        auto p = make_params(2, l, cos1());
        auto c = classify(p, boundary_fixed_point(p, 4096, 1e-6), 1e-5, 1e-5);
        o.detail << "l=" << l << ":" << to_string(c.verdict) << "(" << c.annulus_margin << ") ";
        some = some || (c.verdict == Verdict::ClosedAnnulus && c.annulus_margin > 0.0);
    }
    o.require(some, "no annulus at large lambda");
    for (double l : {0.3, 0.4, 0.5}) {
        auto p = make_params(2, l, cos1());
        auto c = classify(p, boundary_fixed_point(p, 4096, 1e-6), 1e-5, 1e-5);
        o.detail << "l=" << l << ":" << to_string(c.verdict) << " ";
        o.require(c.verdict != Verdict::ClosedAnnulus, "annulus at small lambda");
    }
}

void decomposition_inverse(Outcome& o)
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(1, 8), len(1, 3), pick(0, 3);
    const double pool[] = {0.3, 0.5, 0.7, 1.0};
    int bad = 0, growth_bad = 0;
    double worst_l = 0.0, worst_r = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        TrigPoly mp;
        for (int k = 1, d = deg(rng); k <= d; ++k) mp.terms.push_back({k, u(rng), u(rng)});
        std::vector<double> f(len(rng));
        for (auto& x : f) x = pool[pick(rng)];
        std::sort(f.rbegin(), f.rend());

        CircleFunction mu = from_trig_poly(mp, 4096), tau = mu;
        for (double l : f) {
            auto next = apply_L(2, l, tau);
            const double lo = lip_interval(*next.closed_form).first, hi = lip_interval(*tau.closed_form).second;
            if (lo < (2 - l) * hi) ++growth_bad;
            tau = next;
        }
        auto d = decompose(2, tau);
        if (d.factors.size() != f.size()) {
            ++bad;
            continue;
        }
        for (std::size_t i = 0; i < f.size(); ++i) worst_l = std::max(worst_l, std::abs(d.factors[i] - f[i]));
        worst_r = std::max(worst_r, sup_diff(d.residual, mu));
    }
    o.detail << "multiset mismatches=" << bad << " max|dlambda|=" << worst_l << " max|residual-mu|=" << worst_r
             << " growth violations=" << growth_bad;
    o.require(bad == 0 && worst_l < 1e-3, "factors");
    o.require(worst_r < 1e-4, "residual");
    o.require(growth_bad == 0, "norm growth");
}

void fat_hole(Outcome& o)
{
    auto fp = fat_hole_params(0.6);
    for (const auto& [name, ok] : check_fat_hole_params(fp)) o.require(ok, name);
    const int n = fat_hole_default_grid(fp);
    o.require(n >= (1 << 17), "grid");
    auto p = make_params(2, 0.6, build_fat_hole(fp, n));
    auto b = boundary_fixed_point(p, n, 1e-6);
    auto r = verify_fat_hole(p, fp, b, 1e-3);
    o.detail << "N=" << n << " sup|rho-|=" << r.sup_rho_minus << " rho+(cycle)=";
    for (double v : r.rho_plus_cycle) o.detail << v << ",";
    o.detail << " rho+(1/30)=" << r.rho_plus_antipode << " margin(1/15)=" << r.margin_theta1
             << " cover gap=" << r.worst_cover_gap;
    o.require(r.sup_rho_minus < 1e-3, "(i)");
    bool cyc = r.rho_plus_cycle.size() == 4;
    for (double v : r.rho_plus_cycle) cyc = cyc && std::abs(v - 7.5) < 1e-2;
    o.require(cyc, "(ii)");
    o.require(r.rho_plus_antipode < 5.0, "(iii)");
    o.require(r.margin_theta1 < 0.0, "(iv)");
    o.require(r.interior_witness, "(v)");
    auto c = classify(p, b, 1e-5, 1e-5);
    o.detail << " verdict=" << to_string(c.verdict);
    o.require(c.verdict == Verdict::NotAnnulus, "verdict");
}

void perturbation_continuity(Outcome& o)
{
    auto p = make_params(2, 0.5, cos1());
    auto ab = boundary_fixed_point(p, 4096, 1e-6);
    auto F = affine_lift(p);
    auto gc = estimate_constants(F);
    auto zb = perturbed_boundaries(F, gc, 4096, 1e-6);
    const double z = std::max(sup_diff(zb.rho_plus, ab.rho_plus), sup_diff(zb.rho_minus, ab.rho_minus));
    o.detail << "zero-perturbation diff=" << z;
    o.require(z < 2e-6, "zero perturbation");

    std::vector<double> diffs;
    for (double d : {1e-4, 1e-3}) {
        auto Fd = vertical_perturbation(F, d, 1);
        auto gd = estimate_constants(Fd);
        auto bd = perturbed_boundaries(Fd, gd, 4096, 1e-7);
        const double diff = std::max(sup_diff(bd.rho_plus, ab.rho_plus), sup_diff(bd.rho_minus, ab.rho_minus));
        const double bound = gd.amplification() * d;
        o.detail << " delta=" << d << ": " << diff << " <= " << bound;
        o.require(diff <= bound, "displacement bound");
        diffs.push_back(diff);
    }
    const double ratio = diffs[1] / diffs[0];
    o.detail << " ratio=" << ratio;
    o.require(ratio / 10.0 >= 0.1 && ratio / 10.0 <= 10.0, "linear scaling");

    const double k = measure_contraction(F, gc, 1024, 10, 7);
    o.detail << " contraction=" << k << " lambda_hat=" << gc.lambda_hat;
    o.require(k <= gc.lambda_hat + 0.02, "contraction");
}

void rescaling_limit(Outcome& o)
{
    auto lim = rescaled_limit(0.8, 0.0);
    const double t0 = lim.t0;
    double prev = INFINITY, last = 0.0, anchor = 0.0;
    bool mono = true;
    for (double eta : {1e-1, 1e-2, 1e-3}) {
        auto g = rescale_conjugate(log_quadratic_map(0.8, eta), eta, t0);
        double e = 0.0;
        for (int i = 0; i < 64; ++i)
            for (int j = 0; j < 9; ++j) {
                const double s = i / 64.0, t = -t0 + 2 * t0 * j / 8.0;
                auto a = g.lift(s, t), b = lim.lift(s, t);
                e = std::max({e, std::abs(a.first - b.first), std::abs(a.second - b.second)});
            }
        o.detail << "eta=" << eta << ":" << e << " ";
        mono = mono && e < prev;
        prev = last = e;
        anchor = std::abs(g.lift(0.0, 0.0).second - 1 / (2 * pi));
    }
    o.detail << "anchor=" << anchor;
    o.require(mono, "monotone");
    o.require(last < 5e-3, "limit");
    o.require(anchor < 5e-3, "anchor");
}

void semiconjugacy_band(Outcome& o)
{
    auto p = make_params(2, 0.9, cos1());
    auto b = boundary_fixed_point(p, 4096, 1e-7);
    auto pc = sample_attractor(p, 10000, depth_for_resolution(p, 1e-7), 17);
    double worst = -INFINITY;
    for (Eigen::Index i = 0; i < pc.t.size(); ++i) {
        worst = std::max(worst, pc.t[i] - evaluate(b.rho_plus, pc.theta[i]));
        worst = std::max(worst, evaluate(b.rho_minus, pc.theta[i]) - pc.t[i]);
    }
    o.detail << "worst excursion=" << worst;
    o.require(worst <= 1e-3, "band");

    std::mt19937_64 rng(18);
    const double L = p.tau.lip_bound / p.lambda;
    int bad = 0;
    double ratio = 0.0;
    for (int k = 0; k < 1000; ++k) {
        auto x = random_itinerary(2, 200, rng), y = random_itinerary(2, 200, rng);
        auto tx = t_lambda(p, x), ty = t_lambda(p, y);
        const double d = dist_lambda(x, y, p.lambda), dt = std::abs(tx.value - ty.value);
        if (dt > L * d + tx.tail_bound + ty.tail_bound) ++bad;
        if (d > 0) ratio = std::max(ratio, dt / d);
    }
    o.detail << " max |dt|/dist=" << ratio << " (bound " << L << ") violations=" << bad;
    o.require(bad == 0, "Lipschitz");
}

struct Criterion {
    const char* name;
    double limit_s;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main()
{
    const std::vector<Criterion> all = {
        {"1 Jordan reconstruction", 5, jordan_reconstruction},
        {"2 exact boundary value", 5, exact_boundary_value},
        {"3 annulus emergence", 30, annulus_emergence},
        {"4 decomposition inverse", 60, decomposition_inverse},
        {"5 fat-hole verification", 300, fat_hole},
        {"6 perturbation continuity", 60, perturbation_continuity},
        {"7 rescaling limit", 5, rescaling_limit},
        {"8 semiconjugacy band", 10, semiconjugacy_band},
    };
    int failed = 0;
    for (const auto& c : all) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_s) {
            o.pass = false;
            o.detail << " [over time limit " << c.limit_s << " s]";
        }
        if (!o.pass) ++failed;
        std::printf("%s  %-28s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
