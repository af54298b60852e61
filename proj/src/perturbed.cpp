#include "solenoid/perturbed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "solenoid/parallel.hpp"

namespace solenoid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double strip_t(const CylinderMap& F, const ProbeGrid& g, int j)
{
    return g.n_t == 1 ? 0.0 : -F.t0 + 2.0 * F.t0 * j / (g.n_t - 1);
}

}  // namespace

double periodicity_defect(const CylinderMap& F, const ProbeGrid& g)
{
    double d = 0.0;
    for (int i = 0; i < g.n_s; ++i)
        for (int j = 0; j < g.n_t; ++j) {
            const double s = static_cast<double>(i) / g.n_s, t = strip_t(F, g, j);
            const auto [f0, g0] = F.lift(s, t);
            const auto [f1, g1] = F.lift(s + 1.0, t);
            d = std::max(d, std::abs(f1 - f0 - F.degree) + std::abs(g1 - g0));
        }
    return d;
}

GraphConstants estimate_constants(const CylinderMap& F, const ProbeGrid& g, double c_floor)
{
    if (g.n_s < 2 || g.n_t < 2) throw InputError("probe grid too small");
    if (periodicity_defect(F, g) > 1e-8) throw InputError("lift violates the degree condition");
    const double ds = 1.0 / g.n_s, dt = 2.0 * F.t0 / (g.n_t - 1);
    std::vector<double> fv((g.n_s + 1) * g.n_t), gv((g.n_s + 1) * g.n_t);
    for (int i = 0; i <= g.n_s; ++i)
        for (int j = 0; j < g.n_t; ++j) {
            const auto [f, v] = F.lift(i * ds, strip_t(F, g, j));
            fv[i * g.n_t + j] = f;
            gv[i * g.n_t + j] = v;
        }
    double l0 = std::numeric_limits<double>::infinity(), c21 = 0.0, c12 = 0.0, lam0 = 0.0;
    for (int i = 0; i <= g.n_s; ++i)
        for (int j = 0; j < g.n_t; ++j) {
            const int a = i * g.n_t + j;
            if (i < g.n_s) {
                l0 = std::min(l0, (fv[a + g.n_t] - fv[a]) / ds);
                c21 = std::max(c21, std::abs(gv[a + g.n_t] - gv[a]) / ds);
            }
            if (j + 1 < g.n_t) {
                c12 = std::max(c12, std::abs(fv[a + 1] - fv[a]) / dt);
                lam0 = std::max(lam0, std::abs(gv[a + 1] - gv[a]) / dt);
            }
        }
    GraphConstants gc;
    gc.ell0 = 0.95 * l0;
    gc.lambda0 = 1.05 * lam0;
    gc.c12 = 1.05 * c12;
    gc.c21 = 1.05 * c21;
    const double gap = gc.ell0 - gc.lambda0;
    if (!(gap > 0.0)) throw FailsPreservation("ell0 <= lambda0: graphs are not expanded in the base");
    // C12 C^2 - (ell0 - lambda0) C + C21 <= 0
    if (gc.c12 <= 1e-14 * std::max(1.0, gap)) {
        gc.c12 = 0.0;
        gc.c = std::max(gc.c21 / gap, c_floor);
    } else {
        const double disc = gap * gap - 4.0 * gc.c12 * gc.c21;
        if (disc < 0.0) throw FailsPreservation("no C satisfies the graph preservation inequality");
        const double lo = (gap - std::sqrt(disc)) / (2.0 * gc.c12);
        const double hi = (gap + std::sqrt(disc)) / (2.0 * gc.c12);
        gc.c = std::max(lo, c_floor);
        if (gc.c > hi || gc.c >= gc.ell0 / gc.c12)
            throw FailsPreservation("requested C floor lies outside the admissible range");
    }
    gc.lambda_hat = (gc.lambda0 * gc.ell0 + gc.c21 * gc.c12) / (gc.ell0 - gc.c12 * gc.c);
    return gc;
}

CylinderMap affine_lift(const SkewParams& p)
{
    CylinderMap F;
    F.degree = p.ell;
    F.t0 = p.t0;
    F.lift = [ell = p.ell, lambda = p.lambda, tau = p.tau](double s, double t) {
        return std::pair<double, double>{ell * s, lambda * t + evaluate(tau, s)};
    };
    return F;
}

CylinderMap vertical_perturbation(CylinderMap F, double delta, int k)
{
    auto base = F.lift;
    F.lift = [base, delta, k](double s, double t) {
        auto [f, g] = base(s, t);
        return std::pair<double, double>{f, g + delta * std::sin(kTwoPi * k * s)};
    };
    return F;
}

CircleFunction graph_transform(const CylinderMap& F, const CircleFunction& rho, int sign)
{
    const int n = rho.n();
    const Eigen::VectorXd& r = rho.samples;
    auto rho_at = [&](double s) {   // s in [0, 1]
        const double x = s * n;
        int i = std::min(static_cast<int>(std::floor(x)), n - 1);
        const double w = x - i;
        return (1.0 - w) * r[i] + w * r[(i + 1) % n];
    };
    std::vector<double> phi(n + 1);
    for (int i = 0; i < n; ++i) phi[i] = F.lift(static_cast<double>(i) / n, r[i]).first;
    phi[n] = phi[0] + F.degree;
    for (int i = 0; i < n; ++i)
        if (!(phi[i + 1] > phi[i]))
            throw NumericFailure("graph image is not monotone in s; constants underestimated");

    Eigen::VectorXd out(n);
    const double ell = F.degree;
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            double best = sign > 0 ? -std::numeric_limits<double>::infinity()
                                   : std::numeric_limits<double>::infinity();
            for (int m = 0; m < F.degree; ++m) {
                double y = static_cast<double>(i) / n + m;
                y -= ell * std::floor((y - phi[0]) / ell);
                const auto it = std::upper_bound(phi.begin(), phi.end(), y);
                const int c = std::clamp(static_cast<int>(it - phi.begin()) - 1, 0, n - 1);
                double lo = static_cast<double>(c) / n, hi = static_cast<double>(c + 1) / n;
                for (int k = 0; k < 50; ++k) {
                    const double mid = 0.5 * (lo + hi);
                    if (F.lift(mid, rho_at(mid)).first < y) lo = mid;
                    else hi = mid;
                }
                const double s = 0.5 * (lo + hi);
                const double v = F.lift(s, rho_at(s)).second;
                best = sign > 0 ? std::max(best, v) : std::min(best, v);
            }
            out[i] = best;
        }
    });
    return from_samples(std::move(out));
}

BoundaryPair perturbed_boundaries(const CylinderMap& F, const GraphConstants& gc, int n, double tol)
{
    if (!(gc.lambda_hat < 1.0)) throw FailsPreservation("lambda_hat >= 1: no contraction guarantee");
    if (!(tol > 0.0)) throw InputError("tol must be positive");
    const double stop = tol * (1.0 - gc.lambda_hat);
    const int cap = static_cast<int>(std::ceil(std::log(stop / (2.0 * F.t0)) / std::log(gc.lambda_hat))) + 16;
    CircleFunction up = from_samples(Eigen::VectorXd::Constant(n, F.t0), 0.0);
    CircleFunction lo = from_samples(Eigen::VectorXd::Constant(n, -F.t0), 0.0);
    int it = 0;
    for (;;) {
        if (it >= std::max(cap, 1))
            throw ConvergenceError("perturbed boundary iteration exceeded " + std::to_string(cap) + " steps");
        CircleFunction up2 = graph_transform(F, up, +1);
        CircleFunction lo2 = graph_transform(F, lo, -1);
        const double d = std::max((up2.samples - up.samples).lpNorm<Eigen::Infinity>(),
                                  (lo2.samples - lo.samples).lpNorm<Eigen::Infinity>());
        up = std::move(up2);
        lo = std::move(lo2);
        ++it;
        if (d < stop) break;
    }
    BoundaryPair b;
    b.residual = std::max((graph_transform(F, up, +1).samples - up.samples).lpNorm<Eigen::Infinity>(),
                          (graph_transform(F, lo, -1).samples - lo.samples).lpNorm<Eigen::Infinity>());
    b.iterations = it;
    b.rho_plus = std::move(up);
    b.rho_minus = std::move(lo);
    return b;
}

double perturbed_annulus_margin(const CylinderMap& F, const BoundaryPair& b)
{
    const CircleFunction top_min = graph_transform(F, b.rho_plus, -1);
    const CircleFunction bot_max = graph_transform(F, b.rho_minus, +1);
    return (top_min.samples - bot_max.samples).minCoeff();
}

AttractorClassification classify_perturbed(const CylinderMap& F, const BoundaryPair& b, double tol_j,
                                           double tol_a)
{
    AttractorClassification c;
    c.jordan_gap = (b.rho_plus.samples - b.rho_minus.samples).minCoeff();
    if (c.jordan_gap < tol_j) {
        c.verdict = Verdict::JordanCurve;
        return c;
    }
    c.annulus_margin = perturbed_annulus_margin(F, b);
    if (c.annulus_margin > tol_a) c.verdict = Verdict::ClosedAnnulus;
    else if (c.annulus_margin < -tol_a) c.verdict = Verdict::NotAnnulus;
    else c.notes = "margin within tolerance";
    return c;
}

double measure_contraction(const CylinderMap& F, const GraphConstants& gc, int n, int trials,
                           std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto random_graph = [&]() {
        TrigPoly p;
        for (int k = 1; k <= 4; ++k) p.terms.push_back({k, u(rng), u(rng)});
        CircleFunction f = from_trig_poly(p, n);
        const double ext = std::max(sup_norm(f), 1e-300);
        // Lipschitz at most 0.9 C and values at most half the strip
        double s = std::min(0.9 * gc.c / std::max(f.lip_bound, 1e-300), 0.45 * F.t0 / ext);
        if (gc.c <= 0.0) s = 0.0;
        f = scale(f, s);
        const double room = std::max(0.0, 0.9 * F.t0 - sup_norm(f));
        return add_constant(f, room * u(rng));
    };
    double worst = 0.0;
    for (int k = 0; k < trials; ++k) {
        const CircleFunction a = random_graph(), b = random_graph();
        const double d = (a.samples - b.samples).lpNorm<Eigen::Infinity>();
        if (d == 0.0) continue;
        for (int sign : {+1, -1}) {
            const double dt = (graph_transform(F, a, sign).samples - graph_transform(F, b, sign).samples)
                                  .lpNorm<Eigen::Infinity>();
            worst = std::max(worst, dt / d);
        }
    }
    return worst;
}

CylinderMap log_quadratic_map(double lambda, std::complex<double> c)
{
    if (!(lambda > 0.0 && lambda < 1.0)) throw InputError("lambda must lie in (0,1)");
    if (!(std::abs(c) < 1.0 - lambda)) throw InputError("need |c| < 1 - lambda");
    CylinderMap F;
    F.degree = 2;
    F.t0 = std::max(1.25 * std::abs(c) / (kTwoPi * (1.0 - lambda)), 1e-3);
    F.lift = [lambda, c](double s, double t) {
        const double r = lambda * std::exp(kTwoPi * t) + 1.0 - lambda;
        // w = e^{4 pi i s} (r + c e^{-4 pi i s}); |c| < r keeps the bracket off zero
        const std::complex<double> q = r + c * std::polar(1.0, -2.0 * kTwoPi * s);
        return std::pair<double, double>{2.0 * s + std::arg(q) / kTwoPi, std::log(std::abs(q)) / kTwoPi};
    };
    return F;
}

TrigPoly rescaled_limit_tau(double alpha)
{
    // cos(2 pi (alpha - 2 theta)) = cos(2 pi alpha) cos(4 pi theta) + sin(2 pi alpha) sin(4 pi theta)
    return TrigPoly{0.0, {{2, std::cos(kTwoPi * alpha) / kTwoPi, std::sin(kTwoPi * alpha) / kTwoPi}}};
}

CylinderMap rescaled_limit(double lambda, double alpha)
{
    CylinderMap F;
    F.degree = 2;
    F.t0 = 1.05 / (kTwoPi * (1.0 - lambda));
    F.lift = [lambda, alpha](double s, double t) {
        return std::pair<double, double>{2.0 * s, lambda * t + std::cos(kTwoPi * (alpha - 2.0 * s)) / kTwoPi};
    };
    return F;
}

CylinderMap rescale_conjugate(const CylinderMap& F, double eta, double t0)
{
    if (!(eta > 0.0)) throw InputError("eta must be positive");
    CylinderMap G;
    G.degree = F.degree;
    G.t0 = t0 > 0.0 ? t0 : F.t0 / eta;
    if (G.t0 * eta > F.t0 * (1.0 + 1e-12)) throw InputError("rescaled strip leaves the domain of the map");
    G.lift = [base = F.lift, eta](double s, double t) {
        const auto [f, g] = base(s, eta * t);
        return std::pair<double, double>{f, g / eta};
    };
    return G;
}

}  // namespace solenoid
