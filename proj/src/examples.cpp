#include "solenoid/examples.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "solenoid/error.hpp"
#include "solenoid/parallel.hpp"
#include "solenoid/topology.hpp"

namespace solenoid {

double FatHoleParams::theta(int j) const
{
    return static_cast<double>(cycle_num[j]) / static_cast<double>(cycle_denom);
}

double FatHoleParams::partial_sum(int j) const
{
    double s = 0.0, w = lambda;
    for (int i = 1; i <= j; ++i, w *= lambda) s += w;
    return s;
}

FatHoleParams fat_hole_params(double lambda)
{
    if (!(lambda > 0.5 && lambda < 1.0)) throw InputError("fat hole needs lambda in (1/2, 1)");
    FatHoleParams fp;
    fp.lambda = lambda;
    fp.p = 2;
    while (fp.partial_sum(fp.p - 1) <= 1.0) ++fp.p;
    if (fp.p > 40) throw InputError("cycle period too long for exact arithmetic");
    const double S = fp.partial_sum(fp.p - 1);
    fp.eta = 0.5 * (1.0 / S + 1.0);
    fp.cycle_denom = (std::uint64_t{1} << fp.p) - 1;
    fp.cycle_num.resize(fp.p);
    fp.cycle_num[0] = std::uint64_t{1} << (fp.p - 1);
    for (int j = 1; j < fp.p; ++j) fp.cycle_num[j] = std::uint64_t{1} << (j - 1);
    fp.delta = 0.5 / static_cast<double>(fp.cycle_denom);
    fp.t0 = 1.2 / (1.0 - lambda);
    auto t1 = [&](int N) {
        const double lN = std::pow(lambda, N);
        return (lambda - lN) / (1.0 - lambda) + lN * fp.t0 / (1.0 - lambda);
    };
    fp.n_cap = 2;
    while (!(fp.t0 / lambda > t1(fp.n_cap))) ++fp.n_cap;
    fp.t1 = t1(fp.n_cap);
    // eps_0 is the largest; the ladder decreases by 2.5 through eps_{p-1}, ..., eps_1
    fp.epsilons.assign(fp.p, 0.0);
    fp.epsilons[0] = 0.9 * fp.delta * std::ldexp(1.0, -fp.n_cap + 1);
    double e = fp.epsilons[0];
    for (int j = fp.p - 1; j >= 1; --j) {
        e /= 2.5;
        fp.epsilons[j] = e;
    }
    fp.lambda_prime = 0.5 * (lambda * fp.eta + lambda);
    fp.eta_prime = 0.5 * (1.0 + S * fp.eta);
    return fp;
}

std::vector<std::pair<std::string, bool>> check_fat_hole_params(const FatHoleParams& fp)
{
    const double l = fp.lambda;
    const double S = fp.partial_sum(fp.p - 1);
    const double len_i0 = 1.0 - fp.theta(0) + fp.theta(1);
    std::vector<std::pair<std::string, bool>> out;
    out.emplace_back("partial sum times eta exceeds 1", S * fp.eta > 1.0 && fp.eta < 1.0);
    out.emplace_back("T0 > 1/(1-lambda)", fp.t0 > 1.0 / (1.0 - l));
    out.emplace_back("T0/lambda > T1", fp.t0 / l > fp.t1);
    out.emplace_back("0 < eps_0 < delta 2^{1-N}",
                     fp.epsilons[0] > 0.0 && fp.epsilons[0] < fp.delta * std::ldexp(1.0, -fp.n_cap + 1));
    bool ladder = true;
    for (int j = 1; j + 1 < fp.p; ++j) ladder = ladder && 2.0 * fp.epsilons[j] < fp.epsilons[j + 1];
    out.emplace_back("2 eps_j < eps_{j+1}", ladder);
    out.emplace_back("2 eps_{p-1} < eps_0", 2.0 * fp.epsilons[fp.p - 1] < fp.epsilons[0]);
    out.emplace_back("lambda eta < lambda' < lambda", l * fp.eta < fp.lambda_prime && fp.lambda_prime < l);
    out.emplace_back("|I_0| > 1/2", len_i0 > 0.5 && std::abs(len_i0 - 0.5 - fp.delta) < 1e-15);
    out.emplace_back("partial sum times eta > eta' > 1", S * fp.eta > fp.eta_prime && fp.eta_prime > 1.0);
    return out;
}

int fat_hole_default_grid(const FatHoleParams& fp)
{
    const double eps_min = *std::min_element(fp.epsilons.begin(), fp.epsilons.end());
    const double need = std::max(std::ldexp(1.0, 17), 32.0 * fp.t0 / eps_min);
    const long long unit = 2 * static_cast<long long>(fp.cycle_denom);
    long long n = unit;
    while (static_cast<double>(n) < need) n *= 2;
    if (n > (1LL << 28)) throw InputError("fat hole grid would be too large");
    return static_cast<int>(n);
}

namespace {

double smoothstep(double x)
{
    x = std::clamp(x, 0.0, 1.0);
    return x * x * (3.0 - 2.0 * x);
}

// signed offset of theta from x in (-1/2, 1/2]
double offset(double theta, double x)
{
    double d = wrap01(theta - x);
    return d > 0.5 ? d - 1.0 : d;
}

// index j with theta in the closed arc [theta_j, theta_{j+1}]
int arc_of(const FatHoleParams& fp, double theta)
{
    const double x = wrap01(theta);
    for (int j = 1; j < fp.p; ++j) {
        const double a = fp.theta(j), b = fp.theta((j + 1) % fp.p);
        if (x >= a && x <= b) return j;
    }
    return 0;
}

double plateau(const FatHoleParams& fp, int j) { return j == 0 ? 0.0 : fp.lambda_prime; }

}  // namespace

double fat_hole_tau_value(const FatHoleParams& fp, double theta)
{
    for (int j = 0; j < fp.p; ++j) {
        const double d = offset(theta, fp.theta(j));
        const int prev = (j + fp.p - 1) % fp.p;
        const double el = fp.epsilons[prev], er = fp.epsilons[j];
        if (d <= 0.0 && d >= -el) {
            const double v = plateau(fp, prev);
            return v + (fp.t0 - v) * smoothstep((d + el) / el);
        }
        if (d >= 0.0 && d <= er) {
            const double v = plateau(fp, j);
            return v + (fp.t0 - v) * smoothstep((er - d) / er);
        }
    }
    return plateau(fp, arc_of(fp, theta));
}

CircleFunction build_fat_hole(const FatHoleParams& fp, int n)
{
    const double eps_min = *std::min_element(fp.epsilons.begin(), fp.epsilons.end());
    if (static_cast<double>(n) < 32.0 * fp.t0 / eps_min)
        throw InputError("grid too coarse for the fat hole ramps: need at least " +
                         std::to_string(static_cast<long long>(std::ceil(32.0 * fp.t0 / eps_min))) + " samples");
    Eigen::VectorXd s(n);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) s[i] = fat_hole_tau_value(fp, static_cast<double>(i) / n);
    });
    // steepest ramp: 1.5 * T0 / eps_min
    return from_samples(std::move(s), 1.5 * fp.t0 / eps_min);
}

double fat_hole_region_top(const FatHoleParams& fp, double theta)
{
    const int j = arc_of(fp, theta);
    const double a = fp.theta(j), b = fp.theta((j + 1) % fp.p);
    const double x = wrap01(theta);
    const double e = fp.epsilons[j];
    const double into = wrap01(x - a), len = wrap01(b - a);
    if (into < e || into > len - e) return fp.lambda;
    if (j == 0) return fp.eta_prime;
    if (j >= 2) return fp.partial_sum(j) * fp.eta;
    return fp.lambda;
}

FatHoleReport verify_fat_hole(const SkewParams& p, const FatHoleParams& fp, const BoundaryPair& b, double tol)
{
    if (p.ell != 2) throw InputError("fat hole verification is for ell = 2");
    if (b.rho_plus.n() != p.tau.n()) throw InputError("boundary grid differs from tau grid");
    FatHoleReport r;
    const double l = p.lambda;
    const CircleFunction& rp = b.rho_plus;
    const CircleFunction& rm = b.rho_minus;

    r.sup_rho_minus = rm.samples.lpNorm<Eigen::Infinity>();
    r.lower_zero = r.sup_rho_minus < tol;

    r.cycle_values = true;
    for (int j = 0; j < fp.p; ++j) {
        const double v = evaluate(rp, fp.theta(j));
        r.rho_plus_cycle.push_back(v);
        r.cycle_values = r.cycle_values && std::abs(v - fp.t0 / (1.0 - l)) < tol;
    }

    r.rho_plus_antipode = evaluate(rp, fp.theta(0) + 0.5);
    r.antipode_bound = r.rho_plus_antipode < fp.t0 / l - tol;

    {
        double top = std::numeric_limits<double>::infinity(), bot = -top;
        for (double q : preimages(2, fp.theta(1))) {
            const double tq = evaluate(p.tau, q);
            top = std::min(top, l * evaluate(rp, q) + tq);
            bot = std::max(bot, l * evaluate(rm, q) + tq);
        }
        r.margin_theta1 = top - bot;
        r.negative_margin = r.margin_theta1 < -tol;
    }

    // F(R) must cover R fiberwise. Required fibers are dilated by one grid
    // cell in theta, supplied ones eroded by half a cell (preimages contract),
    // and gaps up to one raster row in t are tolerated.
    const int n = rp.n();
    const double w = 1.0 / n;
    const double row = (fp.t0 / (1.0 - l)) / 2048.0;
    std::vector<double> gaps(n, 0.0);
    parallel_for(n, [&](std::size_t s, std::size_t e) {
        for (std::size_t i = s; i < e; ++i) {
            const double th = static_cast<double>(i) / n;
            double need_lo = -std::numeric_limits<double>::infinity(), need_hi = need_lo;
            for (double d : {-w, 0.0, w}) {
                need_lo = std::max(need_lo, evaluate(rm, th + d));
                need_hi = std::max(need_hi, fat_hole_region_top(fp, th + d));
            }
            std::vector<std::pair<double, double>> iv;
            for (double q : preimages(2, th)) {
                double lo = -std::numeric_limits<double>::infinity(), hi = -lo;
                for (double d : {-0.5 * w, 0.0, 0.5 * w}) {
                    const double tq = evaluate(p.tau, q + d);
                    lo = std::max(lo, l * evaluate(rm, q + d) + tq);
                    hi = std::min(hi, l * fat_hole_region_top(fp, q + d) + tq);
                }
                // the window ends and centre include every grid node inside it,
                // so the piecewise-linear tau attains its extremes there
                if (hi > lo) iv.emplace_back(lo, hi);
            }
            std::sort(iv.begin(), iv.end());
            double cursor = need_lo, gap = 0.0;
            for (const auto& [a, c] : iv) {
                if (a > cursor) gap = std::max(gap, std::min(a, need_hi) - cursor);
                cursor = std::max(cursor, c);
                if (cursor >= need_hi) break;
            }
            if (cursor < need_hi) gap = std::max(gap, need_hi - cursor);
            gaps[i] = gap;
        }
    });
    r.worst_cover_gap = *std::max_element(gaps.begin(), gaps.end());
    r.interior_witness = r.worst_cover_gap <= row;
    return r;
}

std::vector<LogQuadraticEntry> annulus_scan_log_quadratic(double lambda, const std::vector<double>& c_mods,
                                                          const std::vector<double>& alphas, int n_grid,
                                                          double tol)
{
    std::vector<LogQuadraticEntry> out;
    for (double cm : c_mods)
        for (double a : alphas) {
            LogQuadraticEntry e;
            e.c_mod = cm;
            e.alpha = a;
            try {
                const CylinderMap F = log_quadratic_map(lambda, std::polar(cm, 2.0 * std::numbers::pi * a));
                e.constants = estimate_constants(F);
                const BoundaryPair b = perturbed_boundaries(F, e.constants, n_grid, tol);
                const double tj = 10.0 * tol;
                const AttractorClassification c = classify_perturbed(F, b, tj, tj);
                e.jordan_gap = c.jordan_gap;
                e.margin = c.annulus_margin;
                e.verdict = to_string(c.verdict);
                e.ok = true;
            } catch (const std::exception& ex) {
                e.failure = ex.what();
            }
            out.push_back(std::move(e));
        }
    return out;
}

}  // namespace solenoid
