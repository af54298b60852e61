#include "solenoid/affine_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "solenoid/error.hpp"
#include "solenoid/parallel.hpp"

namespace solenoid {

double trapping_radius(double lambda, const CircleFunction& tau)
{
    const double s = sup_norm(tau);
    if (s == 0.0) return 1.0;
    return 1.05 * s / (1.0 - lambda);
}

SkewParams make_params(int ell, double lambda, CircleFunction tau)
{
    if (ell < 2) throw InputError("ell must be at least 2");
    if (!(lambda > 0.0 && lambda < 1.0)) throw InputError("lambda must lie in (0,1)");
    SkewParams p;
    p.ell = ell;
    p.lambda = lambda;
    p.t0 = trapping_radius(lambda, tau);
    p.tau = std::move(tau);
    return p;
}

std::pair<double, double> apply(const SkewParams& p, double theta, double t)
{
    return {wrap01(p.ell * theta), p.lambda * t + evaluate(p.tau, theta)};
}

std::vector<double> preimages(int ell, double theta)
{
    const double x = wrap01(theta);
    std::vector<double> out(ell);
    for (int j = 0; j < ell; ++j) out[j] = (x + j) / ell;
    return out;
}

PreimageTable preimage_table(const SkewParams& p, int n)
{
    if (n < 2) throw InputError("grid must have at least 2 samples");
    PreimageTable t;
    t.n = n;
    t.ell = p.ell;
    const std::size_t m = static_cast<std::size_t>(n) * p.ell;
    t.base.resize(m);
    t.frac.resize(m);
    t.tau.resize(m);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            for (int j = 0; j < p.ell; ++j) {
                const long long num = static_cast<long long>(i) + static_cast<long long>(j) * n;
                const std::size_t idx = i * p.ell + j;
                t.base[idx] = static_cast<int>(num / p.ell);
                t.frac[idx] = static_cast<double>(num % p.ell) / p.ell;
                t.tau[idx] = evaluate(p.tau, static_cast<double>(num) / (static_cast<double>(p.ell) * n));
            }
    });
    return t;
}

Eigen::VectorXd boundary_operator(const SkewParams& p, const PreimageTable& pre,
                                  const Eigen::VectorXd& rho, int sign)
{
    Eigen::VectorXd out(pre.n);
    parallel_for(pre.n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            double best = sign > 0 ? -std::numeric_limits<double>::infinity()
                                   : std::numeric_limits<double>::infinity();
            for (int j = 0; j < pre.ell; ++j) {
                const int idx = static_cast<int>(i) * pre.ell + j;
                const double v = p.lambda * pre.interp(rho, idx) + pre.tau[idx];
                best = sign > 0 ? std::max(best, v) : std::min(best, v);
            }
            out[i] = best;
        }
    });
    return out;
}

BoundaryPair boundary_fixed_point(const SkewParams& p, int n, double tol)
{
    if (!(tol > 0.0)) throw InputError("tol must be positive");
    const double t0 = p.t0 > 0.0 ? p.t0 : trapping_radius(p.lambda, p.tau);
    const PreimageTable pre = preimage_table(p, n);
    const double stop = tol * (1.0 - p.lambda);
    const int cap =
        static_cast<int>(std::ceil(std::log(stop / (2.0 * t0)) / std::log(p.lambda))) + 16;

    Eigen::VectorXd up = Eigen::VectorXd::Constant(n, t0);
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, -t0);
    int it = 0;
    for (;;) {
        if (it >= cap)
            throw ConvergenceError("boundary iteration exceeded " + std::to_string(cap) + " steps");
        Eigen::VectorXd up2 = boundary_operator(p, pre, up, +1);
        Eigen::VectorXd lo2 = boundary_operator(p, pre, lo, -1);
        const double d = std::max((up2 - up).lpNorm<Eigen::Infinity>(),
                                  (lo2 - lo).lpNorm<Eigen::Infinity>());
        up.swap(up2);
        lo.swap(lo2);
        ++it;
        if (d < stop) break;
    }
    BoundaryPair bp;
    bp.residual = std::max((boundary_operator(p, pre, up, +1) - up).lpNorm<Eigen::Infinity>(),
                           (boundary_operator(p, pre, lo, -1) - lo).lpNorm<Eigen::Infinity>());
    bp.iterations = it;
    bp.rho_plus = from_samples(std::move(up));
    bp.rho_minus = from_samples(std::move(lo));
    return bp;
}

namespace {

TLambda t_lambda_with_norm(const SkewParams& p, const Itinerary& it, double tau_norm)
{
    if (it.depth() < 1) throw InputError("itinerary depth must be at least 1");
    double v = 0.0, w = 1.0;
    for (int k = 1; k <= it.depth(); ++k) {
        v += w * evaluate(p.tau, it.thetas[k]);
        w *= p.lambda;
    }
    return {v, w * tau_norm / (1.0 - p.lambda)};
}

}  // namespace

TLambda t_lambda(const SkewParams& p, const Itinerary& it)
{
    return t_lambda_with_norm(p, it, sup_norm(p.tau));
}

double dist_lambda(const Itinerary& a, const Itinerary& b, double lambda)
{
    if (a.thetas.size() != b.thetas.size()) throw InputError("itinerary depths differ");
    double s = 0.0, w = 1.0;
    for (std::size_t k = 0; k < a.thetas.size(); ++k) {
        s += w * circle_dist(a.thetas[k], b.thetas[k]);
        w *= lambda;
    }
    return s;
}

int depth_for_resolution(const SkewParams& p, double resolution)
{
    const double s = sup_norm(p.tau);
    if (s == 0.0) return 1;
    const double d = std::log(resolution * (1.0 - p.lambda) / s) / std::log(p.lambda);
    return std::max(1, static_cast<int>(std::ceil(d)) + 1);
}

PointCloud sample_attractor(const SkewParams& p, int n_points, int depth, std::uint64_t seed)
{
    if (n_points < 0 || depth < 1) throw InputError("need n_points >= 0 and depth >= 1");
    const double norm = sup_norm(p.tau);
    std::mt19937_64 rng(seed);
    PointCloud pc;
    pc.theta.resize(n_points);
    pc.t.resize(n_points);
    for (int i = 0; i < n_points; ++i) {
        const Itinerary it = random_itinerary(p.ell, depth, rng);
        pc.theta[i] = it.thetas[0];
        pc.t[i] = t_lambda_with_norm(p, it, norm).value;
    }
    return pc;
}

}  // namespace solenoid
