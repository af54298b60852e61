#include "solenoid/periodic_orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "solenoid/error.hpp"

namespace solenoid {

std::vector<PeriodicOrbit> periodic_orbits(int ell, int p_max)
{
    if (ell < 2) throw InputError("ell must be at least 2");
    if (p_max < 1) throw InputError("p_max must be at least 1");
    const double lim = std::pow(static_cast<double>(ell), p_max);
    if (lim > 9.0e15) throw InputError("ell^p_max - 1 exceeds exact integer range");
    if (lim > 6.7e7) throw InputError("too many orbits to enumerate");

    std::vector<PeriodicOrbit> out;
    for (int p = 1; p <= p_max; ++p) {
        std::uint64_t M = 1;
        for (int i = 0; i < p; ++i) M *= static_cast<std::uint64_t>(ell);
        M -= 1;
        for (std::uint64_t j = 0; j < M; ++j) {
            PeriodicOrbit o;
            o.period = p;
            o.j = j;
            o.denom = M;
            std::uint64_t x = j;
            bool minimal = true, least = true;
            for (int i = 0; i < p; ++i) {
                if (i > 0) {
                    if (x == j) {   // returned early: period divides i < p
                        least = false;
                        break;
                    }
                    if (x < j) {
                        minimal = false;
                        break;
                    }
                }
                o.numerators.push_back(x);
                x = (x * static_cast<std::uint64_t>(ell)) % M;
            }
            if (!least || !minimal) continue;
            for (auto nu : o.numerators) o.points.push_back(static_cast<double>(nu) / static_cast<double>(M));
            out.push_back(std::move(o));
        }
    }
    return out;
}

double birkhoff_sum(const CircleFunction& tau, const PeriodicOrbit& o)
{
    double s = 0.0;
    for (double x : o.points) s += evaluate(tau, x);
    return s;
}

double witness_margin(const CircleFunction& tau, int period)
{
    if (tau.closed_form) {
        double scale = std::abs(tau.closed_form->constant);
        for (const auto& t : tau.closed_form->terms) scale += std::abs(t.cos_c) + std::abs(t.sin_c);
        return period * 1e-12 * std::max(1.0, scale);
    }
    return period * tau.lip_bound / tau.n();
}

BirkhoffExtremes birkhoff_extremes(const CircleFunction& tau, int ell, int p_max)
{
    BirkhoffExtremes be;
    be.orbits = periodic_orbits(ell, p_max);
    const PeriodicOrbit* hi = nullptr;
    const PeriodicOrbit* lo = nullptr;
    // relative slack so that averages equal up to round-off count as ties
    auto avg = [](const PeriodicOrbit& o) { return *o.birkhoff_sum / o.period; };
    for (auto& o : be.orbits) {
        o.birkhoff_sum = birkhoff_sum(tau, o);
        if (!hi || avg(o) > avg(*hi) + 1e-12) hi = &o;
        if (!lo || avg(o) < avg(*lo) - 1e-12) lo = &o;
    }
    if (hi && *hi->birkhoff_sum > witness_margin(tau, hi->period)) be.best_positive = *hi;
    if (lo && *lo->birkhoff_sum < -witness_margin(tau, lo->period)) be.best_negative = *lo;
    return be;
}

CoboundaryVerdict coboundary_witness(const CircleFunction& tau, int ell, int p_max)
{
    CoboundaryVerdict v;
    const double m = mean(tau);
    const double tiny = tau.closed_form ? 1e-14 : 1e-12 * std::max(1.0, sup_norm(tau));
    CircleFunction t0 = tau;
    if (std::abs(m) > tiny) {
        t0 = add_constant(tau, -m);
        v.mean_subtracted = true;
    }
    const BirkhoffExtremes be = birkhoff_extremes(t0, ell, p_max);
    v.positive = be.best_positive;
    v.negative = be.best_negative;
    v.not_coboundary = v.positive && v.negative;
    return v;
}

}  // namespace solenoid
