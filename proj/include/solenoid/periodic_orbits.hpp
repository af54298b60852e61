#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "solenoid/circle_fn.hpp"

namespace solenoid {

// Orbit of theta_0 = j / (ell^p - 1) under m_ell, with least period p.
struct PeriodicOrbit {
    int period = 1;
    std::uint64_t j = 0;
    std::uint64_t denom = 1;                 // ell^p - 1
    std::vector<std::uint64_t> numerators;   // j ell^i mod denom
    std::vector<double> points;
    std::optional<double> birkhoff_sum;
};

// All orbits of least period <= p_max, each listed once under its smallest
// numerator. Throws InputError if ell^p_max - 1 does not fit in 2^53 or the
// enumeration would exceed ~2^26 candidates.
std::vector<PeriodicOrbit> periodic_orbits(int ell, int p_max);

double birkhoff_sum(const CircleFunction& tau, const PeriodicOrbit& o);

// Sign of S must exceed this before an orbit counts as a witness:
// p * lip / N for sampled tau, round-off scale for closed forms.
double witness_margin(const CircleFunction& tau, int period);

struct BirkhoffExtremes {
    std::optional<PeriodicOrbit> best_positive;
    std::optional<PeriodicOrbit> best_negative;
    std::vector<PeriodicOrbit> orbits;   // all enumerated, with sums
};

// Orbits maximizing / minimizing S/p; ties go to the smaller period.
BirkhoffExtremes birkhoff_extremes(const CircleFunction& tau, int ell, int p_max);

struct CoboundaryVerdict {
    bool not_coboundary = false;
    std::optional<PeriodicOrbit> positive;
    std::optional<PeriodicOrbit> negative;
    bool mean_subtracted = false;
};

CoboundaryVerdict coboundary_witness(const CircleFunction& tau, int ell, int p_max);

}  // namespace solenoid
