#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>

#include "solenoid/affine_dynamics.hpp"
#include "solenoid/error.hpp"
#include "solenoid/topology.hpp"

namespace solenoid {

// Lift (s, t) -> (f(s,t), g(s,t)) of a cylinder map on R x [-t0, t0] with
// f(s+1, t) = f(s, t) + degree and g(s+1, t) = g(s, t). Must be reentrant.
struct CylinderMap {
    int degree = 2;
    double t0 = 1.0;
    std::function<std::pair<double, double>(double, double)> lift;
};

struct FailsPreservation : NumericFailure {
    using NumericFailure::NumericFailure;
};

struct GraphConstants {
    double ell0 = 0.0;
    double lambda0 = 0.0;
    double c12 = 0.0;
    double c21 = 0.0;
    double c = 0.0;
    double lambda_hat = 0.0;

    // (1 + C) / (1 - lambda_hat): boundary displacement per unit of map change
    double amplification() const { return (1.0 + c) / (1.0 - lambda_hat); }
};

struct ProbeGrid {
    int n_s = 256;
    int n_t = 17;
};

// Finite-difference estimates of the increment bounds on the strip, with
// ell0 scaled by 0.95 and the others by 1.05. C is the smallest solution of
// (C21 + lambda0 C) / (ell0 - C12 C) <= C that is at least c_floor.
// Throws FailsPreservation when no admissible C exists and InputError when
// the lift violates the degree condition on the probe grid.
GraphConstants estimate_constants(const CylinderMap& F, const ProbeGrid& probe = {}, double c_floor = 0.0);

// max |f(s+1,t) - f(s,t) - degree| + |g(s+1,t) - g(s,t)| over the probe grid
double periodicity_defect(const CylinderMap& F, const ProbeGrid& probe = {});

CylinderMap affine_lift(const SkewParams& p);

// g += delta sin(2 pi k s)
CylinderMap vertical_perturbation(CylinderMap F, double delta, int k = 1);

// Push the graph of rho forward and take the max (sign > 0) or min over the
// degree branches. Each branch is inverted by table lookup plus 50 bisection
// steps on the strictly increasing s -> f(s, rho(s)). Throws NumericFailure if
// that map is not increasing.
CircleFunction graph_transform(const CylinderMap& F, const CircleFunction& rho, int sign);

// Throws FailsPreservation if lambda_hat >= 1, ConvergenceError on the cap.
BoundaryPair perturbed_boundaries(const CylinderMap& F, const GraphConstants& gc, int n_grid, double tol);

// min_theta [ min F(graph rho+) - max F(graph rho-) ] over fibers
double perturbed_annulus_margin(const CylinderMap& F, const BoundaryPair& b);

// Jordan if min (rho+ - rho-) < tol_j, else by the sign of the margin against tol_a.
// union_defect is not computed for general maps and is left at 0.
AttractorClassification classify_perturbed(const CylinderMap& F, const BoundaryPair& b, double tol_j,
                                           double tol_a);

// Largest observed ||T rho1 - T rho2|| / ||rho1 - rho2|| over random pairs of
// C-Lipschitz graphs inside the strip (both signs).
double measure_contraction(const CylinderMap& F, const GraphConstants& gc, int n_grid, int trials,
                           std::uint64_t seed);

// z -> (lambda |z| + 1 - lambda) z^2 / |z|^2 + c in log coordinates
// z = exp(2 pi (t + i theta)). Requires |c| < 1 - lambda.
CylinderMap log_quadratic_map(double lambda, std::complex<double> c);

// (theta, t) -> (2 theta, lambda t + cos(2 pi (alpha - 2 theta)) / (2 pi))
CylinderMap rescaled_limit(double lambda, double alpha);
TrigPoly rescaled_limit_tau(double alpha);

// h^{-1} o F o h with h(theta, t) = (theta, eta t). The new strip half-height
// defaults to F.t0 / eta; InputError if it does not fit inside F's strip.
CylinderMap rescale_conjugate(const CylinderMap& F, double eta, double t0 = -1.0);

}  // namespace solenoid
