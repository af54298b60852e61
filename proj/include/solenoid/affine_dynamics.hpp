#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "solenoid/circle_fn.hpp"

namespace solenoid {

// A(theta, t) = (ell * theta, lambda * t + tau(theta)) on R/Z x R.
struct SkewParams {
    int ell = 2;
    double lambda = 0.5;
    CircleFunction tau;
    double t0 = 1.0;   // trapping half-height
};

// 1.05 * ||tau||_inf / (1 - lambda); 1 when tau vanishes.
double trapping_radius(double lambda, const CircleFunction& tau);

// Validates ell >= 2, lambda in (0,1), and fills t0 from trapping_radius.
SkewParams make_params(int ell, double lambda, CircleFunction tau);

std::pair<double, double> apply(const SkewParams& p, double theta, double t);

// {(theta + j)/ell}, sorted.
std::vector<double> preimages(int ell, double theta);

struct BoundaryPair {
    CircleFunction rho_plus;
    CircleFunction rho_minus;
    double residual = 0.0;   // sup defect of the max/min functional equation
    int iterations = 0;
};

// Iterates the max/min boundary operator from the constants +-T0.
// Throws ConvergenceError if the iteration cap is exceeded.
BoundaryPair boundary_fixed_point(const SkewParams& p, int n_grid, double tol);

// Grid preimages (i + j N)/(ell N) of theta_i = i/N in index units, with tau
// sampled there. Entry i * ell + j belongs to branch j of grid point i.
struct PreimageTable {
    int n = 0;
    int ell = 0;
    std::vector<int> base;      // floor of the fractional index
    std::vector<double> frac;   // offset inside the cell, a multiple of 1/ell
    std::vector<double> tau;

    double interp(const Eigen::VectorXd& rho, int idx) const
    {
        const int b = base[idx];
        return (1.0 - frac[idx]) * rho[b] + frac[idx] * rho[(b + 1) % n];
    }
};

PreimageTable preimage_table(const SkewParams& p, int n_grid);

// One application of the upper (sign > 0) or lower boundary operator:
// theta -> max/min over preimages of lambda rho(theta') + tau(theta').
Eigen::VectorXd boundary_operator(const SkewParams& p, const PreimageTable& pre,
                                  const Eigen::VectorXd& rho, int sign);

// Backward orbit (theta_0, ..., theta_D) with ell * theta_{k+1} = theta_k.
struct Itinerary {
    std::vector<double> thetas;
    int depth() const { return static_cast<int>(thetas.size()) - 1; }
};

struct TLambda {
    double value;
    double tail_bound;
};

TLambda t_lambda(const SkewParams& p, const Itinerary& it);

// sum_k lambda^k dist(theta_k, theta'_k). Throws InputError on depth mismatch.
double dist_lambda(const Itinerary& a, const Itinerary& b, double lambda);

// Uniform theta_0 and uniform backward branches.
template <class Rng>
Itinerary random_itinerary(int ell, int depth, Rng& rng);

struct PointCloud {
    Eigen::VectorXd theta;
    Eigen::VectorXd t;
};

PointCloud sample_attractor(const SkewParams& p, int n_points, int depth, std::uint64_t seed);

// Smallest depth D with lambda^D ||tau|| / (1 - lambda) < resolution.
int depth_for_resolution(const SkewParams& p, double resolution);

}  // namespace solenoid

#include <random>

namespace solenoid {

template <class Rng>
Itinerary random_itinerary(int ell, int depth, Rng& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> branch(0, ell - 1);
    Itinerary it;
    it.thetas.resize(depth + 1);
    it.thetas[0] = u(rng);
    for (int k = 1; k <= depth; ++k) it.thetas[k] = (it.thetas[k - 1] + branch(rng)) / ell;
    return it;
}

}  // namespace solenoid
