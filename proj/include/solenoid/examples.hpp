#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "solenoid/affine_dynamics.hpp"
#include "solenoid/perturbed.hpp"

namespace solenoid {

// Parameters of the doubling-map example whose attractor has interior but is
// not an annulus. Cycle theta_1 = 1/(2^p - 1), theta_j = 2^{j-1} theta_1,
// theta_0 = 2^{p-1} theta_1; I_j = (theta_j, theta_{j+1}) with I_0 the long arc.
struct FatHoleParams {
    double lambda = 0.0;
    int p = 0;
    double eta = 0.0;
    std::uint64_t cycle_denom = 0;              // 2^p - 1
    std::vector<std::uint64_t> cycle_num;      // theta_j = cycle_num[j] / cycle_denom
    double delta = 0.0;                         // |I_0| - 1/2
    double t0 = 0.0;
    double t1 = 0.0;
    int n_cap = 0;
    std::vector<double> epsilons;               // eps_0 .. eps_{p-1}
    double lambda_prime = 0.0;
    double eta_prime = 0.0;

    double theta(int j) const;
    double partial_sum(int j) const;   // lambda + ... + lambda^j
};

// Invariant names paired with their truth values.
std::vector<std::pair<std::string, bool>> check_fat_hole_params(const FatHoleParams& fp);

FatHoleParams fat_hole_params(double lambda);

// Smallest admissible grid: a multiple of 2(2^p - 1), at least 2^17 and at
// least 32 T0 / min eps.
int fat_hole_default_grid(const FatHoleParams& fp);

// tau: 0 on I_0^{eps_0}, lambda' on I_j^{eps_j}, T0 at each theta_j, joined by
// C^1 cubic ramps inside the eps-neighborhoods of the cycle points.
double fat_hole_tau_value(const FatHoleParams& fp, double theta);
CircleFunction build_fat_hole(const FatHoleParams& fp, int n_samples);

// Height of the region R above theta: eta' over the closure of I_0^{eps_0},
// (lambda + ... + lambda^j) eta over I_j^{eps_j} for j >= 2, lambda elsewhere.
double fat_hole_region_top(const FatHoleParams& fp, double theta);

struct FatHoleReport {
    bool lower_zero = false;          // sup |rho-| < tol
    bool cycle_values = false;        // rho+(theta_j) = T0 / (1 - lambda)
    bool antipode_bound = false;      // rho+(theta_0 + 1/2) < T0 / lambda
    bool negative_margin = false;     // annulus margin at theta_1 < 0
    bool interior_witness = false;    // F(R) covers R
    double sup_rho_minus = 0.0;
    std::vector<double> rho_plus_cycle;
    double rho_plus_antipode = 0.0;
    double margin_theta1 = 0.0;
    double worst_cover_gap = 0.0;     // largest uncovered length found in R

    bool all() const
    {
        return lower_zero && cycle_values && antipode_bound && negative_margin && interior_witness;
    }
};

FatHoleReport verify_fat_hole(const SkewParams& p, const FatHoleParams& fp, const BoundaryPair& b, double tol);

struct LogQuadraticEntry {
    double c_mod = 0.0;
    double alpha = 0.0;
    bool ok = false;
    std::string failure;
    GraphConstants constants;
    double jordan_gap = 0.0;
    double margin = 0.0;
    std::string verdict;
};

std::vector<LogQuadraticEntry> annulus_scan_log_quadratic(double lambda, const std::vector<double>& c_mods,
                                                          const std::vector<double>& alphas, int n_grid,
                                                          double tol);

}  // namespace solenoid
