#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solenoid/circle_fn.hpp"

namespace solenoid {

// L_lambda mu = mu o m_ell - lambda mu.
CircleFunction apply_L(int ell, double lambda, const CircleFunction& mu);

// L_{f_1} o ... o L_{f_m} mu (order is irrelevant, the operators commute).
CircleFunction apply_chain(int ell, const std::vector<double>& factors, const CircleFunction& mu);

// Frequency cutoff used when k_max is not given: the degree for closed forms,
// min(N/2 - 1, 4096) for sampled functions.
int default_k_max(const CircleFunction& f);

struct SolveResult {
    std::optional<CircleFunction> mu;   // set only on success
    double residual = 0.0;               // sup |L mu - tau| on the grid
    bool diverged = false;               // coefficient ceiling violated
    std::string reason;

    bool solvable() const { return mu.has_value(); }
};

// Solves L_lambda mu = tau in Fourier space. The coefficients along each
// ell-adic orbit are summed from the tail,
//   mu^(ell^n k) = sum_{j>n} lambda^{j-n-1} tau^(ell^j k),
// which agrees with the forward recursion whenever a solution exists and
// does not amplify round-off by lambda^{-n}. The forward recursion is still
// run as a divergence check against the ceiling 2 * ||tau||_L / (4q).
SolveResult solve_L(int ell, double lambda, const CircleFunction& tau, int k_max = -1,
                    double tol = 1e-6);

struct DkValue {
    double value = 0.0;
    int truncation_n = 0;
    double truncation_error = 0.0;
};

// sum_n lambda^n (tau^(ell^n k) + tau^(-ell^n k)); requires ell not dividing k.
DkValue dk_functional(int ell, const CircleFunction& tau, double lambda, int k, int k_max = -1);

struct DkTable {
    double lambda = 0.0;
    std::map<int, double> values;
    int truncation_n = 0;
    double truncation_error = 0.0;
};

DkTable dk_table(int ell, const CircleFunction& tau, double lambda, int k_cap = 64, int k_max = -1);

// Orbit sums S_k(lambda) = sum_n lambda^n tau^(ell^n k) for ell not dividing k.
// Their common zeros in (0,1] are the lambdas where tau is in the image of L.
// g = 2 max_k |S_k| coincides with max_k |D_k| for even tau.
double jordan_indicator(int ell, const CircleFunction& tau, double lambda, int k_cap = 64,
                        int k_max = -1);

// Trig polynomial with coefficient S_k(lambda) at each frequency k not divisible
// by ell (mirrored for -k); tau minus it is solvable at lambda.
CircleFunction canonical_representative(int ell, const CircleFunction& tau, double lambda,
                                        int k_max = -1);

struct LambdaGrid {
    double lo = 0.01;
    double hi = 0.99;
    int points = 99;
    bool include_one = true;
};

struct ScanOptions {
    LambdaGrid grid;
    double tol = 1e-6;
    int k_cap = 64;
    int k_max = -1;
};

struct JordanRoot {
    double lambda;
    int multiplicity;
    double g_value;
};

std::vector<JordanRoot> scan_jordan(int ell, const CircleFunction& tau, const ScanOptions& opt = {});

struct Decomposition {
    std::vector<double> factors;   // descending
    CircleFunction residual;
    bool residual_irreducible = true;
    double reconstruction_error = 0.0;   // sup |L-chain(residual) - tau|
};

Decomposition decompose(int ell, const CircleFunction& tau, const ScanOptions& opt = {});

struct OrderBound {
    bool unbounded = true;
    long value = 0;
    double raw = 0.0;
    int k = 0;
    int p = 0;
};

// Upper bound on how often L_1 can be peeled from tau (zero mean assumed).
OrderBound coboundary_order_bound(int ell, const CircleFunction& tau, int k_max = -1);

}  // namespace solenoid
