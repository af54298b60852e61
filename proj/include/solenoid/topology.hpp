#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "solenoid/affine_dynamics.hpp"

namespace solenoid {

enum class Verdict { JordanCurve, ClosedAnnulus, NotAnnulus, Undetermined };

const char* to_string(Verdict v);

struct AttractorClassification {
    Verdict verdict = Verdict::Undetermined;
    double jordan_gap = 0.0;
    double annulus_margin = 0.0;
    double union_defect = 0.0;
    std::string notes;
};

// Per grid theta:
//   min_{theta'} (lambda rho+(theta') + tau(theta')) - max_{theta'} (lambda rho-(theta') + tau(theta'))
Eigen::VectorXd annulus_margin_profile(const SkewParams& p, const BoundaryPair& b);
double annulus_margin(const SkewParams& p, const BoundaryPair& b);

// Largest part of [rho-(theta), rho+(theta)] left uncovered by the image
// intervals J(theta') = [lambda rho- + tau, lambda rho+ + tau], max over theta.
Eigen::VectorXd union_defect_profile(const SkewParams& p, const BoundaryPair& b);
double union_defect(const SkewParams& p, const BoundaryPair& b);

// Thresholds default to 10 * tol of the boundary solve when non-positive.
AttractorClassification classify(const SkewParams& p, const BoundaryPair& b, double tol_j,
                                 double tol_a);

struct ContactSet {
    std::vector<int> d_plus;    // grid indices
    std::vector<int> k_plus;    // forward-invariant core, estimate only
};

// Grid points where lambda rho+ + tau attains rho+ at ell theta within tol. On grids
// not divisible by ell some maximizing preimages fall between grid points.
ContactSet contact_set(const SkewParams& p, const BoundaryPair& b, double tol, int horizon = 64);

}  // namespace solenoid
