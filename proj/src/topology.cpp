#include "solenoid/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "solenoid/error.hpp"
#include "solenoid/parallel.hpp"

namespace solenoid {

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::JordanCurve: return "JordanCurve";
    case Verdict::ClosedAnnulus: return "ClosedAnnulus";
    case Verdict::NotAnnulus: return "NotAnnulus";
    case Verdict::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

namespace {

void check_grid(const BoundaryPair& b)
{
    if (b.rho_plus.n() != b.rho_minus.n()) throw InputError("boundary grids differ");
}

}  // namespace

Eigen::VectorXd annulus_margin_profile(const SkewParams& p, const BoundaryPair& b)
{
    check_grid(b);
    const PreimageTable pre = preimage_table(p, b.rho_plus.n());
    const Eigen::VectorXd lo_top = boundary_operator(p, pre, b.rho_plus.samples, -1);
    const Eigen::VectorXd hi_bot = boundary_operator(p, pre, b.rho_minus.samples, +1);
    return lo_top - hi_bot;
}

double annulus_margin(const SkewParams& p, const BoundaryPair& b)
{
    return annulus_margin_profile(p, b).minCoeff();
}

Eigen::VectorXd union_defect_profile(const SkewParams& p, const BoundaryPair& b)
{
    check_grid(b);
    const int n = b.rho_plus.n();
    const PreimageTable pre = preimage_table(p, n);
    Eigen::VectorXd out(n);
    parallel_for(n, [&](std::size_t s, std::size_t e) {
        std::vector<std::pair<double, double>> iv(p.ell);
        for (std::size_t i = s; i < e; ++i) {
            for (int j = 0; j < p.ell; ++j) {
                const int idx = static_cast<int>(i) * p.ell + j;
                iv[j] = {p.lambda * pre.interp(b.rho_minus.samples, idx) + pre.tau[idx],
                         p.lambda * pre.interp(b.rho_plus.samples, idx) + pre.tau[idx]};
            }
            std::sort(iv.begin(), iv.end());
            const double lo = b.rho_minus.samples[i], hi = b.rho_plus.samples[i];
            double cursor = lo, gap = 0.0;
            for (const auto& [a, c] : iv) {
                if (a > cursor) gap = std::max(gap, std::min(a, hi) - cursor);
                cursor = std::max(cursor, c);
                if (cursor >= hi) break;
            }
            if (cursor < hi) gap = std::max(gap, hi - cursor);
            out[i] = std::max(gap, 0.0);
        }
    });
    return out;
}

double union_defect(const SkewParams& p, const BoundaryPair& b)
{
    return union_defect_profile(p, b).maxCoeff();
}

AttractorClassification classify(const SkewParams& p, const BoundaryPair& b, double tol_j, double tol_a)
{
    if (!(tol_j > 0.0) || !(tol_a > 0.0)) throw InputError("classification tolerances must be positive");
    if (!(b.residual <= tol_j)) throw InputError("boundaries are not converged to the requested tolerance");
    AttractorClassification c;
    c.jordan_gap = (b.rho_plus.samples - b.rho_minus.samples).minCoeff();
    c.annulus_margin = annulus_margin(p, b);
    c.union_defect = union_defect(p, b);

    if (c.jordan_gap < tol_j) {
        c.verdict = Verdict::JordanCurve;
    } else if (c.annulus_margin > tol_a) {
        c.verdict = Verdict::ClosedAnnulus;
    } else if (p.ell == 2 && c.annulus_margin < -tol_a) {
        c.verdict = Verdict::NotAnnulus;
    } else if (c.union_defect < tol_a) {
        c.verdict = Verdict::ClosedAnnulus;
        c.notes = "margin inconclusive; image intervals cover every fiber";
    } else if (c.union_defect > 10.0 * tol_a) {
        c.verdict = Verdict::NotAnnulus;
        c.notes = "some fiber is not covered by the images of its preimage fibers";
    } else {
        c.verdict = Verdict::Undetermined;
        c.notes = "margin and coverage defect both within tolerance bands";
    }
    if (c.verdict == Verdict::ClosedAnnulus && p.lambda * p.ell <= 1.0) {
        c.verdict = Verdict::NotAnnulus;
        c.notes = "lambda <= 1/ell excludes an annulus; numerical evidence overruled";
    }
    return c;
}

ContactSet contact_set(const SkewParams& p, const BoundaryPair& b, double tol, int horizon)
{
    const int n = b.rho_plus.n();
    const Eigen::VectorXd& rp = b.rho_plus.samples;
    std::vector<char> in_d(n, 0);
    ContactSet cs;
    for (int i = 0; i < n; ++i) {
        const double th = static_cast<double>(i) / n;
        const int img = static_cast<int>((static_cast<long long>(p.ell) * i) % n);
        if (std::abs(p.lambda * rp[i] + evaluate(p.tau, th) - rp[img]) < tol) {
            in_d[i] = 1;
            cs.d_plus.push_back(i);
        }
    }
    // K_{m+1} = {theta in D+ : ell theta lies within one cell of K_m}
    std::vector<char> k = in_d;
    for (int step = 0; step < horizon; ++step) {
        std::vector<char> next(n, 0);
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            if (!k[i]) continue;
            const int img = static_cast<int>((static_cast<long long>(p.ell) * i) % n);
            next[i] = k[img] || k[(img + 1) % n] || k[(img + n - 1) % n];
            changed = changed || !next[i];
        }
        k.swap(next);
        if (!changed) break;
    }
    for (int i = 0; i < n; ++i)
        if (k[i]) cs.k_plus.push_back(i);
    return cs;
}

}  // namespace solenoid
