#include "solenoid/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Eigenvalues>

#include "solenoid/error.hpp"

namespace solenoid {

using cd = std::complex<double>;

namespace {

// tau^(ell^n k), n = 0, 1, ... while ell^n k <= k_max
struct OrbitPoly {
    int k;
    std::vector<cd> c;
};

std::vector<OrbitPoly> orbit_polys(int ell, const FourierSpectrum& s, int k_cap)
{
    std::vector<OrbitPoly> out;
    const int kc = std::min(k_cap, s.k_max);
    for (int k = 1; k <= kc; ++k) {
        if (k % ell == 0) continue;
        OrbitPoly op{k, {}};
        for (long long q = k; q <= s.k_max; q *= ell) op.c.push_back(s(static_cast<int>(q)));
        out.push_back(std::move(op));
    }
    return out;
}

cd horner(const std::vector<cd>& c, double x)
{
    cd v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

double indicator(const std::vector<OrbitPoly>& polys, double lambda)
{
    double g = 0.0;
    for (const auto& p : polys) g = std::max(g, std::abs(horner(p.c, lambda)));
    return 2.0 * g;
}

double poly_scale(const std::vector<OrbitPoly>& polys)
{
    double m = 0.0;
    for (const auto& p : polys)
        for (const auto& c : p.c) m = std::max(m, std::abs(c));
    return m;
}

int effective_k_max(const CircleFunction& f, int k_max)
{
    const int cap = f.n() / 2 - 1;
    int k = k_max < 0 ? default_k_max(f) : std::min(k_max, cap);
    if (f.closed_form) k = std::min(k, f.closed_form->degree());
    return std::max(k, 0);
}

FourierSpectrum zero_mean_spectrum(const CircleFunction& tau, int k_max)
{
    FourierSpectrum s = fourier(tau, effective_k_max(tau, k_max));
    s.nonneg[0] = 0.0;
    return s;
}

// Complex roots of sum c_n x^n via the companion matrix.
std::vector<cd> poly_roots(std::vector<cd> c)
{
    double m = 0.0;
    for (const auto& v : c) m = std::max(m, std::abs(v));
    while (!c.empty() && std::abs(c.back()) <= 1e-13 * m) c.pop_back();
    const int d = static_cast<int>(c.size()) - 1;
    if (d < 1) return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<cd> r(es.eigenvalues().data(), es.eigenvalues().data() + d);
    return r;
}

// A multiple root of a polynomial splits into a cluster under round-off;
// the cluster mean is well conditioned. Returns nullopt when some nonzero
// orbit polynomial has no root near x.
std::optional<double> polish_root(const std::vector<OrbitPoly>& polys, double x, double radius)
{
    const double scale = poly_scale(polys);
    double best_norm = -1.0;
    std::optional<double> best;
    for (const auto& p : polys) {
        double pn = 0.0;
        for (const auto& c : p.c) pn = std::max(pn, std::abs(c));
        if (pn <= 1e-12 * scale) continue;
        cd sum = 0.0;
        int cnt = 0;
        for (const cd& r : poly_roots(p.c))
            if (std::abs(r - x) < radius) {
                sum += r;
                ++cnt;
            }
        if (cnt == 0) return std::nullopt;
        if (pn > best_norm) {
            best_norm = pn;
            best = (sum / static_cast<double>(cnt)).real();
        }
    }
    return best;
}

template <class G>
double golden_min(G g, double a, double b, int iters = 80)
{
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    double gc = g(c), gd = g(d);
    for (int i = 0; i < iters && b - a > 1e-15; ++i) {
        if (gc < gd) {
            b = d; d = c; gd = gc;
            c = b - r * (b - a); gc = g(c);
        } else {
            a = c; c = d; gc = gd;
            d = a + r * (b - a); gd = g(d);
        }
    }
    return gc < gd ? c : d;
}

CircleFunction sample_coefficients(const std::vector<std::pair<int, cd>>& coef, double constant, int n)
{
    TrigPoly p;
    p.constant = constant;
    for (const auto& [q, b] : coef)
        if (b != cd(0.0)) p.terms.push_back({q, 2.0 * b.real(), -2.0 * b.imag()});
    return from_trig_poly(p, n);
}

}  // namespace

int default_k_max(const CircleFunction& f)
{
    const int cap = f.n() / 2 - 1;
    if (f.closed_form) return std::max(0, std::min(cap, f.closed_form->degree()));
    return std::min(cap, 4096);
}

CircleFunction apply_L(int ell, double lambda, const CircleFunction& mu)
{
    const int n = mu.n();
    if (mu.closed_form && 2 * ell * mu.closed_form->degree() + 2 <= n) {
        TrigPoly p;
        p.constant = (1.0 - lambda) * mu.closed_form->constant;
        for (const auto& t : mu.closed_form->terms) {
            p.terms.push_back({ell * t.k, t.cos_c, t.sin_c});
            p.terms.push_back({t.k, -lambda * t.cos_c, -lambda * t.sin_c});
        }
        CircleFunction out = from_trig_poly(p, n);
        out.lip_bound = std::min(out.lip_bound, (ell + lambda) * mu.lip_bound);
        return out;
    }
    // grid points map to grid points under m_ell
    Eigen::VectorXd s(n);
    for (int i = 0; i < n; ++i)
        s[i] = mu.samples[static_cast<int>((static_cast<long long>(ell) * i) % n)] - lambda * mu.samples[i];
    return from_samples(std::move(s), (ell + lambda) * mu.lip_bound);
}

CircleFunction apply_chain(int ell, const std::vector<double>& factors, const CircleFunction& mu)
{
    CircleFunction f = mu;
    for (double l : factors) f = apply_L(ell, l, f);
    return f;
}

SolveResult solve_L(int ell, double lambda, const CircleFunction& tau, int k_max, double tol)
{
    if (!(lambda > 0.0 && lambda <= 1.0)) throw InputError("lambda must lie in (0,1]");
    SolveResult res;
    const int K = effective_k_max(tau, k_max);
    const FourierSpectrum s = fourier(tau, K);
    const double mean0 = s(0).real();
    if (lambda == 1.0 && std::abs(mean0) >= tol) {
        res.reason = "nonzero mean at lambda = 1";
        res.residual = std::abs(mean0);
        return res;
    }
    const double b0 = lambda < 1.0 ? mean0 / (1.0 - lambda) : 0.0;
    const double lip = std::max(tau.lip_bound, 1e-300);

    std::vector<std::pair<int, cd>> coef;
    for (int k = 1; k <= K; ++k) {
        if (k % ell == 0) continue;
        std::vector<cd> c;
        std::vector<long long> q;
        for (long long v = k; v <= K; v *= ell) {
            q.push_back(v);
            c.push_back(s(static_cast<int>(v)));
        }
        const int m = static_cast<int>(c.size());
        cd partial = 0.0;
        double w = 1.0;
        for (int n = 0; n < m && !res.diverged; ++n) {
            partial += w * c[n];
            w *= lambda;
            const double bf = std::abs(partial) / w;   // |b(ell^n k)|
            if (bf > 2.0 * lip / (4.0 * static_cast<double>(q[n])) &&
                bf > 1e-9 * std::max(1.0, lip)) {
                res.diverged = true;
                res.reason = "coefficient ceiling exceeded at q = " + std::to_string(q[n]);
            }
        }
        cd tail = 0.0;
        for (int n = m - 1; n >= 0; --n) {
            coef.emplace_back(static_cast<int>(q[n]), tail);
            tail = lambda * tail + c[n];
        }
    }
    if (res.diverged) {
        res.residual = std::numeric_limits<double>::infinity();
        return res;
    }
    CircleFunction mu = sample_coefficients(coef, b0, tau.n());
    const int n = tau.n();
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = mu.samples[static_cast<int>((static_cast<long long>(ell) * i) % n)] -
                         lambda * mu.samples[i] - tau.samples[i];
        r = std::max(r, std::abs(v));
    }
    res.residual = r;
    if (r < tol)
        res.mu = std::move(mu);
    else
        res.reason = "residual above tolerance";
    return res;
}

DkValue dk_functional(int ell, const CircleFunction& tau, double lambda, int k, int k_max)
{
    if (k < 1 || k % ell == 0) throw InputError("D_k needs k >= 1 not divisible by ell");
    const int K = effective_k_max(tau, k_max);
    DkValue d;
    if (k > K) {
        d.truncation_n = -1;
    } else {
        const FourierSpectrum s = fourier(tau, K);
        double w = 1.0;
        int n = 0;
        for (long long q = k; q <= K; q *= ell, ++n) {
            d.value += w * 2.0 * s(static_cast<int>(q)).real();
            w *= lambda;
        }
        d.truncation_n = n - 1;
    }
    const bool exact = tau.closed_form && tau.closed_form->degree() <= K;
    if (!exact) {
        const int n1 = d.truncation_n + 1;
        const double lip_tail = tau.lip_bound / (2.0 * k) * std::pow(lambda / ell, n1) / (1.0 - lambda / ell);
        double geo = std::numeric_limits<double>::infinity();
        if (lambda < 1.0) {
            const FourierSpectrum s = fourier(tau, std::max(K, 1));
            double sup = 0.0;
            for (int q = 1; q <= s.k_max; ++q) sup = std::max(sup, std::abs(s(q)));
            geo = std::pow(lambda, n1) * 2.0 * sup / (1.0 - lambda);
        }
        d.truncation_error = std::min(lip_tail, geo);
    }
    return d;
}

DkTable dk_table(int ell, const CircleFunction& tau, double lambda, int k_cap, int k_max)
{
    DkTable t;
    t.lambda = lambda;
    const int K = effective_k_max(tau, k_max);
    for (int k = 1; k <= std::min(k_cap, std::max(K, 1)); ++k) {
        if (k % ell == 0) continue;
        const DkValue d = dk_functional(ell, tau, lambda, k, k_max);
        t.values[k] = d.value;
        t.truncation_n = std::max(t.truncation_n, d.truncation_n);
        t.truncation_error = std::max(t.truncation_error, d.truncation_error);
    }
    return t;
}

double jordan_indicator(int ell, const CircleFunction& tau, double lambda, int k_cap, int k_max)
{
    return indicator(orbit_polys(ell, zero_mean_spectrum(tau, k_max), k_cap), lambda);
}

CircleFunction canonical_representative(int ell, const CircleFunction& tau, double lambda, int k_max)
{
    const FourierSpectrum s = fourier(tau, effective_k_max(tau, k_max));
    std::vector<std::pair<int, cd>> coef;
    for (const auto& p : orbit_polys(ell, s, s.k_max)) coef.emplace_back(p.k, horner(p.c, lambda));
    return sample_coefficients(coef, 0.0, tau.n());
}

OrderBound coboundary_order_bound(int ell, const CircleFunction& tau, int k_max)
{
    OrderBound ob;
    const FourierSpectrum s = zero_mean_spectrum(tau, k_max);
    for (int k = 1; k <= s.k_max; ++k) {
        if (k % ell == 0) continue;
        int p = 0;
        for (long long q = k; q <= s.k_max; q *= ell, ++p) {
            const double a = std::abs(s(static_cast<int>(q)));
            if (a <= 1e-10) continue;
            const double next = q * ell <= s.k_max ? std::abs(s(static_cast<int>(q * ell))) : 0.0;
            const double f = 4.0 * k * std::pow(static_cast<double>(ell), p + 1);
            ob.unbounded = false;
            ob.k = k;
            ob.p = p;
            ob.raw = (tau.lip_bound + f * next) / (f * a);
            ob.value = static_cast<long>(std::floor(ob.raw));
            return ob;
        }
    }
    return ob;
}

namespace {

int peel_count(int ell, double lambda, CircleFunction cur, const ScanOptions& opt, int cap,
               std::vector<CircleFunction>* chain = nullptr)
{
    int m = 0;
    while (m < cap) {
        SolveResult r = solve_L(ell, lambda, cur, opt.k_max, opt.tol);
        if (!r.solvable()) break;
        cur = std::move(*r.mu);
        if (chain) chain->push_back(cur);
        ++m;
        // a zero residual is in every image; stop rather than loop to the cap
        if (cur.samples.lpNorm<Eigen::Infinity>() == 0.0) break;
    }
    return m;
}

int multiplicity_cap(int ell, const CircleFunction& tau)
{
    const OrderBound ob = coboundary_order_bound(ell, tau);
    return ob.unbounded ? 8 : static_cast<int>(std::min<long>(ob.value, 64)) + 8;
}

}  // namespace

std::vector<JordanRoot> scan_jordan(int ell, const CircleFunction& tau, const ScanOptions& opt)
{
    std::vector<JordanRoot> out;
    const CircleFunction tau0 = add_constant(tau, -mean(tau));
    const FourierSpectrum s = zero_mean_spectrum(tau, opt.k_max);
    const auto polys = orbit_polys(ell, s, opt.k_cap);
    const double scale = poly_scale(polys);
    if (scale <= 1e-14) return out;   // numerically constant: nothing to scan
    const int cap = multiplicity_cap(ell, tau0);

    const LambdaGrid& gr = opt.grid;
    const int np = std::max(gr.points, 2);
    std::vector<double> lam(np), g(np);
    for (int i = 0; i < np; ++i) {
        lam[i] = gr.lo + (gr.hi - gr.lo) * i / (np - 1);
        g[i] = indicator(polys, lam[i]);
    }
    auto G = [&](double x) { return indicator(polys, x); };
    std::vector<double> cands;
    for (int i = 0; i < np; ++i) {
        const bool left = i == 0 || g[i] <= g[i - 1];
        const bool right = i == np - 1 || g[i] <= g[i + 1];
        if (!(left && right)) continue;
        const double a = i == 0 ? std::max(1e-6, 2 * lam[0] - lam[1]) : lam[i - 1];
        const double b = i == np - 1 ? (gr.include_one ? 1.0 : lam[i]) : lam[i + 1];
        double x = golden_min(G, a, b);
        if (G(x) > opt.tol) continue;
        if (auto pol = polish_root(polys, x, 1e-3)) {
            if (*pol > 0.0 && *pol <= 1.0 + 1e-9 && G(std::min(*pol, 1.0)) <= opt.tol) x = std::min(*pol, 1.0);
        } else {
            continue;
        }
        if (std::abs(x - 1.0) < 1e-9) x = 1.0;
        cands.push_back(x);
    }
    if (gr.include_one && G(1.0) <= opt.tol) cands.push_back(1.0);
    std::sort(cands.begin(), cands.end());
    std::vector<double> uniq;
    for (double x : cands)
        if (uniq.empty() || x - uniq.back() > 1e-6) uniq.push_back(x);
        else if (x == 1.0) uniq.back() = 1.0;

    for (double x : uniq) {
        if (x == 1.0 && !gr.include_one) continue;
        const int m = peel_count(ell, x, tau0, opt, cap);
        if (m > 0) out.push_back({x, m, G(x)});
    }
    return out;
}

Decomposition decompose(int ell, const CircleFunction& tau, const ScanOptions& opt)
{
    Decomposition d;
    const double c = mean(tau);
    const FourierSpectrum s = zero_mean_spectrum(tau, opt.k_max);
    double amp = 0.0;
    for (int k = 1; k <= s.k_max; ++k) amp = std::max(amp, std::abs(s(k)));
    if (amp <= 1e-14 * std::max(1.0, std::abs(c))) {
        d.residual = tau;
        return d;
    }
    CircleFunction cur = add_constant(tau, -c);
    auto roots = scan_jordan(ell, cur, opt);
    // lambda = 1 is only a factor when tau itself has zero mean
    if (std::abs(c) >= opt.tol)
        roots.erase(std::remove_if(roots.begin(), roots.end(), [](const JordanRoot& r) { return r.lambda == 1.0; }),
                    roots.end());
    std::sort(roots.begin(), roots.end(), [](const JordanRoot& a, const JordanRoot& b) { return a.lambda > b.lambda; });
    for (const auto& r : roots)
        for (int i = 0; i < r.multiplicity; ++i) {
            SolveResult sr = solve_L(ell, r.lambda, cur, opt.k_max, opt.tol);
            if (!sr.solvable()) break;
            cur = std::move(*sr.mu);
            d.factors.push_back(r.lambda);
        }
    bool has_one = false;
    double prod = 1.0;
    for (double f : d.factors) {
        has_one = has_one || f == 1.0;
        prod *= 1.0 - f;
    }
    if (!has_one && c != 0.0) cur = add_constant(cur, c / prod);
    d.residual = cur;
    d.residual_irreducible = scan_jordan(ell, cur, opt).empty();
    d.reconstruction_error = subtract(apply_chain(ell, d.factors, cur), tau).samples.lpNorm<Eigen::Infinity>();
    return d;
}

}  // namespace solenoid
