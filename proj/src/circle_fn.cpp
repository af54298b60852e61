#include "solenoid/circle_fn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "solenoid/error.hpp"

namespace solenoid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_grid(int n)
{
    if (n < 2) throw InputError("grid must have at least 2 samples");
}

// Golden-section search for the maximum of g on [a, b].
template <class G>
double golden_max(G g, double a, double b, int iters = 60)
{
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    double gc = g(c), gd = g(d);
    for (int i = 0; i < iters; ++i) {
        if (gc > gd) {
            b = d; d = c; gd = gc;
            c = b - r * (b - a); gc = g(c);
        } else {
            a = c; c = d; gc = gd;
            d = a + r * (b - a); gd = g(d);
        }
    }
    return std::max({gc, gd, g(a), g(b)});
}

}  // namespace

int TrigPoly::degree() const
{
    int d = 0;
    for (const auto& t : terms)
        if (t.cos_c != 0.0 || t.sin_c != 0.0) d = std::max(d, std::abs(t.k));
    return d;
}

double TrigPoly::operator()(double theta) const
{
    double v = constant;
    for (const auto& t : terms) {
        const double x = kTwoPi * t.k * theta;
        v += t.cos_c * std::cos(x) + t.sin_c * std::sin(x);
    }
    return v;
}

double TrigPoly::derivative(double theta) const
{
    double v = 0.0;
    for (const auto& t : terms) {
        const double w = kTwoPi * t.k;
        v += w * (-t.cos_c * std::sin(w * theta) + t.sin_c * std::cos(w * theta));
    }
    return v;
}

double TrigPoly::lipschitz_bound() const
{
    double s = 0.0;
    for (const auto& t : terms) s += std::abs(t.k) * (std::abs(t.cos_c) + std::abs(t.sin_c));
    return kTwoPi * s;
}

TrigPoly TrigPoly::normalized() const
{
    std::map<int, std::pair<double, double>> acc;
    for (const auto& t : terms) {
        if (t.k < 0) throw InputError("trig terms need k >= 0");
        auto& [a, b] = acc[t.k];
        a += t.cos_c;
        b += t.sin_c;
    }
    TrigPoly out;
    out.constant = constant;
    for (const auto& [k, ab] : acc) {
        if (k == 0) {
            out.constant += ab.first;
            continue;
        }
        if (ab.first != 0.0 || ab.second != 0.0) out.terms.push_back({k, ab.first, ab.second});
    }
    return out;
}

CircleFunction from_trig_poly(const TrigPoly& p, int n_samples)
{
    require_grid(n_samples);
    TrigPoly q = p.normalized();
    if (n_samples < 2 * q.degree() + 2)
        throw InputError("grid of " + std::to_string(n_samples) +
                         " samples is below the Nyquist floor for degree " + std::to_string(q.degree()));
    CircleFunction f;
    if (static_cast<double>(q.terms.size()) * n_samples > 4e6) {
        // synthesize by inverse FFT; exact up to round-off
        std::vector<std::complex<double>> spec(n_samples), out;
        spec[0] = q.constant * n_samples;
        for (const auto& t : q.terms) {
            const std::complex<double> c(t.cos_c, -t.sin_c);
            spec[t.k] += c * (0.5 * n_samples);
            spec[n_samples - t.k] += std::conj(c) * (0.5 * n_samples);
        }
        Eigen::FFT<double> fft;
        fft.inv(out, spec);
        f.samples.resize(n_samples);
        for (int i = 0; i < n_samples; ++i) f.samples[i] = out[i].real();
    } else {
        f.samples.resize(n_samples);
        for (int i = 0; i < n_samples; ++i) f.samples[i] = q(static_cast<double>(i) / n_samples);
    }
    f.lip_bound = q.lipschitz_bound();
    f.closed_form = std::move(q);
    return f;
}

CircleFunction from_trig_poly(const std::vector<TrigTerm>& terms, double constant, int n_samples)
{
    return from_trig_poly(TrigPoly{constant, terms}, n_samples);
}

CircleFunction constant_function(double c, int n_samples)
{
    return from_trig_poly(TrigPoly{c, {}}, n_samples);
}

double discrete_lipschitz(const Eigen::VectorXd& s)
{
    const Eigen::Index n = s.size();
    double m = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) m = std::max(m, std::abs(s[(i + 1) % n] - s[i]));
    return m * static_cast<double>(n);
}

CircleFunction from_samples(Eigen::VectorXd samples, double lip_bound)
{
    require_grid(static_cast<int>(samples.size()));
    if (!samples.allFinite()) throw InputError("samples contain non-finite values");
    CircleFunction f;
    const double d = discrete_lipschitz(samples);
    f.samples = std::move(samples);
    f.lip_bound = lip_bound < 0.0 ? d : std::max(lip_bound, d);
    return f;
}

double wrap01(double theta)
{
    double x = theta - std::floor(theta);
    return x >= 1.0 ? 0.0 : x;
}

double circle_dist(double a, double b)
{
    const double d = wrap01(a - b);
    return std::min(d, 1.0 - d);
}

double evaluate(const CircleFunction& f, double theta)
{
    if (f.closed_form) return (*f.closed_form)(theta);
    const int n = f.n();
    const double x = wrap01(theta) * n;
    int i = static_cast<int>(std::floor(x));
    const double w = x - i;
    i %= n;
    return (1.0 - w) * f.samples[i] + w * f.samples[(i + 1) % n];
}

std::complex<double> FourierSpectrum::operator()(int k) const
{
    const int a = std::abs(k);
    if (a > k_max) return {0.0, 0.0};
    return k >= 0 ? nonneg[a] : std::conj(nonneg[a]);
}

FourierSpectrum fourier(const CircleFunction& f, int k_max)
{
    if (k_max < 0 || 2 * k_max >= f.n())
        throw InputError("k_max must satisfy k_max < N/2");
    FourierSpectrum s;
    s.k_max = k_max;
    s.nonneg = Eigen::VectorXcd::Zero(k_max + 1);
    if (f.closed_form) {
        s.nonneg[0] = f.closed_form->constant;
        for (const auto& t : f.closed_form->terms)
            if (t.k <= k_max) s.nonneg[t.k] += std::complex<double>(t.cos_c, -t.sin_c) / 2.0;
        return s;
    }
    Eigen::FFT<double> fft;
    std::vector<double> in(f.samples.data(), f.samples.data() + f.n());
    std::vector<std::complex<double>> out;
    fft.fwd(out, in);
    for (int k = 0; k <= k_max; ++k) s.nonneg[k] = out[k] / static_cast<double>(f.n());
    s.nonneg[0] = s.nonneg[0].real();
    return s;
}

Extrema extrema(const CircleFunction& f)
{
    const int n = f.n();
    double lo = f.samples.minCoeff(), hi = f.samples.maxCoeff();
    // For samples the interpolant attains its extremes at grid points.
    if (f.closed_form) {
        const TrigPoly& p = *f.closed_form;
        const double slack = f.lip_bound / n;
        for (int i = 0; i < n; ++i) {
            const double v = f.samples[i];
            const double l = f.samples[(i + n - 1) % n], r = f.samples[(i + 1) % n];
            const double a = (i - 1.0) / n, b = (i + 1.0) / n;
            if (v >= l && v >= r && v > hi - slack)
                hi = std::max(hi, golden_max([&](double x) { return p(x); }, a, b));
            if (v <= l && v <= r && v < lo + slack)
                lo = std::min(lo, -golden_max([&](double x) { return -p(x); }, a, b));
        }
    }
    return {lo, hi, std::max(std::abs(lo), std::abs(hi))};
}

double sup_norm(const CircleFunction& f) { return extrema(f).sup_norm; }

namespace {

CircleFunction combine(const CircleFunction& a, const CircleFunction& b, double sb)
{
    if (a.n() != b.n()) throw InputError("grid sizes differ");
    if (a.closed_form && b.closed_form) {
        TrigPoly p = *a.closed_form;
        p.constant += sb * b.closed_form->constant;
        for (auto t : b.closed_form->terms) p.terms.push_back({t.k, sb * t.cos_c, sb * t.sin_c});
        return from_trig_poly(p, a.n());
    }
    return from_samples(a.samples + sb * b.samples, a.lip_bound + std::abs(sb) * b.lip_bound);
}

}  // namespace

CircleFunction add(const CircleFunction& a, const CircleFunction& b) { return combine(a, b, 1.0); }
CircleFunction subtract(const CircleFunction& a, const CircleFunction& b) { return combine(a, b, -1.0); }

CircleFunction scale(const CircleFunction& a, double s)
{
    if (a.closed_form) {
        TrigPoly p = *a.closed_form;
        p.constant *= s;
        for (auto& t : p.terms) { t.cos_c *= s; t.sin_c *= s; }
        return from_trig_poly(p, a.n());
    }
    return from_samples(a.samples * s, a.lip_bound * std::abs(s));
}

CircleFunction add_constant(const CircleFunction& a, double c)
{
    if (a.closed_form) {
        TrigPoly p = *a.closed_form;
        p.constant += c;
        return from_trig_poly(p, a.n());
    }
    return from_samples(a.samples.array() + c, a.lip_bound);
}

CircleFunction resample(const CircleFunction& f, int n_samples)
{
    if (f.closed_form) return from_trig_poly(*f.closed_form, n_samples);
    require_grid(n_samples);
    Eigen::VectorXd s(n_samples);
    for (int i = 0; i < n_samples; ++i) s[i] = evaluate(f, static_cast<double>(i) / n_samples);
    return from_samples(std::move(s), f.lip_bound);
}

double mean(const CircleFunction& f)
{
    if (f.closed_form) return f.closed_form->constant;
    return f.samples.mean();
}

}  // namespace solenoid
