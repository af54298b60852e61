#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace solenoid {

struct TrigTerm {
    int k;
    double cos_c;
    double sin_c;
};

// c + sum_k (a_k cos 2 pi k x + b_k sin 2 pi k x)
struct TrigPoly {
    double constant = 0.0;
    std::vector<TrigTerm> terms;

    int degree() const;
    double operator()(double theta) const;
    double derivative(double theta) const;
    double lipschitz_bound() const;   // 2 pi sum |k| (|a_k| + |b_k|)
    TrigPoly normalized() const;      // merged by k, sorted, zero terms dropped
};

// A real function on R/Z sampled at theta_i = i/N.
struct CircleFunction {
    Eigen::VectorXd samples;
    std::optional<TrigPoly> closed_form;
    double lip_bound = 0.0;

    int n() const { return static_cast<int>(samples.size()); }
};

constexpr int kDefaultGrid = 4096;

CircleFunction from_trig_poly(const TrigPoly& p, int n_samples = kDefaultGrid);
CircleFunction from_trig_poly(const std::vector<TrigTerm>& terms, double constant,
                              int n_samples = kDefaultGrid);
CircleFunction constant_function(double c, int n_samples = kDefaultGrid);

// Samples only. A negative lip_bound means "use the discrete estimate", which
// is exact for the piecewise-linear interpolant.
CircleFunction from_samples(Eigen::VectorXd samples, double lip_bound = -1.0);

double evaluate(const CircleFunction& f, double theta);

// max_i |f[i+1] - f[i]| * N
double discrete_lipschitz(const Eigen::VectorXd& samples);

struct FourierSpectrum {
    int k_max = 0;
    Eigen::VectorXcd nonneg;   // coefficient at k = 0..k_max

    std::complex<double> operator()(int k) const;
};

FourierSpectrum fourier(const CircleFunction& f, int k_max);

struct Extrema {
    double min;
    double max;
    double sup_norm;
};

Extrema extrema(const CircleFunction& f);
double sup_norm(const CircleFunction& f);

// Pointwise arithmetic; closed forms are combined when both sides have one.
CircleFunction add(const CircleFunction& a, const CircleFunction& b);
CircleFunction subtract(const CircleFunction& a, const CircleFunction& b);
CircleFunction scale(const CircleFunction& a, double s);
CircleFunction add_constant(const CircleFunction& a, double c);

// Re-sample on another grid (closed forms are evaluated exactly).
CircleFunction resample(const CircleFunction& f, int n_samples);

double mean(const CircleFunction& f);

// Circle distance on R/Z.
double circle_dist(double a, double b);
double wrap01(double theta);

}  // namespace solenoid
