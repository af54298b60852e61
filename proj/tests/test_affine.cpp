#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "solenoid/affine_dynamics.hpp"
#include "solenoid/cohomology.hpp"
#include "solenoid/error.hpp"

using namespace solenoid;

namespace {

CircleFunction cos1(int n = 4096) { return from_trig_poly({{1, 1.0, 0.0}}, 0.0, n); }

}  // namespace

TEST_CASE("apply")
{
    auto z = make_params(2, 0.5, constant_function(0.0, 64));
    auto a = apply(z, 0.3, 1.0);
    CHECK(a.first == doctest::Approx(0.6));
    CHECK(a.second == doctest::Approx(0.5));

    auto b = apply(make_params(2, 0.9, cos1()), 0.0, 0.0);
    CHECK(b.first == doctest::Approx(0.0));
    CHECK(b.second == doctest::Approx(1.0));

    auto c = apply(make_params(3, 0.5, cos1()), 1.0 / 3.0, 2.0);
    CHECK(c.first == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.second == doctest::Approx(0.5));
}

TEST_CASE("trapping radius and validation")
{
    CHECK(trapping_radius(0.5, constant_function(0.0, 16)) == 1.0);
    CHECK(trapping_radius(0.9, cos1()) == doctest::Approx(10.5));
    CHECK(trapping_radius(0.5, cos1()) == doctest::Approx(2.1));
    CHECK_THROWS_AS(make_params(1, 0.5, cos1()), InputError);
    CHECK_THROWS_AS(make_params(2, 1.0, cos1()), InputError);
    CHECK_THROWS_AS(make_params(2, 0.0, cos1()), InputError);
}

TEST_CASE("preimages")
{
    auto a = preimages(2, 0.0);
    REQUIRE(a.size() == 2);
    CHECK(a[0] == 0.0);
    CHECK(a[1] == doctest::Approx(0.5));
    auto b = preimages(2, 0.5);
    CHECK(b[0] == doctest::Approx(0.25));
    CHECK(b[1] == doctest::Approx(0.75));
    auto c = preimages(3, 0.6);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == doctest::Approx(0.2));
    CHECK(c[1] == doctest::Approx(1.6 / 3));
    CHECK(c[2] == doctest::Approx(2.6 / 3));
}

TEST_CASE("boundary fixed point: equator")
{
    for (double l : {0.2, 0.5, 0.9}) {
        auto b = boundary_fixed_point(make_params(2, l, constant_function(0.0, 256)), 256, 1e-9);
        CHECK(b.rho_plus.samples.cwiseAbs().maxCoeff() < 1e-9);
        CHECK(b.rho_minus.samples.cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("boundary fixed point: Jordan case")
{
    auto mu = cos1();
    auto p = make_params(2, 0.5, apply_L(2, 0.5, mu));
    auto b = boundary_fixed_point(p, 4096, 1e-6);
    CHECK(sup_norm(subtract(b.rho_plus, mu)) < 1e-5);
    CHECK(sup_norm(subtract(b.rho_minus, mu)) < 1e-5);
    CHECK(b.residual < 1e-6);
}

TEST_CASE("boundary fixed point: rho+(0) for cos at 0.9")
{
    auto b = boundary_fixed_point(make_params(2, 0.9, cos1()), 4096, 1e-6);
    CHECK(std::abs(b.rho_plus.samples[0] - 10.0) < 1e-4);
    CHECK(std::abs(b.rho_minus.samples[0] + 10.0) > 1.0);
}

TEST_CASE("t_lambda")
{
    auto z = make_params(2, 0.5, constant_function(0.0, 64));
    Itinerary zero{{0.3, 0.15, 0.075}};
    CHECK(t_lambda(z, zero).value == 0.0);
    CHECK(t_lambda(z, zero).tail_bound == 0.0);

    auto p = make_params(2, 0.9, cos1());
    Itinerary fixed{std::vector<double>(201, 0.0)};
    auto v = t_lambda(p, fixed);
    CHECK(v.value == doctest::Approx(10.0).epsilon(1e-8));
    CHECK(v.tail_bound < 1e-8);

    auto q = make_params(2, 0.5, cos1());
    Itinerary it{{0.0, 0.5, 0.25}};
    CHECK(t_lambda(q, it).value == doctest::Approx(-1.0));
}

TEST_CASE("dist_lambda")
{
    Itinerary a{{0.0, 0.5}};
    CHECK(dist_lambda(a, a, 0.5) == 0.0);
    CHECK(dist_lambda(Itinerary{{0.0}}, Itinerary{{0.5}}, 0.7) == doctest::Approx(0.5));
    Itinerary c{{0.0, 0.25}}, d{{0.5, 0.5}};
    CHECK(dist_lambda(c, d, 0.5) == doctest::Approx(0.625));
    CHECK_THROWS_AS(dist_lambda(a, Itinerary{{0.0}}, 0.5), InputError);
}

TEST_CASE("sample_attractor")
{
    auto z = make_params(2, 0.5, constant_function(0.0, 64));
    auto pc = sample_attractor(z, 200, 30, 1);
    CHECK(pc.t.cwiseAbs().maxCoeff() == 0.0);

    auto mu = cos1();
    auto p = make_params(2, 0.5, apply_L(2, 0.5, mu));
    const int depth = depth_for_resolution(p, 1e-9);
    auto pj = sample_attractor(p, 500, depth, 2);
    for (int i = 0; i < pj.t.size(); ++i) CHECK(std::abs(pj.t[i] - evaluate(mu, pj.theta[i])) < 1e-8);

    // same seed, same cloud
    auto again = sample_attractor(p, 500, depth, 2);
    CHECK(again.t == pj.t);
}

TEST_CASE("property: boundary operator contracts by lambda")
{
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g(0.0, 1.0);
    for (double l : {0.3, 0.7, 0.95}) {
        auto p = make_params(3, l, from_trig_poly({{1, 1.0, 0.3}, {2, 0.0, -0.4}}, 0.0, 512));
        auto pre = preimage_table(p, 512);
        for (int trial = 0; trial < 10; ++trial) {
            Eigen::VectorXd r1(512), r2(512);
            for (int i = 0; i < 512; ++i) {
                r1[i] = g(rng);
                r2[i] = g(rng);
            }
            const double d = (r1 - r2).cwiseAbs().maxCoeff();
            for (int sign : {1, -1}) {
                auto t1 = boundary_operator(p, pre, r1, sign), t2 = boundary_operator(p, pre, r2, sign);
                CHECK((t1 - t2).cwiseAbs().maxCoeff() <= l * d + 1e-12);
            }
        }
    }
}

TEST_CASE("property: forward invariance of the band")
{
    auto p = make_params(2, 0.9, cos1());
    auto b = boundary_fixed_point(p, 4096, 1e-7);
    auto pc = sample_attractor(p, 2000, depth_for_resolution(p, 1e-6), 5);
    const double slack = 1e-3;
    for (int i = 0; i < pc.t.size(); ++i) {
        auto [th, t] = apply(p, pc.theta[i], pc.t[i]);
        CHECK(t <= evaluate(b.rho_plus, th) + slack);
        CHECK(t >= evaluate(b.rho_minus, th) - slack);
    }
}

TEST_CASE("property: Lipschitz bound of boundaries")
{
    for (auto [ell, l] : {std::pair{2, 0.5}, {2, 0.9}, {3, 0.7}}) {
        auto tau = from_trig_poly({{1, 1.0, 0.0}, {3, 0.2, 0.1}}, 0.0, 4096);
        auto p = make_params(ell, l, tau);
        const double tol = 1e-7;
        auto b = boundary_fixed_point(p, 4096, tol);
        const double bound = tau.lip_bound / (ell - l) + 2 * tol * 4096;
        CHECK(discrete_lipschitz(b.rho_plus.samples) <= bound);
        CHECK(discrete_lipschitz(b.rho_minus.samples) <= bound);
    }
}

TEST_CASE("property: t_lambda is Lipschitz for dist_lambda")
{
    std::mt19937_64 rng(22);
    for (double l : {0.5, 0.9}) {
        auto p = make_params(2, l, from_trig_poly({{1, 1.0, 0.0}, {2, 0.0, 0.5}}, 0.0, 4096));
        const double L = p.tau.lip_bound / l;
        for (int trial = 0; trial < 300; ++trial) {
            auto a = random_itinerary(2, 60, rng), b = random_itinerary(2, 60, rng);
            auto ta = t_lambda(p, a), tb = t_lambda(p, b);
            CHECK(std::abs(ta.value - tb.value) <= L * dist_lambda(a, b, l) + ta.tail_bound + tb.tail_bound);
        }
    }
}
