#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "solenoid/cohomology.hpp"
#include "solenoid/error.hpp"
#include "solenoid/periodic_orbits.hpp"

using namespace solenoid;

namespace {

CircleFunction cos1(int n = 4096) { return from_trig_poly({{1, 1.0, 0.0}}, 0.0, n); }

bool has_orbit(const std::vector<PeriodicOrbit>& orbits, int period, std::uint64_t j)
{
    return std::any_of(orbits.begin(), orbits.end(),
                       [&](const PeriodicOrbit& o) { return o.period == period && o.j == j; });
}

}  // namespace

TEST_CASE("enumeration")
{
    auto one = periodic_orbits(2, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].points == std::vector<double>{0.0});

    auto two = periodic_orbits(2, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[1].period == 2);
    CHECK(two[1].points[0] == doctest::Approx(1.0 / 3));
    CHECK(two[1].points[1] == doctest::Approx(2.0 / 3));

    auto four = periodic_orbits(2, 4);
    CHECK(has_orbit(four, 4, 1));
    for (const auto& o : four)
        if (o.period == 4 && o.j == 1) {
            CHECK(o.denom == 15);
            CHECK(o.numerators == std::vector<std::uint64_t>{1, 2, 4, 8});
        }

    CHECK_THROWS_AS(periodic_orbits(2, 60), InputError);
    CHECK_THROWS_AS(periodic_orbits(1, 3), InputError);
}

TEST_CASE("birkhoff extremes")
{
    auto be = birkhoff_extremes(cos1(), 2, 2);
    REQUIRE(be.best_positive);
    REQUIRE(be.best_negative);
    CHECK(be.best_positive->period == 1);
    CHECK(*be.best_positive->birkhoff_sum == doctest::Approx(1.0));
    CHECK(be.best_negative->period == 2);
    CHECK(std::abs(*be.best_negative->birkhoff_sum + 1.0) < 1e-12);

    auto z = birkhoff_extremes(constant_function(0.0, 64), 2, 6);
    CHECK_FALSE(z.best_positive);
    CHECK_FALSE(z.best_negative);

    auto cob = birkhoff_extremes(apply_L(2, 1.0, from_trig_poly({{1, 0.4, -0.3}, {2, 0.1, 0.7}}, 0.0, 4096)), 2, 6);
    CHECK_FALSE(cob.best_positive);
    CHECK_FALSE(cob.best_negative);
}

TEST_CASE("coboundary witness")
{
    auto v = coboundary_witness(cos1(), 2, 6);
    CHECK(v.not_coboundary);
    REQUIRE(v.positive);
    REQUIRE(v.negative);
    CHECK(v.positive->points == std::vector<double>{0.0});
    CHECK(v.negative->j == 1);
    CHECK(v.negative->period == 2);

    CHECK_FALSE(coboundary_witness(constant_function(0.0, 64), 2, 6).not_coboundary);
    CHECK_FALSE(coboundary_witness(apply_L(2, 1.0, cos1()), 2, 6).not_coboundary);

    // a nonzero constant has all sums of one sign; it is tested after mean removal
    auto c = coboundary_witness(constant_function(2.0, 64), 2, 4);
    CHECK_FALSE(c.not_coboundary);
    CHECK(c.mean_subtracted);
}

TEST_CASE("property: orbit count")
{
    for (int ell : {2, 3, 5}) {
        const int pmax = ell == 2 ? 12 : (ell == 3 ? 7 : 5);
        auto orbits = periodic_orbits(ell, pmax);
        for (int p = 1; p <= pmax; ++p) {
            std::uint64_t pts = 0;
            for (const auto& o : orbits)
                if (p % o.period == 0) pts += o.period;
            std::uint64_t want = 1;
            for (int i = 0; i < p; ++i) want *= ell;
            CHECK(pts == want - 1);
        }
    }
}

TEST_CASE("property: exact rational orbits")
{
    for (const auto& o : periodic_orbits(3, 6)) {
        REQUIRE(o.numerators.size() == static_cast<std::size_t>(o.period));
        for (int i = 0; i < o.period; ++i) {
            const std::uint64_t next = o.numerators[(i + 1) % o.period];
            CHECK(next == (o.numerators[i] * 3) % o.denom);
            CHECK(o.points[i] == static_cast<double>(o.numerators[i]) / static_cast<double>(o.denom));
        }
    }
}

TEST_CASE("property: coboundary sums telescope")
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        TrigPoly p;
        for (int k = 1; k <= 5; ++k) p.terms.push_back({k, u(rng), u(rng)});
        auto tau = apply_L(2, 1.0, from_trig_poly(p, 4096));
        auto sampled = from_samples(tau.samples);
        for (const auto& o : periodic_orbits(2, 8)) {
            CHECK(std::abs(birkhoff_sum(tau, o)) < 1e-11);
            CHECK(std::abs(birkhoff_sum(sampled, o)) < o.period * 2.0 * sampled.lip_bound / sampled.n());
        }
    }
}
