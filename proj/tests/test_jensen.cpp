#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "zerocert/jensen.hpp"
#include "zerocert/random.hpp"

using namespace zerocert;

TEST_CASE("jensen measure construction") {
    const auto c = JensenMeasure::uniform_circle(Complex(1, 1), 2.0);
    CHECK(c.total_mass() == doctest::Approx(1.0));
    CHECK(c.support_radius() == doctest::Approx(2.0));
    const auto a = JensenMeasure::annulus(0.0, 1.0, 2.0);
    CHECK(charge_on_region(a.as_charge(), Region::disk(0, 1.5)) == doctest::Approx(0.5));
    const std::pair<double, JensenMeasure> parts[] = {{0.25, c}, {0.75, JensenMeasure::dirac(Complex(1, 1))}};
    CHECK(JensenMeasure::mixture(parts).total_mass() == doctest::Approx(1.0));
    const std::pair<double, JensenMeasure> bad[] = {{0.5, c}, {0.5, a}};
    CHECK_THROWS_AS(JensenMeasure::mixture(bad), Error);
}

TEST_CASE("log potential of a circle is ln+(t/|z|)") {
    const auto V = log_potential(JensenMeasure::uniform_circle(0.0, 3.0));
    for (Complex z : {Complex(0.5, 0), Complex(1, 2), Complex(2.9, 0.1), Complex(4, 0)}) {
        CHECK(V(z) == doctest::Approx(std::max(0.0, std::log(3.0 / std::abs(z)))).epsilon(1e-12));
    }
    CHECK(V.eval(0.0).is_plus_infinity());
    CHECK(V.pole_coefficient() == doctest::Approx(1.0));
    CHECK(V.support_radius() == doctest::Approx(3.0));
}

TEST_CASE("dirac potential vanishes") {
    const auto V = log_potential(JensenMeasure::dirac(0.0));
    CHECK(V.pole_coefficient() == doctest::Approx(0.0));
    CHECK(V(Complex(0.1, 0)) == doctest::Approx(0.0));
}

TEST_CASE("potential to measure inverts the log potential") {
    const std::pair<double, JensenMeasure> parts[] = {{0.3, JensenMeasure::uniform_circle(0.0, 3.0)},
                                                      {0.5, JensenMeasure::annulus(0.0, 1.0, 2.5)},
                                                      {0.2, JensenMeasure::dirac(0.0)}};
    const auto mu = JensenMeasure::mixture(parts);
    const auto V = log_potential(mu);
    const auto back = log_potential(potential_to_measure(V));
    Rng rng(9);
    for (int i = 0; i < 100; ++i) {
        const Complex z = rng.in_disk(0.0, 4.0);
        CHECK(back(z) == doctest::Approx(V(z)).epsilon(1e-10));
    }
    CHECK(potential_to_measure(V).total_mass() == doctest::Approx(1.0));
}

TEST_CASE("potential to measure rejects a pole coefficient above one") {
    RieszCharge off;
    off.add_shell(0.0, 1.0, 2.0);
    CHECK_THROWS_AS(potential_to_measure(JensenPotential(0.0, off, 2.0)), Error);
}

TEST_CASE("pole coefficient estimate") {
    const auto V = log_potential(JensenMeasure::annulus(0.0, 0.5, 1.0));
    CHECK(estimate_pole_coefficient([&](Complex z) { return V(z); }, 0.0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("poisson-jensen for random polynomials") {
    Rng rng(21);
    const auto mu = JensenMeasure::uniform_circle(0.0, 3.0);
    for (int i = 0; i < 10; ++i) {
        std::vector<ZeroPoint> roots;
        for (int k = 0; k < 4; ++k) roots.push_back({rng.in_disk(0.0, 2.0), 1});
        const auto u = make_log_abs_poly_from_roots(Complex(1.5, 0.5), roots);
        CHECK(poisson_jensen_check(u, mu, 1e-9) <= 1e-8);
    }
    const auto u = make_log_abs_poly_from_roots(1.0, std::vector<ZeroPoint>{{0.0, 1}});
    CHECK_THROWS_AS(poisson_jensen_check(u, mu, 1e-9), Error);
}

TEST_CASE("poisson-jensen with an annular measure and a radial power") {
    CHECK(poisson_jensen_check(make_radial_power(1.0, 2.0), JensenMeasure::annulus(Complex(0.5, 0), 0.5, 1.5), 1e-9) <=
          1e-7);
}

TEST_CASE("green function of the disk") {
    const Complex z0(0.3, -0.2);
    const auto g = green_disk(2.0, z0);
    for (Complex z : {Complex(1, 1), Complex(-1.5, 0.2), Complex(0.31, -0.2)}) {
        CHECK(g(z) == doctest::Approx(oracle::green_disk(2.0, z0, z)).epsilon(1e-13));
    }
    CHECK(std::abs(g(std::polar(2.0, 0.7))) < 1e-13);
}
