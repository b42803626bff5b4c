#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "zerocert/majorants.hpp"
#include "zerocert/random.hpp"

using namespace zerocert;

TEST_CASE("radial power values and charge") {
    const auto u = make_radial_power(2.0, 1.5);
    CHECK(u(Complex(3, 4)) == doctest::Approx(2.0 * std::pow(5.0, 1.5)));
    // Riesz mass of disk(0, R) is r u'(r) at R: sigma rho R^rho.
    CHECK(charge_on_region(u.riesz(), Region::disk(0, 2)) == doctest::Approx(2.0 * 1.5 * std::pow(2.0, 1.5)));
    CHECK_THROWS_AS(make_radial_power(1.0, -1.0), Error);
}

TEST_CASE("circle mean hook for radial powers matches trapezoid") {
    for (double rho : {0.5, 1.0, 2.0, 3.0, 2.5}) {
        // Circle through the origin: |c + c e^{i theta}| = 2c|cos(theta/2)|.
        const double through = std::pow(2.0, rho) * std::tgamma(0.5 * (rho + 1)) / (std::sqrt(kPi) * std::tgamma(0.5 * rho + 1));
        CHECK(radial_power_circle_mean(rho, 1.0, 1.0) == doctest::Approx(through).epsilon(1e-12));
        for (auto [c, t] : {std::pair{0.7, 0.3}, std::pair{0.3, 0.7}, std::pair{4.0, 3.9}}) {
            const double ref = oracle::circle_mean([rho](Complex z) { return std::pow(std::abs(z), rho); }, c, t, 200000);
            CAPTURE(rho);
            CAPTURE(c);
            CAPTURE(t);
            CHECK(radial_power_circle_mean(rho, c, t) == doctest::Approx(ref).epsilon(1e-9));
        }
    }
    CHECK(radial_power_circle_mean(2.0, 3.0, 4.0) == doctest::Approx(25.0));
    CHECK(radial_power_circle_mean(1.0, 0.0, 4.0) == doctest::Approx(4.0));
}

TEST_CASE("log abs poly roots, charge and evaluation") {
    // (z - 1)^2 (z + 2i)
    const std::vector<Complex> coeffs{Complex(0, 2), Complex(1, -4), Complex(-2, 2), 1.0};
    const auto roots = polynomial_roots(coeffs);
    REQUIRE(roots.size() == 2);
    int total = 0;
    for (const auto& r : roots) {
        total += r.multiplicity;
        if (r.multiplicity == 2) CHECK(std::abs(r.location - 1.0) < 1e-8);
        else CHECK(std::abs(r.location - Complex(0, -2)) < 1e-10);
    }
    CHECK(total == 3);
    const auto u = make_log_abs_poly(coeffs);
    const Complex z(0.4, -0.9);
    CHECK(u(z) == doctest::Approx(std::log(std::abs(std::pow(z - 1.0, 2) * (z + Complex(0, 2))))).epsilon(1e-10));
    for (const auto& r : roots) CHECK(u.eval(r.location).is_minus_infinity());
    CHECK(charge_on_region(u.riesz(), Region::disk(0, 1.5)) == doctest::Approx(2.0));
}

TEST_CASE("jensen formula hook for log abs poly") {
    const std::vector<ZeroPoint> roots{{Complex(0.3, 0.2), 1}, {Complex(-1.0, 0.5), 2}};
    const auto u = make_log_abs_poly_from_roots(Complex(2, 1), roots);
    for (auto [c, t] : {std::pair{Complex(0, 0), 0.5}, std::pair{Complex(1, 1), 2.0}, std::pair{Complex(-1, 0), 3.0}}) {
        const double ref = oracle::circle_mean(u.function(), c, t, 400000);
        CHECK(u.exact_circle_mean()(c, t) == doctest::Approx(ref).epsilon(1e-7));
    }
}

TEST_CASE("harmonic poly has zero charge and the mean value property") {
    const std::vector<Complex> coeffs{1.0, Complex(0, 2), 3.0};
    const auto u = make_harmonic_poly(coeffs);
    CHECK(u.riesz().empty());
    const Complex c(0.5, -0.5);
    CHECK(u.exact_circle_mean()(c, 2.0) == doctest::Approx(u(c)));
    CHECK(oracle::circle_mean(u.function(), c, 2.0) == doctest::Approx(u(c)).epsilon(1e-12));
}

TEST_CASE("log poly") {
    const auto u = make_log_poly();
    CHECK(u(Complex(1, 1)) == doctest::Approx(std::log(3.0)));
    // Mass inside |z| = R is R u'(R) = 2R^2 / (1 + R^2).
    CHECK(charge_on_region(u.riesz(), Region::disk(0, 1)) == doctest::Approx(1.0));
    CHECK(charge_on_region(u.riesz(), Region::disk(0, 3)) == doctest::Approx(1.8));
}

TEST_CASE("custom radial rejects non-convex profiles") {
    CHECK_NOTHROW(make_custom_radial("r^2", [](double r) { return r * r; }));
    CHECK_THROWS_AS(make_custom_radial("-r", [](double r) { return -r; }), Error);
}

TEST_CASE("sums and scaling carry charge and hooks") {
    const auto a = make_radial_power(1.0, 2.0);
    const auto b = make_harmonic_poly(std::vector<Complex>{0.0, 1.0});
    const auto s = (a + b).scaled(3.0);
    const Complex z(1, 2);
    CHECK(s(z) == doctest::Approx(3.0 * (5.0 + 1.0)));
    CHECK(s.exact_circle_mean()(z, 1.0) == doctest::Approx(3.0 * (5.0 + 1.0 + 1.0)));
    CHECK(charge_on_region(s.riesz(), Region::disk(0, 1)) == doctest::Approx(3.0 * 2.0));
}

TEST_CASE("d-subharmonic majorant evaluation") {
    const std::vector<ZeroPoint> r{{Complex(1, 0), 1}};
    DSubharmonicMajorant M(make_radial_power(1, 1), make_log_abs_poly_from_roots(1.0, r));
    CHECK(eval_M(M, 1.0).is_plus_infinity());
    CHECK(eval_M(M, Complex(0, 2)).value() == doctest::Approx(2.0 - std::log(std::sqrt(5.0))));
    CHECK(M.charge.lower().atoms().size() == 1);
}

TEST_CASE("sub-mean inequality for random models") {
    Rng rng(3);
    const std::vector<SubharmonicModel> models{make_radial_power(1.0, 0.5), make_log_poly(),
                                               make_log_abs_poly_from_roots(1.0, std::vector<ZeroPoint>{{0.2, 1}})};
    for (const auto& u : models) {
        for (int i = 0; i < 20; ++i) {
            const Complex z = rng.in_disk(0.0, 3.0);
            const double t = rng.uniform(0.1, 2.0);
            CHECK(u(z) <= oracle::circle_mean(u.function(), z, t, 4000) + 1e-9);
        }
    }
}
