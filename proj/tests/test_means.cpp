#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "zerocert/means.hpp"
#include "zerocert/random.hpp"

using namespace zerocert;

namespace {

double abs2(Complex z) { return std::norm(z); }

} // namespace

TEST_CASE("radius profiles") {
    const auto p = RadiusProfile::plane_power(2.0);
    CHECK(radius(p, Complex(3, 4)) == doctest::Approx(1.0 / 36.0));
    const auto d = RadiusProfile::disk_fraction(0.25, 2.0);
    CHECK(radius(d, 1.0) == doctest::Approx(0.25));
    CHECK_THROWS_AS(radius(d, 3.0), Error);
    CHECK_THROWS_AS(RadiusProfile::disk_fraction(1.5, 1.0), Error);
}

TEST_CASE("hat radius") {
    const auto p = RadiusProfile::plane_power(1.0);
    const Complex z(2, 0);
    const auto h = hat_radius(p, z);
    // Sup over |w - z| = r(z) of |w - z| + r(w) is attained toward the origin.
    const double r = 1.0 / 3.0;
    CHECK(h.value == doctest::Approx(r + 1.0 / (1.0 + 2.0 - r)).epsilon(1e-6));
    CHECK(h.upper_bound >= h.value);
    CHECK_THROWS_AS(hat_radius(RadiusProfile::disk_fraction(0.9, 1.0), Complex(0.5, 0)), Error);
}

TEST_CASE("circle and disk means of |z|^2 are exact") {
    const Complex c(1, -2);
    CHECK(circle_mean(abs2, c, 0.5, 1e-12) == doctest::Approx(5.0 + 0.25).epsilon(1e-13));
    CHECK(disk_mean(abs2, c, 0.5, 1e-12) == doctest::Approx(5.0 + 0.125).epsilon(1e-12));
}

TEST_CASE("means with a log singularity on the circle") {
    // Circle through the singularity: Jensen gives ln max(|c|, t) = ln 1.
    const Complex origin(0, 0);
    auto f = [](Complex z) { return std::log(std::abs(z)); };
    CHECK(circle_mean(f, Complex(1, 0), 1.0, 1e-10, std::span<const Complex>(&origin, 1)) ==
          doctest::Approx(0.0).epsilon(1e-9));
    // Disk mean of ln|z| over disk(0, t) is ln t - 1/2.
    CHECK(disk_mean(f, 0.0, 2.0, 1e-10, std::span<const Complex>(&origin, 1)) ==
          doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-9));
}

TEST_CASE("model overloads agree with the generic routine") {
    const auto u = make_radial_power(1.0, 1.0);
    const Complex z(0.4, 0.3);
    const Complex origin(0, 0);
    for (double t : {0.2, 0.5, 1.0}) {
        const double generic = circle_mean(u.function(), z, t, 1e-11, std::span<const Complex>(&origin, 1));
        CHECK(circle_mean(u, z, t, 1e-11) == doctest::Approx(generic).epsilon(1e-9));
        CHECK(disk_mean(u, z, t, 1e-10) == doctest::Approx(oracle::disk_mean(u.function(), z, t, 800, 800)).epsilon(1e-5));
    }
    CHECK_THROWS_AS(circle_mean(u, z, -1.0, 1e-10), Error);
}

TEST_CASE("mollified mean") {
    const auto k = MollifierKernel::polynomial_bump();
    CHECK(k.mass() == doctest::Approx(1.0).epsilon(1e-12));
    // Radial kernel: harmonic functions are reproduced.
    auto h = [](Complex z) { return (z * z).real() + 3.0 * z.imag(); };
    const Complex z(1, 1);
    CHECK(mollified_mean(h, z, 0.7, k, 1e-11) == doctest::Approx(h(z)).epsilon(1e-10));
    // integral |w|^2 k = 8 integral_0^1 s^3 (1 - s^2)^3 ds = 1/5.
    CHECK(mollified_mean(abs2, z, 0.7, k, 1e-11) == doctest::Approx(2.0 + 0.49 / 5.0).epsilon(1e-10));
    MollifierKernel bad{[](double) { return 1.0; }};
    CHECK_THROWS_AS(mollified_mean(abs2, z, 0.7, bad, 1e-11), Error);
}

TEST_CASE("mean chain on the plane holds for standard models") {
    Rng rng(5);
    std::vector<Complex> pts;
    for (int i = 0; i < 30; ++i) pts.push_back(rng.in_disk(0.0, 5.0));
    const auto rp = RadiusProfile::plane_power(1.0);
    for (const auto& u : {make_radial_power(1.0, 2.0), make_log_poly(), make_radial_power(1.0, 0.5)}) {
        const auto rep = check_mean_chain(u, rp, pts);
        CAPTURE(u.name());
        CHECK(rep.ok());
        CHECK(rep.skipped == 0);
        for (const auto& s : rep.samples) {
            CHECK(s.value <= s.disk_r + 1e-8);
            CHECK(s.disk_r <= s.circle_r + 1e-8);
        }
    }
}

TEST_CASE("mean chain on a disk skips points whose hat disk leaves the domain") {
    const auto rp = RadiusProfile::disk_fraction(0.5, 1.0);
    const std::vector<Complex> pts{0.0, Complex(0.95, 0)};
    const auto rep = check_mean_chain(make_radial_power(1.0, 2.0), rp, pts);
    CHECK(rep.samples.size() == 2);
    CHECK(rep.ok());
}
