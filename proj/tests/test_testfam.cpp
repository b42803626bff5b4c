#include <doctest.h>

#include <cmath>

#include "zerocert/kernels.hpp"
#include "zerocert/testfam.hpp"

using namespace zerocert;

TEST_CASE("truncated log member") {
    const auto p = truncated_log_plane(2.0);
    CHECK(p(Complex(0.25, 0)) == doctest::Approx(0.0));
    CHECK(p(Complex(0, 3)) == doctest::Approx(std::log(6.0)));
    CHECK(p.radial(3.0) == doctest::Approx(std::log(6.0)));
    CHECK(p.regime == Regime::plane_pot01);
    CHECK_THROWS_AS(truncated_log_plane(0.0), Error);
}

TEST_CASE("capped log profile is C1, convex and exact outside the blend") {
    const double eps = 0.2;
    CHECK(kernels::capped_log_profile(-0.3, eps) == 0.0);
    CHECK(kernels::capped_log_profile(0.5, eps) == doctest::Approx(0.5));
    CHECK(kernels::capped_log_profile(0.7, 0.0) == doctest::Approx(0.7));
    const double h = 1e-5;
    double prev_slope = -1.0;
    for (double s = -0.25; s <= 0.25; s += 0.01) {
        const double slope = (kernels::capped_log_profile(s + h, eps) - kernels::capped_log_profile(s - h, eps)) / (2 * h);
        CHECK(slope >= prev_slope - 1e-6);
        CHECK(slope >= -1e-9);
        CHECK(slope <= 1.0 + 1e-9);
        prev_slope = slope;
    }
    // Continuity of the derivative at the joins.
    for (double s : {-eps, eps}) {
        const double l = (kernels::capped_log_profile(s, eps) - kernels::capped_log_profile(s - h, eps)) / h;
        const double r = (kernels::capped_log_profile(s + h, eps) - kernels::capped_log_profile(s, eps)) / h;
        CHECK(std::abs(l - r) < 1e-4);
    }
}

TEST_CASE("smooth capped log member dominates the truncated log") {
    const auto s = smooth_capped_log(1.5, 0.1);
    const auto t = truncated_log_plane(1.5);
    for (double r : {0.1, 0.6, 0.66, 0.7, 2.0}) CHECK(s(r) >= t(r) - 1e-15);
    CHECK_THROWS_AS(smooth_capped_log(1.0, 1.5), Error);
}

TEST_CASE("disk test potentials") {
    const auto v = annulus_harmonic_disk_test(2.0, 0.5, 3.0);
    CHECK(v(0.2) == doctest::Approx(3.0));
    CHECK(v(Complex(0, 1)) == doctest::Approx(3.0 * std::log(2.0) / std::log(4.0)));
    CHECK(v(2.0) == doctest::Approx(0.0));
    const auto w = compactify_disk_test(v, 0.1);
    CHECK(w(1.9) == doctest::Approx(0.0));
    CHECK(w(0.3) == doctest::Approx(3.0));
    CHECK(w.regime == Regime::disk_v00);
    CHECK_THROWS_AS(annulus_harmonic_disk_test(1.0, 2.0, 1.0), Error);
    CHECK_THROWS_AS(compactify_disk_test(truncated_log_plane(1.0), 0.1), Error);
}

TEST_CASE("inversion pullback") {
    const auto f = inversion_pullback(truncated_log_plane(2.0));
    CHECK(f(0.0).is_plus_infinity());
    CHECK(f(Complex(0.5, 0)).value() == doctest::Approx(std::log(4.0)));
    CHECK(f(Complex(3, 0)).value() == doctest::Approx(0.0));
    CHECK_THROWS_AS(inversion_pullback(annulus_harmonic_disk_test(1.0, 0.5, 1.0)), Error);
}

TEST_CASE("class invariants hold for each regime") {
    CHECK(check_invariants(truncated_log_plane(3.0)).ok);
    CHECK(check_invariants(smooth_capped_log(3.0, 0.2)).ok);
    const auto v = annulus_harmonic_disk_test(2.0, 0.5, 1.0);
    CHECK(check_invariants(v).ok);
    CHECK(check_invariants(compactify_disk_test(v, 0.1)).ok);
    CHECK(check_invariants(jensen_test_potential(log_potential(JensenMeasure::uniform_circle(0.0, 1.0)))).ok);
}

TEST_CASE("invariant battery catches a non-member") {
    auto bad = truncated_log_plane(1.0);
    bad.eval = [](Complex z) { return -std::abs(z); };
    bad.radial = [](double r) { return -r; };
    const auto rep = check_invariants(bad);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.failures.empty());
}

TEST_CASE("geometric grid") {
    const auto g = geometric_grid(1.0, 200.0, kDefaultGridRatio);
    CHECK(g.front() == 1.0);
    CHECK(g.back() <= 200.0);
    CHECK(g.back() * kDefaultGridRatio > 200.0);
    CHECK(g.size() == 31);
    CHECK_THROWS_AS(geometric_grid(2.0, 1.0, 2.0), Error);
}
