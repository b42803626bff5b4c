#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "zerocert/criterion.hpp"
#include "zerocert/kernels.hpp"
#include "zerocert/testfam.hpp"

using namespace zerocert;

namespace {

const auto kZero = make_harmonic_poly({});

} // namespace

TEST_CASE("family profile") {
    FamilySpec f;
    CHECK(f.profile(2.0, 1.0) == doctest::Approx(std::log(2.0)));
    CHECK(f.profile(2.0, 3.0) == 0.0);
    CHECK(f.profile(2.0, 0.0) == kInf);
    FamilySpec s{FamilySpec::Kind::smooth_capped_log, 0.2};
    CHECK(s.profile(2.0, 1.0) == doctest::Approx(kernels::capped_log_profile(std::log(2.0), 0.2)));
}

TEST_CASE("margin sweep reproduces N(t) - t for the pi lattice") {
    const auto Z = ZeroDistribution::from_generator(LineLattice{Complex(kPi, 0), 10000});
    DSubharmonicMajorant M(make_radial_power(1, 1), kZero);
    const std::vector<double> taus{1.0, 5.0, 20.0, 77.0, 200.0};
    const auto c = margin_sweep(Z, M, FamilySpec{}, taus);
    REQUIRE(c.samples.size() == taus.size());
    for (const auto& s : c.samples) {
        CAPTURE(s.tau);
        CHECK(s.lhs == doctest::Approx(oracle::nevanlinna_pi_lattice(s.tau, 10000)).epsilon(1e-12));
        // Riesz density of |z| is 1 per unit radius: integral_0^tau ln(tau/s) ds = tau.
        CHECK(s.rhs == doctest::Approx(s.tau).epsilon(1e-9));
        CHECK(std::abs(s.margin - (s.lhs - s.rhs)) <= 1e-12 * s.tau);
    }
}

TEST_CASE("margin sweep lhs for the gaussian lattice") {
    const auto Z = ZeroDistribution::from_generator(GaussianLattice{1.0, 300.0});
    DSubharmonicMajorant M(make_radial_power(1, 1), kZero);
    const std::vector<double> taus{3.0, 40.0};
    const auto c = margin_sweep(Z, M, FamilySpec{}, taus);
    for (const auto& s : c.samples) CHECK(s.lhs == doctest::Approx(oracle::nevanlinna_gaussian(s.tau, 300.0)).epsilon(1e-12));
}

TEST_CASE("margin sweep rejects a zero at the origin") {
    ZeroDistribution Z({{0.0, 1}});
    DSubharmonicMajorant M(make_radial_power(1, 1), kZero);
    const std::vector<double> taus{1.0};
    try {
        margin_sweep(Z, M, FamilySpec{}, taus);
        FAIL("expected pole-at-origin");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::pole_at_origin);
    }
}

TEST_CASE("rhs with atoms, shells and a lower variation") {
    // M = ln|z - 2| - ln|z - 3i| has atoms +1 at 2 and -1 at 3i.
    const std::vector<ZeroPoint> a{{2.0, 1}};
    const std::vector<ZeroPoint> b{{Complex(0, 3), 1}};
    DSubharmonicMajorant M(make_log_abs_poly_from_roots(1.0, a), make_log_abs_poly_from_roots(1.0, b));
    ZeroDistribution Z;
    const std::vector<double> taus{1.0, 2.5, 10.0};
    const auto c = margin_sweep(Z, M, FamilySpec{}, taus);
    for (const auto& s : c.samples) {
        const double ref = std::max(0.0, std::log(s.tau / 2.0)) - std::max(0.0, std::log(s.tau / 3.0));
        CHECK(s.rhs == doctest::Approx(ref).epsilon(1e-12));
        CHECK(s.lhs == 0.0);
    }
}

TEST_CASE("verdicts on synthetic pairs") {
    const auto taus = geometric_grid(1.0, 200.0, kDefaultGridRatio);
    SUBCASE("finite zero set under a growing majorant is consistent") {
        ZeroDistribution Z({{1.0, 1}, {Complex(0, 2), 2}});
        DSubharmonicMajorant M(make_radial_power(1, 1), kZero);
        CHECK(margin_sweep(Z, M, FamilySpec{}, taus).verdict == Verdict::consistent);
    }
    SUBCASE("dense zeros under a bounded majorant are violated") {
        const auto Z = ZeroDistribution::from_generator(GaussianLattice{1.0, 300.0});
        DSubharmonicMajorant M(make_log_poly(), kZero);
        const auto c = margin_sweep(Z, M, FamilySpec{FamilySpec::Kind::smooth_capped_log, 0.1}, taus);
        CHECK(c.verdict == Verdict::violated);
        CHECK(c.fit.exponent == doctest::Approx(2.0).epsilon(0.1));
    }
    SUBCASE("too few samples is inconclusive") {
        ZeroDistribution Z;
        DSubharmonicMajorant M(make_radial_power(1, 1), kZero);
        const std::vector<double> two{1.0, 2.0};
        CHECK(margin_sweep(Z, M, FamilySpec{}, two).verdict == Verdict::inconclusive);
    }
}

TEST_CASE("fits recover synthetic curves") {
    MarginCurve c;
    for (double t = 1.0; t <= 300.0; t *= 1.1) {
        const double m = -0.4 * t + 1.5 * std::log(t) + 2.0;
        c.samples.push_back({t, 0, 0, 0, 0, m, 0});
    }
    const auto lin = fit_linear_log(c, 1.0, 300.0);
    CHECK(lin.a == doctest::Approx(-0.4).epsilon(1e-10));
    CHECK(lin.b == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(lin.c == doctest::Approx(2.0).epsilon(1e-8));
    MarginCurve q;
    for (double t = 1.0; t <= 300.0; t *= 1.1) q.samples.push_back({t, 0, 0, 0, 0, 3.0 * t * t, 0});
    const auto g = fit_growth(q, 10.0, 300.0);
    CHECK(g.exponent == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g.confidence == doctest::Approx(1.0));
    CHECK(g.positive);
}

TEST_CASE("m0 deviation vanishes for harmonic majorants") {
    const std::vector<Complex> coeffs{0.0, Complex(1, 2), 0.0, 1.0};
    const auto r = check_m0(make_harmonic_poly(coeffs), 1.0, M0Grid{});
    for (const auto& cell : r.cells) CHECK(std::abs(cell.deviation) <= 1e-10);
    CHECK(r.bounded);
}

TEST_CASE("m0 deviation for |z|^2 is r(z)^2") {
    const auto r = check_m0(make_radial_power(1, 2), 1.0, M0Grid{20.0, 4, 3});
    for (const auto& cell : r.cells) {
        const double rz = 1.0 / (1.0 + std::abs(cell.z));
        CHECK(cell.deviation == doctest::Approx(rz * rz).epsilon(1e-9));
    }
    CHECK(r.C_estimate == doctest::Approx(1.0));
}

TEST_CASE("m0 sees unbounded deviations") {
    // |z|^3 deviates by about (9/4)|z| r(z)^2, which grows like |z|^(1/2) for P = 1/4.
    const auto r = check_m0(make_radial_power(1, 3), 0.25, M0Grid{1000.0, 4, 2});
    CHECK_FALSE(r.bounded);
}

TEST_CASE("lemma 1 constants") {
    Lemma1Setup s;
    const auto c0 = lemma1_constants(s, DSubharmonicMajorant(kZero, kZero));
    CHECK(std::abs(c0.C - 1.0 / std::log(2.0)) <= 1e-10);
    CHECK(c0.C_bar == 0.0);

    const std::vector<ZeroPoint> roots{{Complex(0.3, 0.1), 1}, {Complex(-0.5, 0.4), 2}};
    const auto cq = lemma1_constants(s, DSubharmonicMajorant(make_log_abs_poly_from_roots(2.0, roots), kZero));
    double atoms = 0.0;
    for (const auto& r : roots) atoms += r.multiplicity * oracle::green_disk(1.0, 0.0, r.location);
    CHECK(std::abs(cq.terms[0] - atoms) <= 1e-8);

    // sigma |z| has density sigma per unit radius: integral_0^1 2 ln(1/s) ds = 2.
    const auto cr = lemma1_constants(s, DSubharmonicMajorant(make_radial_power(2, 1), kZero), 1e-9);
    CHECK(std::abs(cr.C_bar - 2.0) <= 1e-8);

    Lemma1Setup off = s;
    off.z0 = Complex(0.2, 0.1);
    const auto co = lemma1_constants(off, DSubharmonicMajorant(kZero, kZero));
    double inf = kInf;
    for (int k = 0; k < 100000; ++k) inf = std::min(inf, oracle::green_disk(1.0, off.z0, std::polar(0.5, kTwoPi * k / 100000)));
    CHECK(co.green_inf == doctest::Approx(inf).epsilon(1e-9));
}

TEST_CASE("lemma 1 rejects bad geometry") {
    Lemma1Setup s;
    s.set_radius = 1.5;
    CHECK_THROWS_AS(lemma1_constants(s, DSubharmonicMajorant(kZero, kZero)), Error);
    Lemma1Setup t;
    t.z0 = Complex(0.6, 0);
    CHECK_THROWS_AS(lemma1_constants(t, DSubharmonicMajorant(kZero, kZero)), Error);
}
