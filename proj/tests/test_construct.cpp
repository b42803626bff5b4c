#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "zerocert/construct.hpp"
#include "zerocert/random.hpp"

using namespace zerocert;

namespace {

const auto kZero = make_harmonic_poly({});

ZeroDistribution pi_lattice(std::optional<std::int64_t> k_max = std::nullopt) {
    return ZeroDistribution::from_generator(LineLattice{Complex(kPi, 0), k_max});
}

} // namespace

TEST_CASE("genus") {
    CHECK(genus(ZeroDistribution({{1.0, 1}, {2.0, 3}})) == 0);
    CHECK(genus(pi_lattice()) == 1);
    CHECK(genus(ZeroDistribution::from_generator(GaussianLattice{1.0, std::nullopt})) == 2);
    CHECK(genus(ZeroDistribution::from_generator(RadialRule{1.0, 0.5, 1, 0.0, std::nullopt})) == 0);
    CHECK(genus(ZeroDistribution::from_generator(RadialRule{1.0, 3.5, 1, 0.0, std::nullopt})) == 3);
    CustomGenerator squares{"squares", [](double r) {
                                std::vector<ZeroPoint> out;
                                for (int k = 1; double(k) * k <= r; ++k) out.push_back({double(k) * k, 1});
                                return out;
                            }};
    CHECK(genus(ZeroDistribution::from_generator(squares)) == 0);
    CHECK_THROWS_AS(genus(ZeroDistribution::from_generator(RadialRule{1.0, 12.0, 1, 0.0, std::nullopt})), Error);
}

TEST_CASE("finite product is the polynomial") {
    const std::vector<ZeroPoint> pts{{Complex(1, 1), 1}, {Complex(-2, 0.5), 2}};
    const ProductRepresentation f(ZeroDistribution(pts), 0);
    CHECK(f.complete());
    CHECK(f.retained() == 3);
    Rng rng(2);
    for (int i = 0; i < 20; ++i) {
        const Complex z = rng.in_disk(0.0, 4.0);
        Complex q = 1.0;
        for (const auto& p : pts) q *= std::pow(1.0 - z / p.location, p.multiplicity);
        CHECK(f.eval_log_abs(z).value() == doctest::Approx(std::log(std::abs(q))).epsilon(1e-12));
        CHECK(f.tail_bound(z) == 0.0);
    }
    CHECK(f.eval_log_abs(Complex(1, 1)).is_minus_infinity());
}

TEST_CASE("sin product against ln|sin z / z|") {
    const ProductRepresentation f(pi_lattice(), 1);
    CHECK(f.shells() == kDefaultShells);
    CHECK(f.retained() == 2 * kDefaultShells);
    Rng rng(6);
    for (int i = 0; i < 40;) {
        const Complex z = rng.in_disk(0.0, 5.0);
        if (std::abs(z - kPi * std::round(z.real() / kPi)) < 0.1) continue;
        ++i;
        const auto v = f.eval(z);
        const double err = std::abs(v.log_abs.value() - oracle::log_abs_sinc(z));
        CHECK(err <= 1e-3);
        CHECK(err <= v.tail_bound);
    }
}

TEST_CASE("tail bound shrinks with more shells") {
    const ProductRepresentation a(pi_lattice(), 1, 100);
    const ProductRepresentation b(pi_lattice(), 1, 1000);
    CHECK(b.tail_bound(3.0) < a.tail_bound(3.0));
    CHECK(a.tail_bound(1e6) == kInf);
    const double err = std::abs(a.eval_log_abs(Complex(2, 1)).value() - oracle::log_abs_sinc(Complex(2, 1)));
    CHECK(err <= a.tail_bound(Complex(2, 1)));
}

TEST_CASE("winding number counts retained zeros") {
    const ProductRepresentation f(pi_lattice(), 1, 100);
    CHECK(f.winding_number(0.0, 7.0) == 4);
    CHECK(f.winding_number(Complex(kPi, 0), 0.5) == 1);
    CHECK(f.winding_number(Complex(1.5, 0), 0.5) == 0);
}

TEST_CASE("weierstrass_log_abs free function") {
    const Complex z(1.2, 0.7);
    CHECK(weierstrass_log_abs(pi_lattice(), 1, z).value() == doctest::Approx(oracle::log_abs_sinc(z)).epsilon(1e-3));
}

TEST_CASE("remainder term") {
    const auto rp = RadiusProfile::plane_power(1.0);
    CHECK(remainder_R(DomainKind::plane, rp, 1.0, Complex(3, 4)) == 0.0);
    CHECK(remainder_R(DomainKind::simply_connected, rp, 1.0, Complex(3, 4)) == doctest::Approx(std::log(6.0)));
    CHECK(remainder_R(DomainKind::general, rp, 0.5, Complex(3, 4)) ==
          doctest::Approx(std::log(6.0) + 1.5 * std::log(6.0)));
}

TEST_CASE("sufficiency refuses when the necessary side is violated") {
    SufficiencyOptions opt;
    opt.necessary = Verdict::violated;
    const auto rep = verify_sufficiency(pi_lattice(), DSubharmonicMajorant(make_radial_power(2, 1), kZero),
                                        RadiusProfile::plane_power(1.0), SufficiencyGrid{5.0, 4, 8}, opt);
    CHECK(rep.refused);
    CHECK_FALSE(rep.certified);
}

TEST_CASE("sufficiency for a finite zero set under ln|q|") {
    const std::vector<ZeroPoint> pts{{Complex(0.5, 0.5), 1}, {Complex(-1, 0), 1}};
    DSubharmonicMajorant M(make_log_abs_poly_from_roots(1.0, pts).scaled(1.0) + make_radial_power(0.1, 1), kZero);
    const auto rep = verify_sufficiency(ZeroDistribution(pts), M, RadiusProfile::plane_power(1.0), SufficiencyGrid{5.0, 6, 12});
    CHECK(rep.genus == 0);
    CHECK(rep.evaluated + rep.skipped == 72);
    CHECK(rep.certified);
}
