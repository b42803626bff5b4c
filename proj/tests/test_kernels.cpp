#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "zerocert/kernels.hpp"
#include "zerocert/random.hpp"

using namespace zerocert;
using kernels::Isa;

namespace {

std::vector<double> sorted_draws(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform(-3.0, 8.0);
    std::sort(x.begin(), x.end());
    return x;
}

} // namespace

TEST_CASE("dispatch") {
    CHECK(kernels::available(Isa::scalar));
    kernels::set_override(Isa::scalar);
    CHECK(kernels::active() == Isa::scalar);
    kernels::set_override(std::nullopt);
    CHECK(kernels::active() == kernels::best_available());
}

TEST_CASE("scalar kernels against plain loops") {
    const auto x = sorted_draws(1001, 1);
    for (double shift : {-5.0, 0.0, 2.5, 9.0}) {
        double pos = 0.0;
        double cap = 0.0;
        for (double v : x) {
            pos += std::max(0.0, shift - v);
            cap += kernels::capped_log_profile(shift - v, 0.1);
        }
        CHECK(kernels::sum_positive_part(x, shift, Isa::scalar) == doctest::Approx(pos).epsilon(1e-13));
        CHECK(kernels::sum_capped_log(x, shift, 0.1, Isa::scalar) == doctest::Approx(cap).epsilon(1e-13));
    }
}

TEST_CASE("primary factor sum against the definition") {
    Rng rng(4);
    std::vector<double> re, im;
    std::vector<Complex> w;
    for (int i = 0; i < 37; ++i) {
        const Complex z = rng.in_disk(0.0, 10.0) + Complex(0.5, 0);
        w.push_back(1.0 / z);
        re.push_back(w.back().real());
        im.push_back(w.back().imag());
    }
    for (int p : {0, 1, 2, 3}) {
        for (Complex z : {Complex(0.3, 0.1), Complex(2, -1), Complex(-4, 3)}) {
            double ref = 0.0;
            for (const auto& wj : w) ref += oracle::log_abs_primary(z * wj, p);
            const auto r = kernels::sum_log_primary(re, im, z, p, Isa::scalar);
            CAPTURE(p);
            CHECK(r.log_abs == doctest::Approx(ref).epsilon(1e-11));
        }
    }
}

TEST_CASE("avx2 kernels match scalar") {
    if (!kernels::available(Isa::avx2)) {
        MESSAGE("AVX2 not available; equivalence not exercised");
        return;
    }
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 9u, 63u, 64u, 1000u, 40001u}) {
        const auto x = sorted_draws(n, n + 11);
        for (double shift : {-4.0, 0.0, 1.3, 7.7, 20.0}) {
            const double s = kernels::sum_positive_part(x, shift, Isa::scalar);
            const double v = kernels::sum_positive_part(x, shift, Isa::avx2);
            CHECK(std::abs(s - v) <= 1e-14 * std::max(1.0, std::abs(s)) * std::max<std::size_t>(1, n));
            for (double eps : {0.0, 0.05, 0.3}) {
                const double sc = kernels::sum_capped_log(x, shift, eps, Isa::scalar);
                const double vc = kernels::sum_capped_log(x, shift, eps, Isa::avx2);
                CHECK(std::abs(sc - vc) <= 1e-14 * std::max(1.0, std::abs(sc)) * std::max<std::size_t>(1, n));
            }
        }
    }
    Rng rng(8);
    for (std::size_t n : {1u, 5u, 8u, 13u, 2000u}) {
        std::vector<double> re(n), im(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Complex w = 1.0 / (rng.in_disk(0.0, 50.0) + Complex(0.2, 0.0));
            re[i] = w.real();
            im[i] = w.imag();
        }
        for (int p : {0, 1, 2, 4}) {
            for (Complex z : {Complex(0.1, 0.2), Complex(3, 3), Complex(-20, 1)}) {
                const auto a = kernels::sum_log_primary(re, im, z, p, Isa::scalar);
                const auto b = kernels::sum_log_primary(re, im, z, p, Isa::avx2);
                CAPTURE(n);
                CAPTURE(p);
                CHECK(std::abs(a.log_abs - b.log_abs) <= 1e-12 * std::max(1.0, std::abs(a.log_abs)) * double(n));
                CHECK(a.min_dist2 == doctest::Approx(b.min_dist2).epsilon(1e-13));
            }
        }
    }
}
