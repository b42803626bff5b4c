#include "kernels_impl.hpp"

#ifdef ZEROCERT_HAVE_AVX2_KERNELS

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstdint>

#define ZEROCERT_AVX2 __attribute__((target("avx2,fma")))

namespace zerocert::kernels::avx2 {
namespace {

ZEROCERT_AVX2 inline double hsum(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

} // namespace

ZEROCERT_AVX2 double sum_positive_part(std::span<const double> x, double shift) {
    const std::size_t n = x.size();
    const std::size_t n4 = n & ~std::size_t{3};
    const __m256d vshift = _mm256_set1_pd(shift);
    const __m256d zero = _mm256_setzero_pd();
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d d = _mm256_sub_pd(vshift, _mm256_loadu_pd(x.data() + i));
        acc = _mm256_add_pd(acc, _mm256_max_pd(d, zero));
    }
    double total = hsum(acc);
    for (std::size_t i = n4; i < n; ++i) {
        const double d = shift - x[i];
        if (d > 0.0) total += d;
    }
    return total;
}

ZEROCERT_AVX2 double sum_capped_log(std::span<const double> x, double shift, double eps) {
    if (eps <= 0.0) return sum_positive_part(x, shift);
    const std::size_t n = x.size();
    const std::size_t n4 = n & ~std::size_t{3};
    const __m256d vshift = _mm256_set1_pd(shift);
    const __m256d veps = _mm256_set1_pd(eps);
    const __m256d vneg_eps = _mm256_set1_pd(-eps);
    const __m256d inv_width = _mm256_set1_pd(1.0 / (2.0 * eps));
    const __m256d two_eps = _mm256_set1_pd(2.0 * eps);
    const __m256d c3 = _mm256_set1_pd(3.0);
    const __m256d c25 = _mm256_set1_pd(2.5);
    const __m256d zero = _mm256_setzero_pd();
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d s = _mm256_sub_pd(vshift, _mm256_loadu_pd(x.data() + i));
        const __m256d t = _mm256_mul_pd(_mm256_add_pd(s, veps), inv_width);
        const __m256d t2 = _mm256_mul_pd(t, t);
        // t^4 (t^2 - 3t + 2.5)
        const __m256d poly = _mm256_add_pd(_mm256_fnmadd_pd(c3, t, t2), c25);
        const __m256d blend = _mm256_mul_pd(two_eps, _mm256_mul_pd(_mm256_mul_pd(t2, t2), poly));
        const __m256d above = _mm256_cmp_pd(s, veps, _CMP_GE_OQ);
        const __m256d below = _mm256_cmp_pd(s, vneg_eps, _CMP_LE_OQ);
        __m256d v = _mm256_blendv_pd(blend, s, above);
        v = _mm256_blendv_pd(v, zero, below);
        acc = _mm256_add_pd(acc, v);
    }
    double total = hsum(acc);
    for (std::size_t i = n4; i < n; ++i) total += capped_log_profile(shift - x[i], eps);
    return total;
}

ZEROCERT_AVX2 PrimarySum sum_log_primary(std::span<const double> inv_re, std::span<const double> inv_im,
                                         Complex z, int genus) {
    const std::size_t n = inv_re.size();
    const std::size_t n4 = n & ~std::size_t{3};
    const __m256d zr = _mm256_set1_pd(z.real());
    const __m256d zi = _mm256_set1_pd(z.imag());
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d quarter = _mm256_set1_pd(0.25);
    const __m256d floor_val = _mm256_set1_pd(1e-300);
    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
    const __m256i bias = _mm256_set1_epi64x(1023);

    // ln|1-u| for the direct lanes is accumulated as a product of |1-u|^2
    // with the binary exponent peeled off after every multiply.
    __m256d prod = one;
    __m256i exps = _mm256_setzero_si256();
    __m256d direct = _mm256_setzero_pd();
    __m256d series = _mm256_setzero_pd();
    __m256d min_d2 = _mm256_set1_pd(kInf);

    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d wr = _mm256_loadu_pd(inv_re.data() + i);
        const __m256d wi = _mm256_loadu_pd(inv_im.data() + i);
        const __m256d ur = _mm256_fmsub_pd(zr, wr, _mm256_mul_pd(zi, wi));
        const __m256d ui = _mm256_fmadd_pd(zr, wi, _mm256_mul_pd(zi, wr));
        const __m256d a2 = _mm256_fmadd_pd(ur, ur, _mm256_mul_pd(ui, ui));
        const __m256d one_r = _mm256_sub_pd(one, ur);
        const __m256d f2 = _mm256_fmadd_pd(one_r, one_r, _mm256_mul_pd(ui, ui));
        const __m256d w2 = _mm256_fmadd_pd(wr, wr, _mm256_mul_pd(wi, wi));
        min_d2 = _mm256_min_pd(min_d2, _mm256_div_pd(f2, w2));

        const __m256d small = _mm256_cmp_pd(a2, quarter, _CMP_LE_OQ);

        // Partial sums u + u^2/2 + ... + u^p/p, leaving u^{p+1} in (pr, pi).
        __m256d pr = ur;
        __m256d pi = ui;
        __m256d poly = _mm256_setzero_pd();
        for (int k = 1; k <= genus; ++k) {
            poly = _mm256_add_pd(poly, _mm256_div_pd(pr, _mm256_set1_pd(static_cast<double>(k))));
            const __m256d nr = _mm256_fmsub_pd(pr, ur, _mm256_mul_pd(pi, ui));
            pi = _mm256_fmadd_pd(pr, ui, _mm256_mul_pd(pi, ur));
            pr = nr;
        }

        __m256d factor = _mm256_blendv_pd(f2, one, small);
        factor = _mm256_max_pd(factor, floor_val);
        prod = _mm256_mul_pd(prod, factor);
        const __m256i bits = _mm256_castpd_si256(prod);
        exps = _mm256_add_epi64(exps, _mm256_sub_epi64(_mm256_srli_epi64(bits, 52), bias));
        prod = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
        direct = _mm256_add_pd(direct, _mm256_blendv_pd(poly, _mm256_setzero_pd(), small));

        if (_mm256_movemask_pd(small) != 0) {
            __m256d acc = _mm256_setzero_pd();
            for (int k = genus + 1; k < genus + 400; ++k) {
                const __m256d kk = _mm256_set1_pd(static_cast<double>(k));
                acc = _mm256_sub_pd(acc, _mm256_div_pd(pr, kk));
                const __m256d nr = _mm256_fmsub_pd(pr, ur, _mm256_mul_pd(pi, ui));
                pi = _mm256_fmadd_pd(pr, ui, _mm256_mul_pd(pi, ur));
                pr = nr;
                const __m256d mag = _mm256_fmadd_pd(pr, pr, _mm256_mul_pd(pi, pi));
                const __m256d thresh = _mm256_mul_pd(_mm256_set1_pd(1e-36), _mm256_mul_pd(kk, kk));
                const __m256d pending = _mm256_and_pd(small, _mm256_cmp_pd(mag, thresh, _CMP_GE_OQ));
                if (_mm256_movemask_pd(pending) == 0) break;
            }
            series = _mm256_add_pd(series, _mm256_blendv_pd(_mm256_setzero_pd(), acc, small));
        }
    }

    alignas(32) double prod_lanes[4];
    alignas(32) std::int64_t exp_lanes[4];
    _mm256_store_pd(prod_lanes, prod);
    _mm256_store_si256(reinterpret_cast<__m256i*>(exp_lanes), exps);
    constexpr double ln2 = 0.69314718055994530942;
    double log_prod = 0.0;
    for (int l = 0; l < 4; ++l) log_prod += std::log(prod_lanes[l]) + static_cast<double>(exp_lanes[l]) * ln2;

    PrimarySum out;
    out.log_abs = 0.5 * log_prod + hsum(direct) + hsum(series);
    alignas(32) double d2_lanes[4];
    _mm256_store_pd(d2_lanes, min_d2);
    out.min_dist2 = std::min({d2_lanes[0], d2_lanes[1], d2_lanes[2], d2_lanes[3]});

    for (std::size_t j = n4; j < n; ++j) {
        const double wr = inv_re[j];
        const double wi = inv_im[j];
        const double ur = z.real() * wr - z.imag() * wi;
        const double ui = z.real() * wi + z.imag() * wr;
        const double one_r = 1.0 - ur;
        out.min_dist2 = std::min(out.min_dist2, (one_r * one_r + ui * ui) / (wr * wr + wi * wi));
        out.log_abs += scalar::log_primary_term(ur, ui, genus);
    }
    return out;
}

} // namespace zerocert::kernels::avx2

#endif
