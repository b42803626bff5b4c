#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

namespace zerocert::kernels {

double capped_log_profile(double s, double eps) {
    if (eps <= 0.0) return s > 0.0 ? s : 0.0;
    if (s <= -eps) return 0.0;
    if (s >= eps) return s;
    // Antiderivative of the quintic smoothstep 6t^5 - 15t^4 + 10t^3, which
    // integrates to 1/2 over [0, 1] and so meets the affine tail exactly.
    const double t = (s + eps) / (2.0 * eps);
    const double t2 = t * t;
    return 2.0 * eps * t2 * t2 * (t2 - 3.0 * t + 2.5);
}

namespace scalar {

double sum_positive_part(std::span<const double> x, double shift) {
    double acc = 0.0;
    for (double v : x) {
        const double d = shift - v;
        if (d > 0.0) acc += d;
    }
    return acc;
}

double sum_capped_log(std::span<const double> x, double shift, double eps) {
    double acc = 0.0;
    for (double v : x) acc += capped_log_profile(shift - v, eps);
    return acc;
}

double log_primary_term(double ur, double ui, int genus) {
    const double a2 = ur * ur + ui * ui;
    if (a2 <= 0.25) {
        // ln E_p(u) = -sum_{k>p} u^k / k
        double pr = ur;
        double pi = ui;
        for (int k = 1; k <= genus; ++k) {
            const double nr = pr * ur - pi * ui;
            pi = pr * ui + pi * ur;
            pr = nr;
        }
        double acc = 0.0;
        for (int k = genus + 1; k < genus + 400; ++k) {
            acc -= pr / k;
            const double nr = pr * ur - pi * ui;
            pi = pr * ui + pi * ur;
            pr = nr;
            if ((pr * pr + pi * pi) < 1e-36 * k * k) break;
        }
        return acc;
    }
    const double one_r = 1.0 - ur;
    double value = 0.5 * std::log(one_r * one_r + ui * ui);
    double pr = ur;
    double pi = ui;
    for (int k = 1; k <= genus; ++k) {
        value += pr / k;
        const double nr = pr * ur - pi * ui;
        pi = pr * ui + pi * ur;
        pr = nr;
    }
    return value;
}

PrimarySum sum_log_primary(std::span<const double> inv_re, std::span<const double> inv_im, Complex z, int genus) {
    PrimarySum out;
    const double zr = z.real();
    const double zi = z.imag();
    for (std::size_t j = 0; j < inv_re.size(); ++j) {
        const double wr = inv_re[j];
        const double wi = inv_im[j];
        const double ur = zr * wr - zi * wi;
        const double ui = zr * wi + zi * wr;
        const double one_r = 1.0 - ur;
        const double d2 = (one_r * one_r + ui * ui) / (wr * wr + wi * wi);
        out.min_dist2 = std::min(out.min_dist2, d2);
        out.log_abs += log_primary_term(ur, ui, genus);
    }
    return out;
}

} // namespace scalar
} // namespace zerocert::kernels
