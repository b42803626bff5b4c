#include "zerocert/testfam.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "zerocert/kernels.hpp"
#include "zerocert/means.hpp"
#include "zerocert/random.hpp"

namespace zerocert {

const char* to_string(Regime r) {
    switch (r) {
    case Regime::plane_pot01: return "plane-Pot01";
    case Regime::plane_smooth_p1: return "plane-smooth-P1";
    case Regime::jensen_pj: return "jensen-PJ";
    case Regime::disk_v: return "disk-v";
    case Regime::disk_v00: return "disk-v00";
    }
    return "unknown";
}

namespace {

TestPotential radial_member(std::function<double(double)> p, Regime regime, TestParams params, std::vector<double> kinks,
                            double support) {
    TestPotential out;
    out.eval = [p](Complex z) { return p(std::abs(z)); };
    out.regime = regime;
    out.params = params;
    out.radial = std::move(p);
    out.kinks = std::move(kinks);
    out.support = support;
    return out;
}

} // namespace

TestPotential truncated_log_plane(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::invalid_parameter, "scale t must be > 0");
    TestParams params;
    params.t = t;
    return radial_member([t](double r) { return r > 0.0 ? std::max(0.0, std::log(t * r)) : 0.0; }, Regime::plane_pot01,
                         params, {1.0 / t}, 1.0 / t);
}

TestPotential smooth_capped_log(double t, double eps) {
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::invalid_parameter, "scale t must be > 0");
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::invalid_parameter, "smoothing width must lie in (0, 1)");
    TestParams params;
    params.t = t;
    params.eps = eps;
    return radial_member(
        [t, eps](double r) { return r > 0.0 ? kernels::capped_log_profile(std::log(t * r), eps) : 0.0; },
        Regime::plane_smooth_p1, params, {std::exp(-eps) / t, std::exp(eps) / t}, std::exp(eps) / t);
}

TestPotential annulus_harmonic_disk_test(double R, double s, double b) {
    if (!(s > 0.0) || !(s < R) || !std::isfinite(R)) throw Error(ErrorCode::invalid_parameter, "need 0 < s < R");
    if (!(b > 0.0)) throw Error(ErrorCode::invalid_parameter, "bound b must be > 0");
    TestParams params;
    params.R = R;
    params.s = s;
    params.b = b;
    const double scale = b / std::log(R / s);
    return radial_member(
        [R, s, b, scale](double r) {
            if (r < s) return b;
            if (r >= R) return 0.0;
            return scale * std::log(R / r);
        },
        Regime::disk_v, params, {s}, R);
}

TestPotential compactify_disk_test(const TestPotential& v, double shrink) {
    if (v.regime != Regime::disk_v) throw Error(ErrorCode::invalid_parameter, "compactify needs a disk-v member");
    if (!(shrink > 0.0 && shrink < 1.0)) throw Error(ErrorCode::invalid_parameter, "shrink must lie in (0, 1)");
    const double edge_r = (1.0 - shrink) * v.params.R;
    if (!(edge_r > v.params.s)) throw Error(ErrorCode::invalid_parameter, "collar swallows the excluded disk");
    const double b = v.params.b;
    const double edge = v.eval(Complex(edge_r, 0.0));
    const double scale = b / (b - edge);
    auto base = v.eval;
    TestPotential out = v;
    out.eval = [base, edge, scale](Complex z) { return std::max(0.0, base(z) - edge) * scale; };
    if (v.radial) {
        auto rad = v.radial;
        out.radial = [rad, edge, scale](double r) { return std::max(0.0, rad(r) - edge) * scale; };
    }
    out.kinks.push_back(edge_r);
    out.regime = Regime::disk_v00;
    out.support = edge_r;
    return out;
}

TestPotential jensen_test_potential(const JensenPotential& V) {
    TestPotential out;
    auto pot = std::make_shared<JensenPotential>(V);
    out.eval = [pot](Complex z) { return (*pot)(z); };
    out.regime = Regime::jensen_pj;
    out.params.t = V.support_radius();
    out.support = V.support_radius();
    out.pole = V.pole();
    if (V.pole() == Complex(0.0, 0.0)) {
        out.radial = [pot](double r) { return (*pot)(Complex(r, 0.0)); };
        for (const auto& s : V.off_pole_charge().shells()) out.kinks.push_back(s.radius);
    }
    return out;
}

std::function<ExtendedReal(Complex)> inversion_pullback(const TestPotential& p) {
    if (p.regime != Regime::plane_pot01 && p.regime != Regime::plane_smooth_p1) {
        throw Error(ErrorCode::invalid_parameter, "inversion applies to plane members only");
    }
    auto f = p.eval;
    return [f](Complex z) {
        if (z == Complex(0.0, 0.0)) return ExtendedReal::plus_infinity();
        return ExtendedReal(f(1.0 / std::conj(z)));
    };
}

namespace {

// Intercept c of q = c + B x for x = 1 / ln r on a radius ladder.
double log_ratio_limit(const std::function<double(double)>& p, double r0) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int k = 6; k <= 12; ++k) {
        const double r = r0 * std::pow(10.0, k);
        const double L = std::log(r);
        const double x = 1.0 / L;
        const double y = p(r) / L;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return (sy - slope * sx) / n;
}

struct Battery {
    InvariantReport& report;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            report.ok = false;
            report.failures.push_back(what);
        }
    }
};

void submean_checks(const TestPotential& p, Battery& b, double tol, int samples, Rng& rng, double inner,
                    double outer, bool bounded_circle) {
    for (int i = 0; i < samples; ++i) {
        const double rho = inner + (outer - inner) * rng.uniform();
        const Complex z = std::polar(rho, kTwoPi * rng.uniform());
        double max_t = bounded_circle ? std::min(rho - inner, outer - rho) : rho + 1.0;
        if (!(max_t > 0.0)) continue;
        const double t = max_t * (0.05 + 0.9 * rng.uniform());
        const double mean = circle_mean(p.eval, z, t, 0.1 * tol);
        b.require(mean >= p.eval(z) - tol, "sub-mean inequality fails at |z| = " + std::to_string(rho));
    }
}

} // namespace

InvariantReport check_invariants(const TestPotential& p, double tol, int samples, std::uint64_t seed) {
    InvariantReport report;
    Battery b{report};
    Rng rng(seed);
    const double t = p.params.t;
    switch (p.regime) {
    case Regime::plane_pot01:
    case Regime::plane_smooth_p1: {
        b.require(std::abs(p.eval(0.0)) <= tol, "p(0) != 0");
        const double scale = 1.0 / t;
        for (int i = 0; i < samples; ++i) {
            const Complex w = rng.in_disk(0.0, 20.0 * scale);
            b.require(p.eval(w) >= -tol, "negative value");
        }
        b.require(log_ratio_limit(p.radial, scale) <= 1.0 + 1e-6, "growth ratio p / ln|w| exceeds 1");
        submean_checks(p, b, tol, samples, rng, 0.0, 10.0 * scale, false);
        if (p.regime == Regime::plane_smooth_p1) {
            const double zero_r = std::exp(-p.params.eps) / t;
            for (double f : {0.0, 0.25, 0.5, 0.75, 0.999}) {
                b.require(p.radial(f * zero_r) == 0.0, "not identically 0 near the origin");
            }
            for (int k = 0; k <= 12; ++k) {
                const double r = p.support * std::pow(10.0, k);
                b.require(std::abs(p.radial(r) - std::log(r)) <= std::abs(std::log(t)) + p.params.eps + tol,
                          "p - ln|w| unbounded on the ladder");
            }
            for (int i = 0; i < samples / 4; ++i) {
                const double rho = p.support * (2.0 + 8.0 * rng.uniform());
                const Complex z = std::polar(rho, kTwoPi * rng.uniform());
                const double radius = (rho - p.support) * (0.1 + 0.8 * rng.uniform());
                b.require(std::abs(circle_mean(p.eval, z, radius, 0.1 * tol) - p.eval(z)) <= tol,
                          "not harmonic outside the support disk");
            }
        }
        break;
    }
    case Regime::disk_v:
    case Regime::disk_v00: {
        const double R = p.params.R;
        const double s = p.params.s;
        for (int i = 0; i < samples; ++i) {
            const double rho = s + (R - s) * rng.uniform();
            const double v = p.eval(std::polar(rho, kTwoPi * rng.uniform()));
            b.require(v >= -tol && v <= p.params.b + tol, "value outside [0, b] on D \\ S");
        }
        double prev = kInf;
        for (int k = 1; k <= 8; ++k) {
            const double rho = R * (1.0 - std::pow(10.0, -k));
            double sup = 0.0;
            for (int j = 0; j < 16; ++j) sup = std::max(sup, p.eval(std::polar(rho, kTwoPi * j / 16.0)));
            b.require(sup <= prev + tol, "boundary collar values do not decrease");
            prev = sup;
        }
        b.require(prev <= 1e-6 * p.params.b + tol, "boundary limsup is not 0");
        submean_checks(p, b, tol, samples, rng, s, R, true);
        if (p.regime == Regime::disk_v00) {
            for (int i = 0; i < samples; ++i) {
                const double rho = p.support + (R - p.support) * rng.uniform();
                b.require(p.eval(std::polar(rho, kTwoPi * rng.uniform())) == 0.0, "not identically 0 near the boundary");
            }
        }
        break;
    }
    case Regime::jensen_pj: {
        const double supp = p.support;
        for (int i = 0; i < samples; ++i) {
            const Complex z = rng.in_disk(p.pole, 3.0 * supp);
            const double v = p.eval(z);
            b.require(v >= -tol, "negative Jensen potential");
            if (std::abs(z - p.pole) >= supp) b.require(std::abs(v) <= tol, "Jensen potential nonzero beyond its support");
        }
        b.require(estimate_pole_coefficient(p.eval, p.pole) <= 1.0 + 1e-3, "pole coefficient exceeds 1");
        break;
    }
    }
    return report;
}

std::vector<double> geometric_grid(double t_min, double t_max, double ratio) {
    if (!(t_min > 0.0) || !(t_max >= t_min) || !(ratio > 1.0)) {
        throw Error(ErrorCode::invalid_parameter, "geometric grid needs 0 < t_min <= t_max and ratio > 1");
    }
    std::vector<double> out;
    for (int k = 0;; ++k) {
        const double t = t_min * std::pow(ratio, k);
        if (t > t_max * (1.0 + 1e-12)) break;
        out.push_back(t);
    }
    return out;
}

} // namespace zerocert
