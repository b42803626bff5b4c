#include "zerocert/means.hpp"

#include <algorithm>
#include <cmath>

#include "zerocert/circle_quadrature.hpp"
#include "zerocert/parallel.hpp"
#include "zerocert/quadrature.hpp"

namespace zerocert {

RadiusProfile RadiusProfile::plane_power(double P) {
    if (!(P >= 0.0) || !std::isfinite(P)) throw Error(ErrorCode::invalid_parameter, "plane-power profile needs P >= 0");
    return {Kind::plane_power, P, kInf};
}

RadiusProfile RadiusProfile::disk_fraction(double alpha, double R) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::invalid_parameter, "disk-fraction profile needs 0 < alpha < 1");
    if (!(R > 0.0) || !std::isfinite(R)) throw Error(ErrorCode::invalid_parameter, "disk-fraction profile needs R > 0");
    return {Kind::disk_fraction, alpha, R};
}

bool RadiusProfile::in_domain(Complex z) const { return kind_ == Kind::plane_power || std::abs(z) < R_; }

double RadiusProfile::boundary_distance(Complex z) const {
    return kind_ == Kind::plane_power ? kInf : R_ - std::abs(z);
}

double radius(const RadiusProfile& rp, Complex z) {
    if (!rp.in_domain(z)) throw Error(ErrorCode::out_of_domain, "point outside the profile's disk");
    if (rp.kind() == RadiusProfile::Kind::plane_power) return std::pow(1.0 + std::abs(z), -rp.P());
    return rp.alpha() * rp.boundary_distance(z);
}

HatRadius hat_radius(const RadiusProfile& rp, Complex z) {
    const double r = radius(rp, z);
    auto objective = [&](double theta) { return r + radius(rp, z + std::polar(r, theta)); };

    constexpr int n = 720;
    const double h = kTwoPi / n;
    int best = 0;
    double best_val = -kInf;
    for (int i = 0; i < n; ++i) {
        const double v = objective(i * h);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    // Golden-section refinement around the best node.
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = (best - 1) * h;
    double b = (best + 1) * h;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    for (int it = 0; it < 60; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = objective(d);
        }
    }
    HatRadius out;
    out.value = std::max({best_val, fc, fd});
    out.upper_bound = std::max(out.value, best_val + rp.lipschitz() * r * h / 2.0);
    if (rp.kind() == RadiusProfile::Kind::disk_fraction && std::abs(z) + out.value >= rp.domain_radius()) {
        throw Error(ErrorCode::precondition_violation, "enlarged disk leaves the domain");
    }
    return out;
}

double circle_mean(const RealFunction& u, Complex z, double t, double tol, std::span<const Complex> singular) {
    if (!(t >= 0.0)) throw Error(ErrorCode::invalid_parameter, "circle radius must be >= 0");
    const quad::Result r = detail::circle_average(u, z, t, ArcSet::full(), singular, tol);
    if (!r.converged) throw ToleranceFailure("circle mean", r.error);
    return r.value;
}

double circle_mean(const SubharmonicModel& u, Complex z, double t, double tol) {
    if (!(t >= 0.0)) throw Error(ErrorCode::invalid_parameter, "circle radius must be >= 0");
    if (u.exact_circle_mean()) return t == 0.0 ? u(z) : u.exact_circle_mean()(z, t);
    return circle_mean(u.function(), z, t, tol, u.singular_points());
}

namespace {

std::vector<double> singular_radii(Complex z, std::span<const Complex> singular, double scale) {
    std::vector<double> out;
    for (const Complex& a : singular) out.push_back(std::abs(a - z) / scale);
    return out;
}

} // namespace

double disk_mean(const RealFunction& u, Complex z, double t, double tol, std::span<const Complex> singular) {
    if (!(t > 0.0)) {
        if (t == 0.0) return u(z);
        throw Error(ErrorCode::invalid_parameter, "disk radius must be >= 0");
    }
    const double inner = 0.1 * tol;
    auto integrand = [&](double s) { return 2.0 * s / (t * t) * circle_mean(u, z, s, inner, singular); };
    const auto breaks = singular_radii(z, singular, 1.0);
    return quad::integrate(integrand, 0.0, t, tol, breaks).value;
}

double disk_mean(const SubharmonicModel& u, Complex z, double t, double tol) {
    if (!u.exact_circle_mean() || !(t > 0.0)) return disk_mean(u.function(), z, t, tol, u.singular_points());
    auto integrand = [&](double s) { return 2.0 * s / (t * t) * circle_mean(u, z, s, tol); };
    return quad::integrate(integrand, 0.0, t, tol, singular_radii(z, u.singular_points(), 1.0)).value;
}

MollifierKernel MollifierKernel::polynomial_bump() {
    return {[](double s) {
        if (s >= 1.0) return 0.0;
        const double q = 1.0 - s * s;
        return 4.0 / kPi * q * q * q;
    }};
}

double MollifierKernel::mass() const {
    return quad::integrate([this](double s) { return kTwoPi * s * profile(s); }, 0.0, 1.0, 1e-13).value;
}

namespace {

double mollify(const std::function<double(Complex, double)>& circle, Complex z, double rcheck,
               const MollifierKernel& kernel, double tol, std::span<const Complex> singular) {
    if (!kernel.profile) throw Error(ErrorCode::invalid_kernel, "kernel without profile");
    const double mass = kernel.mass();
    if (std::abs(mass - 1.0) > 1e-9) throw Error(ErrorCode::invalid_kernel, "kernel mass " + std::to_string(mass) + " != 1");
    if (!(rcheck > 0.0)) {
        if (rcheck == 0.0) return circle(z, 0.0);
        throw Error(ErrorCode::invalid_parameter, "mollifier radius must be >= 0");
    }
    auto integrand = [&](double s) {
        const double k = kernel.profile(s);
        if (k == 0.0) return 0.0;
        return kTwoPi * s * k * circle(z, rcheck * s);
    };
    const auto breaks = singular_radii(z, singular, rcheck);
    return quad::integrate(integrand, 0.0, 1.0, tol, breaks).value;
}

} // namespace

double mollified_mean(const RealFunction& u, Complex z, double rcheck, const MollifierKernel& kernel, double tol,
                      std::span<const Complex> singular) {
    const double inner = 0.1 * tol;
    return mollify([&](Complex c, double t) { return t == 0.0 ? u(c) : circle_mean(u, c, t, inner, singular); }, z,
                   rcheck, kernel, tol, singular);
}

double mollified_mean(const SubharmonicModel& u, Complex z, double rcheck, const MollifierKernel& kernel, double tol) {
    const double inner = 0.1 * tol;
    return mollify([&](Complex c, double t) { return circle_mean(u, c, t, inner); }, z, rcheck, kernel, tol,
                   u.singular_points());
}

std::array<double, 4> ChainSample::slacks() const {
    auto slack = [](double lhs, double rhs) { return lhs == -kInf ? kInf : rhs - lhs; };
    return {slack(value, disk_r), slack(disk_r, circle_r), slack(circle_r, disk_sqrt_e_r), slack(nested_lhs, hat_rhs)};
}

MeanChainReport check_mean_chain(const SubharmonicModel& u, const RadiusProfile& rp, std::span<const Complex> samples,
                                 double tol, double slack_tol) {
    MeanChainReport report;
    report.slack_tolerance = slack_tol;
    report.samples.resize(samples.size());
    const double sqrt_e = std::exp(0.5);
    std::vector<Complex> kinks = u.singular_points();
    kinks.push_back(Complex(0.0, 0.0));
    const double nested_tol = std::max(tol, 0.1 * slack_tol);

    parallel_for(samples.size(), [&](std::size_t i) {
        ChainSample& s = report.samples[i];
        s.z = samples[i];
        try {
            if (!rp.in_domain(s.z)) throw Error(ErrorCode::out_of_domain, "sample outside the domain");
            s.r = radius(rp, s.z);
            if (!(sqrt_e * s.r < rp.boundary_distance(s.z))) {
                throw Error(ErrorCode::precondition_violation, "sqrt(e) r(z) reaches the boundary");
            }
            const HatRadius hat = hat_radius(rp, s.z);
            s.value = u(s.z);
            s.disk_r = disk_mean(u, s.z, s.r, tol);
            s.circle_r = circle_mean(u, s.z, s.r, tol);
            s.disk_sqrt_e_r = disk_mean(u, s.z, sqrt_e * s.r, tol);
            const RealFunction circle_of_u = [&](Complex w) { return circle_mean(u, w, radius(rp, w), 0.01 * nested_tol); };
            s.nested_lhs = disk_mean(circle_of_u, s.z, s.r, nested_tol, kinks);
            s.hat_rhs = circle_mean(u, s.z, hat.value, tol);
        } catch (const Error& e) {
            s.skipped = true;
            s.flag = e.what();
        }
    });

    for (const ChainSample& s : report.samples) {
        if (s.skipped) {
            ++report.skipped;
            continue;
        }
        const auto sl = s.slacks();
        bool bad = false;
        for (std::size_t k = 0; k < 4; ++k) {
            report.worst_slack[k] = std::min(report.worst_slack[k], sl[k]);
            bad = bad || sl[k] < -slack_tol;
        }
        if (bad) ++report.violations;
    }
    return report;
}

} // namespace zerocert
