#include "zerocert/majorants.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "zerocert/quadrature.hpp"

namespace zerocert {

SubharmonicModel::SubharmonicModel(Kind kind, std::string name, std::function<double(Complex)> f, RieszCharge riesz,
                                   std::vector<Complex> singular, std::vector<double> params)
    : kind_(kind), name_(std::move(name)), f_(std::move(f)), riesz_(std::move(riesz)), singular_(std::move(singular)),
      params_(std::move(params)) {}

SubharmonicModel SubharmonicModel::scaled(double factor) const {
    if (!(factor >= 0.0) || !std::isfinite(factor)) {
        throw Error(ErrorCode::invalid_parameter, "subharmonic models scale by finite non-negative factors only");
    }
    if (factor == 0.0) return make_harmonic_poly({});
    auto f = f_;
    SubharmonicModel out = *this;
    out.f_ = [f, factor](Complex z) { return factor * f(z); };
    out.riesz_ = riesz_.scaled(factor);
    out.name_ = std::to_string(factor) + "*(" + name_ + ")";
    if (mean_) {
        auto m = mean_;
        out.mean_ = [m, factor](Complex c, double t) { return factor * m(c, t); };
    }
    return out;
}

SubharmonicModel operator+(const SubharmonicModel& a, const SubharmonicModel& b) {
    auto fa = a.f_;
    auto fb = b.f_;
    std::vector<Complex> singular = a.singular_;
    singular.insert(singular.end(), b.singular_.begin(), b.singular_.end());
    SubharmonicModel out(
        SubharmonicModel::Kind::sum, a.name_ + " + " + b.name_, [fa, fb](Complex z) { return fa(z) + fb(z); },
        a.riesz_ + b.riesz_, std::move(singular));
    if (a.mean_ && b.mean_) {
        auto ma = a.mean_;
        auto mb = b.mean_;
        out.mean_ = [ma, mb](Complex c, double t) { return ma(c, t) + mb(c, t); };
    }
    return out;
}

double radial_power_circle_mean(double rho, double c_abs, double t) {
    const double big = std::max(c_abs, t);
    const double q = std::min(c_abs, t) / big;
    if (big == 0.0) return 0.0;
    const double scale = std::pow(big, rho);
    if (q == 0.0) return scale;
    if (rho == 1.0) {
        const double k = 2.0 * std::sqrt(c_abs * t) / (c_abs + t);
        return (c_abs + t) * std::comp_ellint_2(std::min(k, 1.0)) * 2.0 / kPi;
    }
    // |1 + q e^{i theta}|^rho averages to 2F1(-rho/2, -rho/2; 1; q^2).
    const double half = 0.5 * rho;
    const bool even = half == std::floor(half);
    if (even || q <= 0.9) {
        double term = 1.0;
        double sum = 1.0;
        const double q2 = q * q;
        for (int n = 0; n < 2000; ++n) {
            term *= (n - half) / (n + 1.0);
            term *= (n - half) / (n + 1.0) * q2;
            sum += term;
            if (term == 0.0 || std::abs(term) <= 1e-17 * std::abs(sum)) break;
        }
        return scale * sum;
    }
    auto f = [q, rho](double th) { return std::pow(std::abs(Complex(1.0, 0.0) + std::polar(q, th)), rho); };
    return scale * quad::adaptive(f, 0.0, kPi, 1e-14 * kPi).value / kPi;
}

SubharmonicModel make_radial_power(double sigma, double rho) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error(ErrorCode::invalid_parameter, "radial power needs sigma > 0");
    if (!(rho > 0.0) || !std::isfinite(rho)) throw Error(ErrorCode::invalid_parameter, "radial power needs rho > 0");
    RadialProfile p;
    p.density = [sigma, rho](double s) { return sigma * rho * rho * std::pow(s, rho - 1.0); };
    p.mass_within = [sigma, rho](double t) { return sigma * rho * std::pow(t, rho); };
    p.singular_at_zero = rho < 1.0;
    RieszCharge charge;
    charge.add_radial(0.0, std::move(p));
    const bool smooth_power = rho == 2.0 * std::floor(rho / 2.0);
    SubharmonicModel out(
        SubharmonicModel::Kind::radial_power, "radial-power", [sigma, rho](Complex z) { return sigma * std::pow(std::abs(z), rho); },
        std::move(charge), smooth_power ? std::vector<Complex>{} : std::vector<Complex>{Complex(0.0, 0.0)}, {sigma, rho});
    out.with_circle_mean([sigma, rho](Complex c, double t) { return sigma * radial_power_circle_mean(rho, std::abs(c), t); });
    return out;
}

SubharmonicModel make_log_poly() {
    RadialProfile p;
    p.density = [](double s) {
        const double q = 1.0 + s * s;
        return 4.0 * s / (q * q);
    };
    p.mass_within = [](double t) { return 2.0 * t * t / (1.0 + t * t); };
    RieszCharge charge;
    charge.add_radial(0.0, std::move(p));
    return SubharmonicModel(
        SubharmonicModel::Kind::log_poly, "log-poly", [](Complex z) { return std::log1p(std::norm(z)); },
        std::move(charge));
}

namespace {

Complex horner(std::span<const Complex> c, Complex z) {
    Complex v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * z + c[k];
    return v;
}

std::vector<Complex> derivative(std::span<const Complex> c) {
    std::vector<Complex> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    return d;
}

std::vector<Complex> trimmed(std::span<const Complex> coeffs) {
    std::vector<Complex> c(coeffs.begin(), coeffs.end());
    while (!c.empty() && c.back() == Complex(0.0, 0.0)) c.pop_back();
    if (c.empty()) throw Error(ErrorCode::invalid_parameter, "polynomial is identically zero");
    return c;
}

} // namespace

std::vector<ZeroPoint> polynomial_roots(std::span<const Complex> coeffs) {
    const std::vector<Complex> c = trimmed(coeffs);
    const std::size_t n = c.size() - 1;
    std::vector<ZeroPoint> out;
    if (n == 0) return out;

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 1; i < n; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < n; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::tolerance_failure, "companion eigenvalues did not converge");
    std::vector<Complex> raw(solver.eigenvalues().data(), solver.eigenvalues().data() + n);

    // Multiple roots split into rings of radius ~ eps^(1/m); regroup them.
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        std::vector<Complex> cluster{raw[i]};
        used[i] = true;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!used[j] && std::abs(raw[j] - raw[i]) <= 1e-4 * (1.0 + std::abs(raw[i]))) {
                cluster.push_back(raw[j]);
                used[j] = true;
            }
        }
        Complex r = 0.0;
        for (const Complex& x : cluster) r += x;
        r /= static_cast<double>(cluster.size());
        out.push_back({r, static_cast<int>(cluster.size())});
    }

    for (auto& root : out) {
        // Newton on the (m-1)-th derivative, where the root is simple.
        std::vector<Complex> q = c;
        for (int k = 1; k < root.multiplicity; ++k) q = derivative(q);
        const std::vector<Complex> dq = derivative(q);
        Complex z = root.location;
        for (int it = 0; it < 20; ++it) {
            const Complex d = horner(dq, z);
            if (d == Complex(0.0, 0.0)) break;
            const Complex step = horner(q, z) / d;
            z -= step;
            if (std::abs(step) <= 1e-17 * (1.0 + std::abs(z))) break;
        }
        if (std::abs(z - root.location) <= 1e-3 * (1.0 + std::abs(root.location))) root.location = z;
    }
    std::sort(out.begin(), out.end(), [](const ZeroPoint& a, const ZeroPoint& b) {
        return std::make_pair(a.location.real(), a.location.imag()) < std::make_pair(b.location.real(), b.location.imag());
    });
    return out;
}

SubharmonicModel make_log_abs_poly_from_roots(Complex leading, std::span<const ZeroPoint> roots) {
    if (leading == Complex(0.0, 0.0)) throw Error(ErrorCode::invalid_parameter, "polynomial is identically zero");
    std::vector<ZeroPoint> rs(roots.begin(), roots.end());
    RieszCharge charge;
    std::vector<Complex> singular;
    std::vector<double> params{leading.real(), leading.imag()};
    for (const auto& r : rs) {
        if (r.multiplicity < 1) throw Error(ErrorCode::invalid_parameter, "root multiplicity must be >= 1");
        charge.add_atom(r.location, r.multiplicity);
        singular.push_back(r.location);
        params.insert(params.end(), {r.location.real(), r.location.imag(), static_cast<double>(r.multiplicity)});
    }
    const double log_lead = std::log(std::abs(leading));
    auto f = [rs, log_lead](Complex z) {
        double v = log_lead;
        for (const auto& r : rs) v += r.multiplicity * std::log(std::abs(z - r.location));
        return v;
    };
    SubharmonicModel out(SubharmonicModel::Kind::log_abs_poly, "log-abs-poly", f, std::move(charge), std::move(singular),
                         std::move(params));
    out.with_circle_mean([rs, log_lead](Complex c, double t) {
        double v = log_lead;
        for (const auto& r : rs) v += r.multiplicity * std::log(std::max(std::abs(c - r.location), t));
        return v;
    });
    return out;
}

SubharmonicModel make_log_abs_poly(std::span<const Complex> coeffs) {
    const std::vector<Complex> c = trimmed(coeffs);
    const auto roots = polynomial_roots(c);
    return make_log_abs_poly_from_roots(c.back(), roots);
}

SubharmonicModel make_harmonic_poly(std::span<const Complex> coeffs) {
    std::vector<Complex> c(coeffs.begin(), coeffs.end());
    std::vector<double> params;
    for (const Complex& x : c) params.insert(params.end(), {x.real(), x.imag()});
    SubharmonicModel out(
        SubharmonicModel::Kind::harmonic_poly, c.empty() ? "zero" : "harmonic-poly",
        [c](Complex z) { return horner(c, z).real(); }, RieszCharge{}, {}, std::move(params));
    out.with_circle_mean([c](Complex z, double) { return horner(c, z).real(); });
    return out;
}

SubharmonicModel make_custom_radial(std::string name, std::function<double(double)> value,
                                    std::function<double(double)> r_du_dr) {
    if (!value) throw Error(ErrorCode::invalid_parameter, "custom radial model without value function");
    if (!r_du_dr) {
        r_du_dr = [value](double r) {
            const double h = 1e-5;
            return (value(r * std::exp(h)) - value(r * std::exp(-h))) / (2.0 * h);
        };
    }
    // Subharmonic radial functions are exactly the convex functions of ln r.
    const int n = 200;
    const double x0 = std::log(1e-4);
    const double x1 = std::log(1e4);
    const double h = (x1 - x0) / n;
    for (int i = 1; i < n; ++i) {
        const double x = x0 + i * h;
        const double a = value(std::exp(x - h));
        const double b = value(std::exp(x));
        const double c = value(std::exp(x + h));
        if (a - 2.0 * b + c < -1e-8 * (1.0 + std::abs(b))) {
            throw Error(ErrorCode::invalid_parameter, "custom radial profile is not convex in ln r near r = " +
                                                          std::to_string(std::exp(x)));
        }
    }

    const double a1 = r_du_dr(1e-10);
    const double a2 = r_du_dr(1e-12);
    const double atom = (std::abs(a1 - a2) <= 1e-6 * (1.0 + std::abs(a1)) && a2 > 1e-12) ? a2 : 0.0;
    RadialProfile p;
    p.mass_within = [r_du_dr, atom](double t) { return t > 0.0 ? r_du_dr(t) - atom : 0.0; };
    p.density = [r_du_dr](double s) {
        const double e = 1e-4;
        return std::max(0.0, (r_du_dr(s * (1.0 + e)) - r_du_dr(s * (1.0 - e))) / (2.0 * e * s));
    };
    p.singular_at_zero = true;
    RieszCharge charge;
    if (atom > 0.0) charge.add_atom(0.0, atom);
    charge.add_radial(0.0, std::move(p));
    std::vector<Complex> singular;
    if (atom > 0.0) singular.push_back(0.0);
    return SubharmonicModel(
        SubharmonicModel::Kind::custom_radial, std::move(name), [value](Complex z) { return value(std::abs(z)); },
        std::move(charge), std::move(singular));
}

DSubharmonicMajorant::DSubharmonicMajorant(SubharmonicModel up_, SubharmonicModel low_)
    : up(std::move(up_)), low(std::move(low_)), charge(up.riesz() - low.riesz()) {}

ExtendedReal eval_M(const DSubharmonicMajorant& M, Complex z) {
    const double lo = M.low(z);
    if (lo == -kInf) return ExtendedReal::plus_infinity();
    const double up = M.up(z);
    return ExtendedReal(up - lo);
}

} // namespace zerocert
