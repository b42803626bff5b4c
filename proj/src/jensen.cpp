#include "zerocert/jensen.hpp"

#include <algorithm>
#include <cmath>

#include "zerocert/quadrature.hpp"

namespace zerocert {

namespace {

void check_inside(const std::optional<Region>& domain, Complex pole, double outer) {
    if (!domain) return;
    if (!domain->contains(pole) || !domain->arcs(pole, outer).is_full()) {
        throw Error(ErrorCode::out_of_domain, "Jensen measure support leaves the domain");
    }
}

double profile_mass(const RadialProfile& p) {
    if (p.mass_within) return p.mass_within(p.support_end);
    return quad::integrate(p.density, 0.0, p.support_end, 1e-13, p.breakpoints).value;
}

} // namespace

RadialProfile annulus_bump_profile(double a, double b) {
    if (!(a >= 0.0) || !(b > a)) throw Error(ErrorCode::invalid_parameter, "annulus needs 0 <= a < b");
    const double L = b - a;
    const double c = 30.0 / std::pow(L, 5);
    RadialProfile p;
    p.density = [a, b, c](double s) {
        if (s <= a || s >= b) return 0.0;
        const double x = s - a;
        const double y = b - s;
        return c * x * x * y * y;
    };
    p.mass_within = [a, b, L, c](double t) {
        const double x = std::clamp(t, a, b) - a;
        return c * (L * L * x * x * x / 3.0 - L * x * x * x * x / 2.0 + x * x * x * x * x / 5.0);
    };
    p.support_end = b;
    p.breakpoints = {a, b};
    return p;
}

JensenMeasure JensenMeasure::uniform_circle(Complex pole, double t, std::optional<Region> domain) {
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::invalid_parameter, "circle radius must be > 0");
    check_inside(domain, pole, t);
    JensenMeasure m;
    m.pole_ = pole;
    m.parts_.push_back({Part::Kind::circle, 1.0, 0.0, t, {}});
    return m;
}

JensenMeasure JensenMeasure::dirac(Complex pole) {
    JensenMeasure m;
    m.pole_ = pole;
    m.parts_.push_back({Part::Kind::atom, 1.0, 0.0, 0.0, {}});
    return m;
}

JensenMeasure JensenMeasure::annulus(Complex pole, double a, double b, std::optional<Region> domain) {
    return radial_density(pole, annulus_bump_profile(a, b), domain);
}

JensenMeasure JensenMeasure::radial_density(Complex pole, RadialProfile profile, std::optional<Region> domain) {
    if (!profile.density || !std::isfinite(profile.support_end)) {
        throw Error(ErrorCode::invalid_parameter, "radial Jensen density needs a compactly supported profile");
    }
    const double mass = profile_mass(profile);
    if (std::abs(mass - 1.0) > 1e-9) throw Error(ErrorCode::invalid_parameter, "radial Jensen density must have unit mass");
    check_inside(domain, pole, profile.support_end);
    double inner = profile.support_end;
    for (double b : profile.breakpoints) inner = std::min(inner, b);
    JensenMeasure m;
    m.pole_ = pole;
    const double outer = profile.support_end;
    m.parts_.push_back({Part::Kind::annulus, 1.0, inner, outer, std::move(profile)});
    return m;
}

JensenMeasure JensenMeasure::mixture(std::span<const std::pair<double, JensenMeasure>> members) {
    if (members.empty()) throw Error(ErrorCode::invalid_parameter, "empty mixture");
    JensenMeasure m;
    m.pole_ = members.front().second.pole_;
    double total = 0.0;
    for (const auto& [w, mu] : members) {
        if (!(w >= 0.0)) throw Error(ErrorCode::invalid_parameter, "mixture weights must be >= 0");
        if (mu.pole_ != m.pole_) throw Error(ErrorCode::invalid_parameter, "mixture members must share the pole");
        total += w;
        for (Part p : mu.parts_) {
            p.weight *= w;
            if (p.weight > 0.0) m.parts_.push_back(std::move(p));
        }
    }
    if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::invalid_parameter, "mixture weights must sum to 1");
    return m;
}

double JensenMeasure::total_mass() const {
    double m = 0.0;
    for (const auto& p : parts_) m += p.weight;
    return m;
}

double JensenMeasure::support_radius() const {
    double r = 0.0;
    for (const auto& p : parts_) r = std::max(r, p.outer);
    return r;
}

RieszCharge JensenMeasure::as_charge() const {
    RieszCharge c;
    for (const auto& p : parts_) {
        switch (p.kind) {
        case Part::Kind::circle: c.add_shell(pole_, p.outer, p.weight); break;
        case Part::Kind::atom: c.add_atom(pole_, p.weight); break;
        case Part::Kind::annulus: c.add_radial(pole_, p.profile, p.weight); break;
        }
    }
    return c;
}

double JensenMeasure::integrate(const std::function<double(Complex)>& u, double tol,
                                std::span<const Complex> singular) const {
    const ChargeIntegral r = integrate_against(as_charge(), u, PlaneSet::of(Region::plane()), tol, singular);
    if (!r.converged) throw ToleranceFailure("integral against a Jensen measure", r.error);
    return r.value;
}

double JensenMeasure::integrate(const SubharmonicModel& u, double tol) const {
    return integrate(u.function(), tol, u.singular_points());
}

JensenPotential::JensenPotential(Complex pole, RieszCharge off_pole, double pole_coefficient)
    : pole_(pole), charge_(std::move(off_pole)), coefficient_(pole_coefficient) {
    if (!std::isfinite(coefficient_)) throw Error(ErrorCode::invalid_potential, "pole coefficient must be finite");
    if (!charge_.atoms().empty()) throw Error(ErrorCode::invalid_potential, "off-pole charge may not contain atoms");
    for (const auto& s : charge_.shells()) {
        if (s.center != pole_) throw Error(ErrorCode::invalid_potential, "shells must be centred at the pole");
    }
    for (const auto& r : charge_.radial()) {
        if (r.center != pole_) throw Error(ErrorCode::invalid_potential, "radial parts must be centred at the pole");
        if (!std::isfinite(r.profile.support_end)) throw Error(ErrorCode::invalid_potential, "radial part must be compactly supported");
    }
}

ExtendedReal JensenPotential::eval(Complex z) const {
    const double rho = std::abs(z - pole_);
    if (rho == 0.0) return coefficient_ > 0.0 ? ExtendedReal::plus_infinity() : ExtendedReal(0.0);
    double v = 0.0;
    double mass = 0.0;
    for (const auto& s : charge_.shells()) {
        mass += s.mass;
        if (s.radius > rho) v += s.mass * std::log(s.radius / rho);
    }
    for (const auto& r : charge_.radial()) {
        const RadialProfile& p = r.profile;
        mass += r.sign * profile_mass(p);
        if (p.support_end <= rho) continue;
        auto integrand = [&](double s) { return p.density(s) * std::log(s / rho); };
        v += r.sign * quad::integrate(integrand, rho, p.support_end, 1e-14, p.breakpoints).value;
    }
    // Vanishes identically only when the off-pole mass matches the coefficient.
    v += (mass - coefficient_) * std::log(rho);
    return ExtendedReal(v);
}

double JensenPotential::support_radius() const {
    double r = 0.0;
    for (const auto& s : charge_.shells()) r = std::max(r, s.radius);
    for (const auto& p : charge_.radial()) r = std::max(r, p.profile.support_end);
    return r;
}

JensenPotential log_potential(const JensenMeasure& mu) {
    if (std::abs(mu.total_mass() - 1.0) > 1e-12) throw Error(ErrorCode::invalid_parameter, "Jensen measure must have unit mass");
    RieszCharge off;
    double coefficient = 0.0;
    for (const auto& p : mu.parts()) {
        if (p.kind == JensenMeasure::Part::Kind::atom) continue;
        coefficient += p.weight;
        if (p.kind == JensenMeasure::Part::Kind::circle) {
            off.add_shell(mu.pole(), p.outer, p.weight);
        } else {
            off.add_radial(mu.pole(), p.profile, p.weight);
        }
    }
    return JensenPotential(mu.pole(), std::move(off), coefficient);
}

JensenMeasure potential_to_measure(const JensenPotential& V) {
    const double c = V.pole_coefficient();
    if (c > 1.0 + 1e-12) throw Error(ErrorCode::invalid_potential, "pole coefficient exceeds 1");
    if (c < 0.0) throw Error(ErrorCode::invalid_potential, "negative pole coefficient");
    std::vector<std::pair<double, JensenMeasure>> members;
    double mass = 0.0;
    for (const auto& s : V.off_pole_charge().shells()) {
        if (s.mass < 0.0) throw Error(ErrorCode::invalid_potential, "negative off-pole charge");
        mass += s.mass;
        members.push_back({s.mass, JensenMeasure::uniform_circle(V.pole(), s.radius)});
    }
    for (const auto& r : V.off_pole_charge().radial()) {
        if (r.sign < 0.0) throw Error(ErrorCode::invalid_potential, "negative off-pole charge");
        const double m = r.sign * profile_mass(r.profile);
        mass += m;
        RadialProfile p = r.profile;
        const double pm = profile_mass(r.profile);
        auto dens = p.density;
        p.density = [dens, pm](double s) { return dens(s) / pm; };
        if (p.mass_within) {
            auto mw = p.mass_within;
            p.mass_within = [mw, pm](double t) { return mw(t) / pm; };
        }
        members.push_back({m, JensenMeasure::radial_density(V.pole(), std::move(p))});
    }
    if (std::abs(mass - c) > 1e-9) {
        throw Error(ErrorCode::invalid_potential, "off-pole mass " + std::to_string(mass) + " differs from the pole coefficient");
    }
    if (1.0 - c > 0.0) members.push_back({1.0 - c, JensenMeasure::dirac(V.pole())});
    return JensenMeasure::mixture(members);
}

double estimate_pole_coefficient(const std::function<double(Complex)>& V, Complex pole) {
    const double dirs[] = {0.3, 2.4, 4.5};
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (int k = 3; k <= 6; ++k) {
        const double r = std::pow(10.0, -k);
        double v = 0.0;
        for (double d : dirs) v += V(pole + std::polar(r, d));
        v /= 3.0;
        const double L = std::log(1.0 / r);
        const double x = 1.0 / L;
        const double y = v / L;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return (sy - slope * sx) / n;
}

double poisson_jensen_check(const SubharmonicModel& u, const JensenMeasure& mu, double tol) {
    const double u0 = u(mu.pole());
    if (u0 == -kInf) throw Error(ErrorCode::precondition_violation, "u(z0) = -inf");
    const double mean = mu.integrate(u, 0.5 * tol);
    const JensenPotential V = log_potential(mu);
    const Complex pole = mu.pole();
    const ChargeIntegral flux = integrate_against(
        u.riesz(), [&V](Complex z) { return V(z); }, PlaneSet::of(Region::disk(pole, V.support_radius())), 0.5 * tol,
        std::span<const Complex>(&pole, 1));
    if (!flux.converged) throw ToleranceFailure("Riesz integral of the Jensen potential", flux.error);
    return std::abs(u0 - (mean - flux.value));
}

std::function<double(Complex)> green_disk(double R, Complex z0) {
    if (!(R > 0.0) || !(std::abs(z0) < R)) throw Error(ErrorCode::invalid_parameter, "green_disk needs |z0| < R");
    return [R, z0](Complex z) { return std::log(std::abs(R * R - std::conj(z0) * z)) - std::log(R * std::abs(z - z0)); };
}

} // namespace zerocert
