#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "zerocert/common.hpp"
#include "zerocert/majorants.hpp"
#include "zerocert/measures.hpp"

namespace zerocert {

/// Probability measure built from pieces centred at the pole: uniform
/// circles, an atom at the pole, and smooth annular densities.
class JensenMeasure {
public:
    struct Part {
        enum class Kind { circle, atom, annulus };
        Kind kind;
        double weight;
        double inner = 0.0; // annulus only
        double outer = 0.0; // circle radius or annulus outer radius
        RadialProfile profile; // annulus only, unit mass
    };

    static JensenMeasure uniform_circle(Complex pole, double t, std::optional<Region> domain = std::nullopt);
    static JensenMeasure dirac(Complex pole);
    /// Density 30 (s - a)^2 (b - s)^2 / (b - a)^5 in the radius on a < s < b.
    static JensenMeasure annulus(Complex pole, double a, double b, std::optional<Region> domain = std::nullopt);
    /// Radial density of unit mass about the pole with compact support.
    static JensenMeasure radial_density(Complex pole, RadialProfile profile, std::optional<Region> domain = std::nullopt);
    /// Convex combination; all members must share the pole.
    static JensenMeasure mixture(std::span<const std::pair<double, JensenMeasure>> members);

    Complex pole() const { return pole_; }
    const std::vector<Part>& parts() const { return parts_; }
    double total_mass() const;
    /// Largest distance from the pole carrying mass.
    double support_radius() const;

    /// The measure as a charge.
    RieszCharge as_charge() const;

    /// integral of u d mu; `singular` lists logarithmic singularities of u.
    double integrate(const std::function<double(Complex)>& u, double tol, std::span<const Complex> singular = {}) const;
    double integrate(const SubharmonicModel& u, double tol) const;

private:
    Complex pole_;
    std::vector<Part> parts_;
};

/// Annulus density of JensenMeasure::annulus as a radial profile of unit mass.
RadialProfile annulus_bump_profile(double a, double b);

/// Positive potential with a logarithmic pole. Represented by its charge off
/// the pole (circles and annular densities centred at the pole) and the
/// pole coefficient:
///   V(z) = integral ln|z' - z| d nu(z') - c ln|z - z0|.
class JensenPotential {
public:
    JensenPotential(Complex pole, RieszCharge off_pole, double pole_coefficient);

    /// +inf at the pole when the coefficient is positive, 0 there otherwise.
    ExtendedReal eval(Complex z) const;
    double operator()(Complex z) const { return eval(z).to_double(); }

    Complex pole() const { return pole_; }
    double pole_coefficient() const { return coefficient_; }
    const RieszCharge& off_pole_charge() const { return charge_; }
    /// V vanishes for |z - pole| >= support_radius.
    double support_radius() const;

private:
    Complex pole_;
    RieszCharge charge_;
    double coefficient_;
};

JensenPotential log_potential(const JensenMeasure& mu);

/// Inverse map: mu = Delta_V off the pole + (1 - c) delta_pole. Throws
/// invalid-potential when c > 1, c < 0, or the off-pole mass differs from c.
JensenMeasure potential_to_measure(const JensenPotential& V);

/// Fits V(z0 + r) / ln(1/r) = c + B / ln(1/r) over r = 10^-3 .. 10^-6
/// (averaged over a few directions) and returns the intercept c.
double estimate_pole_coefficient(const std::function<double(Complex)>& V, Complex pole);

/// |u(z0) - (integral u d mu - integral V_mu d Delta_u)|. Throws
/// precondition-violation when u(z0) = -inf.
double poisson_jensen_check(const SubharmonicModel& u, const JensenMeasure& mu, double tol);

/// Green function of disk(0, R) with pole z0.
std::function<double(Complex)> green_disk(double R, Complex z0);

} // namespace zerocert
