#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zerocert/common.hpp"
#include "zerocert/majorants.hpp"

namespace zerocert {

using RealFunction = std::function<double(Complex)>;

class RadiusProfile {
public:
    enum class Kind { plane_power, disk_fraction };

    /// r(z) = (1 + |z|)^(-P) on the plane.
    static RadiusProfile plane_power(double P);
    /// r(z) = alpha * dist(z, boundary) on disk(0, R).
    static RadiusProfile disk_fraction(double alpha, double R);

    Kind kind() const { return kind_; }
    double P() const { return a_; }
    double alpha() const { return a_; }
    double domain_radius() const { return R_; }

    bool in_domain(Complex z) const;
    /// dist(z, boundary of the domain); +inf on the plane.
    double boundary_distance(Complex z) const;
    /// Lipschitz constant of z -> r(z).
    double lipschitz() const { return a_; }

private:
    RadiusProfile(Kind k, double a, double R) : kind_(k), a_(a), R_(R) {}
    Kind kind_;
    double a_;
    double R_;
};

/// Throws out-of-domain outside the profile's domain.
double radius(const RadiusProfile& rp, Complex z);

struct HatRadius {
    double value;       // best sampled sup of |w - z| + r(w) over |w - z| = r(z)
    double upper_bound; // value plus the Lipschitz gap of the angular grid
};

/// Enlarged radius rhat(z). Throws precondition-violation when the closed
/// disk of radius rhat(z) about z leaves the domain.
HatRadius hat_radius(const RadiusProfile& rp, Complex z);

/// (1/2pi) integral of u(z + t e^{i theta}). `singular` lists points where u
/// has logarithmic singularities. Throws ToleranceFailure on non-convergence.
double circle_mean(const RealFunction& u, Complex z, double t, double tol, std::span<const Complex> singular = {});
double circle_mean(const SubharmonicModel& u, Complex z, double t, double tol);

/// (1/(pi t^2)) integral of u over disk(z, t).
double disk_mean(const RealFunction& u, Complex z, double t, double tol, std::span<const Complex> singular = {});
double disk_mean(const SubharmonicModel& u, Complex z, double t, double tol);

/// Radial mollifier kernel k(|w|) on the closed unit disk.
struct MollifierKernel {
    std::function<double(double)> profile;

    /// (4/pi)(1 - s^2)^3, which has unit mass.
    static MollifierKernel polynomial_bump();
    /// integral over the unit disk of k(|w|) d lambda(w).
    double mass() const;
};

/// integral of u(z + rcheck w) k(|w|) d lambda(w). Throws invalid-kernel when
/// the kernel mass differs from 1 by more than 1e-9.
double mollified_mean(const RealFunction& u, Complex z, double rcheck, const MollifierKernel& kernel, double tol,
                      std::span<const Complex> singular = {});
double mollified_mean(const SubharmonicModel& u, Complex z, double rcheck, const MollifierKernel& kernel, double tol);

/// One sample of the ordering u <= u^{disk r} <= u^{circle r} <= u^{disk sqrt(e) r}
/// and (u^{circle r})^{disk r} <= u^{circle rhat}.
struct ChainSample {
    Complex z;
    double r = 0.0;
    double value = 0.0;
    double disk_r = 0.0;
    double circle_r = 0.0;
    double disk_sqrt_e_r = 0.0;
    double nested_lhs = 0.0;
    double hat_rhs = 0.0;
    bool skipped = false;
    std::string flag;

    /// rhs - lhs for each of the four links; negative means violated.
    std::array<double, 4> slacks() const;
};

struct MeanChainReport {
    std::vector<ChainSample> samples;
    std::array<double, 4> worst_slack{kInf, kInf, kInf, kInf};
    std::size_t violations = 0;
    std::size_t skipped = 0;
    double slack_tolerance = 0.0;

    bool ok() const { return violations == 0; }
};

/// `tol` is the quadrature tolerance; a link counts as violated when its
/// slack is below -slack_tol.
MeanChainReport check_mean_chain(const SubharmonicModel& u, const RadiusProfile& rp, std::span<const Complex> samples,
                                 double tol = 1e-11, double slack_tol = 1e-8);

} // namespace zerocert
