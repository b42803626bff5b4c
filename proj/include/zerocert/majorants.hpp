#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zerocert/common.hpp"
#include "zerocert/measures.hpp"

namespace zerocert {

/// A subharmonic function on the plane together with its Riesz charge.
class SubharmonicModel {
public:
    enum class Kind { radial_power, log_poly, log_abs_poly, custom_radial, harmonic_poly, sum };

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }

    /// Value in [-inf, +inf); -inf only at atoms of the charge.
    ExtendedReal eval(Complex z) const { return ExtendedReal(f_(z)); }
    /// IEEE view of eval, for quadrature loops.
    double operator()(Complex z) const { return f_(z); }
    const std::function<double(Complex)>& function() const { return f_; }

    const RieszCharge& riesz() const { return riesz_; }
    /// Points where the function is -inf or not smooth; quadrature hints.
    const std::vector<Complex>& singular_points() const { return singular_; }

    /// Kind-specific parameters (sigma, rho for radial-power; coefficients otherwise).
    const std::vector<double>& params() const { return params_; }

    /// (center, radius) -> circle mean, for kinds with a closed form; empty otherwise.
    using CircleMean = std::function<double(Complex, double)>;
    const CircleMean& exact_circle_mean() const { return mean_; }
    SubharmonicModel& with_circle_mean(CircleMean m) {
        mean_ = std::move(m);
        return *this;
    }

    SubharmonicModel scaled(double factor) const;
    friend SubharmonicModel operator+(const SubharmonicModel& a, const SubharmonicModel& b);

    // Raw constructor for callers that already hold a validated charge.
    SubharmonicModel(Kind kind, std::string name, std::function<double(Complex)> f, RieszCharge riesz,
                     std::vector<Complex> singular = {}, std::vector<double> params = {});

private:
    Kind kind_;
    std::string name_;
    std::function<double(Complex)> f_;
    RieszCharge riesz_;
    std::vector<Complex> singular_;
    std::vector<double> params_;
    CircleMean mean_;
};

/// (1/2pi) integral of |c + t e^{i theta}|^rho, rho > 0.
double radial_power_circle_mean(double rho, double c_abs, double t);

/// sigma |z|^rho
SubharmonicModel make_radial_power(double sigma, double rho);

/// ln(1 + |z|^2)
SubharmonicModel make_log_poly();

/// ln|q(z)| for q(z) = sum_k coeffs[k] z^k. Roots come from the companion
/// matrix, are clustered into multiplicities and polished by Newton steps.
SubharmonicModel make_log_abs_poly(std::span<const Complex> coeffs);

/// ln|leading * prod (z - r_j)^{m_j}|
SubharmonicModel make_log_abs_poly_from_roots(Complex leading, std::span<const ZeroPoint> roots);

/// Re sum_k coeffs[k] z^k. Empty coefficients give the zero function.
SubharmonicModel make_harmonic_poly(std::span<const Complex> coeffs);

/// Radial u(z) = value(|z|), which must be convex in ln r and finite for r > 0.
/// `r_du_dr` is r u'(r); when absent it is taken by central differences.
/// Convexity is spot-checked on r in [1e-4, 1e4].
SubharmonicModel make_custom_radial(std::string name, std::function<double(double)> value,
                                    std::function<double(double)> r_du_dr = {});

/// Roots of q(z) = sum_k coeffs[k] z^k with multiplicities.
std::vector<ZeroPoint> polynomial_roots(std::span<const Complex> coeffs);

/// M = M_up - M_low with charge up.riesz - low.riesz.
struct DSubharmonicMajorant {
    SubharmonicModel up;
    SubharmonicModel low;
    RieszCharge charge;

    DSubharmonicMajorant(SubharmonicModel up_, SubharmonicModel low_);
};

/// up(z) - low(z), and +inf wherever low(z) = -inf.
ExtendedReal eval_M(const DSubharmonicMajorant& M, Complex z);

} // namespace zerocert
