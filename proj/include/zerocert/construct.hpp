#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "zerocert/common.hpp"
#include "zerocert/criterion.hpp"
#include "zerocert/majorants.hpp"
#include "zerocert/means.hpp"
#include "zerocert/measures.hpp"

namespace zerocert {

/// Smallest p with sum |z_j|^(-p-1) < inf. Finite sets give 0, generators with
/// a density law give floor(exponent), anything else is probed by dyadic block
/// sums up to `probe_radius`. Throws genus-overflow past p = 8.
int genus(const ZeroDistribution& Z, double probe_radius = 4096.0);

inline constexpr double kGuardRadius = 1e-12;
inline constexpr std::size_t kDefaultShells = 10000;

/// Canonical product prod E_p(z / z_j) over the zeros on the first K distinct
/// moduli, plus an estimate of what the dropped factors contribute.
class ProductRepresentation {
public:
    struct Value {
        ExtendedReal log_abs;
        double tail_bound; // bound on |ln|f(z)| - log_abs| from dropped factors; inf when unknown
    };

    /// `shells` = number of distinct moduli kept. Unset keeps every zero of a
    /// finite Z and kDefaultShells otherwise.
    ProductRepresentation(const ZeroDistribution& Z, int p, std::optional<std::size_t> shells = std::nullopt);

    int genus() const { return p_; }
    std::size_t retained() const { return inv_re_.size(); }
    std::size_t shells() const { return shells_; }
    double retained_radius() const { return radius_; }
    bool complete() const { return complete_; }

    Value eval(Complex z) const;
    ExtendedReal eval_log_abs(Complex z) const { return eval(z).log_abs; }
    double tail_bound(Complex z) const;

    /// Argument-principle count of retained zeros inside the circle |z - c| = r.
    int winding_number(Complex c, double r, int samples = 4096) const;

private:
    int p_;
    std::vector<double> inv_re_;
    std::vector<double> inv_im_;
    std::vector<Complex> zeros_;
    std::size_t shells_ = 0;
    double radius_ = 0.0;
    bool complete_ = true;
    double tail_sum_ = 0.0; // sum over dropped zeros of |z_j|^(-p-1)
};

ExtendedReal weierstrass_log_abs(const ZeroDistribution& Z, int p, Complex z,
                                 std::optional<std::size_t> shells = std::nullopt);

enum class DomainKind { plane, simply_connected, general };

const char* to_string(DomainKind k);

/// 0 on the plane, ln(1/r(z)) on a simply connected proper domain, and
/// ln(1/r(z)) + (1 + a) ln(1 + |z|) otherwise.
double remainder_R(DomainKind domain, const RadiusProfile& rp, double a, Complex z);

struct SufficiencyGrid {
    double r_max = 10.0;
    int radial = 24;
    int angles = 48;
};

struct SufficiencyOptions {
    std::optional<int> genus;
    std::optional<std::size_t> shells;
    DomainKind domain = DomainKind::plane;
    double a = 1.0;
    double tol = 1e-8;
    bool allow_balancing = true;
    /// Verdict of margin_sweep on the same pair, if known. "violated" refuses certification.
    std::optional<Verdict> necessary;
};

struct SufficiencyPoint {
    Complex z;
    double log_abs_f; // includes the balancing factor
    double tail;
    double bound;     // M_up circle mean at rhat - M_low + R
    double excess;    // max(0, log_abs_f + tail - bound)
    bool skipped = false;
};

struct Violation {
    Complex z;
    double excess;
};

struct SufficiencyReport {
    std::vector<SufficiencyPoint> grid;
    std::vector<Violation> violations;
    double max_excess = 0.0;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;
    int genus = 0;
    std::size_t retained = 0;
    bool balanced = false;
    std::vector<Complex> balancing; // coefficients of P in exp(P), ascending
    bool refused = false;
    bool certified = false;
    std::string reason;
};

SufficiencyReport verify_sufficiency(const ZeroDistribution& Z, const DSubharmonicMajorant& M, const RadiusProfile& rp,
                                     const SufficiencyGrid& grid = {}, const SufficiencyOptions& options = {});

} // namespace zerocert
