#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "zerocert/common.hpp"
#include "zerocert/majorants.hpp"
#include "zerocert/measures.hpp"

namespace zerocert {

enum class Verdict { consistent, violated, inconclusive };

const char* to_string(Verdict v);

/// Test family pulled back by inversion: v_tau(z) = phi(ln tau - ln|z|) with
/// phi the truncated log (eps = 0) or the capped-log profile of width eps.
struct FamilySpec {
    enum class Kind { truncated_log, smooth_capped_log };
    Kind kind = Kind::truncated_log;
    double eps = 0.1;

    double width() const { return kind == Kind::truncated_log ? 0.0 : eps; }
    double profile(double tau, double modulus) const;
};

struct MarginSample {
    double tau;
    double lhs;
    double lhs_err;
    double rhs;
    double rhs_err;
    double margin;
    double margin_err;
};

struct DroppedSample {
    double tau;
    std::string reason;
};

struct GrowthFit {
    double exponent = 0.0;   // log-log slope of the margin over the fit window
    double confidence = 0.0; // R^2 of that regression
    bool positive = false;   // margin > 0 throughout the window
};

/// margin ~ a tau + b ln tau + c
struct LinearLogFit {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double rms = 0.0;
};

struct MarginCurve {
    std::vector<MarginSample> samples;
    std::vector<DroppedSample> dropped;
    Verdict verdict = Verdict::inconclusive;
    GrowthFit fit;
    std::string reason;
};

struct SweepOptions {
    /// Absolute tolerance per radial part of the right-hand side.
    double tol = 1e-9;
};

/// lhs(tau) = sum_j mult_j v_tau(z_j) and rhs(tau) = integral over C \ 0 of
/// v_tau d Delta_M, for each tau. Samples whose rhs does not settle on the
/// inner-cutoff ladder 10^-2, 10^-4, ..., 10^-64 are dropped as not
/// Delta_M-summable.
MarginCurve margin_sweep(const ZeroDistribution& Z, const DSubharmonicMajorant& M, const FamilySpec& family,
                         std::span<const double> taus, const SweepOptions& options = {});

GrowthFit fit_growth(const MarginCurve& curve, double tau_lo, double tau_hi);
LinearLogFit fit_linear_log(const MarginCurve& curve, double tau_lo, double tau_hi);

struct M0Grid {
    double r_max = 100.0;
    int points_per_shell = 8;
    int angles = 4;
};

struct M0Cell {
    Complex z;
    double deviation;
    bool flagged = false;
};

struct M0Report {
    double C_estimate = 0.0;
    bool bounded = false;
    std::vector<double> shell_sup;      // shell 0 is |z| <= 1, shell j is 2^(j-1) < |z| <= 2^j
    std::vector<double> cumulative_sup; // sup over shells 0..j
    std::vector<M0Cell> cells;
    std::size_t flagged = 0;
};

/// deviation(z) = circle mean of M_up over radius (1+|z|)^-P minus M_up(z).
M0Report check_m0(const SubharmonicModel& M_up, double P, const M0Grid& grid, double tol = 1e-11);

struct Lemma1Setup {
    Complex domain_center{0.0, 0.0};
    double domain_radius = 1.0;
    Complex set_center{0.0, 0.0};
    double set_radius = 0.5;
    Complex z0{0.0, 0.0};
    double b = 1.0;
};

struct Lemma1Constants {
    double C = 0.0;
    double green_inf = 0.0;
    double C_bar = 0.0;
    double C_bar_error = 0.0;
    std::array<double, 3> terms{}; // Green integral, lower-variation integral, M+(z0)
};

/// C = b / inf over the boundary of S of the Green function of the disk with
/// pole z0, and C_bar as the sum of `terms`. Throws invalid-setup on bad geometry.
Lemma1Constants lemma1_constants(const Lemma1Setup& setup, const DSubharmonicMajorant& M, double tol = 1e-10);

} // namespace zerocert
