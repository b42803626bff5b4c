#include "zerocert/criterion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>

#include "zerocert/jensen.hpp"
#include "zerocert/kernels.hpp"
#include "zerocert/means.hpp"
#include "zerocert/parallel.hpp"
#include "zerocert/quadrature.hpp"

namespace zerocert {

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

double FamilySpec::profile(double tau, double modulus) const {
    if (modulus == 0.0) return kInf;
    return kernels::capped_log_profile(std::log(tau) - std::log(modulus), width());
}

namespace {

constexpr int kLadderSteps = 6;

// integral over (lo, hi) of density(s) g(s) ds in the variable x = ln s.
quad::Result log_radial(const RadialProfile& p, const std::function<double(double)>& g, double lo, double hi,
                        double tol, const std::vector<double>& breaks) {
    hi = std::min(hi, p.support_end);
    if (!(hi > lo)) return {};
    std::vector<double> xb;
    for (double b : breaks) {
        if (b > lo && b < hi) xb.push_back(std::log(b));
    }
    for (double b : p.breakpoints) {
        if (b > lo && b < hi) xb.push_back(std::log(b));
    }
    auto integrand = [&](double x) {
        const double s = std::exp(x);
        const double d = p.density(s);
        return d == 0.0 ? 0.0 : d * g(s) * s;
    };
    return quad::adaptive(integrand, std::log(lo), std::log(hi), tol, xb);
}

struct RhsValue {
    double value = 0.0;
    double error = 0.0;
    std::optional<std::string> drop;
};

RhsValue right_side(const RieszCharge& charge, const FamilySpec& family, double tau, double tol) {
    RhsValue out;
    const double hi = tau * std::exp(family.width());
    auto g = [&](double s) { return family.profile(tau, s); };
    const std::vector<double> breaks{tau * std::exp(-family.width()), tau};

    for (const auto& a : charge.atoms()) {
        const double m = std::abs(a.location);
        if (m > 0.0 && m <= hi) out.value += a.mass * g(m);
    }
    RieszCharge off_centre;
    for (const auto& s : charge.shells()) {
        if (s.center == Complex(0.0, 0.0)) {
            if (s.radius <= hi) out.value += s.mass * g(s.radius);
        } else {
            off_centre.add_shell(s.center, s.radius, s.mass);
        }
    }
    for (const auto& part : charge.radial()) {
        if (part.center != Complex(0.0, 0.0)) {
            off_centre.add_radial(part.center, part.profile, part.sign);
            continue;
        }
        const double w = part.sign;
        double cut = hi * 1e-2;
        quad::Result main = log_radial(part.profile, g, cut, hi, tol, breaks);
        bool ok = main.converged;
        double value = main.value;
        double err = main.error;
        double last = 0.0;
        for (int k = 1; k <= kLadderSteps; ++k) {
            const double next = hi * std::pow(10.0, -std::pow(2.0, k + 1));
            const quad::Result piece = log_radial(part.profile, g, next, cut, tol, {});
            ok = ok && piece.converged;
            value += piece.value;
            err += piece.error;
            last = piece.value;
            cut = next;
        }
        if (!ok) {
            out.drop = "rhs quadrature did not converge";
            return out;
        }
        if (std::abs(last) > tol) {
            out.drop = "not Delta_M-summable";
            return out;
        }
        out.value += w * value;
        out.error += std::abs(w) * (err + std::abs(last));
    }
    if (!off_centre.empty()) {
        const Complex origin(0.0, 0.0);
        const ChargeIntegral r = integrate_against(
            off_centre, [&](Complex z) { return g(std::abs(z)); },
            PlaneSet::of(Region::annulus(0.0, 0.0, hi)), tol, std::span<const Complex>(&origin, 1));
        if (!r.converged) {
            out.drop = "rhs quadrature did not converge";
            return out;
        }
        out.value += r.value;
        out.error += r.error;
    }
    return out;
}

void classify(MarginCurve& c) {
    const auto& S = c.samples;
    if (S.size() < 4) {
        c.verdict = Verdict::inconclusive;
        c.reason = "fewer than 4 retained samples";
        return;
    }
    const double tmax = S.back().tau;
    const double top_lo = tmax / 10.0;
    std::size_t top_n = 0;
    double sup_top = -kInf;
    double sup_early = -kInf;
    double max_budget = 0.0;
    for (const auto& s : S) {
        max_budget = std::max(max_budget, s.margin_err);
        if (s.tau >= top_lo) {
            ++top_n;
            sup_top = std::max(sup_top, s.margin);
        } else {
            sup_early = std::max(sup_early, s.margin);
        }
    }
    c.fit = fit_growth(c, top_lo, tmax);
    if (top_n < 3) {
        c.verdict = Verdict::inconclusive;
        c.reason = "top decade has fewer than 3 samples";
        return;
    }
    const MarginSample& last = S.back();
    if (c.fit.positive && c.fit.exponent >= 0.5 && last.margin > 10.0 * last.margin_err) {
        c.verdict = Verdict::violated;
        c.reason = "margin grows with exponent " + std::to_string(c.fit.exponent) + " over the top decade";
        return;
    }
    if (sup_early > -kInf && sup_top <= sup_early + 10.0 * max_budget) {
        c.verdict = Verdict::consistent;
        c.reason = "margin over the top decade stays below its earlier supremum";
        return;
    }
    c.verdict = Verdict::inconclusive;
    c.reason = "margin neither bounded nor growing fast enough";
}

} // namespace

MarginCurve margin_sweep(const ZeroDistribution& Z, const DSubharmonicMajorant& M, const FamilySpec& family,
                         std::span<const double> taus, const SweepOptions& options) {
    if (Z.has_point_at_origin()) throw Error(ErrorCode::pole_at_origin, "zero distribution contains 0");
    if (family.kind == FamilySpec::Kind::smooth_capped_log && !(family.eps > 0.0 && family.eps < 1.0)) {
        throw Error(ErrorCode::invalid_parameter, "smoothing width must lie in (0, 1)");
    }
    std::vector<double> grid(taus.begin(), taus.end());
    std::sort(grid.begin(), grid.end());
    for (double t : grid) {
        if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::invalid_parameter, "tau must be positive and finite");
    }
    MarginCurve curve;
    if (grid.empty()) return curve;

    const double tau_max = grid.back();
    const double reach = std::max(4.0 * tau_max, tau_max * std::exp(family.width()));
    const std::vector<double> logs = packed_log_moduli(Z.points_within(reach));

    std::vector<std::optional<MarginSample>> slots(grid.size());
    std::vector<std::string> reasons(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const double tau = grid[i];
        const double shift = std::log(tau);
        const auto end = std::upper_bound(logs.begin(), logs.end(), shift + family.width());
        const std::span<const double> active(logs.data(), static_cast<std::size_t>(end - logs.begin()));
        const double lhs = family.kind == FamilySpec::Kind::truncated_log
                               ? kernels::sum_positive_part(active, shift)
                               : kernels::sum_capped_log(active, shift, family.eps);
        const double lhs_err = 4e-16 * static_cast<double>(active.size()) * std::max(1.0, std::abs(lhs));
        const RhsValue rhs = right_side(M.charge, family, tau, options.tol);
        if (rhs.drop) {
            reasons[i] = *rhs.drop;
            return;
        }
        const double margin = lhs - rhs.value;
        slots[i] = MarginSample{tau, lhs, lhs_err, rhs.value, rhs.error, margin, lhs_err + rhs.error};
    });
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (slots[i]) {
            curve.samples.push_back(*slots[i]);
        } else {
            curve.dropped.push_back({grid[i], reasons[i]});
        }
    }
    classify(curve);
    return curve;
}

GrowthFit fit_growth(const MarginCurve& curve, double tau_lo, double tau_hi) {
    GrowthFit fit;
    std::vector<double> xs;
    std::vector<double> ys;
    bool positive = true;
    for (const auto& s : curve.samples) {
        if (s.tau < tau_lo || s.tau > tau_hi) continue;
        positive = positive && s.margin > 0.0;
        if (s.margin == 0.0) continue;
        xs.push_back(std::log(s.tau));
        ys.push_back(std::log(std::abs(s.margin)));
    }
    fit.positive = positive && !xs.empty();
    const std::size_t n = xs.size();
    if (n < 2) return fit;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) return fit;
    fit.exponent = sxy / sxx;
    fit.confidence = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

LinearLogFit fit_linear_log(const MarginCurve& curve, double tau_lo, double tau_hi) {
    std::vector<const MarginSample*> used;
    for (const auto& s : curve.samples) {
        if (s.tau >= tau_lo && s.tau <= tau_hi) used.push_back(&s);
    }
    LinearLogFit fit;
    if (used.size() < 3) return fit;
    Eigen::MatrixXd A(static_cast<Eigen::Index>(used.size()), 3);
    Eigen::VectorXd y(static_cast<Eigen::Index>(used.size()));
    for (std::size_t i = 0; i < used.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        A(row, 0) = used[i]->tau;
        A(row, 1) = std::log(used[i]->tau);
        A(row, 2) = 1.0;
        y(row) = used[i]->margin;
    }
    const Eigen::Vector3d coef = A.colPivHouseholderQr().solve(y);
    fit.a = coef(0);
    fit.b = coef(1);
    fit.c = coef(2);
    fit.rms = std::sqrt((A * coef - y).squaredNorm() / static_cast<double>(used.size()));
    return fit;
}

M0Report check_m0(const SubharmonicModel& M_up, double P, const M0Grid& grid, double tol) {
    if (!(P >= 0.0)) throw Error(ErrorCode::invalid_parameter, "P must be >= 0");
    if (!(grid.r_max > 1.0) || grid.points_per_shell < 1 || grid.angles < 1) {
        throw Error(ErrorCode::invalid_parameter, "M0 grid needs r_max > 1 and positive counts");
    }
    const int shells = static_cast<int>(std::ceil(std::log2(grid.r_max))) + 1;
    std::vector<std::pair<int, Complex>> points{{0, Complex(0.0, 0.0)}};
    for (int j = 0; j < shells; ++j) {
        const double lo = j == 0 ? 0.0 : std::pow(2.0, j - 1);
        const double hi = std::min(std::pow(2.0, j), grid.r_max);
        if (!(hi > lo)) continue;
        for (int i = 1; i <= grid.points_per_shell; ++i) {
            const double r = lo + (hi - lo) * i / grid.points_per_shell;
            for (int a = 0; a < grid.angles; ++a) {
                points.push_back({j, std::polar(r, 0.1 + kTwoPi * a / grid.angles)});
            }
        }
    }

    M0Report report;
    report.cells.resize(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        M0Cell& cell = report.cells[i];
        cell.z = points[i].second;
        try {
            const double r = std::pow(1.0 + std::abs(cell.z), -P);
            const double centre = M_up(cell.z);
            if (!std::isfinite(centre)) throw Error(ErrorCode::precondition_violation, "M_up not finite at grid point");
            cell.deviation = circle_mean(M_up, cell.z, r, tol) - centre;
        } catch (const Error&) {
            cell.flagged = true;
            cell.deviation = 0.0;
        }
    });

    report.shell_sup.assign(static_cast<std::size_t>(shells), -kInf);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (report.cells[i].flagged) {
            ++report.flagged;
            continue;
        }
        auto& slot = report.shell_sup[static_cast<std::size_t>(points[i].first)];
        slot = std::max(slot, report.cells[i].deviation);
    }
    double running = -kInf;
    for (double s : report.shell_sup) {
        running = std::max(running, s);
        report.cumulative_sup.push_back(running);
    }
    report.C_estimate = std::max(0.0, running);
    const std::size_t n = report.cumulative_sup.size();
    if (n >= 2) {
        const double a = report.cumulative_sup[n - 1];
        const double b = report.cumulative_sup[n - 2];
        report.bounded = std::isfinite(a) && std::abs(a - b) <= 0.01 * std::abs(a) + 1e-12;
    }
    return report;
}

Lemma1Constants lemma1_constants(const Lemma1Setup& setup, const DSubharmonicMajorant& M, double tol) {
    const Complex dc = setup.domain_center;
    const double R = setup.domain_radius;
    if (!(R > 0.0) || !(setup.set_radius > 0.0) || !(setup.b > 0.0)) {
        throw Error(ErrorCode::invalid_setup, "radii and b must be positive");
    }
    if (!(std::abs(setup.set_center - dc) + setup.set_radius < R)) {
        throw Error(ErrorCode::invalid_setup, "S is not compactly inside the disk");
    }
    if (!(std::abs(setup.z0 - setup.set_center) < setup.set_radius)) {
        throw Error(ErrorCode::invalid_setup, "z0 is not interior to S");
    }
    if (M.up(setup.z0) + M.low(setup.z0) == -kInf) {
        throw Error(ErrorCode::invalid_setup, "M_up(z0) + M_low(z0) = -inf");
    }
    const auto g0 = green_disk(R, setup.z0 - dc);
    const std::function<double(Complex)> g = [g0, dc](Complex z) { return g0(z - dc); };

    auto on_boundary = [&](double theta) { return g(setup.set_center + std::polar(setup.set_radius, theta)); };
    constexpr int n = 4096;
    const double h = kTwoPi / n;
    int best = 0;
    double best_val = kInf;
    for (int i = 0; i < n; ++i) {
        const double v = on_boundary(i * h);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = (best - 1) * h, b = (best + 1) * h;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = on_boundary(c), fd = on_boundary(d);
    for (int it = 0; it < 80; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = on_boundary(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = on_boundary(d);
        }
    }
    Lemma1Constants out;
    out.green_inf = std::min({best_val, fc, fd});
    if (!(out.green_inf > 0.0)) throw Error(ErrorCode::invalid_setup, "Green function not positive on the boundary of S");
    out.C = setup.b / out.green_inf;

    const Complex z0 = setup.z0;
    const Region disk = Region::disk(dc, R);
    const ChargeIntegral t1 = integrate_against(M.charge, g, PlaneSet::difference(disk, Region::disk(z0, 0.0)), tol,
                                                std::span<const Complex>(&z0, 1));
    const ChargeIntegral t2 = integrate_against(M.charge.lower(), g,
                                                PlaneSet::difference(disk, Region::disk(setup.set_center, setup.set_radius)),
                                                tol, std::span<const Complex>(&z0, 1));
    if (!t1.converged) throw ToleranceFailure("Green integral of Delta_M", t1.error);
    if (!t2.converged) throw ToleranceFailure("Green integral of the lower variation", t2.error);
    const ExtendedReal m0 = eval_M(M, z0);
    out.terms = {t1.value, t2.value, std::max(0.0, m0.to_double())};
    out.C_bar = out.terms[0] + out.terms[1] + out.terms[2];
    out.C_bar_error = t1.error + t2.error;
    return out;
}

} // namespace zerocert
