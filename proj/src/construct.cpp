#include "zerocert/construct.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "zerocert/kernels.hpp"
#include "zerocert/parallel.hpp"

namespace zerocert {

namespace {

constexpr int kMaxGenus = 8;

std::vector<ZeroPoint> sorted_by_modulus(std::vector<ZeroPoint> pts) {
    std::stable_sort(pts.begin(), pts.end(),
                     [](const ZeroPoint& a, const ZeroPoint& b) { return std::abs(a.location) < std::abs(b.location); });
    return pts;
}

bool same_shell(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }

// Number of distinct moduli among points sorted by modulus.
std::size_t count_shells(const std::vector<ZeroPoint>& pts) {
    std::size_t n = 0;
    double last = -1.0;
    for (const auto& p : pts) {
        const double m = std::abs(p.location);
        if (n == 0 || !same_shell(m, last)) {
            ++n;
            last = m;
        }
    }
    return n;
}

std::size_t total_count(const std::vector<ZeroPoint>& pts) {
    std::size_t n = 0;
    for (const auto& p : pts) n += static_cast<std::size_t>(p.multiplicity);
    return n;
}

double block_slope(const std::vector<ZeroPoint>& pts, int p, double probe_radius) {
    const int kmax = static_cast<int>(std::floor(std::log2(probe_radius))) - 1;
    std::vector<double> block(static_cast<std::size_t>(std::max(kmax + 1, 0)), 0.0);
    for (const auto& z : pts) {
        const double m = std::abs(z.location);
        if (m <= 1.0) continue;
        const int k = static_cast<int>(std::ceil(std::log2(m))) - 1;
        if (k < 0 || k > kmax) continue;
        block[static_cast<std::size_t>(k)] += z.multiplicity * std::pow(m, -p - 1.0);
    }
    std::vector<double> xs, ys;
    for (int k = 2; k <= kmax; ++k) {
        if (block[static_cast<std::size_t>(k)] > 0.0) {
            xs.push_back(k);
            ys.push_back(std::log2(block[static_cast<std::size_t>(k)]));
        }
    }
    if (xs.size() < 3) return -kInf;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= xs.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    return sxy / sxx;
}

} // namespace

int genus(const ZeroDistribution& Z, double probe_radius) {
    if (Z.has_point_at_origin()) throw Error(ErrorCode::pole_at_origin, "zero distribution contains 0");
    if (Z.finite()) return 0;
    if (const auto law = Z.density_law()) {
        const int p = static_cast<int>(std::floor(law->exponent));
        if (p > kMaxGenus) throw Error(ErrorCode::genus_overflow, "convergence exponent exceeds 8");
        return p;
    }
    if (!(probe_radius > 8.0)) throw Error(ErrorCode::invalid_parameter, "probe radius must exceed 8");
    const auto pts = Z.points_within(probe_radius);
    for (int p = 0; p <= kMaxGenus; ++p) {
        if (block_slope(pts, p, probe_radius) < -0.05) return p;
    }
    throw Error(ErrorCode::genus_overflow, "no convergent genus p <= 8 detected");
}

ProductRepresentation::ProductRepresentation(const ZeroDistribution& Z, int p, std::optional<std::size_t> shells)
    : p_(p) {
    if (p < 0 || p > kMaxGenus) throw Error(ErrorCode::invalid_parameter, "genus must lie in [0, 8]");
    if (Z.has_point_at_origin()) throw Error(ErrorCode::pole_at_origin, "zero distribution contains 0");
    if (shells && *shells == 0) throw Error(ErrorCode::invalid_parameter, "shell count must be positive");

    std::vector<ZeroPoint> pts;
    if (Z.finite()) {
        pts = sorted_by_modulus(Z.all_points());
    } else {
        const std::size_t want = shells.value_or(kDefaultShells);
        double R = 16.0;
        for (;;) {
            pts = sorted_by_modulus(Z.points_within(R));
            if (count_shells(pts) > want) break;
            if (R > 1e12) throw Error(ErrorCode::invalid_parameter, "could not reach the requested shell count");
            R *= 2.0;
        }
    }
    const std::size_t total_shells = count_shells(pts);
    const std::size_t keep_shells = shells ? std::min(*shells, total_shells) : (Z.finite() ? total_shells : kDefaultShells);
    std::size_t keep = 0;
    std::size_t seen = 0;
    double last = -1.0;
    for (; keep < pts.size(); ++keep) {
        const double m = std::abs(pts[keep].location);
        if (seen == 0 || !same_shell(m, last)) {
            if (seen == keep_shells) break;
            ++seen;
            last = m;
        }
    }
    shells_ = seen;
    radius_ = keep > 0 ? std::abs(pts[keep - 1].location) : 0.0;
    for (std::size_t i = 0; i < keep; ++i) {
        const Complex w = 1.0 / pts[i].location;
        for (int m = 0; m < pts[i].multiplicity; ++m) {
            inv_re_.push_back(w.real());
            inv_im_.push_back(w.imag());
            zeros_.push_back(pts[i].location);
        }
    }

    complete_ = Z.finite() && keep == pts.size();
    if (complete_) return;
    if (Z.finite()) {
        for (std::size_t i = keep; i < pts.size(); ++i) {
            tail_sum_ += pts[i].multiplicity * std::pow(std::abs(pts[i].location), -p - 1.0);
        }
        return;
    }
    double c = 0.0;
    double rho = 0.0;
    if (const auto law = Z.density_law()) {
        c = law->constant;
        rho = law->exponent;
    } else {
        const std::size_t n_full = total_count(std::vector<ZeroPoint>(pts.begin(), pts.begin() + keep));
        std::size_t n_half = 0;
        for (std::size_t i = 0; i < keep; ++i) {
            if (std::abs(pts[i].location) <= 0.5 * radius_) n_half += pts[i].multiplicity;
        }
        if (n_half == 0 || n_full == 0) {
            tail_sum_ = kInf;
            return;
        }
        rho = std::log2(static_cast<double>(n_full) / static_cast<double>(n_half));
        c = n_full / std::pow(radius_, rho);
    }
    tail_sum_ = (p + 1.0 > rho) ? c * rho * std::pow(radius_, rho - p - 1.0) / (p + 1.0 - rho) : kInf;
}

double ProductRepresentation::tail_bound(Complex z) const {
    if (complete_) return 0.0;
    const double m = std::abs(z);
    if (m == 0.0) return 0.0;
    if (!(m <= 0.5 * radius_) || !std::isfinite(tail_sum_)) return kInf;
    return 2.0 * std::pow(m, p_ + 1.0) / (p_ + 1.0) * tail_sum_;
}

ProductRepresentation::Value ProductRepresentation::eval(Complex z) const {
    const kernels::PrimarySum s = kernels::sum_log_primary(inv_re_, inv_im_, z, p_);
    const double tail = tail_bound(z);
    if (s.min_dist2 <= kGuardRadius * kGuardRadius) return {ExtendedReal::minus_infinity(), tail};
    return {ExtendedReal(s.log_abs), tail};
}

int ProductRepresentation::winding_number(Complex c, double r, int samples) const {
    if (!(r > 0.0) || samples < 8) throw Error(ErrorCode::invalid_parameter, "winding needs r > 0 and >= 8 samples");
    double total = 0.0;
    Complex prev = c + r;
    for (int i = 1; i <= samples; ++i) {
        const Complex next = c + std::polar(r, kTwoPi * i / samples);
        for (const Complex& zj : zeros_) total += std::arg((zj - next) / (zj - prev));
        prev = next;
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

ExtendedReal weierstrass_log_abs(const ZeroDistribution& Z, int p, Complex z, std::optional<std::size_t> shells) {
    return ProductRepresentation(Z, p, shells).eval_log_abs(z);
}

const char* to_string(DomainKind k) {
    switch (k) {
    case DomainKind::plane: return "plane";
    case DomainKind::simply_connected: return "simply-connected";
    case DomainKind::general: return "general";
    }
    return "unknown";
}

double remainder_R(DomainKind domain, const RadiusProfile& rp, double a, Complex z) {
    switch (domain) {
    case DomainKind::plane: return 0.0;
    case DomainKind::simply_connected: return -std::log(radius(rp, z));
    case DomainKind::general:
        if (!(a > 0.0)) throw Error(ErrorCode::invalid_parameter, "a must be > 0");
        return -std::log(radius(rp, z)) + (1.0 + a) * std::log1p(std::abs(z));
    }
    return 0.0;
}

namespace {

// Re P(z) for P = sum_k coef[k] z^k.
double re_poly(const std::vector<Complex>& coef, Complex z) {
    Complex acc(0.0, 0.0);
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * z + *it;
    return acc.real();
}

void tally(SufficiencyReport& rep, const std::vector<Complex>& balancing, const std::vector<double>& raw) {
    rep.violations.clear();
    rep.max_excess = 0.0;
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        auto& g = rep.grid[i];
        if (g.skipped) continue;
        g.log_abs_f = raw[i] + (balancing.empty() ? 0.0 : re_poly(balancing, g.z));
        const double lhs = g.log_abs_f + g.tail;
        g.excess = std::isnan(g.bound) ? kInf : std::max(0.0, lhs - g.bound);
        if (g.excess > 0.0) rep.violations.push_back({g.z, g.excess});
        rep.max_excess = std::max(rep.max_excess, g.excess);
    }
}

// Least-squares exp(P), deg P <= degree, fitted to bound - ln|f| on the inner
// half of the grid and shifted down until it lies below the target there.
std::vector<Complex> fit_balancing(const SufficiencyReport& rep, const std::vector<double>& raw, int degree,
                                   double r_inner) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        const auto& g = rep.grid[i];
        if (!g.skipped && std::abs(g.z) <= r_inner && std::isfinite(g.bound) && std::isfinite(raw[i] + g.tail)) {
            rows.push_back(i);
        }
    }
    const int cols = 1 + 2 * degree;
    if (rows.size() < static_cast<std::size_t>(cols)) return {};
    Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()), cols);
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& g = rep.grid[rows[r]];
        const auto row = static_cast<Eigen::Index>(r);
        A(row, 0) = 1.0;
        Complex zk(1.0, 0.0);
        for (int k = 1; k <= degree; ++k) {
            zk *= g.z;
            A(row, 2 * k - 1) = zk.real();
            A(row, 2 * k) = -zk.imag();
        }
        y(row) = g.bound - raw[rows[r]] - g.tail;
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd resid = A * c - y;
    std::vector<Complex> coef(static_cast<std::size_t>(degree + 1));
    coef[0] = Complex(c(0) - resid.maxCoeff(), 0.0);
    for (int k = 1; k <= degree; ++k) coef[static_cast<std::size_t>(k)] = Complex(c(2 * k - 1), c(2 * k));
    return coef;
}

} // namespace

SufficiencyReport verify_sufficiency(const ZeroDistribution& Z, const DSubharmonicMajorant& M, const RadiusProfile& rp,
                                     const SufficiencyGrid& grid, const SufficiencyOptions& options) {
    if (!(grid.r_max > 0.0) || grid.radial < 1 || grid.angles < 1) {
        throw Error(ErrorCode::invalid_parameter, "grid needs r_max > 0 and positive counts");
    }
    if (!(options.tol > 0.0)) throw Error(ErrorCode::invalid_parameter, "tolerance must be > 0");
    if (rp.kind() == RadiusProfile::Kind::disk_fraction && !(grid.r_max < rp.domain_radius())) {
        throw Error(ErrorCode::invalid_parameter, "grid leaves the disk");
    }

    SufficiencyReport rep;
    rep.genus = options.genus.value_or(genus(Z));
    const ProductRepresentation f(Z, rep.genus, options.shells);
    rep.retained = f.retained();
    rep.refused = options.necessary && *options.necessary == Verdict::violated;

    const double phase = kPi / grid.angles + 0.013;
    for (int i = 1; i <= grid.radial; ++i) {
        const double r = grid.r_max * i / grid.radial;
        for (int j = 0; j < grid.angles; ++j) {
            SufficiencyPoint pt{};
            pt.z = std::polar(r, phase + kTwoPi * j / grid.angles);
            rep.grid.push_back(pt);
        }
    }
    std::vector<double> raw(rep.grid.size(), 0.0);
    parallel_for(rep.grid.size(), [&](std::size_t i) {
        auto& g = rep.grid[i];
        const ProductRepresentation::Value v = f.eval(g.z);
        if (v.log_abs.is_minus_infinity()) {
            g.skipped = true;
            return;
        }
        raw[i] = v.log_abs.value();
        g.tail = v.tail_bound;
        try {
            const double hat = hat_radius(rp, g.z).value;
            const double low = M.low(g.z);
            g.bound = low == -kInf ? kInf
                                   : circle_mean(M.up, g.z, hat, options.tol) - low +
                                         remainder_R(options.domain, rp, options.a, g.z);
        } catch (const Error&) {
            g.bound = std::nan("");
        }
    });
    for (const auto& g : rep.grid) {
        if (g.skipped) {
            ++rep.skipped;
        } else {
            ++rep.evaluated;
        }
    }
    tally(rep, {}, raw);

    if (!rep.violations.empty() && options.allow_balancing) {
        const auto coef = fit_balancing(rep, raw, rep.genus, 0.5 * grid.r_max);
        if (!coef.empty()) {
            SufficiencyReport trial = rep;
            tally(trial, coef, raw);
            if (trial.violations.size() < rep.violations.size()) {
                rep = std::move(trial);
                rep.balanced = true;
                rep.balancing = coef;
            }
        }
    }

    const bool within = static_cast<double>(rep.violations.size()) <= 1e-3 * static_cast<double>(rep.evaluated);
    rep.certified = !rep.refused && rep.evaluated > 0 && within;
    if (rep.refused) {
        rep.reason = "necessary condition reported violated";
    } else if (rep.evaluated == 0) {
        rep.reason = "no grid point could be evaluated";
    } else if (!within) {
        rep.reason = std::to_string(rep.violations.size()) + " of " + std::to_string(rep.evaluated) +
                     " grid points exceed the bound";
    } else {
        rep.reason = rep.violations.empty() ? "bound holds at every grid point"
                                            : "bound holds except on at most 0.1% of grid points";
    }
    return rep;
}

} // namespace zerocert
