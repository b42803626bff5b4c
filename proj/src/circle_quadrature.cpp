#include "zerocert/circle_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace zerocert::detail {
namespace {

constexpr double kIsolationArc = 1e-3;

struct SingularAngle {
    double theta;
    bool isolate;
};

} // namespace

quad::Result circle_average(const std::function<double(Complex)>& f, Complex c, double s, const ArcSet& arcs,
                            std::span<const Complex> singular, double tol) {
    quad::Result out;
    if (s == 0.0) {
        out.value = f(c);
        return out;
    }
    if (arcs.intervals().empty()) return out;

    auto on_circle = [&](double theta) { return f(c + std::polar(s, theta)); };

    std::vector<SingularAngle> angles;
    for (const Complex& a : singular) {
        const double dist = std::abs(std::abs(a - c) - s);
        if (dist > 0.5 * s) continue;
        double theta = std::arg(a - c);
        if (theta < 0) theta += kTwoPi;
        const bool isolate = dist <= kIsolationArc * s;
        for (int k = -1; k <= 1; ++k) angles.push_back({theta + k * kTwoPi, isolate});
    }

    const double total_tol = tol * kTwoPi;
    if (arcs.is_full() && angles.empty()) {
        quad::Result r = quad::periodic_trapezoid(on_circle, kTwoPi, total_tol, 1 << 12);
        if (r.converged) {
            out.value = r.value / kTwoPi;
            out.error = r.error / kTwoPi;
            out.panels = r.panels;
            return out;
        }
    }

    struct Piece {
        double lo;
        double hi;
        int graded_end; // 0 none, -1 toward lo, +1 toward hi
    };
    std::vector<Piece> pieces;
    for (const auto& [lo, hi] : arcs.intervals()) {
        std::vector<double> cuts{lo, hi};
        for (const auto& sa : angles) {
            if (sa.theta > lo && sa.theta < hi) cuts.push_back(sa.theta);
            if (sa.isolate) {
                for (double w : {sa.theta - kIsolationArc, sa.theta + kIsolationArc}) {
                    if (w > lo && w < hi) cuts.push_back(w);
                }
            }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double a = cuts[i];
            const double b = cuts[i + 1];
            bool sing_a = false;
            bool sing_b = false;
            for (const auto& sa : angles) {
                if (!sa.isolate) continue;
                if (std::abs(sa.theta - a) <= 1e-14) sing_a = true;
                if (std::abs(sa.theta - b) <= 1e-14) sing_b = true;
            }
            if (sing_a && sing_b) {
                const double m = 0.5 * (a + b);
                pieces.push_back({a, m, -1});
                pieces.push_back({m, b, +1});
            } else if (sing_a) {
                pieces.push_back({a, b, -1});
            } else if (sing_b) {
                pieces.push_back({a, b, +1});
            } else {
                pieces.push_back({a, b, 0});
            }
        }
    }

    const double piece_tol = total_tol / std::max<std::size_t>(1, pieces.size());
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    int panels = 0;
    for (const Piece& p : pieces) {
        quad::Result r;
        if (p.graded_end == -1) {
            r = quad::graded(on_circle, p.lo, p.hi);
        } else if (p.graded_end == +1) {
            r = quad::graded(on_circle, p.hi, p.lo);
            r.value = -r.value; // graded integrates from the singular end
        } else {
            r = quad::adaptive(on_circle, p.lo, p.hi, piece_tol);
        }
        value += r.value;
        error += r.error;
        converged = converged && r.converged;
        panels += r.panels;
    }
    out.value = value / kTwoPi;
    out.error = error / kTwoPi;
    out.converged = converged && out.error <= tol * (1.0 + 1e-12) + 1e-15;
    out.panels = panels;
    return out;
}

} // namespace zerocert::detail
