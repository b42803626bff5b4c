#pragma once

#include <functional>
#include <span>

namespace zerocert::quad {

using Integrand = std::function<double(double)>;

struct Result {
    double value = 0.0;
    double error = 0.0;     // absolute error estimate
    bool converged = true;
    int panels = 0;
};

/// Global adaptive Gauss-Kronrod (7/15 point panels) on [a, b] driven by an
/// absolute tolerance. Panels are seeded at `breakpoints` that fall inside
/// (a, b). Never evaluates `f` at a panel endpoint.
Result adaptive(const Integrand& f, double a, double b, double abs_tol,
                std::span<const double> breakpoints = {}, int max_panels = 6000);

/// Same as `adaptive` but throws ToleranceFailure when the tolerance is missed.
Result integrate(const Integrand& f, double a, double b, double abs_tol,
                 std::span<const double> breakpoints = {}, int max_panels = 6000);

/// Integral of `f` between `singular` and `other` (either order) using
/// Gauss-Legendre panels graded geometrically toward `singular`, suited to
/// integrable logarithmic or algebraic endpoint singularities. The innermost
/// panel is dropped once its width falls below `min_width`; its contribution
/// is bounded from the last retained panel and added to the error.
Result graded(const Integrand& f, double singular, double other, double ratio = 0.15,
              double min_width = 1e-30);

/// Periodic trapezoid rule with doubling, exact to machine precision for
/// trigonometric polynomials. Returns converged=false when the doubling
/// ladder stalls before `max_nodes`.
Result periodic_trapezoid(const Integrand& f, double period, double abs_tol, int max_nodes = 1 << 14);

} // namespace zerocert::quad
