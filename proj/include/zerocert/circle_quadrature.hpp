#pragma once

#include <functional>
#include <span>

#include "zerocert/common.hpp"
#include "zerocert/measures.hpp"
#include "zerocert/quadrature.hpp"

namespace zerocert::detail {

/// (1/2pi) * integral over `arcs` of f(c + s e^{i theta}) d theta.
///
/// Points of `singular` lying within s/2 of the circle split the angular
/// range; those within 1e-3 s get a 1e-3 rad window on each side integrated
/// by panels graded toward the singular angle. Smooth full circles go
/// through the periodic trapezoid rule first.
quad::Result circle_average(const std::function<double(Complex)>& f, Complex c, double s, const ArcSet& arcs,
                            std::span<const Complex> singular, double tol);

} // namespace zerocert::detail
