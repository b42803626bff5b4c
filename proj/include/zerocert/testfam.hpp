#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zerocert/common.hpp"
#include "zerocert/jensen.hpp"

namespace zerocert {

enum class Regime { plane_pot01, plane_smooth_p1, jensen_pj, disk_v, disk_v00 };

const char* to_string(Regime r);

struct TestParams {
    double t = 1.0;   // scale
    double b = 0.0;   // upper bound (disk regimes)
    double s = 0.0;   // excluded radius (disk regimes)
    double eps = 0.0; // smoothing width
    double R = kInf;  // domain radius (disk regimes)
};

/// Member of one of the test classes. Plane members are radial in |w| and
/// carry their profile p(|w|) so sums and charge integrals stay 1-D.
struct TestPotential {
    std::function<double(Complex)> eval;
    Regime regime;
    TestParams params;
    std::function<double(double)> radial; // p as a function of |w| when radial about 0
    std::vector<double> kinks;            // radii where the radial profile is not smooth
    /// Radius beyond which the member is harmonic (plane) or identically 0
    /// (disk-v00 collar start).
    double support = kInf;
    Complex pole{0.0, 0.0}; // jensen-pj only

    double operator()(Complex z) const { return eval(z); }
};

/// p(w) = ln+(t |w|).
TestPotential truncated_log_plane(double t);

/// p(w) = phi(ln(t |w|)) with phi the capped-log profile of width eps.
TestPotential smooth_capped_log(double t, double eps = 0.1);

/// v(z) = b ln(R/|z|) / ln(R/s) on s <= |z| <= R, equal to b inside |z| < s.
TestPotential annulus_harmonic_disk_test(double R, double s, double b);

/// max(0, v - v_edge) * b / (b - v_edge), with v_edge the value of v on the
/// circle |z| = (1 - shrink) R. The result vanishes on the outer collar.
TestPotential compactify_disk_test(const TestPotential& v, double shrink);

/// Jensen potential viewed as a test function (regime jensen-pj).
TestPotential jensen_test_potential(const JensenPotential& V);

/// z -> p(1/conj(z)); +inf at 0.
std::function<ExtendedReal(Complex)> inversion_pullback(const TestPotential& p);

struct InvariantReport {
    bool ok = true;
    std::vector<std::string> failures;
};

/// Runs the class-membership battery for the member's regime: normalisation,
/// positivity, bounds, growth / boundary decay on radius ladders, and
/// sub-mean checks at `samples` seeded random points.
InvariantReport check_invariants(const TestPotential& p, double tol = 1e-8, int samples = 100,
                                 std::uint64_t seed = 7);

/// t_min, t_min * ratio, ... up to and including the last value <= t_max.
std::vector<double> geometric_grid(double t_min, double t_max, double ratio);

inline const double kDefaultGridRatio = 1.189207115002721; // 2^(1/4)

} // namespace zerocert
