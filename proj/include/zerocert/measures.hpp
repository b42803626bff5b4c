#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "zerocert/common.hpp"

namespace zerocert {

/// Finite union of angular intervals [lo, hi] with 0 <= lo < hi <= 2*pi.
class ArcSet {
public:
    ArcSet() = default;
    static ArcSet full();
    static ArcSet empty() { return {}; }
    /// Arc of half-width `half` centred at angle `mid` (wrapped into [0, 2*pi)).
    static ArcSet centered(double mid, double half);

    ArcSet complement() const;
    ArcSet intersect(const ArcSet& other) const;
    ArcSet subtract(const ArcSet& other) const { return intersect(other.complement()); }

    const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }
    double measure() const;
    bool is_full() const;

private:
    void normalize();
    std::vector<std::pair<double, double>> intervals_;
};

class Region {
public:
    enum class Kind { disk, annulus, complement_of_disk, whole_plane };

    /// Closed disk |z - c| <= r.
    static Region disk(Complex center, double radius);
    /// inner < |z - c| <= outer, so disk(inner) and annulus tile disk(outer).
    static Region annulus(Complex center, double inner, double outer);
    /// |z - c| > r.
    static Region outside(Complex center, double radius);
    static Region plane();

    Kind kind() const { return kind_; }
    Complex center() const { return center_; }
    double inner() const { return inner_; }
    double outer() const { return outer_; }

    bool contains(Complex z) const;
    bool bounded() const { return kind_ == Kind::disk || kind_ == Kind::annulus; }
    /// Smallest R with region inside the closed disk(0, R); +inf when unbounded.
    double enclosing_radius() const;
    /// Angles theta with c + s e^{i theta} inside the region.
    ArcSet arcs(Complex c, double s) const;

private:
    Region(Kind k, Complex c, double in, double out) : kind_(k), center_(c), inner_(in), outer_(out) {}
    Kind kind_;
    Complex center_;
    double inner_;
    double outer_;
};

/// Region-minus-region domains used by the margin tests (e.g. D \ S).
struct PlaneSet {
    Region base = Region::plane();
    std::optional<Region> removed;

    static PlaneSet of(Region r) { return {r, std::nullopt}; }
    static PlaneSet difference(Region base, Region removed) { return {base, removed}; }

    bool contains(Complex z) const { return base.contains(z) && !(removed && removed->contains(z)); }
    ArcSet arcs(Complex c, double s) const {
        ArcSet a = base.arcs(c, s);
        return removed ? a.subtract(removed->arcs(c, s)) : a;
    }
    double enclosing_radius() const { return base.enclosing_radius(); }
};

// ---------------------------------------------------------------------------
// Zero distributions

struct ZeroPoint {
    Complex location;
    int multiplicity = 1;
};

/// {k * step : 0 < |k| <= k_max}
struct LineLattice {
    Complex step{kPi, 0.0};
    std::optional<std::int64_t> k_max;
    int multiplicity = 1;
};

/// {spacing * (m + i n) != 0 : |.| <= radius}
struct GaussianLattice {
    double spacing = 1.0;
    std::optional<double> radius;
    int multiplicity = 1;
};

/// Ring k >= 1 at radius scale * k^(1/order) carrying `per_ring` equally
/// spaced points rotated by `phase`.
struct RadialRule {
    double scale = 1.0;
    double order = 1.0;
    int per_ring = 1;
    double phase = 0.0;
    std::optional<std::int64_t> rings;
    int multiplicity = 1;
};

/// Opaque enumerator. Locally finite by contract but its total size is
/// unknown, so counts over unbounded regions are indeterminate.
struct CustomGenerator {
    std::string name;
    std::function<std::vector<ZeroPoint>(double radius)> points_within;
};

using Generator = std::variant<LineLattice, GaussianLattice, RadialRule, CustomGenerator>;

enum class GeneratorTag { explicit_list, lattice, radial_rule, custom };

/// n(r) ~ constant * r^exponent for large r.
struct DensityLaw {
    double constant;
    double exponent;
};

class ZeroDistribution {
public:
    ZeroDistribution() = default;
    explicit ZeroDistribution(std::vector<ZeroPoint> points);
    static ZeroDistribution from_generator(Generator g, std::vector<ZeroPoint> extra = {});

    /// Points with |z| <= radius, duplicates merged, sorted by modulus.
    std::vector<ZeroPoint> points_within(double radius) const;
    /// All points; throws indeterminate-count for infinite distributions.
    std::vector<ZeroPoint> all_points() const;

    bool finite() const;
    /// Largest modulus when finite.
    std::optional<double> extent() const;
    bool enumerable() const { return !generator_ || !std::holds_alternative<CustomGenerator>(*generator_); }
    bool has_point_at_origin() const;

    GeneratorTag tag() const;
    const std::optional<Generator>& generator() const { return generator_; }
    const std::vector<ZeroPoint>& explicit_points() const { return explicit_; }
    /// Asymptotic counting law of the generator; nullopt for finite or custom.
    std::optional<DensityLaw> density_law() const;

    /// Counting-function equality (finite distributions only).
    friend bool operator==(const ZeroDistribution& a, const ZeroDistribution& b);

private:
    std::vector<ZeroPoint> explicit_;
    std::optional<Generator> generator_;
};

/// Counting functions agree on the closed disk of the given radius.
bool equal_within(const ZeroDistribution& a, const ZeroDistribution& b, double radius);

/// Sorted ln|z_j| with each point repeated by its multiplicity.
std::vector<double> packed_log_moduli(std::span<const ZeroPoint> points);

ExtendedCount counting_measure(const ZeroDistribution& zeros, const Region& region);

/// N(t) = sum_{0<|z_j|<=t} mult_j ln(t/|z_j|).
double nevanlinna_N(const ZeroDistribution& zeros, double t);

// ---------------------------------------------------------------------------
// Signed Riesz charges: atoms + shells + radial densities

struct Atom {
    Complex location;
    double mass;
};

/// Mass spread uniformly over the circle |z - center| = radius.
struct Shell {
    Complex center;
    double radius;
    double mass;
};

/// Non-negative radial mass density about a centre: the annulus
/// a < |z - c| <= b carries mass integral_a^b density(s) ds.
struct RadialProfile {
    std::function<double(double)> density;
    /// Optional closed form of integral_0^t density(s) ds.
    std::function<double(double)> mass_within;
    double support_end = kInf;
    std::vector<double> breakpoints;
    /// density has an integrable singularity at s = 0.
    bool singular_at_zero = false;
};

struct RadialPart {
    Complex center;
    double sign; // +1 or -1
    RadialProfile profile;
};

class RieszCharge {
public:
    RieszCharge() = default;
    static RieszCharge dirac(Complex z, double mass = 1.0);

    RieszCharge& add_atom(Complex location, double mass);
    RieszCharge& add_shell(Complex center, double radius, double mass);
    RieszCharge& add_radial(Complex center, RadialProfile profile, double sign = 1.0);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<Shell>& shells() const { return shells_; }
    const std::vector<RadialPart>& radial() const { return radial_; }
    bool empty() const { return atoms_.empty() && shells_.empty() && radial_.empty(); }

    RieszCharge scaled(double factor) const;
    friend RieszCharge operator+(const RieszCharge& a, const RieszCharge& b);
    friend RieszCharge operator-(const RieszCharge& a, const RieszCharge& b);

    /// Jordan decomposition. Radial parts are combined per centre; opposite
    /// signs on distinct centres with overlapping supports are unsupported.
    RieszCharge upper() const;
    RieszCharge lower() const;
    RieszCharge total_variation() const;

    /// Largest |z| carrying mass; +inf for unbounded radial support.
    double support_radius() const;

private:
    RieszCharge variation(double sign) const;

    std::vector<Atom> atoms_;
    std::vector<Shell> shells_;
    std::vector<RadialPart> radial_;
};

struct ChargeIntegral {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

/// Charge of a bounded region (or of any region when the support is bounded).
/// Throws ToleranceFailure when the radial quadrature misses `tol`.
double charge_on_region(const RieszCharge& charge, const Region& region, double tol = 1e-10);

/// integral of f over `domain` against the charge. Circle averages of f over
/// shells and radial parts are taken on the arcs inside the domain; `singular`
/// lists points where f has integrable logarithmic singularities.
ChargeIntegral integrate_against(const RieszCharge& charge, const std::function<double(Complex)>& f,
                                 const PlaneSet& domain, double tol, std::span<const Complex> singular = {});

/// Specialisation for f(z) = g(|z|) on the annulus lo < |z| <= hi.
/// `g_breaks` lists radii where g has kinks.
ChargeIntegral integrate_radial_function(const RieszCharge& charge, const std::function<double(double)>& g,
                                         double lo, double hi, double tol,
                                         std::span<const double> g_breaks = {});

} // namespace zerocert
