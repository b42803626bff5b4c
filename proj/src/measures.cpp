#include "zerocert/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "zerocert/circle_quadrature.hpp"
#include "zerocert/kernels.hpp"
#include "zerocert/quadrature.hpp"

namespace zerocert {

// ---------------------------------------------------------------------------
// ArcSet

ArcSet ArcSet::full() {
    ArcSet a;
    a.intervals_.push_back({0.0, kTwoPi});
    return a;
}

ArcSet ArcSet::centered(double mid, double half) {
    if (half >= kPi) return full();
    ArcSet a;
    if (half <= 0.0) return a;
    mid = std::fmod(mid, kTwoPi);
    if (mid < 0) mid += kTwoPi;
    const double lo = mid - half;
    const double hi = mid + half;
    if (lo < 0.0) {
        a.intervals_.push_back({0.0, hi});
        a.intervals_.push_back({lo + kTwoPi, kTwoPi});
    } else if (hi > kTwoPi) {
        a.intervals_.push_back({0.0, hi - kTwoPi});
        a.intervals_.push_back({lo, kTwoPi});
    } else {
        a.intervals_.push_back({lo, hi});
    }
    a.normalize();
    return a;
}

void ArcSet::normalize() {
    std::vector<std::pair<double, double>> in;
    for (auto [lo, hi] : intervals_) {
        lo = std::clamp(lo, 0.0, kTwoPi);
        hi = std::clamp(hi, 0.0, kTwoPi);
        if (hi > lo) in.push_back({lo, hi});
    }
    std::sort(in.begin(), in.end());
    intervals_.clear();
    for (const auto& iv : in) {
        if (!intervals_.empty() && iv.first <= intervals_.back().second) {
            intervals_.back().second = std::max(intervals_.back().second, iv.second);
        } else {
            intervals_.push_back(iv);
        }
    }
}

ArcSet ArcSet::complement() const {
    ArcSet out;
    double cursor = 0.0;
    for (const auto& [lo, hi] : intervals_) {
        if (lo > cursor) out.intervals_.push_back({cursor, lo});
        cursor = std::max(cursor, hi);
    }
    if (cursor < kTwoPi) out.intervals_.push_back({cursor, kTwoPi});
    out.normalize();
    return out;
}

ArcSet ArcSet::intersect(const ArcSet& other) const {
    ArcSet out;
    for (const auto& a : intervals_) {
        for (const auto& b : other.intervals_) {
            const double lo = std::max(a.first, b.first);
            const double hi = std::min(a.second, b.second);
            if (hi > lo) out.intervals_.push_back({lo, hi});
        }
    }
    out.normalize();
    return out;
}

double ArcSet::measure() const {
    double m = 0.0;
    for (const auto& [lo, hi] : intervals_) m += hi - lo;
    return m;
}

bool ArcSet::is_full() const {
    return intervals_.size() == 1 && intervals_[0].first <= 0.0 && intervals_[0].second >= kTwoPi;
}

// ---------------------------------------------------------------------------
// Region

Region Region::disk(Complex center, double radius) {
    if (!(radius >= 0.0)) throw Error(ErrorCode::invalid_parameter, "disk radius must be >= 0");
    return {Kind::disk, center, 0.0, radius};
}

Region Region::annulus(Complex center, double inner, double outer) {
    if (!(inner >= 0.0) || !(outer >= inner)) throw Error(ErrorCode::invalid_parameter, "annulus radii must satisfy 0 <= inner <= outer");
    return {Kind::annulus, center, inner, outer};
}

Region Region::outside(Complex center, double radius) {
    if (!(radius >= 0.0)) throw Error(ErrorCode::invalid_parameter, "radius must be >= 0");
    return {Kind::complement_of_disk, center, radius, kInf};
}

Region Region::plane() { return {Kind::whole_plane, 0.0, 0.0, kInf}; }

bool Region::contains(Complex z) const {
    const double d = std::abs(z - center_);
    switch (kind_) {
    case Kind::disk: return d <= outer_;
    case Kind::annulus: return d > inner_ && d <= outer_;
    case Kind::complement_of_disk: return d > inner_;
    case Kind::whole_plane: return true;
    }
    return false;
}

double Region::enclosing_radius() const {
    if (!bounded()) return kInf;
    return std::abs(center_) + outer_;
}

namespace {

// Angles of the circle c + s e^{i theta} lying in the closed disk(center, r).
ArcSet disk_arcs(Complex center, double r, Complex c, double s) {
    const double d = std::abs(center - c);
    if (s + d <= r) return ArcSet::full();
    if (s >= d + r || s <= d - r) {
        // Tangency leaves a null set; treat it as empty.
        return ArcSet::empty();
    }
    const double cosine = (s * s + d * d - r * r) / (2.0 * s * d);
    const double half = std::acos(std::clamp(cosine, -1.0, 1.0));
    return ArcSet::centered(std::arg(center - c), half);
}

} // namespace

ArcSet Region::arcs(Complex c, double s) const {
    switch (kind_) {
    case Kind::disk: return disk_arcs(center_, outer_, c, s);
    case Kind::annulus: return disk_arcs(center_, outer_, c, s).subtract(disk_arcs(center_, inner_, c, s));
    case Kind::complement_of_disk: return disk_arcs(center_, inner_, c, s).complement();
    case Kind::whole_plane: return ArcSet::full();
    }
    return ArcSet::empty();
}

// ---------------------------------------------------------------------------
// Zero distributions

namespace {

void check_multiplicity(int m) {
    if (m < 1) throw Error(ErrorCode::invalid_parameter, "multiplicities must be >= 1");
}

std::vector<ZeroPoint> merge_sorted(std::vector<ZeroPoint> pts) {
    std::sort(pts.begin(), pts.end(), [](const ZeroPoint& a, const ZeroPoint& b) {
        return std::make_tuple(std::norm(a.location), a.location.real(), a.location.imag()) <
               std::make_tuple(std::norm(b.location), b.location.real(), b.location.imag());
    });
    std::vector<ZeroPoint> out;
    for (const auto& p : pts) {
        if (!out.empty() && out.back().location == p.location) {
            out.back().multiplicity += p.multiplicity;
        } else {
            out.push_back(p);
        }
    }
    return out;
}

struct GeneratorEnumerator {
    double radius;
    std::vector<ZeroPoint>& out;

    void operator()(const LineLattice& g) const {
        const double step = std::abs(g.step);
        if (step <= 0.0) return;
        auto kmax = static_cast<std::int64_t>(std::floor(radius / step)) + 1;
        if (g.k_max) kmax = std::min(kmax, *g.k_max);
        for (std::int64_t k = 1; k <= kmax; ++k) {
            for (int sgn : {1, -1}) {
                const Complex z = static_cast<double>(sgn * k) * g.step;
                if (std::abs(z) <= radius) out.push_back({z, g.multiplicity});
            }
        }
    }

    void operator()(const GaussianLattice& g) const {
        const double limit = g.radius ? std::min(radius, *g.radius) : radius;
        if (!(limit > 0.0)) return;
        const auto n = static_cast<std::int64_t>(std::floor(limit / g.spacing)) + 1;
        for (std::int64_t m = -n; m <= n; ++m) {
            for (std::int64_t k = -n; k <= n; ++k) {
                if (m == 0 && k == 0) continue;
                const Complex z(g.spacing * static_cast<double>(m), g.spacing * static_cast<double>(k));
                if (std::abs(z) <= limit) out.push_back({z, g.multiplicity});
            }
        }
    }

    void operator()(const RadialRule& g) const {
        for (std::int64_t k = 1;; ++k) {
            if (g.rings && k > *g.rings) break;
            const double r = g.scale * std::pow(static_cast<double>(k), 1.0 / g.order);
            if (r > radius) break;
            for (int j = 0; j < g.per_ring; ++j) {
                out.push_back({std::polar(r, g.phase + kTwoPi * j / g.per_ring), g.multiplicity});
            }
        }
    }

    void operator()(const CustomGenerator& g) const {
        for (const auto& p : g.points_within(radius)) {
            check_multiplicity(p.multiplicity);
            if (std::abs(p.location) <= radius) out.push_back(p);
        }
    }
};

std::optional<double> generator_extent(const Generator& g) {
    if (const auto* l = std::get_if<LineLattice>(&g)) {
        if (l->k_max) return std::abs(l->step) * static_cast<double>(*l->k_max);
    } else if (const auto* q = std::get_if<GaussianLattice>(&g)) {
        if (q->radius) return *q->radius;
    } else if (const auto* r = std::get_if<RadialRule>(&g)) {
        if (r->rings) return r->scale * std::pow(static_cast<double>(*r->rings), 1.0 / r->order);
    }
    return std::nullopt;
}

} // namespace

ZeroDistribution::ZeroDistribution(std::vector<ZeroPoint> points) {
    for (const auto& p : points) check_multiplicity(p.multiplicity);
    explicit_ = merge_sorted(std::move(points));
}

ZeroDistribution ZeroDistribution::from_generator(Generator g, std::vector<ZeroPoint> extra) {
    std::visit(
        [](const auto& gen) {
            using T = std::decay_t<decltype(gen)>;
            if constexpr (std::is_same_v<T, LineLattice>) {
                check_multiplicity(gen.multiplicity);
                if (std::abs(gen.step) <= 0.0) throw Error(ErrorCode::invalid_parameter, "lattice step must be nonzero");
            } else if constexpr (std::is_same_v<T, GaussianLattice>) {
                check_multiplicity(gen.multiplicity);
                if (!(gen.spacing > 0.0)) throw Error(ErrorCode::invalid_parameter, "lattice spacing must be > 0");
            } else if constexpr (std::is_same_v<T, RadialRule>) {
                check_multiplicity(gen.multiplicity);
                if (!(gen.scale > 0.0) || !(gen.order > 0.0) || gen.per_ring < 1) {
                    throw Error(ErrorCode::invalid_parameter, "radial rule needs scale > 0, order > 0, per_ring >= 1");
                }
            } else {
                if (!gen.points_within) throw Error(ErrorCode::invalid_parameter, "custom generator without enumerator");
            }
        },
        g);
    ZeroDistribution z(std::move(extra));
    z.generator_ = std::move(g);
    return z;
}

std::vector<ZeroPoint> ZeroDistribution::points_within(double radius) const {
    std::vector<ZeroPoint> pts;
    for (const auto& p : explicit_) {
        if (std::abs(p.location) <= radius) pts.push_back(p);
    }
    if (generator_ && radius >= 0.0) {
        if (!std::isfinite(radius)) {
            const auto e = generator_extent(*generator_);
            if (!e) throw Error(ErrorCode::indeterminate_count, "infinite zero distribution");
            radius = *e * (1.0 + 1e-12);
        }
        std::visit(GeneratorEnumerator{radius, pts}, *generator_);
    }
    return merge_sorted(std::move(pts));
}

std::vector<ZeroPoint> ZeroDistribution::all_points() const {
    if (!finite()) throw Error(ErrorCode::indeterminate_count, "infinite zero distribution");
    return points_within(kInf);
}

bool ZeroDistribution::finite() const { return !generator_ || generator_extent(*generator_).has_value(); }

std::optional<double> ZeroDistribution::extent() const {
    if (!finite()) return std::nullopt;
    const auto pts = all_points();
    if (pts.empty()) return 0.0;
    return std::abs(pts.back().location);
}

bool ZeroDistribution::has_point_at_origin() const {
    for (const auto& p : explicit_) {
        if (p.location == Complex(0.0, 0.0)) return true;
    }
    if (generator_ && std::holds_alternative<CustomGenerator>(*generator_)) return !points_within(0.0).empty();
    return false;
}

GeneratorTag ZeroDistribution::tag() const {
    if (!generator_) return GeneratorTag::explicit_list;
    if (std::holds_alternative<RadialRule>(*generator_)) return GeneratorTag::radial_rule;
    if (std::holds_alternative<CustomGenerator>(*generator_)) return GeneratorTag::custom;
    return GeneratorTag::lattice;
}

std::optional<DensityLaw> ZeroDistribution::density_law() const {
    if (!generator_ || finite()) return std::nullopt;
    if (const auto* l = std::get_if<LineLattice>(&*generator_)) {
        return DensityLaw{2.0 * l->multiplicity / std::abs(l->step), 1.0};
    }
    if (const auto* q = std::get_if<GaussianLattice>(&*generator_)) {
        return DensityLaw{kPi * q->multiplicity / (q->spacing * q->spacing), 2.0};
    }
    if (const auto* r = std::get_if<RadialRule>(&*generator_)) {
        return DensityLaw{r->per_ring * r->multiplicity / std::pow(r->scale, r->order), r->order};
    }
    return std::nullopt;
}

namespace {

bool same_points(const std::vector<ZeroPoint>& a, const std::vector<ZeroPoint>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].location != b[i].location || a[i].multiplicity != b[i].multiplicity) return false;
    }
    return true;
}

} // namespace

bool operator==(const ZeroDistribution& a, const ZeroDistribution& b) {
    return same_points(a.all_points(), b.all_points());
}

bool equal_within(const ZeroDistribution& a, const ZeroDistribution& b, double radius) {
    return same_points(a.points_within(radius), b.points_within(radius));
}

std::vector<double> packed_log_moduli(std::span<const ZeroPoint> points) {
    std::vector<double> out;
    for (const auto& p : points) {
        const double l = std::log(std::abs(p.location));
        out.insert(out.end(), static_cast<std::size_t>(p.multiplicity), l);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ExtendedCount counting_measure(const ZeroDistribution& zeros, const Region& region) {
    std::vector<ZeroPoint> pts;
    if (region.bounded()) {
        pts = zeros.points_within(region.enclosing_radius());
    } else if (zeros.finite()) {
        pts = zeros.all_points();
    } else if (!zeros.enumerable()) {
        throw Error(ErrorCode::indeterminate_count, "unbounded region with a non-enumerable generator");
    } else {
        // Infinitely many lattice points escape every disk.
        return ExtendedCount::infinity();
    }
    std::uint64_t n = 0;
    for (const auto& p : pts) {
        if (region.contains(p.location)) n += static_cast<std::uint64_t>(p.multiplicity);
    }
    return ExtendedCount(n);
}

double nevanlinna_N(const ZeroDistribution& zeros, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::invalid_parameter, "t must be a positive finite real");
    if (zeros.has_point_at_origin()) throw Error(ErrorCode::pole_at_origin, "zero distribution contains 0");
    const auto pts = zeros.points_within(t);
    const auto logs = packed_log_moduli(pts);
    return kernels::sum_positive_part(logs, std::log(t));
}

// ---------------------------------------------------------------------------
// RieszCharge

RieszCharge RieszCharge::dirac(Complex z, double mass) {
    RieszCharge c;
    c.add_atom(z, mass);
    return c;
}

RieszCharge& RieszCharge::add_atom(Complex location, double mass) {
    if (!std::isfinite(mass)) throw Error(ErrorCode::invalid_parameter, "atom mass must be finite");
    if (mass != 0.0) atoms_.push_back({location, mass});
    return *this;
}

RieszCharge& RieszCharge::add_shell(Complex center, double radius, double mass) {
    if (!(radius >= 0.0) || !std::isfinite(mass)) throw Error(ErrorCode::invalid_parameter, "bad shell");
    if (radius == 0.0) return add_atom(center, mass);
    if (mass != 0.0) shells_.push_back({center, radius, mass});
    return *this;
}

RieszCharge& RieszCharge::add_radial(Complex center, RadialProfile profile, double sign) {
    if (!profile.density) throw Error(ErrorCode::invalid_parameter, "radial profile without density");
    if (sign != 0.0) radial_.push_back({center, sign, std::move(profile)});
    return *this;
}

RieszCharge RieszCharge::scaled(double factor) const {
    RieszCharge out;
    if (factor == 0.0) return out;
    for (const auto& a : atoms_) out.atoms_.push_back({a.location, a.mass * factor});
    for (const auto& s : shells_) out.shells_.push_back({s.center, s.radius, s.mass * factor});
    for (const auto& r : radial_) out.radial_.push_back({r.center, r.sign * factor, r.profile});
    return out;
}

RieszCharge operator+(const RieszCharge& a, const RieszCharge& b) {
    RieszCharge out = a;
    out.atoms_.insert(out.atoms_.end(), b.atoms_.begin(), b.atoms_.end());
    out.shells_.insert(out.shells_.end(), b.shells_.begin(), b.shells_.end());
    out.radial_.insert(out.radial_.end(), b.radial_.begin(), b.radial_.end());
    return out;
}

RieszCharge operator-(const RieszCharge& a, const RieszCharge& b) { return a + b.scaled(-1.0); }

namespace {

using Key2 = std::pair<double, double>;
Key2 key(Complex z) { return {z.real(), z.imag()}; }

} // namespace

RieszCharge RieszCharge::variation(double sign) const {
    RieszCharge out;

    std::map<Key2, double> atoms;
    for (const auto& a : atoms_) atoms[key(a.location)] += a.mass;
    for (const auto& [k, m] : atoms) {
        if (sign * m > 0.0) out.atoms_.push_back({{k.first, k.second}, sign * m});
    }

    std::map<std::tuple<double, double, double>, double> shells;
    for (const auto& s : shells_) shells[{s.center.real(), s.center.imag(), s.radius}] += s.mass;
    for (const auto& [k, m] : shells) {
        if (sign * m > 0.0) out.shells_.push_back({{std::get<0>(k), std::get<1>(k)}, std::get<2>(k), sign * m});
    }

    std::map<Key2, std::vector<const RadialPart*>> groups;
    for (const auto& r : radial_) groups[key(r.center)].push_back(&r);

    struct GroupInfo {
        Complex center;
        double reach;
        bool has_pos;
        bool has_neg;
    };
    std::vector<GroupInfo> info;
    for (const auto& [k, parts] : groups) {
        GroupInfo g{{k.first, k.second}, 0.0, false, false};
        for (const auto* p : parts) {
            g.reach = std::max(g.reach, p->profile.support_end);
            (p->sign > 0 ? g.has_pos : g.has_neg) = true;
        }
        info.push_back(g);
    }
    for (std::size_t i = 0; i < info.size(); ++i) {
        for (std::size_t j = i + 1; j < info.size(); ++j) {
            const bool opposite = (info[i].has_pos && info[j].has_neg) || (info[i].has_neg && info[j].has_pos);
            if (opposite && std::abs(info[i].center - info[j].center) < info[i].reach + info[j].reach) {
                throw Error(ErrorCode::unsupported, "Jordan decomposition of overlapping radial parts with distinct centres");
            }
        }
    }

    for (const auto& [k, parts] : groups) {
        const Complex c(k.first, k.second);
        bool all_same = true;
        for (const auto* p : parts) all_same = all_same && ((p->sign > 0) == (parts.front()->sign > 0));
        if (all_same) {
            if (sign * parts.front()->sign > 0.0) {
                for (const auto* p : parts) out.radial_.push_back({c, std::abs(p->sign), p->profile});
            }
            continue;
        }
        RadialProfile net;
        net.support_end = 0.0;
        std::vector<std::pair<double, std::function<double(double)>>> terms;
        for (const auto* p : parts) {
            terms.push_back({p->sign, p->profile.density});
            net.support_end = std::max(net.support_end, p->profile.support_end);
            net.breakpoints.insert(net.breakpoints.end(), p->profile.breakpoints.begin(), p->profile.breakpoints.end());
            net.singular_at_zero = net.singular_at_zero || p->profile.singular_at_zero;
        }
        net.density = [terms, sign](double s) {
            double v = 0.0;
            for (const auto& [w, rho] : terms) v += w * rho(s);
            return std::max(0.0, sign * v);
        };
        out.radial_.push_back({c, 1.0, std::move(net)});
    }
    return out;
}

RieszCharge RieszCharge::upper() const { return variation(1.0); }
RieszCharge RieszCharge::lower() const { return variation(-1.0); }
RieszCharge RieszCharge::total_variation() const { return upper() + lower(); }

double RieszCharge::support_radius() const {
    double r = 0.0;
    for (const auto& a : atoms_) r = std::max(r, std::abs(a.location));
    for (const auto& s : shells_) r = std::max(r, std::abs(s.center) + s.radius);
    for (const auto& p : radial_) r = std::max(r, std::abs(p.center) + p.profile.support_end);
    return r;
}

// ---------------------------------------------------------------------------
// Charge integration

namespace {

// integral over (lo, hi) of density(s) * weight(s) ds.
quad::Result radial_integral(const RadialProfile& profile, const std::function<double(double)>& weight, double lo,
                             double hi, double tol, std::vector<double> breaks) {
    hi = std::min(hi, profile.support_end);
    quad::Result out;
    if (!(hi > lo)) return out;
    if (!std::isfinite(hi)) throw Error(ErrorCode::invalid_parameter, "radial integral over an unbounded range");
    breaks.insert(breaks.end(), profile.breakpoints.begin(), profile.breakpoints.end());
    std::vector<double> inside;
    for (double b : breaks) {
        if (b > lo && b < hi) inside.push_back(b);
    }
    std::sort(inside.begin(), inside.end());
    auto integrand = [&](double s) {
        const double w = weight(s);
        return w == 0.0 ? 0.0 : profile.density(s) * w;
    };
    double start = lo;
    if (profile.singular_at_zero && lo == 0.0) {
        const double s0 = 0.5 * (inside.empty() ? hi : inside.front());
        const quad::Result g = quad::graded(integrand, 0.0, s0);
        out.value += g.value;
        out.error += g.error;
        out.converged = out.converged && g.converged;
        out.panels += g.panels;
        start = s0;
    }
    const quad::Result r = quad::adaptive(integrand, start, hi, tol, inside);
    out.value += r.value;
    out.error += r.error;
    out.converged = out.converged && r.converged;
    out.panels += r.panels;
    return out;
}

double arc_fraction(const PlaneSet& domain, Complex c, double s) { return domain.arcs(c, s).measure() / kTwoPi; }

// Radii about c where circles about c meet the boundary of `domain`.
std::vector<double> domain_breaks(const PlaneSet& domain, Complex c) {
    std::vector<double> out;
    auto add = [&](const Region& r) {
        if (r.kind() == Region::Kind::whole_plane) return;
        const double d = std::abs(r.center() - c);
        for (double rad : {r.inner(), r.outer()}) {
            if (!std::isfinite(rad)) continue;
            out.push_back(std::abs(d - rad));
            out.push_back(d + rad);
        }
    };
    add(domain.base);
    if (domain.removed) add(*domain.removed);
    return out;
}

} // namespace

double charge_on_region(const RieszCharge& charge, const Region& region, double tol) {
    if (!region.bounded() && !std::isfinite(charge.support_radius())) {
        throw Error(ErrorCode::invalid_parameter, "charge of an unbounded region with unbounded support");
    }
    const PlaneSet domain = PlaneSet::of(region);
    double total = 0.0;
    for (const auto& a : charge.atoms()) {
        if (region.contains(a.location)) total += a.mass;
    }
    for (const auto& s : charge.shells()) total += s.mass * arc_fraction(domain, s.center, s.radius);

    const double part_tol = tol / std::max<std::size_t>(1, charge.radial().size());
    for (const auto& part : charge.radial()) {
        const RadialProfile& p = part.profile;
        const bool concentric = region.kind() == Region::Kind::whole_plane || region.center() == part.center;
        if (concentric && p.mass_within) {
            auto m = [&](double t) { return p.mass_within(std::min(t, p.support_end)); };
            double mass = 0.0;
            switch (region.kind()) {
            case Region::Kind::disk: mass = m(region.outer()); break;
            case Region::Kind::annulus: mass = m(region.outer()) - m(region.inner()); break;
            case Region::Kind::complement_of_disk: mass = m(p.support_end) - m(region.inner()); break;
            case Region::Kind::whole_plane: mass = m(p.support_end); break;
            }
            total += part.sign * mass;
            continue;
        }
        const double reach = region.bounded() ? std::abs(region.center() - part.center) + region.outer() : kInf;
        const quad::Result r = radial_integral(
            p, [&](double s) { return arc_fraction(domain, part.center, s); }, 0.0, reach, part_tol,
            domain_breaks(domain, part.center));
        if (!r.converged || r.error > part_tol) throw ToleranceFailure("charge_on_region radial quadrature", r.error);
        total += part.sign * r.value;
    }
    return total;
}

ChargeIntegral integrate_against(const RieszCharge& charge, const std::function<double(Complex)>& f,
                                 const PlaneSet& domain, double tol, std::span<const Complex> singular) {
    ChargeIntegral out;
    for (const auto& a : charge.atoms()) {
        if (domain.contains(a.location)) out.value += a.mass * f(a.location);
    }
    const std::size_t pieces = charge.shells().size() + charge.radial().size();
    const double piece_tol = tol / std::max<std::size_t>(1, pieces);
    for (const auto& s : charge.shells()) {
        const ArcSet arcs = domain.arcs(s.center, s.radius);
        const quad::Result r =
            detail::circle_average(f, s.center, s.radius, arcs, singular, piece_tol / std::abs(s.mass));
        out.value += s.mass * r.value;
        out.error += std::abs(s.mass) * r.error;
        out.converged = out.converged && r.converged;
    }
    for (const auto& part : charge.radial()) {
        const double reach = std::abs(part.center) + domain.enclosing_radius();
        std::vector<double> breaks = domain_breaks(domain, part.center);
        for (const Complex& a : singular) breaks.push_back(std::abs(a - part.center));
        double inner_error = 0.0;
        bool inner_ok = true;
        const double inner_tol = 1e-2 * piece_tol / std::abs(part.sign);
        auto avg = [&](double s) {
            const ArcSet arcs = domain.arcs(part.center, s);
            if (arcs.intervals().empty()) return 0.0;
            const quad::Result r = detail::circle_average(f, part.center, s, arcs, singular, inner_tol);
            inner_error = std::max(inner_error, r.error);
            inner_ok = inner_ok && r.converged;
            return r.value;
        };
        const quad::Result r = radial_integral(part.profile, avg, 0.0, reach, piece_tol / std::abs(part.sign), breaks);
        const double mass_scale = part.profile.mass_within ? part.profile.mass_within(std::min(reach, part.profile.support_end)) : 1.0;
        out.value += part.sign * r.value;
        out.error += std::abs(part.sign) * (r.error + inner_error * mass_scale);
        out.converged = out.converged && r.converged && inner_ok;
    }
    out.converged = out.converged && std::isfinite(out.value) && out.error <= tol * (1.0 + 1e-9);
    return out;
}

ChargeIntegral integrate_radial_function(const RieszCharge& charge, const std::function<double(double)>& g,
                                         double lo, double hi, double tol, std::span<const double> g_breaks) {
    ChargeIntegral out;
    const Region shell_region = Region::annulus(0.0, lo, hi);
    std::vector<double> breaks(g_breaks.begin(), g_breaks.end());
    breaks.push_back(lo);
    breaks.push_back(hi);
    for (const auto& a : charge.atoms()) {
        if (shell_region.contains(a.location)) out.value += a.mass * g(std::abs(a.location));
    }
    RieszCharge off_centre;
    for (const auto& s : charge.shells()) {
        if (s.center == Complex(0.0, 0.0)) {
            if (s.radius > lo && s.radius <= hi) out.value += s.mass * g(s.radius);
        } else {
            off_centre.add_shell(s.center, s.radius, s.mass);
        }
    }
    const double piece_tol = tol / std::max<std::size_t>(1, charge.radial().size() + 1);
    for (const auto& part : charge.radial()) {
        if (part.center != Complex(0.0, 0.0)) {
            off_centre.add_radial(part.center, part.profile, part.sign);
            continue;
        }
        const quad::Result r = radial_integral(part.profile, g, lo, hi, piece_tol / std::abs(part.sign), breaks);
        out.value += part.sign * r.value;
        out.error += std::abs(part.sign) * r.error;
        out.converged = out.converged && r.converged;
    }
    if (!off_centre.empty()) {
        const ChargeIntegral r = integrate_against(
            off_centre, [&](Complex z) { return g(std::abs(z)); }, PlaneSet::of(shell_region), piece_tol);
        out.value += r.value;
        out.error += r.error;
        out.converged = out.converged && r.converged;
    }
    out.converged = out.converged && std::isfinite(out.value) && out.error <= tol * (1.0 + 1e-9);
    return out;
}

} // namespace zerocert
