#include "scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace zerocert::app {

namespace {

using json = nlohmann::json;

std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

class Node {
public:
    Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

    const std::string& path() const { return path_; }
    [[noreturn]] void fail(const std::string& what) const { throw SchemaError(path_.empty() ? "<root>" : path_, what); }

    void object(std::initializer_list<const char*> allowed) const {
        if (!j_.is_object()) fail("expected an object");
        for (const auto& [key, value] : j_.items()) {
            bool known = false;
            for (const char* a : allowed) known = known || key == a;
            if (!known) Node(value, child(key)).fail("unknown field");
        }
    }

    std::optional<Node> get(const char* key) const {
        if (!j_.contains(key)) return std::nullopt;
        return Node(j_.at(key), child(key));
    }
    Node need(const char* key) const {
        auto n = get(key);
        if (!n) Node(j_, child(key)).fail("missing required field");
        return *n;
    }

    double number() const {
        if (!j_.is_number()) fail("expected a number");
        return j_.get<double>();
    }
    double positive() const {
        const double v = number();
        if (!(v > 0.0)) fail("must be > 0");
        return v;
    }
    long long integer() const {
        if (!j_.is_number_integer()) fail("expected an integer");
        return j_.get<long long>();
    }
    int count() const {
        const long long v = integer();
        if (v < 1 || v > 1000000000) fail("must be a positive integer");
        return static_cast<int>(v);
    }
    bool boolean() const {
        if (!j_.is_boolean()) fail("expected true or false");
        return j_.get<bool>();
    }
    std::string string() const {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }
    Complex complex() const {
        if (j_.is_number()) return {j_.get<double>(), 0.0};
        if (!j_.is_array() || j_.size() != 2 || !j_[0].is_number() || !j_[1].is_number()) {
            fail("expected a number or [re, im]");
        }
        return {j_[0].get<double>(), j_[1].get<double>()};
    }
    std::vector<Node> array() const {
        if (!j_.is_array()) fail("expected an array");
        std::vector<Node> out;
        for (std::size_t i = 0; i < j_.size(); ++i) out.emplace_back(j_[i], path_ + "[" + std::to_string(i) + "]");
        return out;
    }

private:
    std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    const json& j_;
    std::string path_;
};

template <class F>
auto guarded(const Node& n, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        n.fail(e.what());
    }
}

ZeroPoint parse_point(const Node& n) {
    n.object({"z", "mult"});
    ZeroPoint p{n.need("z").complex(), 1};
    if (auto m = n.get("mult")) p.multiplicity = m->count();
    return p;
}

std::vector<ZeroPoint> parse_points(const Node& n) {
    std::vector<ZeroPoint> out;
    for (const auto& item : n.array()) out.push_back(parse_point(item));
    return out;
}

Generator parse_generator(const Node& n) {
    const std::string kind = n.need("kind").string();
    if (kind == "line_lattice") {
        n.object({"kind", "step", "k_max", "mult"});
        LineLattice g;
        if (auto v = n.get("step")) g.step = v->complex();
        if (auto v = n.get("k_max")) g.k_max = v->count();
        if (auto v = n.get("mult")) g.multiplicity = v->count();
        if (g.step == Complex(0.0, 0.0)) n.fail("step must be nonzero");
        return g;
    }
    if (kind == "gaussian_lattice") {
        n.object({"kind", "spacing", "radius", "mult"});
        GaussianLattice g;
        if (auto v = n.get("spacing")) g.spacing = v->positive();
        if (auto v = n.get("radius")) g.radius = v->positive();
        if (auto v = n.get("mult")) g.multiplicity = v->count();
        return g;
    }
    if (kind == "radial_rule") {
        n.object({"kind", "scale", "order", "per_ring", "phase", "rings", "mult"});
        RadialRule g;
        if (auto v = n.get("scale")) g.scale = v->positive();
        if (auto v = n.get("order")) g.order = v->positive();
        if (auto v = n.get("per_ring")) g.per_ring = v->count();
        if (auto v = n.get("phase")) g.phase = v->number();
        if (auto v = n.get("rings")) g.rings = v->count();
        if (auto v = n.get("mult")) g.multiplicity = v->count();
        return g;
    }
    n.need("kind").fail("unsupported generator kind '" + kind + "'");
}

ZeroDistribution parse_zeros(const Node& n) {
    n.object({"points", "generator"});
    std::vector<ZeroPoint> pts;
    if (auto p = n.get("points")) pts = parse_points(*p);
    return guarded(n, [&] {
        if (auto g = n.get("generator")) return ZeroDistribution::from_generator(parse_generator(*g), pts);
        return ZeroDistribution(pts);
    });
}

std::vector<Complex> parse_coeffs(const Node& n) {
    std::vector<Complex> out;
    for (const auto& item : n.array()) out.push_back(item.complex());
    return out;
}

SubharmonicModel parse_model(const Node& n) {
    const std::string kind = n.need("kind").string();
    return guarded(n, [&]() -> SubharmonicModel {
        if (kind == "zero") {
            n.object({"kind"});
            return make_harmonic_poly({});
        }
        if (kind == "radial_power") {
            n.object({"kind", "sigma", "rho"});
            return make_radial_power(n.need("sigma").number(), n.need("rho").number());
        }
        if (kind == "log_poly") {
            n.object({"kind"});
            return make_log_poly();
        }
        if (kind == "log_abs_poly") {
            n.object({"kind", "coeffs", "leading", "roots"});
            if (auto c = n.get("coeffs")) return make_log_abs_poly(parse_coeffs(*c));
            Complex lead(1.0, 0.0);
            if (auto l = n.get("leading")) lead = l->complex();
            return make_log_abs_poly_from_roots(lead, parse_points(n.need("roots")));
        }
        if (kind == "harmonic_poly") {
            n.object({"kind", "coeffs"});
            return make_harmonic_poly(parse_coeffs(n.need("coeffs")));
        }
        if (kind == "sum") {
            n.object({"kind", "terms"});
            const auto terms = n.need("terms").array();
            if (terms.empty()) return make_harmonic_poly({});
            SubharmonicModel acc = parse_model(terms.front());
            for (std::size_t i = 1; i < terms.size(); ++i) acc = acc + parse_model(terms[i]);
            return acc;
        }
        n.need("kind").fail("unsupported majorant kind '" + kind + "'");
    });
}

DSubharmonicMajorant parse_majorant(const Node& n) {
    n.object({"up", "low"});
    SubharmonicModel up = make_harmonic_poly({});
    SubharmonicModel low = make_harmonic_poly({});
    if (auto u = n.get("up")) up = parse_model(*u);
    if (auto l = n.get("low")) low = parse_model(*l);
    return guarded(n, [&] { return DSubharmonicMajorant(up, low); });
}

RadiusProfile parse_profile(const Node& n) {
    const std::string kind = n.need("kind").string();
    return guarded(n, [&] {
        if (kind == "plane_power") {
            n.object({"kind", "P"});
            return RadiusProfile::plane_power(n.need("P").number());
        }
        if (kind == "disk_fraction") {
            n.object({"kind", "alpha", "R"});
            return RadiusProfile::disk_fraction(n.need("alpha").number(), n.need("R").number());
        }
        n.need("kind").fail("unsupported radius profile '" + kind + "'");
    });
}

FamilyConfig parse_family(const Node& n) {
    n.object({"family", "eps", "t_min", "t_max", "ratio"});
    FamilyConfig f;
    if (auto v = n.get("family")) {
        const std::string kind = v->string();
        if (kind == "truncated_log") {
            f.spec.kind = FamilySpec::Kind::truncated_log;
        } else if (kind == "smooth_capped_log") {
            f.spec.kind = FamilySpec::Kind::smooth_capped_log;
        } else {
            v->fail("unsupported family '" + kind + "'");
        }
    }
    if (auto v = n.get("eps")) {
        f.spec.eps = v->number();
        if (!(f.spec.eps > 0.0 && f.spec.eps < 1.0)) v->fail("must lie in (0, 1)");
    }
    if (auto v = n.get("t_min")) f.t_min = v->positive();
    if (auto v = n.get("t_max")) f.t_max = v->positive();
    if (auto v = n.get("ratio")) {
        f.ratio = v->number();
        if (!(f.ratio > 1.0)) v->fail("must be > 1");
    }
    if (f.t_max < f.t_min) n.fail("t_max must be >= t_min");
    return f;
}

SufficiencyGrid parse_grid(const Node& n) {
    n.object({"r_max", "radial", "angles"});
    SufficiencyGrid g;
    if (auto v = n.get("r_max")) g.r_max = v->positive();
    if (auto v = n.get("radial")) g.radial = v->count();
    if (auto v = n.get("angles")) g.angles = v->count();
    return g;
}

ConstructConfig parse_construct(const Node& n) {
    n.object({"genus", "shells", "domain", "a", "balancing"});
    ConstructConfig c;
    if (auto v = n.get("genus")) {
        const long long p = v->integer();
        if (p < 0 || p > 8) v->fail("must lie in [0, 8]");
        c.genus = static_cast<int>(p);
    }
    if (auto v = n.get("shells")) c.shells = static_cast<std::size_t>(v->count());
    if (auto v = n.get("domain")) {
        const std::string d = v->string();
        if (d == "plane") {
            c.domain = DomainKind::plane;
        } else if (d == "simply_connected") {
            c.domain = DomainKind::simply_connected;
        } else if (d == "general") {
            c.domain = DomainKind::general;
        } else {
            v->fail("unsupported domain '" + d + "'");
        }
    }
    if (auto v = n.get("a")) c.a = v->positive();
    if (auto v = n.get("balancing")) c.balancing = v->boolean();
    return c;
}

M0Config parse_m0(const Node& n) {
    n.object({"P", "r_max", "points_per_shell", "angles"});
    M0Config m;
    if (auto v = n.get("P")) {
        m.P = v->number();
        if (!(m.P >= 0.0)) v->fail("must be >= 0");
    }
    if (auto v = n.get("r_max")) {
        m.grid.r_max = v->number();
        if (!(m.grid.r_max > 1.0)) v->fail("must be > 1");
    }
    if (auto v = n.get("points_per_shell")) m.grid.points_per_shell = v->count();
    if (auto v = n.get("angles")) m.grid.angles = v->count();
    return m;
}

Lemma1Setup parse_lemma1(const Node& n) {
    n.object({"domain_center", "domain_radius", "set_center", "set_radius", "z0", "b"});
    Lemma1Setup s;
    if (auto v = n.get("domain_center")) s.domain_center = v->complex();
    if (auto v = n.get("domain_radius")) s.domain_radius = v->positive();
    if (auto v = n.get("set_center")) s.set_center = v->complex();
    if (auto v = n.get("set_radius")) s.set_radius = v->positive();
    if (auto v = n.get("z0")) s.z0 = v->complex();
    if (auto v = n.get("b")) s.b = v->positive();
    return s;
}

MeansConfig parse_means(const Node& n) {
    n.object({"samples", "radius"});
    MeansConfig m;
    if (auto v = n.get("samples")) m.samples = v->count();
    if (auto v = n.get("radius")) m.radius = v->positive();
    return m;
}

JensenConfig parse_jensen(const Node& n) {
    n.object({"polynomials", "max_degree", "root_radius", "circle", "grid"});
    JensenConfig j;
    if (auto v = n.get("polynomials")) j.polynomials = v->count();
    if (auto v = n.get("max_degree")) j.max_degree = v->count();
    if (auto v = n.get("root_radius")) j.root_radius = v->positive();
    if (auto v = n.get("circle")) j.circle = v->positive();
    if (auto v = n.get("grid")) j.grid = v->count();
    if (!(j.circle > j.root_radius)) n.fail("circle must exceed root_radius");
    return j;
}

Tolerances parse_tolerances(const Node& n) {
    n.object({"quadrature", "slack"});
    Tolerances t;
    if (auto v = n.get("quadrature")) t.quadrature = v->positive();
    if (auto v = n.get("slack")) t.slack = v->positive();
    return t;
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(line_col(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
    }
    const Node root(doc, "");
    root.object({"name", "zeros", "majorant", "radius_profile", "family", "grid", "construct", "m0", "lemma1", "means",
                 "jensen", "tolerances", "seed"});
    Scenario s;
    if (auto v = root.get("name")) s.name = v->string();
    if (auto v = root.get("zeros")) s.zeros = parse_zeros(*v);
    if (auto v = root.get("majorant")) s.majorant = parse_majorant(*v);
    if (auto v = root.get("radius_profile")) s.radius_profile = parse_profile(*v);
    if (auto v = root.get("family")) s.family = parse_family(*v);
    if (auto v = root.get("grid")) s.grid = parse_grid(*v);
    if (auto v = root.get("construct")) s.construct = parse_construct(*v);
    if (auto v = root.get("m0")) s.m0 = parse_m0(*v);
    if (auto v = root.get("lemma1")) s.lemma1 = parse_lemma1(*v);
    if (auto v = root.get("means")) s.means = parse_means(*v);
    if (auto v = root.get("jensen")) s.jensen = parse_jensen(*v);
    if (auto v = root.get("tolerances")) s.tol = parse_tolerances(*v);
    if (auto v = root.get("seed")) {
        const long long seed = v->integer();
        if (seed < 0) v->fail("must be >= 0");
        s.seed = static_cast<std::uint64_t>(seed);
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path, "cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

} // namespace zerocert::app
