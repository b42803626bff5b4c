#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "zerocert/construct.hpp"
#include "zerocert/criterion.hpp"
#include "zerocert/majorants.hpp"
#include "zerocert/means.hpp"
#include "zerocert/measures.hpp"

namespace zerocert::app {

/// Malformed or schema-invalid scenario. `where` is "line L, column C" for
/// parse errors and a dotted field path otherwise.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

struct FamilyConfig {
    FamilySpec spec;
    double t_min = 1.0;
    double t_max = 200.0;
    double ratio = kDefaultGridRatioValue;

    static constexpr double kDefaultGridRatioValue = 1.189207115002721;
};

struct ConstructConfig {
    std::optional<int> genus;
    std::optional<std::size_t> shells;
    DomainKind domain = DomainKind::plane;
    double a = 1.0;
    bool balancing = true;
};

struct MeansConfig {
    int samples = 100;
    double radius = 5.0;
};

struct JensenConfig {
    int polynomials = 25;
    int max_degree = 5;
    double root_radius = 2.0;
    double circle = 3.0;
    int grid = 200;
};

struct M0Config {
    double P = 1.0;
    M0Grid grid;
};

struct Tolerances {
    double quadrature = 1e-9;
    double slack = 1e-8;
};

struct Scenario {
    std::string name = "scenario";
    ZeroDistribution zeros;
    DSubharmonicMajorant majorant{make_harmonic_poly({}), make_harmonic_poly({})};
    RadiusProfile radius_profile = RadiusProfile::plane_power(1.0);
    FamilyConfig family;
    SufficiencyGrid grid;
    ConstructConfig construct;
    M0Config m0;
    Lemma1Setup lemma1;
    MeansConfig means;
    JensenConfig jensen;
    Tolerances tol;
    std::uint64_t seed = 7;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

} // namespace zerocert::app
