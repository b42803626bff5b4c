// One line per acceptance criterion; exit status 1 when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zerocert/construct.hpp"
#include "zerocert/criterion.hpp"
#include "zerocert/jensen.hpp"
#include "zerocert/means.hpp"
#include "zerocert/random.hpp"
#include "zerocert/testfam.hpp"

using namespace zerocert;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const auto kZero = make_harmonic_poly({});

Outcome poisson_jensen() {
    const auto t0 = Clock::now();
    Rng rng(1);
    const auto mu = JensenMeasure::uniform_circle(0.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
        const int degree = 1 + static_cast<int>(rng.uniform() * 5);
        std::vector<ZeroPoint> roots;
        for (int k = 0; k < degree; ++k) roots.push_back({rng.in_disk(0.0, 2.0), 1});
        const Complex lead(rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0));
        worst = std::max(worst, poisson_jensen_check(make_log_abs_poly_from_roots(lead, roots), mu, 1e-9));
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return {worst <= 1e-6 && secs < 5.0, fmt("worst residual %.3g, %.2f s", worst, secs)};
}

Outcome mean_chain() {
    Rng rng(2);
    std::vector<Complex> pts;
    for (int i = 0; i < 100; ++i) pts.push_back(rng.in_disk(0.0, 5.0));
    const auto rp = RadiusProfile::plane_power(1.0);
    const std::vector<ZeroPoint> a{{Complex(0.3, 0.2), 1}};
    const std::vector<Complex> z2{0.0, 0.0, 1.0};
    const std::vector<SubharmonicModel> models{make_log_abs_poly_from_roots(1.0, a), make_radial_power(1, 2),
                                               make_radial_power(1, 1), make_harmonic_poly(z2) + make_radial_power(1, 1)};
    std::size_t violations = 0;
    std::size_t skipped = 0;
    double worst = kInf;
    for (const auto& u : models) {
        const auto rep = check_mean_chain(u, rp, pts, 1e-11, 1e-8);
        violations += rep.violations;
        skipped += rep.skipped;
        for (double s : rep.worst_slack) worst = std::min(worst, s);
    }
    return {violations == 0 && skipped == 0,
            fmt("%zu violations, %zu skipped over 4 x 100 points, smallest slack %.3g", violations, skipped, worst)};
}

Outcome bijection() {
    Rng rng(3);
    const auto c1 = JensenMeasure::uniform_circle(0.0, 1.0);
    const auto c2 = JensenMeasure::uniform_circle(0.0, 2.5);
    const std::pair<double, JensenMeasure> parts[] = {{0.4, c1}, {0.6, c2}};
    const auto mix = JensenMeasure::mixture(parts);
    const auto V1 = log_potential(c1);
    const auto V2 = log_potential(c2);
    double worst_rt = 0.0;
    double worst_aff = 0.0;
    for (const JensenMeasure* mu : {&c1, &c2, &mix}) {
        const auto V = log_potential(*mu);
        const auto back = log_potential(potential_to_measure(V));
        Rng grid(5);
        for (int i = 0; i < 200; ++i) {
            const Complex z = grid.in_disk(0.0, 4.0);
            worst_rt = std::max(worst_rt, std::abs(V(z) - back(z)));
            if (mu == &mix) worst_aff = std::max(worst_aff, std::abs(V(z) - (0.4 * V1(z) + 0.6 * V2(z))));
        }
    }
    return {worst_rt <= 1e-6 && worst_aff <= 1e-6, fmt("roundtrip %.3g, affinity %.3g", worst_rt, worst_aff)};
}

Outcome positive_case() {
    const auto Z = ZeroDistribution::from_generator(LineLattice{Complex(kPi, 0), 10000});
    DSubharmonicMajorant M(make_radial_power(1, 1), kZero);
    const auto taus = geometric_grid(1.0, 200.0, kDefaultGridRatio);
    const auto c = margin_sweep(Z, M, FamilySpec{}, taus);
    // Oracle: direct summation of N(t) minus the exact rhs t.
    double oracle_err = 0.0;
    bool negative = true;
    bool decreasing = true;
    double prev = kInf;
    for (const auto& s : c.samples) {
        oracle_err = std::max(oracle_err, std::abs(s.margin - (oracle::nevanlinna_pi_lattice(s.tau, 10000) - s.tau)));
        if (s.tau >= 10.0) {
            negative = negative && s.margin < 0.0;
            decreasing = decreasing && s.margin < prev;
            prev = s.margin;
        }
    }
    const auto fit = fit_linear_log(c, 10.0, 200.0);
    const double target = 2.0 / kPi - 1.0;
    const bool slope_ok = std::abs(fit.a - target) <= 0.05 * std::abs(target);
    return {c.verdict == Verdict::consistent && negative && decreasing && slope_ok && oracle_err <= 1e-6,
            fmt("verdict %s, slope %.5f (target %.5f), negative %d, decreasing %d, oracle gap %.2g", to_string(c.verdict),
                fit.a, target, negative, decreasing, oracle_err)};
}

Outcome negative_case() {
    const auto Z = ZeroDistribution::from_generator(GaussianLattice{1.0, 300.0});
    DSubharmonicMajorant M(make_radial_power(1, 1), kZero);
    const auto taus = geometric_grid(1.0, 200.0, kDefaultGridRatio);
    const auto c = margin_sweep(Z, M, FamilySpec{}, taus);
    double oracle_err = 0.0;
    for (const auto& s : c.samples) {
        if (s.tau > 60.0) continue;
        oracle_err = std::max(oracle_err, std::abs(s.lhs - oracle::nevanlinna_gaussian(s.tau, 300.0)) / std::max(1.0, s.lhs));
    }
    const double e = c.fit.exponent;
    return {c.verdict == Verdict::violated && e >= 1.8 && e <= 2.2 && oracle_err <= 1e-10,
            fmt("verdict %s, growth exponent %.4f (R^2 %.4f), oracle gap %.2g", to_string(c.verdict), e, c.fit.confidence,
                oracle_err)};
}

Outcome weierstrass() {
    const auto Z = ZeroDistribution::from_generator(LineLattice{Complex(kPi, 0), std::nullopt});
    const ProductRepresentation f(Z, 1, 10000);
    Rng rng(6);
    double worst = 0.0;
    for (int i = 0; i < 50;) {
        const Complex z = rng.in_disk(0.0, 5.0);
        if (std::abs(z - kPi * std::round(z.real() / kPi)) < 0.1) continue;
        ++i;
        worst = std::max(worst, std::abs(f.eval_log_abs(z).value() - oracle::log_abs_sinc(z)));
    }
    return {worst <= 1e-3, fmt("worst error %.3g over 50 points", worst)};
}

Outcome m0() {
    bool ok = true;
    std::string detail;
    for (double rho : {0.5, 1.0, 2.0}) {
        const auto r = check_m0(make_radial_power(1, rho), 1.0, M0Grid{});
        const auto& cs = r.cumulative_sup;
        const double drift = cs.size() >= 2 ? std::abs(cs.back() - cs[cs.size() - 2]) / std::max(1e-300, cs.back()) : kInf;
        ok = ok && r.bounded && r.flagged == 0 && drift <= 0.01;
        detail += fmt("rho=%g C~%.4g drift %.2g; ", rho, r.C_estimate, drift);
    }
    const std::vector<Complex> h{0.0, Complex(1, 2), 0.0, 1.0};
    const auto r = check_m0(make_harmonic_poly(h), 1.0, M0Grid{});
    double worst = 0.0;
    for (const auto& c : r.cells) worst = std::max(worst, std::abs(c.deviation));
    ok = ok && worst <= 1e-10;
    detail += fmt("harmonic max %.3g", worst);
    return {ok, detail};
}

Outcome end_to_end() {
    const auto taus = geometric_grid(1.0, 200.0, kDefaultGridRatio);
    const auto rp = RadiusProfile::plane_power(1.0);

    const auto Zs = ZeroDistribution::from_generator(LineLattice{Complex(kPi, 0), std::nullopt});
    DSubharmonicMajorant Ms(make_radial_power(2, 1), kZero);
    const auto ns = margin_sweep(Zs, Ms, FamilySpec{}, taus);
    SufficiencyOptions os;
    os.necessary = ns.verdict;
    const auto ss = verify_sufficiency(Zs, Ms, rp, {}, os);

    const auto Zg = ZeroDistribution::from_generator(GaussianLattice{1.0, 300.0});
    DSubharmonicMajorant Mg(make_radial_power(1, 1), kZero);
    const auto ng = margin_sweep(Zg, Mg, FamilySpec{}, taus);
    // Run without the necessary-side verdict so the constructive check fails on its own.
    const auto sg = verify_sufficiency(Zg, Mg, rp);

    const bool sin_ok = ss.certified && ss.violations.empty() && ns.verdict == Verdict::consistent;
    const bool gauss_ok = !sg.certified && ng.verdict == Verdict::violated;
    const bool contradiction = (ss.certified && ns.verdict == Verdict::violated) || (sg.certified && ng.verdict == Verdict::violated);
    return {sin_ok && gauss_ok && !contradiction,
            fmt("sin: certified %d with %zu violations, necessary %s; gaussian: certified %d (%zu of %zu exceed), necessary %s",
                ss.certified, ss.violations.size(), to_string(ns.verdict), sg.certified, sg.violations.size(), sg.evaluated,
                to_string(ng.verdict))};
}

Outcome lemma1() {
    Lemma1Setup s;
    const auto c0 = lemma1_constants(s, DSubharmonicMajorant(kZero, kZero));
    const double c_err = std::abs(c0.C - 1.0 / std::log(2.0));
    const std::vector<ZeroPoint> roots{{Complex(0.3, 0.1), 1}, {Complex(-0.5, 0.4), 2}, {Complex(0.1, -0.7), 1}};
    const auto cq = lemma1_constants(s, DSubharmonicMajorant(make_log_abs_poly_from_roots(2.0, roots), kZero));
    // Oracle: atom sum of the Green function plus max(0, ln|q(0)|).
    double atoms = 0.0;
    double q0 = std::log(2.0);
    for (const auto& r : roots) {
        atoms += r.multiplicity * oracle::green_disk(1.0, 0.0, r.location);
        q0 += r.multiplicity * std::log(std::abs(r.location));
    }
    const double oracle_cbar = atoms + std::max(0.0, q0);
    const double cbar_err = std::abs(cq.C_bar - oracle_cbar);
    return {c_err <= 1e-10 && std::isfinite(cq.C_bar) && cbar_err <= 1e-8,
            fmt("C error %.3g, C_bar %.12g vs oracle %.12g", c_err, cq.C_bar, oracle_cbar)};
}

} // namespace

int main() {
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"poisson-jensen identity", poisson_jensen},
        {"mean chain and enlarged-radius inequality", mean_chain},
        {"measure/potential bijection", bijection},
        {"criterion positive case (pi lattice, |z|)", positive_case},
        {"criterion negative case (gaussian lattice, |z|)", negative_case},
        {"weierstrass product fidelity", weierstrass},
        {"growth-regularity (M0) check", m0},
        {"end-to-end construct-verify vs check-necessary", end_to_end},
        {"disk constants C and C_bar", lemma1},
    };
    int failed = 0;
    int n = 0;
    for (const auto& [name, check] : criteria) {
        ++n;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("[%s] %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str(), secs);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %d criteria passed\n", n - failed, n);
    return failed == 0 ? 0 : 1;
}
