#include "pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "zerocert/construct.hpp"
#include "zerocert/criterion.hpp"
#include "zerocert/jensen.hpp"
#include "zerocert/kernels.hpp"
#include "zerocert/means.hpp"
#include "zerocert/random.hpp"
#include "zerocert/testfam.hpp"

namespace zerocert::app {

namespace {

using ojson = nlohmann::ordered_json;

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// JSON has no infinities; they go out as strings.
ojson jnum(double v) {
    if (std::isfinite(v)) return v;
    return num(v);
}

class Csv {
public:
    Csv(const std::filesystem::path& path, std::initializer_list<const char*> header) : out_(path) {
        if (!out_) throw Error(ErrorCode::invalid_parameter, "cannot write " + path.string());
        bool first = true;
        for (const char* h : header) {
            out_ << (first ? "" : ",") << h;
            first = false;
        }
        out_ << "\r\n";
    }
    Csv& operator<<(double v) { return cell(num(v)); }
    Csv& operator<<(const std::string& s) {
        if (s.find_first_of(",\"\r\n") == std::string::npos) return cell(s);
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return cell(q + "\"");
    }
    void end() {
        out_ << "\r\n";
        first_ = true;
    }

private:
    Csv& cell(const std::string& s) {
        out_ << (first_ ? "" : ",") << s;
        first_ = false;
        return *this;
    }
    std::ofstream out_;
    bool first_ = true;
};

struct Context {
    const Scenario& sc;
    std::filesystem::path dir;
    std::optional<Verdict> necessary;

    std::string file(StageResult& r, const std::string& name) const {
        r.files.push_back(name);
        return (dir / name).string();
    }
};

void jensen_selftest(Context& ctx, StageResult& r) {
    const JensenConfig& cfg = ctx.sc.jensen;
    const double tol = ctx.sc.tol.quadrature;
    Rng rng(ctx.sc.seed);
    const JensenMeasure circle = JensenMeasure::uniform_circle(0.0, cfg.circle);

    Csv pj(ctx.file(r, "jensen_pj.csv"), {"index", "degree", "residual", "quad_tol"});
    double worst = 0.0;
    for (int i = 0; i < cfg.polynomials; ++i) {
        const int degree = 1 + static_cast<int>(rng.uniform() * cfg.max_degree);
        std::vector<ZeroPoint> roots;
        for (int k = 0; k < degree; ++k) roots.push_back({rng.in_disk(0.0, cfg.root_radius), 1});
        const Complex lead(rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0));
        const double res = poisson_jensen_check(make_log_abs_poly_from_roots(lead, roots), circle, tol);
        worst = std::max(worst, res);
        pj << static_cast<double>(i) << static_cast<double>(degree) << res << tol;
        pj.end();
    }

    const JensenMeasure ring = JensenMeasure::annulus(0.0, 0.5 * cfg.circle, cfg.circle);
    const std::pair<double, JensenMeasure> parts[] = {{0.3, circle}, {0.7, ring}};
    const JensenMeasure mix = JensenMeasure::mixture(parts);
    const JensenPotential V = log_potential(mix);
    const JensenPotential back = log_potential(potential_to_measure(V));
    const JensenPotential V1 = log_potential(circle);
    const JensenPotential V2 = log_potential(ring);
    Csv rt(ctx.file(r, "jensen_roundtrip.csv"), {"re", "im", "V", "V_roundtrip", "V_affine", "roundtrip_diff", "affine_diff"});
    double worst_rt = 0.0;
    double worst_aff = 0.0;
    for (int i = 0; i < cfg.grid; ++i) {
        const Complex z = rng.in_disk(0.0, 2.0 * cfg.circle);
        if (z == Complex(0.0, 0.0)) continue;
        const double v = V(z);
        const double vb = back(z);
        const double va = 0.3 * V1(z) + 0.7 * V2(z);
        worst_rt = std::max(worst_rt, std::abs(v - vb));
        worst_aff = std::max(worst_aff, std::abs(v - va));
        rt << z.real() << z.imag() << v << vb << va << std::abs(v - vb) << std::abs(v - va);
        rt.end();
    }
    r.summary["poisson_jensen_max_residual"] = jnum(worst);
    r.summary["roundtrip_max_diff"] = jnum(worst_rt);
    r.summary["affinity_max_diff"] = jnum(worst_aff);
    r.summary["pass"] = worst <= 1e-6 && worst_rt <= 1e-6 && worst_aff <= 1e-6;
}

void means_selftest(Context& ctx, StageResult& r) {
    const auto& rp = ctx.sc.radius_profile;
    double reach = ctx.sc.means.radius;
    if (rp.kind() == RadiusProfile::Kind::disk_fraction) reach = std::min(reach, 0.9 * rp.domain_radius());
    Rng rng(ctx.sc.seed);
    std::vector<Complex> pts;
    for (int i = 0; i < ctx.sc.means.samples; ++i) pts.push_back(rng.in_disk(0.0, reach));
    const MeanChainReport rep = check_mean_chain(ctx.sc.majorant.up, rp, pts, ctx.sc.tol.quadrature, ctx.sc.tol.slack);

    Csv csv(ctx.file(r, "means_chain.csv"), {"re", "im", "r", "value", "disk_r", "circle_r", "disk_sqrt_e_r", "nested_lhs",
                                             "hat_rhs", "quad_tol", "skipped", "flag"});
    for (const auto& s : rep.samples) {
        csv << s.z.real() << s.z.imag() << s.r << s.value << s.disk_r << s.circle_r << s.disk_sqrt_e_r << s.nested_lhs
            << s.hat_rhs << ctx.sc.tol.quadrature << (s.skipped ? 1.0 : 0.0) << s.flag;
        csv.end();
    }
    ojson worst = ojson::array();
    for (double w : rep.worst_slack) worst.push_back(jnum(w));
    r.summary["samples"] = rep.samples.size();
    r.summary["violations"] = rep.violations;
    r.summary["skipped"] = rep.skipped;
    r.summary["worst_slack"] = worst;
    r.summary["slack_tolerance"] = rep.slack_tolerance;
    r.summary["pass"] = rep.ok();
}

void m0_stage(Context& ctx, StageResult& r) {
    const M0Report rep = check_m0(ctx.sc.majorant.up, ctx.sc.m0.P, ctx.sc.m0.grid, ctx.sc.tol.quadrature);
    Csv cells(ctx.file(r, "m0_cells.csv"), {"re", "im", "deviation", "quad_tol", "flagged"});
    for (const auto& c : rep.cells) {
        cells << c.z.real() << c.z.imag() << c.deviation << ctx.sc.tol.quadrature << (c.flagged ? 1.0 : 0.0);
        cells.end();
    }
    Csv shells(ctx.file(r, "m0_shells.csv"), {"shell", "sup", "cumulative_sup", "quad_tol"});
    for (std::size_t j = 0; j < rep.shell_sup.size(); ++j) {
        shells << static_cast<double>(j) << rep.shell_sup[j] << rep.cumulative_sup[j] << ctx.sc.tol.quadrature;
        shells.end();
    }
    r.summary["C_estimate"] = jnum(rep.C_estimate);
    r.summary["bounded"] = rep.bounded;
    r.summary["flagged"] = rep.flagged;
    r.summary["P"] = ctx.sc.m0.P;
}

void necessary_stage(Context& ctx, StageResult& r) {
    const auto& f = ctx.sc.family;
    const auto taus = geometric_grid(f.t_min, f.t_max, f.ratio);
    SweepOptions opt;
    opt.tol = ctx.sc.tol.quadrature;
    const MarginCurve curve = margin_sweep(ctx.sc.zeros, ctx.sc.majorant, f.spec, taus, opt);
    ctx.necessary = curve.verdict;

    Csv csv(ctx.file(r, "margin_curve.csv"), {"tau", "lhs", "lhs_err", "rhs", "rhs_err", "margin", "margin_err"});
    for (const auto& s : curve.samples) {
        csv << s.tau << s.lhs << s.lhs_err << s.rhs << s.rhs_err << s.margin << s.margin_err;
        csv.end();
    }
    ojson dropped = ojson::array();
    for (const auto& d : curve.dropped) dropped.push_back({{"tau", d.tau}, {"reason", d.reason}});
    r.summary["verdict"] = to_string(curve.verdict);
    r.summary["reason"] = curve.reason;
    r.summary["family"] = f.spec.kind == FamilySpec::Kind::truncated_log ? "truncated_log" : "smooth_capped_log";
    r.summary["samples"] = curve.samples.size();
    r.summary["dropped"] = dropped;
    r.summary["growth_exponent"] = jnum(curve.fit.exponent);
    r.summary["growth_confidence"] = jnum(curve.fit.confidence);
    const LinearLogFit lin = fit_linear_log(curve, std::max(f.t_min, f.t_max / 20.0), f.t_max);
    r.summary["linear_log_fit"] = {{"a", jnum(lin.a)}, {"b", jnum(lin.b)}, {"c", jnum(lin.c)}, {"rms", jnum(lin.rms)}};
}

void construct_stage(Context& ctx, StageResult& r) {
    const auto& cc = ctx.sc.construct;
    SufficiencyOptions opt;
    opt.genus = cc.genus;
    opt.shells = cc.shells;
    opt.domain = cc.domain;
    opt.a = cc.a;
    opt.tol = ctx.sc.tol.quadrature;
    opt.allow_balancing = cc.balancing;
    opt.necessary = ctx.necessary;
    const SufficiencyReport rep = verify_sufficiency(ctx.sc.zeros, ctx.sc.majorant, ctx.sc.radius_profile, ctx.sc.grid, opt);

    Csv csv(ctx.file(r, "sufficiency.csv"), {"re", "im", "log_abs_f", "tail", "bound", "excess", "quad_tol", "skipped"});
    for (const auto& g : rep.grid) {
        csv << g.z.real() << g.z.imag() << g.log_abs_f << g.tail << g.bound << g.excess << ctx.sc.tol.quadrature
            << (g.skipped ? 1.0 : 0.0);
        csv.end();
    }
    ojson bal = ojson::array();
    for (const Complex& c : rep.balancing) bal.push_back({c.real(), c.imag()});
    r.summary["certified"] = rep.certified;
    r.summary["refused"] = rep.refused;
    r.summary["reason"] = rep.reason;
    r.summary["necessary_verdict"] = ctx.necessary ? to_string(*ctx.necessary) : "not run";
    r.summary["genus"] = rep.genus;
    r.summary["retained_zeros"] = rep.retained;
    r.summary["evaluated"] = rep.evaluated;
    r.summary["skipped"] = rep.skipped;
    r.summary["violations"] = rep.violations.size();
    r.summary["max_excess"] = jnum(rep.max_excess);
    r.summary["balanced"] = rep.balanced;
    r.summary["balancing_coefficients"] = bal;
}

void lemma1_stage(Context& ctx, StageResult& r) {
    const Lemma1Constants c = lemma1_constants(ctx.sc.lemma1, ctx.sc.majorant, ctx.sc.tol.quadrature);
    r.summary["C"] = jnum(c.C);
    r.summary["green_inf"] = jnum(c.green_inf);
    r.summary["C_bar"] = jnum(c.C_bar);
    r.summary["C_bar_error"] = jnum(c.C_bar_error);
    r.summary["terms"] = {jnum(c.terms[0]), jnum(c.terms[1]), jnum(c.terms[2])};
}

} // namespace

const char* to_string(Stage s) {
    switch (s) {
    case Stage::jensen_selftest: return "jensen-selftest";
    case Stage::means_selftest: return "means-selftest";
    case Stage::check_m0: return "check-m0";
    case Stage::check_necessary: return "check-necessary";
    case Stage::construct_verify: return "construct-verify";
    case Stage::lemma1: return "lemma1";
    }
    return "unknown";
}

std::optional<Stage> parse_stage(std::string_view name) {
    for (Stage s : all_stages()) {
        if (name == to_string(s)) return s;
    }
    return std::nullopt;
}

std::vector<Stage> all_stages() {
    return {Stage::jensen_selftest, Stage::means_selftest, Stage::check_m0,
            Stage::check_necessary, Stage::construct_verify, Stage::lemma1};
}

bool RunReport::ok() const {
    for (const auto& s : stages) {
        if (!s.ok) return false;
    }
    return true;
}

nlohmann::ordered_json RunReport::to_json() const {
    ojson j;
    j["scenario"] = scenario;
    j["seed"] = seed;
    j["isa"] = kernels::to_string(kernels::active());
    j["ok"] = ok();
    j["stages"] = ojson::array();
    for (const auto& s : stages) {
        ojson e;
        e["stage"] = to_string(s.stage);
        e["status"] = s.ok ? "ok" : "error";
        if (!s.ok) e["error"] = s.error;
        e["seconds"] = s.seconds;
        e["files"] = s.files;
        e["result"] = s.summary.is_null() ? ojson::object() : s.summary;
        j["stages"].push_back(e);
    }
    return j;
}

RunReport run(const Scenario& scenario, std::span<const Stage> stages, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    RunReport report;
    report.scenario = scenario.name;
    report.seed = scenario.seed;
    Context ctx{scenario, out_dir, std::nullopt};
    for (Stage stage : stages) {
        StageResult r;
        r.stage = stage;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            switch (stage) {
            case Stage::jensen_selftest: jensen_selftest(ctx, r); break;
            case Stage::means_selftest: means_selftest(ctx, r); break;
            case Stage::check_m0: m0_stage(ctx, r); break;
            case Stage::check_necessary: necessary_stage(ctx, r); break;
            case Stage::construct_verify: construct_stage(ctx, r); break;
            case Stage::lemma1: lemma1_stage(ctx, r); break;
            }
        } catch (const Error& e) {
            r.ok = false;
            r.error = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.stages.push_back(std::move(r));
    }
    std::ofstream(out_dir / "summary.json") << report.to_json().dump(2) << "\n";
    return report;
}

std::string summary_line(const StageResult& r) {
    std::string line = std::string(to_string(r.stage)) + ": ";
    if (!r.ok) return line + "ERROR " + r.error;
    const auto& s = r.summary;
    switch (r.stage) {
    case Stage::check_necessary:
        return line + s["verdict"].get<std::string>() + " (" + std::to_string(s["samples"].get<std::size_t>()) +
               " samples, " + std::to_string(s["dropped"].size()) + " dropped)";
    case Stage::construct_verify:
        return line + (s["certified"].get<bool>() ? "certified" : "not certified") + " - " + s["reason"].get<std::string>();
    case Stage::check_m0:
        return line + (s["bounded"].get<bool>() ? "bounded" : "not bounded") + ", C ~ " + s["C_estimate"].dump();
    case Stage::lemma1:
        return line + "C = " + s["C"].dump() + ", C_bar = " + s["C_bar"].dump();
    case Stage::jensen_selftest:
    case Stage::means_selftest:
        return line + (s["pass"].get<bool>() ? "pass" : "FAIL");
    }
    return line;
}

} // namespace zerocert::app
