#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pipeline.hpp"
#include "scenario.hpp"

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitStage = 3;

struct Flags {
    std::string scenario;
    std::string out = "zerocert-out";
    std::optional<double> tol;
    std::optional<long long> seed;
    std::optional<double> tau_max;
};

void add_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--scenario", f.scenario, "Scenario JSON file")->required();
    cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
    cmd->add_option("--tol", f.tol, "Quadrature tolerance override")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "Random seed override")->check(CLI::NonNegativeNumber);
    cmd->add_option("--tau-max", f.tau_max, "Largest tau of the margin sweep")->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
    using namespace zerocert::app;
    CLI::App app{"zerocert: zero-subset certification for holomorphic functions with a growth majorant"};
    app.require_subcommand(1);
    Flags flags;
    std::vector<Stage> stages;
    for (const char* name : {"check-necessary", "check-m0", "construct-verify", "jensen-selftest", "means-selftest",
                             "lemma1", "all"}) {
        auto* cmd = app.add_subcommand(name);
        add_flags(cmd, flags);
        const std::string n = name;
        cmd->callback([n, &stages] {
            if (n == "all") {
                stages = all_stages();
            } else {
                stages = {*parse_stage(n)};
            }
        });
    }
    CLI11_PARSE(app, argc, argv);

    Scenario sc;
    try {
        sc = load_scenario(flags.scenario);
        if (flags.tol) sc.tol.quadrature = *flags.tol;
        if (flags.seed) sc.seed = static_cast<std::uint64_t>(*flags.seed);
        if (flags.tau_max) {
            if (*flags.tau_max < sc.family.t_min) throw SchemaError("--tau-max", "must be >= family.t_min");
            sc.family.t_max = *flags.tau_max;
        }
    } catch (const SchemaError& e) {
        std::cerr << "scenario error at " << e.what() << "\n";
        return kExitSchema;
    }

    const RunReport report = run(sc, stages, flags.out);
    for (const auto& s : report.stages) std::cout << summary_line(s) << "\n";
    if (!report.ok()) {
        for (const auto& s : report.stages) {
            if (!s.ok) std::cerr << "stage " << to_string(s.stage) << " failed: " << s.error << "\n";
        }
        return kExitStage;
    }
    return 0;
}
