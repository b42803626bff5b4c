#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scenario.hpp"

namespace zerocert::app {

enum class Stage { jensen_selftest, means_selftest, check_m0, check_necessary, construct_verify, lemma1 };

const char* to_string(Stage s);
std::optional<Stage> parse_stage(std::string_view name);
/// Every stage, in the order `all` runs them.
std::vector<Stage> all_stages();

struct StageResult {
    Stage stage;
    bool ok = true;
    std::string error;
    double seconds = 0.0;
    nlohmann::ordered_json summary;
    std::vector<std::string> files;
};

struct RunReport {
    std::string scenario;
    std::uint64_t seed = 0;
    std::vector<StageResult> stages;

    bool ok() const;
    nlohmann::ordered_json to_json() const;
};

/// Runs the stages in order, writing CSV files into `out_dir`. Numerical
/// errors are caught per stage and recorded; later stages still run.
RunReport run(const Scenario& scenario, std::span<const Stage> stages, const std::filesystem::path& out_dir);

/// One human-readable line per stage.
std::string summary_line(const StageResult& r);

} // namespace zerocert::app
