#pragma once

// Batch scenario runner: configuration, report rows, CSV output and the
// scenario registry used by the command-line tool.

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace approxinv::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModelParams {
    std::size_t circle_samples = 4096;  // M
    std::size_t c0_points = 2001;       // G
    double c0_half_width = 40.0;        // L
    double c0_tail_tolerance = 1e-3;
    std::size_t matrix_size = 16;       // n
    std::size_t disk_degree = 8;
    std::size_t disk_starts = 10000;
    std::size_t disk_angles = 1024;
    std::vector<double> schatten_p = {1.0, 1.5, 2.0, std::numeric_limits<double>::infinity()};
    double module_p = 2.0;
};

struct Tolerances {
    double exact = 1e-9;
    double asymptotic = 1e-2;
};

/// Everything one scenario needs; produced by RunConfig::scenario_config.
struct ScenarioConfig {
    std::string name;
    ModelParams model;
    std::vector<std::uint32_t> schedule;
    Tolerances tolerances;
    double noise_sigma = 1e-3;
    std::uint64_t seed = 0;  // already derived for this scenario
    std::filesystem::path out_dir;

    /// Throws ConfigError when sizes are non-positive or the schedule is empty or not increasing.
    void validate() const;
};

/// Whole-run configuration (file + flags).
struct RunConfig {
    std::vector<std::string> scenarios;  // empty = all registered
    ModelParams model;
    std::map<std::string, std::vector<std::uint32_t>> schedules;  // overrides per scenario
    Tolerances tolerances;
    double noise_sigma = 1e-3;
    std::uint64_t seed = 20240611;
    std::filesystem::path out_dir = "out";

    /// Per-scenario view with seed = run seed XOR stable_hash(name).
    ScenarioConfig scenario_config(const std::string& name) const;
};

/// Parses the flat `key = value` format with [section] headers. Unknown
/// sections or keys, malformed numbers and empty schedules throw ConfigError.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

struct ReportRow {
    std::string scenario;
    std::string model;
    std::string statement_id;
    std::uint32_t net_index = 0;
    double residual = 0.0;
    double bound = 0.0;
    std::string verdict;  // pass | fail | info
    double elapsed_ms = 0.0;
};

inline constexpr const char* kCsvHeader =
    "scenario,model,statement_id,net_index,residual,bound,verdict,elapsed_ms";

/// One CSV line (no trailing newline); numbers in scientific notation with 16 significant digits.
std::string format_row(const ReportRow& row);
void write_csv(const std::filesystem::path& path, const std::vector<ReportRow>& rows);

struct ScenarioInfo {
    std::string name;
    std::vector<std::string> statement_ids;
    std::string description;
};

/// Registered scenarios in stable order.
const std::vector<ScenarioInfo>& list_scenarios();
bool is_registered(const std::string& name);
/// Default net schedule of a scenario for the given model parameters.
std::vector<std::uint32_t> default_schedule(const std::string& name, const ModelParams& model);

struct ScenarioResult {
    std::string name;
    std::vector<ReportRow> rows;
    bool pass = false;
};

/// Runs one scenario and writes <out_dir>/<name>.csv. Property failures are
/// recorded as `fail` rows; unexpected exceptions become an `error` row.
ScenarioResult run_scenario(const ScenarioConfig& config);

struct RunSummary {
    std::vector<ScenarioResult> results;
    bool pass = false;
};

/// Runs the selected scenarios concurrently and writes <out_dir>/summary.csv
/// after all of them finish. Throws ConfigError for unknown scenario names.
RunSummary run_all(const RunConfig& config);

}  // namespace approxinv::cli
