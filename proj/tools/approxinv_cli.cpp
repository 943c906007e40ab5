// Batch runner for the approximate-invertibility scenarios.
//
//   approxinv_cli --list
//   approxinv_cli [--config FILE] [--scenario NAME]... [--seed N] [--out DIR]
//
// Exit status: 0 every row passed, 1 some property failed, 2 bad configuration.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "approxinv/scenarios.hpp"

namespace cli = approxinv::cli;

int main(int argc, char** argv) {
    CLI::App app{"Run approximate-invertibility scenarios and write CSV reports"};
    std::string config_path;
    std::vector<std::string> scenarios;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    bool list = false;

    app.add_option("--config", config_path, "Config file (key = value with [section] headers)");
    app.add_option("--scenario", scenarios, "Scenario to run (repeatable; default: all)");
    app.add_option("--seed", seed, "Base seed (overrides the config file)");
    app.add_option("--out", out_dir, "Output directory (overrides the config file)");
    app.add_flag("--list", list, "List scenarios with their statement ids and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (list) {
        for (const auto& s : cli::list_scenarios()) {
            std::cout << s.name;
            for (const auto& id : s.statement_ids) std::cout << ' ' << id;
            std::cout << '\n';
        }
        return 0;
    }

    try {
        cli::RunConfig cfg = config_path.empty() ? cli::RunConfig{} : cli::load_config(config_path);
        if (!scenarios.empty()) cfg.scenarios = scenarios;
        if (seed) cfg.seed = *seed;
        if (!out_dir.empty()) cfg.out_dir = out_dir;

        const auto summary = cli::run_all(cfg);
        for (const auto& r : summary.results) std::cout << r.name << ": " << (r.pass ? "pass" : "FAIL") << '\n';
        return summary.pass ? 0 : 1;
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
