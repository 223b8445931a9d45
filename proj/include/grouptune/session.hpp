#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "grouptune/history.hpp"
#include "grouptune/report.hpp"
#include "grouptune/search.hpp"

namespace grouptune {

// Fully resolved configuration of one tuning session.
struct SessionConfig {
    SearcherKind algorithm = SearcherKind::group_tuner;
    std::uint64_t budget = 500;
    std::uint64_t n_init = 10;
    std::uint64_t seed = 1;

    double t0 = 1.0;
    double t_min = 0.001;
    double alpha = 1.0;
    std::optional<double> cool_r; // default: derived from budget

    std::filesystem::path groups_path;
    std::filesystem::path out_dir = "grouptune-out";

    std::string evaluator = "compiler"; // "compiler" | "synthetic"
    std::filesystem::path bench_manifest;
    std::filesystem::path landscape_path;
    std::string cc;       // compiler spelling; empty = $GROUPTUNE_CC, then "cc"
    int repetitions = 5;
    int pin_core = -1;

    void validate() const; // ConfigError on violations (budget > n_init, ...)
};

struct SessionOutcome {
    SearchResult result;
    double perf_o3 = 0.0;
    SessionReport report;
    std::filesystem::path history_path;
    std::filesystem::path report_json_path;
    std::filesystem::path report_csv_path;
    std::vector<std::string> best_flags; // rendered tokens of the best combination
    double wall_seconds = 0.0;
};

// Loads the table, builds the evaluator, runs the configured searcher,
// writes out_dir/history.jsonl and regenerates report.json/report.csv from
// the written history. Throws the error taxonomy of error.hpp.
SessionOutcome run_session(const SessionConfig& config);

} // namespace grouptune
