#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grouptune/history.hpp"

namespace grouptune {

struct GroupStat {
    int group_index = 0;
    std::size_t mutations = 0;                  // records naming this group
    std::size_t valid = 0;                      // of those, valid measurements
    std::optional<double> mean_improvement_pct; // over valid ones; absent if none
};

// Pure function of (history records, perf_O3). improvement_pct =
// (perf_O3 - perf) / perf_O3 * 100; negative means slower than -O3.
struct SessionReport {
    double perf_o3 = 0.0;
    std::optional<double> best_perf;            // absent if no valid record
    std::optional<double> improvement_pct;
    std::string best_combination;               // bitstring of the best record
    std::size_t records = 0;
    std::map<std::string, std::size_t> status_counts;

    // Consecutive 50-record windows over the whole sequence (final window may
    // be partial). Mean improvement over valid records only; a window with no
    // valid record has no mean. counts include invalid records, so the
    // window counts always sum to `records`.
    std::size_t window_size = 50;
    std::vector<std::optional<double>> window_means;
    std::vector<std::size_t> window_counts;

    // Best-so-far improvement after each record; absent until the first
    // valid measurement. Non-decreasing once present.
    std::vector<std::optional<double>> best_curve;

    std::vector<GroupStat> group_stats; // ordered by group index
};

SessionReport build_report(const std::vector<HistoryRecord>& records,
                           double perf_o3);

// report.json: the full SessionReport, deterministic bytes for identical
// input.
void write_report_json(const SessionReport& report,
                       const std::filesystem::path& path);

// report.csv: one row per record:
// iteration,improvement_pct,best_improvement_pct,mutated_group,status
// Missing values are empty fields.
void write_report_csv(const std::vector<HistoryRecord>& records,
                      double perf_o3, const std::filesystem::path& path);

} // namespace grouptune
