#include "grouptune/report.hpp"

#include <fstream>
#include <map>

#include <json.hpp>

#include "grouptune/error.hpp"

namespace grouptune {

using ordered_json = nlohmann::ordered_json;

namespace {

double improvement_pct(double perf_o3, double perf) {
    return (perf_o3 - perf) / perf_o3 * 100.0;
}

// Shortest round-tripping decimal form, the same one report.json uses.
std::string fmt(double x) { return ordered_json(x).dump(); }

std::ofstream open_out(const std::filesystem::path& path) {
    std::error_code ec;
    const auto parent = path.parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    std::ofstream out(path, std::ios::out | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

} // namespace

SessionReport build_report(const std::vector<HistoryRecord>& records,
                           double perf_o3) {
    if (perf_o3 <= 0.0) throw ConfigError("perf_o3 must be positive");
    SessionReport rep;
    rep.perf_o3 = perf_o3;
    rep.records = records.size();

    const std::size_t windows =
        (records.size() + rep.window_size - 1) / rep.window_size;
    std::vector<double> window_sums(windows, 0.0);
    std::vector<std::size_t> window_valid(windows, 0);
    rep.window_counts.assign(windows, 0);

    struct Accum {
        std::size_t mutations = 0;
        std::size_t valid = 0;
        double sum = 0.0;
    };
    std::map<int, Accum> groups;

    std::optional<double> best;
    std::size_t best_at = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const HistoryRecord& rec = records[i];
        ++rep.status_counts[to_string(rec.measurement.status)];
        const std::size_t w = i / rep.window_size;
        ++rep.window_counts[w];
        Accum* acc = nullptr;
        if (rec.mutated_group) acc = &groups[*rec.mutated_group];
        if (acc) ++acc->mutations;
        if (rec.measurement.is_valid()) {
            const double perf = *rec.measurement.perf;
            const double imp = improvement_pct(perf_o3, perf);
            window_sums[w] += imp;
            ++window_valid[w];
            if (acc) {
                ++acc->valid;
                acc->sum += imp;
            }
            if (!best || perf < *best) {
                best = perf;
                best_at = i;
            }
        }
        if (best)
            rep.best_curve.push_back(improvement_pct(perf_o3, *best));
        else
            rep.best_curve.emplace_back();
    }

    rep.best_perf = best;
    if (best) {
        rep.improvement_pct = improvement_pct(perf_o3, *best);
        rep.best_combination = records[best_at].combination;
    }
    for (std::size_t w = 0; w < windows; ++w) {
        if (window_valid[w] > 0)
            rep.window_means.emplace_back(window_sums[w] /
                                          static_cast<double>(window_valid[w]));
        else
            rep.window_means.emplace_back();
    }
    for (const auto& [gi, acc] : groups) {
        GroupStat stat;
        stat.group_index = gi;
        stat.mutations = acc.mutations;
        stat.valid = acc.valid;
        if (acc.valid > 0)
            stat.mean_improvement_pct = acc.sum / static_cast<double>(acc.valid);
        rep.group_stats.push_back(stat);
    }
    return rep;
}

void write_report_json(const SessionReport& rep,
                       const std::filesystem::path& path) {
    ordered_json j;
    j["perf_o3"] = rep.perf_o3;
    j["best_perf"] = rep.best_perf ? ordered_json(*rep.best_perf)
                                   : ordered_json(nullptr);
    j["improvement_pct"] = rep.improvement_pct
                               ? ordered_json(*rep.improvement_pct)
                               : ordered_json(nullptr);
    j["best_combination"] = rep.best_combination;
    j["records"] = rep.records;
    j["status_counts"] = ordered_json::object();
    for (const auto& [status, n] : rep.status_counts)
        j["status_counts"][status] = n;
    j["window_size"] = rep.window_size;
    j["windows"] = ordered_json::array();
    for (std::size_t w = 0; w < rep.window_means.size(); ++w) {
        ordered_json win;
        win["index"] = w;
        win["count"] = rep.window_counts[w];
        win["mean_improvement_pct"] = rep.window_means[w]
                                          ? ordered_json(*rep.window_means[w])
                                          : ordered_json(nullptr);
        j["windows"].push_back(std::move(win));
    }
    j["best_curve"] = ordered_json::array();
    for (const auto& v : rep.best_curve)
        j["best_curve"].push_back(v ? ordered_json(*v) : ordered_json(nullptr));
    j["group_stats"] = ordered_json::array();
    for (const GroupStat& g : rep.group_stats) {
        ordered_json gj;
        gj["group_index"] = g.group_index;
        gj["mutations"] = g.mutations;
        gj["valid"] = g.valid;
        gj["mean_improvement_pct"] =
            g.mean_improvement_pct ? ordered_json(*g.mean_improvement_pct)
                                   : ordered_json(nullptr);
        j["group_stats"].push_back(std::move(gj));
    }
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("cannot write " + path.string());
}

void write_report_csv(const std::vector<HistoryRecord>& records, double perf_o3,
                      const std::filesystem::path& path) {
    if (perf_o3 <= 0.0) throw ConfigError("perf_o3 must be positive");
    auto out = open_out(path);
    out << "iteration,improvement_pct,best_improvement_pct,mutated_group,"
           "status\n";
    std::optional<double> best;
    for (const HistoryRecord& rec : records) {
        out << rec.iteration << ',';
        if (rec.measurement.is_valid()) {
            const double perf = *rec.measurement.perf;
            out << fmt(improvement_pct(perf_o3, perf));
            if (!best || perf < *best) best = perf;
        }
        out << ',';
        if (best) out << fmt(improvement_pct(perf_o3, *best));
        out << ',';
        if (rec.mutated_group) out << *rec.mutated_group;
        out << ',' << to_string(rec.measurement.status) << '\n';
    }
    out.flush();
    if (!out) throw IoError("cannot write " + path.string());
}

} // namespace grouptune
