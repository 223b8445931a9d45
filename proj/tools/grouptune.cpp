// grouptune: group-aware compiler flag tuning.
//
// Subcommands:
//   tune             run one tuning session
//   compare          run several sessions (algorithms x seeds), summarize
//   validate-groups  check a grouping file's invariants
//   report           regenerate report.json / report.csv from a history
//
// Exit codes: 0 ok, 2 config/usage, 3 evaluator, 4 I/O, 5 budget exhausted.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grouptune/error.hpp"
#include "grouptune/option_space.hpp"
#include "grouptune/report.hpp"
#include "grouptune/session.hpp"

namespace {

using grouptune::SessionConfig;
using ordered_json = nlohmann::ordered_json;

// One tuning session's CLI surface. Precedence: explicit flag > --config
// file > built-in default.
struct SessionArgs {
    SessionConfig config;
    std::string algorithm = "group-tuner";
    std::string config_path;

    CLI::Option* opt_algorithm = nullptr;
    CLI::Option* opt_budget = nullptr;
    CLI::Option* opt_n_init = nullptr;
    CLI::Option* opt_seed = nullptr;
    CLI::Option* opt_t0 = nullptr;
    CLI::Option* opt_tmin = nullptr;
    CLI::Option* opt_alpha = nullptr;
    CLI::Option* opt_cool_r = nullptr;
    CLI::Option* opt_groups = nullptr;
    CLI::Option* opt_out = nullptr;
    CLI::Option* opt_evaluator = nullptr;
    CLI::Option* opt_bench = nullptr;
    CLI::Option* opt_landscape = nullptr;
    CLI::Option* opt_cc = nullptr;
    CLI::Option* opt_reps = nullptr;
    CLI::Option* opt_pin = nullptr;

    double cool_r_value = 0.0;
    std::string groups, out, bench, landscape;

    void add_options(CLI::App& cmd, bool with_out) {
        opt_algorithm =
            cmd.add_option("--algorithm", algorithm, "searcher")
                ->check(CLI::IsMember({"group-tuner", "rio", "global-sa"}));
        opt_budget = cmd.add_option("--budget", config.budget,
                                    "total evaluation budget");
        opt_n_init = cmd.add_option("--n-init", config.n_init,
                                    "candidate list capacity");
        opt_seed = cmd.add_option("--seed", config.seed, "rng seed");
        opt_t0 = cmd.add_option("--t0", config.t0, "initial temperature");
        opt_tmin = cmd.add_option("--tmin", config.t_min, "final temperature");
        opt_alpha = cmd.add_option("--alpha", config.alpha,
                                   "acceptance scale factor");
        opt_cool_r = cmd.add_option("--cool-r", cool_r_value,
                                    "cooling ratio (default: derived from "
                                    "budget)");
        opt_groups = cmd.add_option("--groups", groups, "grouping file (JSON)");
        if (with_out)
            opt_out = cmd.add_option("--out", out, "output directory");
        opt_evaluator = cmd.add_option("--evaluator", config.evaluator,
                                       "evaluation backend")
                            ->check(CLI::IsMember({"compiler", "synthetic"}));
        opt_bench = cmd.add_option("--bench", bench,
                                   "benchmark manifest (compiler evaluator)");
        opt_landscape = cmd.add_option(
            "--landscape", landscape, "landscape file (synthetic evaluator)");
        opt_cc = cmd.add_option("--cc", config.cc,
                                "compiler (default: $GROUPTUNE_CC, then cc)");
        opt_reps = cmd.add_option("--reps", config.repetitions,
                                  "runs per evaluation");
        opt_pin = cmd.add_option("--pin-core", config.pin_core,
                                 "pin benchmark runs to this CPU");
        cmd.add_option("--config", config_path,
                       "JSON config file; explicit flags win");
    }

    // Fill in values the command line left untouched.
    void apply_config_file() {
        if (config_path.empty()) return;
        std::ifstream in(config_path);
        if (!in)
            throw grouptune::IoError("cannot read config file " + config_path);
        ordered_json j = ordered_json::parse(in, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw grouptune::ConfigError("config file " + config_path +
                                         " is not a JSON object");
        auto take = [&](const char* key, CLI::Option* opt, auto& into) {
            using T = std::decay_t<decltype(into)>;
            auto it = j.find(key);
            if (it == j.end() || (opt && opt->count() > 0)) return;
            if (it->is_null()) return;
            try {
                into = it->get<T>();
            } catch (const ordered_json::exception&) {
                throw grouptune::ConfigError("config file " + config_path +
                                             ": bad value for '" + key + "'");
            }
        };
        take("algorithm", opt_algorithm, algorithm);
        take("budget", opt_budget, config.budget);
        take("n_init", opt_n_init, config.n_init);
        take("seed", opt_seed, config.seed);
        take("t0", opt_t0, config.t0);
        take("t_min", opt_tmin, config.t_min);
        take("alpha", opt_alpha, config.alpha);
        if (j.contains("cool_r") && !j["cool_r"].is_null() &&
            opt_cool_r->count() == 0) {
            if (!j["cool_r"].is_number())
                throw grouptune::ConfigError("config file " + config_path +
                                             ": bad value for 'cool_r'");
            cool_r_value = j["cool_r"].get<double>();
            config.cool_r = cool_r_value;
        }
        take("groups", opt_groups, groups);
        take("out_dir", opt_out, out);
        take("evaluator", opt_evaluator, config.evaluator);
        take("bench", opt_bench, bench);
        take("landscape", opt_landscape, landscape);
        take("cc", opt_cc, config.cc);
        take("repetitions", opt_reps, config.repetitions);
        take("pin_core", opt_pin, config.pin_core);
    }

    SessionConfig resolve() {
        apply_config_file();
        auto parsed = grouptune::searcher_from_string(algorithm);
        if (!parsed)
            throw grouptune::ConfigError("unknown algorithm '" + algorithm +
                                         "'");
        config.algorithm = *parsed;
        if (opt_cool_r->count() > 0) config.cool_r = cool_r_value;
        config.groups_path = groups;
        if (!out.empty()) config.out_dir = out;
        config.bench_manifest = bench;
        config.landscape_path = landscape;
        return config;
    }
};

std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

int run_tune(SessionArgs& args) {
    const SessionConfig config = args.resolve();
    const grouptune::SessionOutcome outcome = grouptune::run_session(config);
    const bool seconds = config.evaluator == "compiler";
    const char* unit = seconds ? " s" : "";
    std::cout << "algorithm      " << to_string(config.algorithm) << '\n'
              << "seed           " << config.seed << '\n'
              << "evaluations    " << outcome.result.evaluations_used << " of "
              << config.budget << '\n'
              << "perf(-O3)      " << num(outcome.perf_o3) << unit << '\n'
              << "best perf      " << num(outcome.result.best_perf) << unit
              << '\n';
    if (outcome.report.improvement_pct)
        std::cout << "improvement    " << pct(*outcome.report.improvement_pct)
                  << " %\n";
    std::cout << "history        " << outcome.history_path.string() << '\n'
              << "report         " << outcome.report_json_path.string() << ", "
              << outcome.report_csv_path.string() << '\n'
              << "best flags     "
              << (config.out_dir / "best_flags.txt").string() << '\n'
              << "wall time      " << pct(outcome.wall_seconds) << " s\n";
    return 0;
}

int run_compare(SessionArgs& args, std::vector<std::string>& algorithms,
                std::vector<std::uint64_t>& seeds) {
    if (algorithms.empty())
        algorithms = {"group-tuner", "rio", "global-sa"};
    if (seeds.empty()) seeds = {1, 2};
    if (algorithms.size() * seeds.size() < 2)
        throw grouptune::ConfigError(
            "compare needs at least two sessions (algorithms x seeds)");

    const SessionConfig base = args.resolve();
    struct Row {
        std::string algorithm;
        std::uint64_t seed;
        grouptune::SessionOutcome outcome;
    };
    std::vector<Row> rows;
    for (const std::string& algo : algorithms) {
        auto kind = grouptune::searcher_from_string(algo);
        if (!kind)
            throw grouptune::ConfigError("unknown algorithm '" + algo + "'");
        for (std::uint64_t seed : seeds) {
            SessionConfig config = base;
            config.algorithm = *kind;
            config.seed = seed;
            config.out_dir =
                base.out_dir / (algo + "-s" + std::to_string(seed));
            std::cerr << "running " << algo << " seed " << seed << "...\n";
            rows.push_back({algo, seed, grouptune::run_session(config)});
        }
    }

    std::printf("%-12s %6s %14s %14s %13s %7s\n", "algorithm", "seed",
                "perf_o3", "best_perf", "improvement", "evals");
    for (const Row& r : rows) {
        const double imp = r.outcome.report.improvement_pct
                               ? *r.outcome.report.improvement_pct
                               : 0.0;
        std::printf("%-12s %6llu %14.6f %14.6f %12.2f%% %7llu\n",
                    r.algorithm.c_str(),
                    static_cast<unsigned long long>(r.seed), r.outcome.perf_o3,
                    r.outcome.result.best_perf, imp,
                    static_cast<unsigned long long>(
                        r.outcome.result.evaluations_used));
    }
    for (const std::string& algo : algorithms) {
        std::vector<double> imps;
        for (const Row& r : rows)
            if (r.algorithm == algo && r.outcome.report.improvement_pct)
                imps.push_back(*r.outcome.report.improvement_pct);
        if (imps.empty()) continue;
        std::sort(imps.begin(), imps.end());
        const std::size_t n = imps.size();
        const double median = n % 2 ? imps[n / 2]
                                    : (imps[n / 2 - 1] + imps[n / 2]) / 2.0;
        std::printf("%-12s median improvement %.2f%% over %zu seed(s)\n",
                    algo.c_str(), median, n);
    }

    const auto csv_path = base.out_dir / "compare.csv";
    std::ofstream csv(csv_path, std::ios::out | std::ios::trunc);
    if (!csv)
        throw grouptune::IoError("cannot write " + csv_path.string());
    csv << "algorithm,seed,perf_o3,best_perf,improvement_pct,evaluations\n";
    for (const Row& r : rows) {
        csv << r.algorithm << ',' << r.seed << ','
            << ordered_json(r.outcome.perf_o3).dump() << ','
            << ordered_json(r.outcome.result.best_perf).dump() << ',';
        if (r.outcome.report.improvement_pct)
            csv << ordered_json(*r.outcome.report.improvement_pct).dump();
        csv << ',' << r.outcome.result.evaluations_used << '\n';
    }
    std::cout << "table written to " << csv_path.string() << '\n';
    return 0;
}

int run_validate(const std::string& groups) {
    const grouptune::GroupTable table = grouptune::load_group_table(groups);
    std::cout << "compiler_id    " << table.compiler_id() << '\n'
              << "groups         " << table.group_count() << '\n'
              << "flags          " << table.flag_count() << '\n';
    for (std::size_t gi = 0; gi < table.group_count(); ++gi)
        std::printf("  G%-3d %3zu  %s\n", table.group(gi).index,
                    table.group(gi).members.size(),
                    table.group(gi).description.c_str());
    std::cout << "digest         " << table.digest() << '\n';
    if (table.compiler_id() == "gcc-9.2.0") {
        if (table.group_count() != grouptune::kGcc920GroupSizes.size())
            throw grouptune::ConfigError(
                "gcc-9.2.0 table must have 15 groups");
        for (std::size_t gi = 0; gi < table.group_count(); ++gi)
            if (table.group(gi).members.size() !=
                grouptune::kGcc920GroupSizes[gi])
                throw grouptune::ConfigError(
                    "gcc-9.2.0 group " + std::to_string(gi + 1) +
                    " must have " +
                    std::to_string(grouptune::kGcc920GroupSizes[gi]) +
                    " members, found " +
                    std::to_string(table.group(gi).members.size()));
        std::cout << "gcc-9.2.0 group sizes verified\n";
    }
    std::cout << "OK\n";
    return 0;
}

int run_report(const std::string& history, const std::string& out) {
    const grouptune::LoadedHistory loaded =
        grouptune::read_history(history);
    std::filesystem::path out_dir =
        out.empty() ? std::filesystem::path(history).parent_path()
                    : std::filesystem::path(out);
    if (out_dir.empty()) out_dir = ".";
    const grouptune::SessionReport report =
        grouptune::build_report(loaded.records, loaded.header.perf_o3);
    grouptune::write_report_json(report, out_dir / "report.json");
    grouptune::write_report_csv(loaded.records, loaded.header.perf_o3,
                                out_dir / "report.csv");
    std::cout << "records        " << report.records;
    if (loaded.truncated) std::cout << " (a truncated trailing line was dropped)";
    std::cout << '\n';
    if (report.improvement_pct)
        std::cout << "improvement    " << pct(*report.improvement_pct)
                  << " %\n";
    std::cout << "report         " << (out_dir / "report.json").string() << ", "
              << (out_dir / "report.csv").string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"group-aware compiler flag tuning"};
    app.require_subcommand(1);

    SessionArgs tune_args;
    CLI::App* tune = app.add_subcommand("tune", "run one tuning session");
    tune_args.add_options(*tune, true);

    SessionArgs compare_args;
    std::vector<std::string> algorithms;
    std::vector<std::uint64_t> seeds;
    CLI::App* compare =
        app.add_subcommand("compare", "run and summarize several sessions");
    compare_args.add_options(*compare, true);
    compare->add_option("--algorithms", algorithms,
                        "searchers to run (default: all three)")
        ->delimiter(',');
    compare->add_option("--seeds", seeds, "seeds to run (default: 1,2)")
        ->delimiter(',');

    std::string validate_groups_path;
    CLI::App* validate =
        app.add_subcommand("validate-groups", "check a grouping file");
    validate->add_option("--groups", validate_groups_path, "grouping file")
        ->required();

    std::string report_history, report_out;
    CLI::App* report = app.add_subcommand(
        "report", "regenerate report.json / report.csv from a history");
    report->add_option("--history", report_history, "history.jsonl path")
        ->required();
    report->add_option("--out", report_out,
                       "output directory (default: alongside the history)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(tune)) return run_tune(tune_args);
        if (app.got_subcommand(compare))
            return run_compare(compare_args, algorithms, seeds);
        if (app.got_subcommand(validate)) return run_validate(validate_groups_path);
        if (app.got_subcommand(report))
            return run_report(report_history, report_out);
    } catch (const grouptune::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const grouptune::EvaluatorError& e) {
        std::cerr << "evaluator error: " << e.what() << '\n';
        return 3;
    } catch (const grouptune::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 4;
    } catch (const grouptune::BudgetExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << '\n';
        return 5;
    }
    return 2;
}
