#include "grouptune/session.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <memory>

#include <json.hpp>

#include "grouptune/baselines.hpp"
#include "grouptune/compiler_eval.hpp"
#include "grouptune/digest.hpp"
#include "grouptune/error.hpp"
#include "grouptune/synthetic.hpp"

namespace grouptune {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string resolve_cc_spelling(const SessionConfig& config) {
    if (!config.cc.empty()) return config.cc;
    if (const char* env = std::getenv("GROUPTUNE_CC"); env && *env) return env;
    return "cc";
}

std::string echo_config(const SessionConfig& config, const std::string& cc) {
    ordered_json j;
    j["algorithm"] = to_string(config.algorithm);
    j["budget"] = config.budget;
    j["n_init"] = config.n_init;
    j["seed"] = config.seed;
    j["t0"] = config.t0;
    j["t_min"] = config.t_min;
    j["alpha"] = config.alpha;
    j["cool_r"] = config.cool_r ? ordered_json(*config.cool_r)
                                : ordered_json(nullptr);
    j["groups"] = config.groups_path.string();
    j["out_dir"] = config.out_dir.string();
    j["evaluator"] = config.evaluator;
    j["bench"] = config.bench_manifest.string();
    j["landscape"] = config.landscape_path.string();
    j["cc"] = config.evaluator == "compiler" ? cc : "";
    j["repetitions"] = config.repetitions;
    j["pin_core"] = config.pin_core;
    return j.dump();
}

} // namespace

void SessionConfig::validate() const {
    if (budget == 0) throw ConfigError("budget must be positive");
    if (algorithm != SearcherKind::rio) {
        if (n_init == 0) throw ConfigError("n_init must be positive");
        if (budget <= n_init)
            throw ConfigError("budget must exceed n_init (" +
                              std::to_string(n_init) + ")");
        AnnealingSchedule s{t0, t_min, cool_r ? *cool_r : 0.5, alpha};
        s.validate();
    }
    if (groups_path.empty()) throw ConfigError("a group table path is required");
    if (evaluator == "compiler") {
        if (bench_manifest.empty())
            throw ConfigError("the compiler evaluator needs a benchmark manifest");
    } else if (evaluator == "synthetic") {
        if (landscape_path.empty())
            throw ConfigError("the synthetic evaluator needs a landscape file");
    } else {
        throw ConfigError("unknown evaluator '" + evaluator +
                          "' (expected compiler or synthetic)");
    }
    if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (pin_core < -1) throw ConfigError("pin_core must be -1 or a CPU index");
    if (out_dir.empty()) throw ConfigError("an output directory is required");
}

SessionOutcome run_session(const SessionConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    const GroupTable table = load_group_table(config.groups_path);

    AnnealingSchedule schedule;
    if (config.algorithm != SearcherKind::rio) {
        if (config.cool_r)
            schedule = AnnealingSchedule{config.t0, config.t_min,
                                         *config.cool_r, config.alpha};
        else
            schedule = AnnealingSchedule::derive(config.t0, config.t_min,
                                                 config.alpha, config.budget,
                                                 config.n_init);
        schedule.validate();
    }

    HistoryHeader header;
    header.algorithm = config.algorithm;
    header.seed = config.seed;
    header.grouping_digest = table.digest();
    if (config.algorithm != SearcherKind::rio) header.schedule = schedule;
    header.budget = config.budget;
    header.n_init = config.n_init;

    std::unique_ptr<Evaluator> evaluator;
    bool wall_timestamps = false;
    if (config.evaluator == "synthetic") {
        SyntheticLandscape land = load_landscape(config.landscape_path);
        auto synth = std::make_unique<SyntheticEvaluator>(
            table, std::move(land), config.seed ^ 0x9e3779b97f4a7c15ull);
        header.evaluator_kind = "synthetic";
        header.evaluator_digest = synth->landscape().digest();
        header.repetitions = 1;
        header.perf_o3 = synth->perf_of(default_combination(table));
        header.reference_digest = digest_hex("synthetic");
        wall_timestamps = !synth->deterministic();
        evaluator = std::move(synth);
    } else {
        BenchmarkSpec bench = BenchmarkSpec::load(config.bench_manifest);
        bench.repetitions = config.repetitions;
        const std::string cc = resolve_cc_spelling(config);
        auto comp = std::make_unique<CompilerEvaluator>(
            table, std::move(bench), cc, config.out_dir / "scratch",
            config.pin_core);
        header.evaluator_kind = "compiler";
        header.evaluator_digest = comp->benchmark().digest();
        header.repetitions = comp->benchmark().repetitions;
        const ReferenceResult& ref = comp->establish_reference();
        header.perf_o3 = ref.perf_o3;
        header.reference_digest = ref.output_digest;
        wall_timestamps = true;
        evaluator = std::move(comp);
    }
    header.config_echo = echo_config(config, resolve_cc_spelling(config));

    SessionOutcome outcome;
    outcome.history_path = config.out_dir / "history.jsonl";
    outcome.report_json_path = config.out_dir / "report.json";
    outcome.report_csv_path = config.out_dir / "report.csv";
    outcome.perf_o3 = header.perf_o3;

    JsonlHistoryWriter writer(outcome.history_path, header);
    Rng rng(config.seed);
    if (config.algorithm == SearcherKind::rio)
        outcome.result = run_rio(table, config.budget, *evaluator, rng, &writer,
                                 wall_timestamps);
    else
        outcome.result =
            run_annealing(table, schedule, config.n_init, config.budget,
                          config.algorithm, *evaluator, rng, &writer,
                          wall_timestamps);

    // Regenerate the report from the file just written: every session
    // round-trips its own serialization.
    const LoadedHistory loaded = read_history(outcome.history_path);
    outcome.report = build_report(loaded.records, header.perf_o3);
    write_report_json(outcome.report, outcome.report_json_path);
    write_report_csv(loaded.records, header.perf_o3, outcome.report_csv_path);

    outcome.best_flags = render_flags(outcome.result.best, table);
    {
        const auto path = config.out_dir / "best_flags.txt";
        std::ofstream out(path, std::ios::out | std::ios::trunc);
        if (!out) throw IoError("cannot write " + path.string());
        for (std::size_t i = 0; i < outcome.best_flags.size(); ++i)
            out << (i ? " " : "") << outcome.best_flags[i];
        out << '\n';
    }

    outcome.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return outcome;
}

} // namespace grouptune
