#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "grouptune/evaluator.hpp"
#include "grouptune/measurement.hpp"
#include "grouptune/option_space.hpp"

namespace grouptune {

// Benchmark manifest (JSON). Relative paths resolve against the manifest's
// directory, which is also the working directory for runs.
struct BenchmarkSpec {
    std::filesystem::path root;                 // manifest directory
    std::vector<std::filesystem::path> sources;
    std::vector<std::string> compile_extra;     // e.g. -lm, -Ifoo
    std::vector<std::string> run_command;       // argv; "{bin}" expands to the binary
    std::vector<std::filesystem::path> output_files; // declared outputs, relative to root
    double timeout_seconds = 0.0;               // per run; 0 = 10 x perf_O3
    int repetitions = 5;

    static BenchmarkSpec load(const std::filesystem::path& manifest);
    std::string digest() const;
};

struct ReferenceResult {
    double perf_o3 = 0.0;          // mean of `repetitions` -O3 runs
    std::string output_digest;     // agreed digest of the reference runs
};

// Compile-and-run evaluator. One evaluation: compile with "-O3" plus one
// explicit token per flag, run `repetitions` times, digest each run's
// declared output (stdout + output_files) and compare against the -O3
// reference. First deviation wins: compile failure -> compile_error, nonzero
// exit -> runtime_error, wall-clock cap -> timeout, digest difference ->
// output_mismatch. perf is the arithmetic mean over all runs.
class CompilerEvaluator : public Evaluator {
public:
    // Resolves `cc` against PATH immediately; a missing compiler is an
    // EvaluatorError (hard failure, distinct from compile_error).
    CompilerEvaluator(const GroupTable& table, BenchmarkSpec bench,
                      std::string cc, std::filesystem::path scratch_dir,
                      int pin_core = -1);

    // Plain "-O3" build, measured like any candidate. Reference runs must
    // agree on their output digest (EvaluatorError otherwise). Called lazily
    // by evaluate() if needed.
    const ReferenceResult& establish_reference();

    Measurement evaluate(const Combination& comb) override;
    bool deterministic() const override { return false; }

    const std::filesystem::path& compiler() const { return cc_; }
    const BenchmarkSpec& benchmark() const { return bench_; }

private:
    const GroupTable& table_;
    BenchmarkSpec bench_;
    std::filesystem::path cc_;
    std::filesystem::path scratch_;
    int pin_core_;
    std::optional<ReferenceResult> ref_;

    Measurement measure(const std::vector<std::string>& compile_tokens,
                        const std::string& expected_digest,
                        double run_timeout);
    std::optional<std::string> digest_outputs(const std::string& stdout_data) const;
};

// PATH resolution for a compiler spelling; empty result = not found.
std::optional<std::filesystem::path> resolve_executable(const std::string& name);

} // namespace grouptune
