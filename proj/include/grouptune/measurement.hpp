#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace grouptune {

enum class EvalStatus {
    valid,
    compile_error,
    runtime_error,
    timeout,
    output_mismatch,
};

const char* to_string(EvalStatus s);
std::optional<EvalStatus> status_from_string(std::string_view s);

// Outcome of evaluating one combination. perf is present iff status==valid
// and always equals the arithmetic mean of runs.
struct Measurement {
    EvalStatus status = EvalStatus::compile_error;
    std::optional<double> perf;
    std::vector<double> runs;        // per-run wall-clock seconds
    std::string output_digest;       // hex digest of observed output, valid runs only

    bool is_valid() const { return status == EvalStatus::valid; }

    static Measurement valid(std::vector<double> runs, std::string digest);
    static Measurement failure(EvalStatus s);
};

} // namespace grouptune
