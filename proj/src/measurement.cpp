#include "grouptune/measurement.hpp"

#include <numeric>
#include <stdexcept>

namespace grouptune {

const char* to_string(EvalStatus s) {
    switch (s) {
    case EvalStatus::valid: return "valid";
    case EvalStatus::compile_error: return "compile-error";
    case EvalStatus::runtime_error: return "runtime-error";
    case EvalStatus::timeout: return "timeout";
    case EvalStatus::output_mismatch: return "output-mismatch";
    }
    return "?";
}

std::optional<EvalStatus> status_from_string(std::string_view s) {
    if (s == "valid") return EvalStatus::valid;
    if (s == "compile-error") return EvalStatus::compile_error;
    if (s == "runtime-error") return EvalStatus::runtime_error;
    if (s == "timeout") return EvalStatus::timeout;
    if (s == "output-mismatch") return EvalStatus::output_mismatch;
    return std::nullopt;
}

Measurement Measurement::valid(std::vector<double> runs, std::string digest) {
    if (runs.empty())
        throw std::invalid_argument("valid measurement needs at least one run");
    Measurement m;
    m.status = EvalStatus::valid;
    m.runs = std::move(runs);
    m.perf = std::accumulate(m.runs.begin(), m.runs.end(), 0.0) /
             static_cast<double>(m.runs.size());
    m.output_digest = std::move(digest);
    return m;
}

Measurement Measurement::failure(EvalStatus s) {
    if (s == EvalStatus::valid)
        throw std::invalid_argument("failure() cannot carry status valid");
    Measurement m;
    m.status = s;
    return m;
}

} // namespace grouptune
