#include "grouptune/compiler_eval.hpp"

#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <utility>

#include <json.hpp>
#include <unistd.h>

#include "grouptune/digest.hpp"
#include "grouptune/error.hpp"
#include "grouptune/subprocess.hpp"

namespace grouptune {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kCompileTimeoutSeconds = 300.0;
// Reference runs when the manifest sets no cap; candidates get 10 x perf_O3.
constexpr double kReferenceTimeoutSeconds = 60.0;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream body;
    body << in.rdbuf();
    return std::move(body).str();
}

bool executable_file(const std::filesystem::path& p) {
    std::error_code ec;
    return std::filesystem::is_regular_file(p, ec) &&
           access(p.c_str(), X_OK) == 0;
}

[[noreturn]] void bad_manifest(const std::filesystem::path& manifest,
                               const std::string& what) {
    throw ConfigError("benchmark manifest " + manifest.string() + ": " + what);
}

std::vector<std::string> string_array(const ordered_json& j, const char* key,
                                      const std::filesystem::path& manifest) {
    std::vector<std::string> out;
    auto it = j.find(key);
    if (it == j.end()) return out;
    if (!it->is_array())
        bad_manifest(manifest, std::string("'") + key + "' is not an array");
    for (const auto& v : *it) {
        if (!v.is_string())
            bad_manifest(manifest,
                         std::string("'") + key + "' holds a non-string entry");
        out.push_back(v.get<std::string>());
    }
    return out;
}

} // namespace

std::optional<std::filesystem::path> resolve_executable(
    const std::string& name) {
    if (name.empty()) return std::nullopt;
    if (name.find('/') != std::string::npos) {
        std::filesystem::path p(name);
        if (executable_file(p)) return std::filesystem::absolute(p);
        return std::nullopt;
    }
    const char* path_env = std::getenv("PATH");
    if (!path_env) return std::nullopt;
    std::istringstream dirs(path_env);
    std::string dir;
    while (std::getline(dirs, dir, ':')) {
        if (dir.empty()) continue;
        const std::filesystem::path candidate =
            std::filesystem::path(dir) / name;
        if (executable_file(candidate)) return candidate;
    }
    return std::nullopt;
}

BenchmarkSpec BenchmarkSpec::load(const std::filesystem::path& manifest) {
    const std::string text = read_file(manifest);
    auto j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        bad_manifest(manifest, "not a JSON object");

    BenchmarkSpec bench;
    std::error_code ec;
    bench.root = std::filesystem::absolute(manifest, ec).parent_path();

    const auto sources = string_array(j, "sources", manifest);
    if (sources.empty()) bad_manifest(manifest, "'sources' is missing or empty");
    for (const std::string& s : sources) {
        std::filesystem::path p(s);
        if (p.is_relative()) p = bench.root / p;
        if (!std::filesystem::is_regular_file(p, ec))
            bad_manifest(manifest, "source " + s + " does not exist");
        bench.sources.push_back(p);
    }
    bench.compile_extra = string_array(j, "compile_extra", manifest);
    bench.run_command = string_array(j, "run_command", manifest);
    if (bench.run_command.empty()) bench.run_command = {"{bin}"};
    for (const std::string& s : string_array(j, "output_files", manifest))
        bench.output_files.emplace_back(s);

    if (auto it = j.find("timeout_seconds"); it != j.end()) {
        if (!it->is_number() || it->get<double>() < 0.0)
            bad_manifest(manifest, "'timeout_seconds' is not a number >= 0");
        bench.timeout_seconds = it->get<double>();
    }
    if (auto it = j.find("repetitions"); it != j.end()) {
        if (!it->is_number_integer() || it->get<int>() < 1)
            bad_manifest(manifest, "'repetitions' is not an integer >= 1");
        bench.repetitions = it->get<int>();
    }
    return bench;
}

std::string BenchmarkSpec::digest() const {
    std::ostringstream canon;
    canon << "bench";
    for (const auto& src : sources)
        canon << "|src:" << src.filename().string() << ':'
              << hex64(fnv1a64(read_file(src)));
    canon << "|extra:";
    for (const auto& t : compile_extra) canon << t << ';';
    canon << "|run:";
    for (const auto& t : run_command) canon << t << ';';
    canon << "|out:";
    for (const auto& f : output_files) canon << f.string() << ';';
    canon << "|timeout:" << ordered_json(timeout_seconds).dump()
          << "|reps:" << repetitions;
    return digest_hex(std::move(canon).str());
}

CompilerEvaluator::CompilerEvaluator(const GroupTable& table,
                                     BenchmarkSpec bench, std::string cc,
                                     std::filesystem::path scratch_dir,
                                     int pin_core)
    : table_(table), bench_(std::move(bench)), scratch_(std::move(scratch_dir)),
      pin_core_(pin_core) {
    auto resolved = resolve_executable(cc);
    if (!resolved)
        throw EvaluatorError("compiler '" + cc + "' not found on PATH");
    cc_ = *resolved;
    std::error_code ec;
    std::filesystem::create_directories(scratch_, ec);
    if (ec)
        throw IoError("cannot create scratch directory " + scratch_.string());
}

std::optional<std::string> CompilerEvaluator::digest_outputs(
    const std::string& stdout_data) const {
    std::string canon = stdout_data;
    for (const auto& rel : bench_.output_files) {
        const std::filesystem::path p =
            rel.is_relative() ? bench_.root / rel : rel;
        std::ifstream in(p, std::ios::binary);
        if (!in) return std::nullopt; // declared output never materialized
        std::ostringstream body;
        body << in.rdbuf();
        canon += '\0';
        canon += rel.string();
        canon += '\0';
        canon += std::move(body).str();
    }
    return digest_hex(canon);
}

Measurement CompilerEvaluator::measure(
    const std::vector<std::string>& compile_tokens,
    const std::string& expected_digest, double run_timeout) {
    const std::filesystem::path bin = scratch_ / "bench-bin";

    std::vector<std::string> cc_argv;
    cc_argv.push_back(cc_.string());
    cc_argv.insert(cc_argv.end(), compile_tokens.begin(), compile_tokens.end());
    cc_argv.insert(cc_argv.end(), bench_.compile_extra.begin(),
                   bench_.compile_extra.end());
    for (const auto& src : bench_.sources) cc_argv.push_back(src.string());
    cc_argv.push_back("-o");
    cc_argv.push_back(bin.string());

    const RunResult cc_run =
        run_command(cc_argv, bench_.root, kCompileTimeoutSeconds, pin_core_);
    if (cc_run.exec_failed)
        throw EvaluatorError("compiler " + cc_.string() + " failed to execute");
    if (cc_run.timed_out || cc_run.exit_code != 0)
        return Measurement::failure(EvalStatus::compile_error);

    std::vector<std::string> run_argv;
    for (std::string token : bench_.run_command) {
        for (std::size_t at = token.find("{bin}"); at != std::string::npos;
             at = token.find("{bin}", at))
            token.replace(at, 5, bin.string());
        run_argv.push_back(std::move(token));
    }

    std::vector<double> runs;
    std::string digest;
    for (int rep = 0; rep < bench_.repetitions; ++rep) {
        std::error_code ec;
        for (const auto& rel : bench_.output_files)
            std::filesystem::remove(
                rel.is_relative() ? bench_.root / rel : rel, ec);
        const RunResult r =
            run_command(run_argv, bench_.root, run_timeout, pin_core_);
        if (r.timed_out) return Measurement::failure(EvalStatus::timeout);
        if (r.exec_failed || r.exit_code != 0)
            return Measurement::failure(EvalStatus::runtime_error);
        const auto d = digest_outputs(r.stdout_data);
        if (!d) return Measurement::failure(EvalStatus::output_mismatch);
        if (rep == 0)
            digest = *d;
        else if (*d != digest)
            return Measurement::failure(EvalStatus::output_mismatch);
        runs.push_back(r.wall_seconds);
    }
    if (!expected_digest.empty() && digest != expected_digest)
        return Measurement::failure(EvalStatus::output_mismatch);
    return Measurement::valid(std::move(runs), std::move(digest));
}

const ReferenceResult& CompilerEvaluator::establish_reference() {
    if (ref_) return *ref_;
    const double cap = bench_.timeout_seconds > 0.0 ? bench_.timeout_seconds
                                                    : kReferenceTimeoutSeconds;
    const Measurement m = measure({"-O3"}, "", cap);
    if (!m.is_valid())
        throw EvaluatorError(std::string("-O3 reference failed: ") +
                             to_string(m.status));
    ref_ = ReferenceResult{*m.perf, m.output_digest};
    return *ref_;
}

Measurement CompilerEvaluator::evaluate(const Combination& comb) {
    const ReferenceResult& ref = establish_reference();
    const double run_timeout = bench_.timeout_seconds > 0.0
                                   ? bench_.timeout_seconds
                                   : 10.0 * ref.perf_o3;
    return measure(render_flags(comb, table_), ref.output_digest, run_timeout);
}

} // namespace grouptune
