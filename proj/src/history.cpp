#include "grouptune/history.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <stdexcept>
#include <utility>

#include "grouptune/error.hpp"

namespace grouptune {

using ordered_json = nlohmann::ordered_json;

const char* to_string(SearcherKind k) {
    switch (k) {
        case SearcherKind::group_tuner: return "group-tuner";
        case SearcherKind::rio: return "rio";
        case SearcherKind::global_sa: return "global-sa";
    }
    return "?";
}

std::optional<SearcherKind> searcher_from_string(std::string_view s) {
    if (s == "group-tuner") return SearcherKind::group_tuner;
    if (s == "rio") return SearcherKind::rio;
    if (s == "global-sa") return SearcherKind::global_sa;
    return std::nullopt;
}

const char* to_string(Phase p) {
    return p == Phase::init ? "init" : "anneal";
}

std::string iso8601_now() {
    using namespace std::chrono;
    const auto now = system_clock::now();
    const std::time_t secs = system_clock::to_time_t(now);
    const auto ms =
        duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                  tm.tm_min, tm.tm_sec, static_cast<int>(ms));
    return buf;
}

namespace {

[[noreturn]] void bad_history(const std::string& what) {
    throw ConfigError("malformed history: " + what);
}

const ordered_json& require(const ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) bad_history(std::string("missing field '") + key + "'");
    return *it;
}

ordered_json measurement_to_json(const Measurement& m) {
    ordered_json j;
    j["status"] = to_string(m.status);
    if (m.perf)
        j["perf"] = *m.perf;
    else
        j["perf"] = nullptr;
    j["runs"] = m.runs;
    j["output_digest"] = m.output_digest;
    return j;
}

Measurement measurement_from_json(const ordered_json& j) {
    if (!j.is_object()) bad_history("measurement is not an object");
    Measurement m;
    const auto& status = require(j, "status");
    if (!status.is_string()) bad_history("measurement status is not a string");
    auto parsed = status_from_string(status.get<std::string>());
    if (!parsed)
        bad_history("unknown measurement status '" + status.get<std::string>() +
                    "'");
    m.status = *parsed;
    const auto& perf = require(j, "perf");
    if (perf.is_number())
        m.perf = perf.get<double>();
    else if (!perf.is_null())
        bad_history("measurement perf is neither a number nor null");
    const auto& runs = require(j, "runs");
    if (!runs.is_array()) bad_history("measurement runs is not an array");
    for (const auto& r : runs) {
        if (!r.is_number()) bad_history("measurement run is not a number");
        m.runs.push_back(r.get<double>());
    }
    const auto& digest = require(j, "output_digest");
    if (!digest.is_string())
        bad_history("measurement output_digest is not a string");
    m.output_digest = digest.get<std::string>();
    if (m.is_valid() && !m.perf) bad_history("valid measurement lacks perf");
    return m;
}

ordered_json schedule_to_json(const AnnealingSchedule& s) {
    ordered_json j;
    j["t0"] = s.t0;
    j["t_min"] = s.t_min;
    j["cool_r"] = s.cool_r;
    j["alpha"] = s.alpha;
    return j;
}

AnnealingSchedule schedule_from_json(const ordered_json& j) {
    if (!j.is_object()) bad_history("schedule is not an object");
    AnnealingSchedule s;
    for (const char* key : {"t0", "t_min", "cool_r", "alpha"})
        if (!require(j, key).is_number())
            bad_history(std::string("schedule ") + key + " is not a number");
    s.t0 = j["t0"].get<double>();
    s.t_min = j["t_min"].get<double>();
    s.cool_r = j["cool_r"].get<double>();
    s.alpha = j["alpha"].get<double>();
    return s;
}

std::uint64_t get_u64(const ordered_json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_number_unsigned() && !v.is_number_integer())
        bad_history(std::string("field '") + key + "' is not an integer");
    if (v.is_number_integer() && v.get<std::int64_t>() < 0)
        bad_history(std::string("field '") + key + "' is negative");
    return v.get<std::uint64_t>();
}

std::string get_string(const ordered_json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_string())
        bad_history(std::string("field '") + key + "' is not a string");
    return v.get<std::string>();
}

} // namespace

ordered_json to_json(const HistoryRecord& rec) {
    ordered_json j;
    j["iteration"] = rec.iteration;
    j["phase"] = to_string(rec.phase);
    j["algorithm"] = to_string(rec.algorithm);
    if (rec.mutated_group)
        j["mutated_group"] = *rec.mutated_group;
    else
        j["mutated_group"] = nullptr;
    j["combination"] = rec.combination;
    j["measurement"] = measurement_to_json(rec.measurement);
    j["accepted"] = rec.accepted;
    if (rec.temperature)
        j["temperature"] = *rec.temperature;
    else
        j["temperature"] = nullptr;
    if (rec.timestamp)
        j["timestamp"] = *rec.timestamp;
    else
        j["timestamp"] = nullptr;
    return j;
}

HistoryRecord record_from_json(const ordered_json& j) {
    if (!j.is_object()) bad_history("record is not an object");
    HistoryRecord rec;
    rec.iteration = get_u64(j, "iteration");
    const std::string phase = get_string(j, "phase");
    if (phase == "init")
        rec.phase = Phase::init;
    else if (phase == "anneal")
        rec.phase = Phase::anneal;
    else
        bad_history("unknown phase '" + phase + "'");
    auto algo = searcher_from_string(get_string(j, "algorithm"));
    if (!algo) bad_history("unknown algorithm in record");
    rec.algorithm = *algo;
    const auto& group = require(j, "mutated_group");
    if (group.is_number_integer())
        rec.mutated_group = group.get<int>();
    else if (!group.is_null())
        bad_history("mutated_group is neither an integer nor null");
    rec.combination = get_string(j, "combination");
    for (char c : rec.combination)
        if (c != '0' && c != '1') bad_history("combination is not a bitstring");
    rec.measurement = measurement_from_json(require(j, "measurement"));
    const auto& accepted = require(j, "accepted");
    if (!accepted.is_boolean()) bad_history("accepted is not a boolean");
    rec.accepted = accepted.get<bool>();
    const auto& temp = require(j, "temperature");
    if (temp.is_number())
        rec.temperature = temp.get<double>();
    else if (!temp.is_null())
        bad_history("temperature is neither a number nor null");
    const auto& ts = require(j, "timestamp");
    if (ts.is_string())
        rec.timestamp = ts.get<std::string>();
    else if (!ts.is_null())
        bad_history("timestamp is neither a string nor null");
    return rec;
}

ordered_json to_json(const HistoryHeader& hdr) {
    ordered_json j;
    j["algorithm"] = to_string(hdr.algorithm);
    j["seed"] = hdr.seed;
    j["grouping_digest"] = hdr.grouping_digest;
    if (hdr.schedule)
        j["schedule"] = schedule_to_json(*hdr.schedule);
    else
        j["schedule"] = nullptr;
    j["budget"] = hdr.budget;
    j["n_init"] = hdr.n_init;
    j["evaluator"] = {{"kind", hdr.evaluator_kind},
                      {"digest", hdr.evaluator_digest}};
    j["repetitions"] = hdr.repetitions;
    j["perf_o3"] = hdr.perf_o3;
    j["reference_digest"] = hdr.reference_digest;
    if (hdr.config_echo.empty()) {
        j["config"] = nullptr;
    } else {
        auto echo = ordered_json::parse(hdr.config_echo, nullptr, false);
        if (echo.is_discarded())
            j["config"] = hdr.config_echo; // keep it, even if not JSON
        else
            j["config"] = std::move(echo);
    }
    return j;
}

HistoryHeader header_from_json(const ordered_json& j) {
    if (!j.is_object()) bad_history("header is not an object");
    HistoryHeader hdr;
    auto algo = searcher_from_string(get_string(j, "algorithm"));
    if (!algo) bad_history("unknown algorithm in header");
    hdr.algorithm = *algo;
    hdr.seed = get_u64(j, "seed");
    hdr.grouping_digest = get_string(j, "grouping_digest");
    const auto& sched = require(j, "schedule");
    if (!sched.is_null()) hdr.schedule = schedule_from_json(sched);
    hdr.budget = get_u64(j, "budget");
    hdr.n_init = get_u64(j, "n_init");
    const auto& eval = require(j, "evaluator");
    if (!eval.is_object()) bad_history("evaluator is not an object");
    hdr.evaluator_kind = get_string(eval, "kind");
    hdr.evaluator_digest = get_string(eval, "digest");
    hdr.repetitions = static_cast<int>(get_u64(j, "repetitions"));
    const auto& perf = require(j, "perf_o3");
    if (!perf.is_number()) bad_history("perf_o3 is not a number");
    hdr.perf_o3 = perf.get<double>();
    hdr.reference_digest = get_string(j, "reference_digest");
    const auto& config = require(j, "config");
    if (config.is_null())
        hdr.config_echo.clear();
    else if (config.is_string())
        hdr.config_echo = config.get<std::string>();
    else
        hdr.config_echo = config.dump();
    return hdr;
}

JsonlHistoryWriter::JsonlHistoryWriter(const std::filesystem::path& path,
                                       const HistoryHeader& header)
    : path_(path) {
    std::error_code ec;
    const auto parent = path.parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    out_.open(path, std::ios::out | std::ios::trunc);
    if (!out_) throw IoError("cannot open history file " + path.string());
    out_ << to_json(header).dump() << '\n';
    out_.flush();
    if (!out_) throw IoError("cannot write history file " + path.string());
}

void JsonlHistoryWriter::append(const HistoryRecord& rec) {
    if (rec.iteration != count_)
        throw std::logic_error("history records must arrive in iteration order");
    out_ << to_json(rec).dump() << '\n';
    out_.flush();
    if (!out_) throw IoError("cannot write history file " + path_.string());
    ++count_;
}

LoadedHistory read_history(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open history file " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.empty())
        bad_history("history file " + path.string() + " lacks a header line");
    auto hj = ordered_json::parse(line, nullptr, false);
    if (hj.is_discarded())
        bad_history("history file " + path.string() +
                    " has an unparseable header line");
    LoadedHistory loaded;
    loaded.header = header_from_json(hj);

    std::vector<std::string> lines;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto rj = ordered_json::parse(lines[i], nullptr, false);
        if (rj.is_discarded()) {
            if (i + 1 == lines.size()) {
                loaded.truncated = true; // killed mid-write; drop the tail
                break;
            }
            bad_history("history file " + path.string() +
                        " has an unparseable record on line " +
                        std::to_string(i + 2));
        }
        loaded.records.push_back(record_from_json(rj));
    }
    return loaded;
}

} // namespace grouptune
