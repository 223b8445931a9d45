#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "grouptune/measurement.hpp"
#include "grouptune/schedule.hpp"

namespace grouptune {

enum class SearcherKind { group_tuner, rio, global_sa };

const char* to_string(SearcherKind k);
std::optional<SearcherKind> searcher_from_string(std::string_view s);

enum class Phase { init, anneal };

const char* to_string(Phase p);

// One line of history.jsonl. timestamp is absent for deterministic sessions
// so identical (seed, schedule, table, evaluator) reproduce the file
// byte-for-byte.
struct HistoryRecord {
    std::uint64_t iteration = 0;
    Phase phase = Phase::init;
    SearcherKind algorithm = SearcherKind::group_tuner;
    std::optional<int> mutated_group;  // table's group index; absent for global moves
    std::string combination;           // bitstring, table flat order
    Measurement measurement;
    bool accepted = false;              // whether the candidate pool changed
    std::optional<double> temperature;  // absent for rio
    std::optional<std::string> timestamp;
};

// First line of history.jsonl: enough provenance to regenerate the report.
struct HistoryHeader {
    SearcherKind algorithm = SearcherKind::group_tuner;
    std::uint64_t seed = 0;
    std::string grouping_digest;
    std::optional<AnnealingSchedule> schedule; // absent for rio
    std::uint64_t budget = 0;
    std::uint64_t n_init = 0;
    std::string evaluator_kind;    // "compiler" | "synthetic"
    std::string evaluator_digest;  // benchmark manifest / landscape digest
    int repetitions = 0;
    double perf_o3 = 0.0;
    std::string reference_digest;  // output digest of the -O3 reference
    std::string config_echo;       // resolved session config, serialized JSON
};

nlohmann::ordered_json to_json(const HistoryRecord& rec);
HistoryRecord record_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const HistoryHeader& hdr);
HistoryHeader header_from_json(const nlohmann::ordered_json& j);

// Millisecond-precision UTC wall clock, e.g. "2024-05-01T12:34:56.789Z".
std::string iso8601_now();

class HistoryWriter {
public:
    virtual ~HistoryWriter() = default;
    virtual void append(const HistoryRecord& rec) = 0;
};

class VectorHistoryWriter : public HistoryWriter {
public:
    void append(const HistoryRecord& rec) override { records.push_back(rec); }
    std::vector<HistoryRecord> records;
};

// Append-only JSONL sink; flushes after every record so a killed session
// leaves at most one truncated line. Records must arrive with consecutive
// iteration numbers starting at 0 (std::logic_error otherwise).
class JsonlHistoryWriter : public HistoryWriter {
public:
    JsonlHistoryWriter(const std::filesystem::path& path,
                       const HistoryHeader& header);
    void append(const HistoryRecord& rec) override;
    std::uint64_t count() const { return count_; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::uint64_t count_ = 0;
};

struct LoadedHistory {
    HistoryHeader header;
    std::vector<HistoryRecord> records;
    bool truncated = false; // a partial trailing line was dropped
};

// IoError if unreadable, ConfigError if the header is malformed. A truncated
// final line is tolerated: the intact prefix is returned with truncated=true.
LoadedHistory read_history(const std::filesystem::path& path);

} // namespace grouptune
