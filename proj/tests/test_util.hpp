#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#include "grouptune/option_space.hpp"
#include "grouptune/rng.hpp"

namespace testutil {

// Rng whose draws are read from fixed lists; throws when a list runs dry so
// a test that consumes more than it scripted fails loudly. uniform_index(1)
// keeps the production contract: returns 0 without consuming anything.
class ScriptedRng : public grouptune::Rng {
public:
    ScriptedRng(std::vector<double> u01, std::vector<std::size_t> idx)
        : Rng(0), u01_(std::move(u01)), idx_(std::move(idx)) {}

    double uniform01() override {
        if (u_at_ >= u01_.size())
            throw std::runtime_error("ScriptedRng: uniform01 script exhausted");
        return u01_[u_at_++];
    }
    std::size_t uniform_index(std::size_t n) override {
        if (n <= 1) return 0;
        if (i_at_ >= idx_.size())
            throw std::runtime_error(
                "ScriptedRng: uniform_index script exhausted");
        return idx_[i_at_++] % n;
    }
    std::size_t u01_consumed() const { return u_at_; }
    std::size_t idx_consumed() const { return i_at_; }

private:
    std::vector<double> u01_;
    std::vector<std::size_t> idx_;
    std::size_t u_at_ = 0, i_at_ = 0;
};

// Independent random source (not mt19937_64) for conformance tests: both the
// code under test and the oracle consume the same interface, so the
// underlying generator is free.
class LcgRng : public grouptune::Rng {
public:
    explicit LcgRng(std::uint64_t seed) : Rng(seed), s_(seed) {}

    double uniform01() override {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
    std::size_t uniform_index(std::size_t n) override {
        if (n <= 1) return 0;
        return static_cast<std::size_t>(next() % n); // bias irrelevant here
    }

private:
    std::uint64_t next() {
        s_ = s_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return s_;
    }
    std::uint64_t s_;
};

inline grouptune::GroupTable two_group_table() {
    return grouptune::GroupTable::from_json_text(R"({
        "compiler_id": "test-2g",
        "groups": [
            {"index": 1, "description": "alpha", "members": [
                {"name": "a0", "o3_default": true},
                {"name": "a1", "o3_default": false},
                {"name": "a2", "o3_default": true}]},
            {"index": 2, "description": "beta", "members": [
                {"name": "b0", "o3_default": false},
                {"name": "b1", "o3_default": true},
                {"name": "b2", "o3_default": false}]}
        ]})", "two_group_table");
}

inline grouptune::GroupTable one_group_table() {
    return grouptune::GroupTable::from_json_text(R"({
        "compiler_id": "test-1g",
        "groups": [
            {"index": 1, "description": "all", "members": [
                {"name": "a0", "o3_default": true},
                {"name": "a1", "o3_default": false},
                {"name": "a2", "o3_default": true},
                {"name": "b0", "o3_default": false},
                {"name": "b1", "o3_default": true},
                {"name": "b2", "o3_default": false}]}
        ]})", "one_group_table");
}

// Fresh unique directory under the system temp root.
inline std::filesystem::path temp_dir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    const auto dir = std::filesystem::temp_directory_path() /
                     ("grouptune-test-" + tag + "-" +
                      std::to_string(::getpid()) + "-" +
                      std::to_string(counter++));
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& text) {
    std::ofstream out(path);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

inline std::filesystem::path source_dir() {
    return std::filesystem::path(GROUPTUNE_SOURCE_DIR);
}

} // namespace testutil
