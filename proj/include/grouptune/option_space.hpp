#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace grouptune {

struct FlagSpec {
    std::string name; // GCC spelling without prefix, e.g. "gcse-lm"
    bool o3_default = false;
};

struct OptionGroup {
    int index = 0; // as declared in the grouping file (1-based for shipped tables)
    std::string description;
    std::vector<FlagSpec> members;
};

// Immutable partition of an option space into disjoint flag groups.
// Flat flag order = group order, member order within each group; this order
// defines bitstring layout and flag rendering order everywhere else.
class GroupTable {
public:
    static GroupTable from_json_text(const std::string& text,
                                     const std::string& origin = "<string>");

    const std::string& compiler_id() const { return compiler_id_; }
    const std::vector<OptionGroup>& groups() const { return groups_; }
    std::size_t group_count() const { return groups_.size(); }
    const OptionGroup& group(std::size_t gi) const { return groups_[gi]; }

    std::size_t flag_count() const { return flat_.size(); }
    const FlagSpec& flag(std::size_t fi) const { return *flat_[fi]; }
    std::size_t group_of(std::size_t fi) const { return group_of_[fi]; }
    std::size_t first_flag_of(std::size_t gi) const { return group_start_[gi]; }
    std::optional<std::size_t> index_of(const std::string& name) const;

    // Stable content digest over ids, descriptions, members and defaults.
    const std::string& digest() const { return digest_; }

private:
    std::string compiler_id_;
    std::vector<OptionGroup> groups_;
    std::vector<const FlagSpec*> flat_;
    std::vector<std::size_t> group_of_;
    std::vector<std::size_t> group_start_;
    std::unordered_map<std::string, std::size_t> by_name_;
    std::string digest_;

    void build_index();
};

GroupTable load_group_table(const std::filesystem::path& path);

// The size vector the shipped gcc-9.2.0 table must have, used by
// `validate-groups` and the test suite.
inline constexpr std::array<std::size_t, 15> kGcc920GroupSizes = {
    28, 18, 9, 4, 6, 4, 12, 23, 12, 17, 10, 18, 8, 22, 15};

// Dense on/off assignment for every flag of one table, flat order.
class Combination {
public:
    Combination() = default;
    explicit Combination(std::size_t n) : bits_(n, 0) {}

    std::size_t size() const { return bits_.size(); }
    bool enabled(std::size_t fi) const { return bits_[fi] != 0; }
    void set(std::size_t fi, bool on) { bits_[fi] = on ? 1 : 0; }
    void flip(std::size_t fi) { bits_[fi] ^= 1; }

    std::string to_bitstring() const;
    static Combination from_bitstring(const std::string& s);

    friend bool operator==(const Combination&, const Combination&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

// comb_O3: every flag at its -O3 default.
Combination default_combination(const GroupTable& table);

// "-O3" followed by one explicit token per flag: -f<name> / -fno-<name>.
std::vector<std::string> render_flags(const Combination& comb,
                                      const GroupTable& table);

// Inverse of render_flags over the flag tokens; unknown or non-boolean
// tokens are a ConfigError. The leading "-O3" is accepted and skipped.
Combination parse_flags(const std::vector<std::string>& tokens,
                        const GroupTable& table);

} // namespace grouptune
