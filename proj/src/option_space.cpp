#include "grouptune/option_space.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "grouptune/digest.hpp"
#include "grouptune/error.hpp"

namespace grouptune {

using nlohmann::json;

namespace {

[[noreturn]] void bad_table(const std::string& origin, const std::string& what) {
    throw ConfigError("grouping file " + origin + ": " + what);
}

} // namespace

GroupTable GroupTable::from_json_text(const std::string& text,
                                      const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        bad_table(origin, std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("compiler_id") ||
        !doc["compiler_id"].is_string())
        bad_table(origin, "missing string field 'compiler_id'");
    if (!doc.contains("groups") || !doc["groups"].is_array() ||
        doc["groups"].empty())
        bad_table(origin, "missing non-empty array field 'groups'");

    GroupTable table;
    table.compiler_id_ = doc["compiler_id"].get<std::string>();
    for (const auto& jg : doc["groups"]) {
        OptionGroup g;
        if (!jg.contains("index") || !jg["index"].is_number_integer())
            bad_table(origin, "group without integer 'index'");
        g.index = jg["index"].get<int>();
        g.description = jg.value("description", std::string{});
        if (!jg.contains("members") || !jg["members"].is_array())
            bad_table(origin, "group " + std::to_string(g.index) +
                                  " has no 'members' array");
        if (jg["members"].empty())
            bad_table(origin, "group " + std::to_string(g.index) +
                                  " (" + g.description + ") has no members");
        for (const auto& jm : jg["members"]) {
            FlagSpec f;
            if (!jm.contains("name") || !jm["name"].is_string() ||
                jm["name"].get<std::string>().empty())
                bad_table(origin, "group " + std::to_string(g.index) +
                                      " has a member without a name");
            f.name = jm["name"].get<std::string>();
            if (!jm.contains("o3_default") || !jm["o3_default"].is_boolean())
                bad_table(origin, "flag '" + f.name +
                                      "' lacks a boolean 'o3_default'");
            f.o3_default = jm["o3_default"].get<bool>();
            g.members.push_back(std::move(f));
        }
        for (const auto& prev : table.groups_)
            if (prev.index == g.index)
                bad_table(origin,
                          "duplicate group index " + std::to_string(g.index));
        table.groups_.push_back(std::move(g));
    }

    try {
        table.build_index();
    } catch (const ConfigError& e) {
        bad_table(origin, e.what());
    }
    return table;
}

void GroupTable::build_index() {
    flat_.clear();
    group_of_.clear();
    group_start_.clear();
    by_name_.clear();

    std::string canon = compiler_id_;
    for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
        group_start_.push_back(flat_.size());
        const OptionGroup& g = groups_[gi];
        canon += "|#" + std::to_string(g.index) + ":" + g.description;
        for (const FlagSpec& f : g.members) {
            auto [it, inserted] = by_name_.emplace(f.name, flat_.size());
            if (!inserted)
                throw ConfigError("flag '" + f.name +
                                  "' appears in more than one group");
            flat_.push_back(&f);
            group_of_.push_back(gi);
            canon += ";" + f.name + (f.o3_default ? "=1" : "=0");
        }
    }
    digest_ = digest_hex(canon);
}

std::optional<std::size_t> GroupTable::index_of(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

GroupTable load_group_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open grouping file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return GroupTable::from_json_text(buf.str(), path.string());
}

std::string Combination::to_bitstring() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) s[i] = '1';
    return s;
}

Combination Combination::from_bitstring(const std::string& s) {
    Combination c(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1')
            throw ConfigError("bitstring contains a character besides 0/1");
        c.bits_[i] = (s[i] == '1');
    }
    return c;
}

Combination default_combination(const GroupTable& table) {
    Combination c(table.flag_count());
    for (std::size_t fi = 0; fi < table.flag_count(); ++fi)
        c.set(fi, table.flag(fi).o3_default);
    return c;
}

std::vector<std::string> render_flags(const Combination& comb,
                                      const GroupTable& table) {
    if (comb.size() != table.flag_count())
        throw ConfigError("combination size does not match the group table");
    std::vector<std::string> tokens;
    tokens.reserve(table.flag_count() + 1);
    tokens.emplace_back("-O3");
    for (std::size_t fi = 0; fi < table.flag_count(); ++fi) {
        const std::string& name = table.flag(fi).name;
        tokens.push_back((comb.enabled(fi) ? "-f" : "-fno-") + name);
    }
    return tokens;
}

Combination parse_flags(const std::vector<std::string>& tokens,
                        const GroupTable& table) {
    Combination c = default_combination(table);
    for (const std::string& t : tokens) {
        if (t == "-O3") continue;
        bool on;
        std::string name;
        if (t.rfind("-fno-", 0) == 0) {
            on = false;
            name = t.substr(5);
        } else if (t.rfind("-f", 0) == 0) {
            on = true;
            name = t.substr(2);
        } else {
            throw ConfigError("token '" + t + "' is not a -f flag");
        }
        auto fi = table.index_of(name);
        if (!fi)
            throw ConfigError("flag '" + name + "' is not in the group table");
        c.set(*fi, on);
    }
    return c;
}

} // namespace grouptune
