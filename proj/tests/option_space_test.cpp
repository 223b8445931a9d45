#include <doctest.h>

#include <set>

#include "grouptune/error.hpp"
#include "grouptune/option_space.hpp"

#include "test_util.hpp"

using namespace grouptune;

TEST_CASE("shipped gcc-9.2.0 table loads with the documented shape") {
    const GroupTable table =
        load_group_table(testutil::source_dir() / "data/gcc-9.2.0-groups.json");
    CHECK(table.compiler_id() == "gcc-9.2.0");
    REQUIRE(table.group_count() == kGcc920GroupSizes.size());
    std::size_t total = 0;
    for (std::size_t gi = 0; gi < table.group_count(); ++gi) {
        CHECK(table.group(gi).members.size() == kGcc920GroupSizes[gi]);
        CHECK(table.group(gi).index == static_cast<int>(gi) + 1);
        total += table.group(gi).members.size();
    }
    CHECK(total == 206);
    CHECK(table.flag_count() == 206);

    // flat order = group order, member order; indices are all coherent
    std::set<std::string> names;
    for (std::size_t fi = 0; fi < table.flag_count(); ++fi) {
        const auto& f = table.flag(fi);
        CHECK(names.insert(f.name).second);
        const std::size_t gi = table.group_of(fi);
        CHECK(fi >= table.first_flag_of(gi));
        CHECK(fi < table.first_flag_of(gi) + table.group(gi).members.size());
        REQUIRE(table.index_of(f.name).has_value());
        CHECK(*table.index_of(f.name) == fi);
    }
    CHECK_FALSE(table.index_of("no-such-flag").has_value());
    CHECK_FALSE(table.digest().empty());
}

TEST_CASE("table digest tracks content") {
    const auto a = testutil::two_group_table();
    const auto b = testutil::two_group_table();
    CHECK(a.digest() == b.digest());
    // one default changed => different digest
    const GroupTable c = GroupTable::from_json_text(R"({
        "compiler_id": "test-2g",
        "groups": [
            {"index": 1, "description": "alpha", "members": [
                {"name": "a0", "o3_default": false},
                {"name": "a1", "o3_default": false},
                {"name": "a2", "o3_default": true}]},
            {"index": 2, "description": "beta", "members": [
                {"name": "b0", "o3_default": false},
                {"name": "b1", "o3_default": true},
                {"name": "b2", "o3_default": false}]}
        ]})");
    CHECK(a.digest() != c.digest());
}

TEST_CASE("malformed grouping files are rejected with context") {
    auto parse = [](const char* text) {
        return GroupTable::from_json_text(text, "inline");
    };
    CHECK_THROWS_AS(parse("{"), ConfigError);
    CHECK_THROWS_AS(parse(R"({"groups": []})"), ConfigError);
    CHECK_THROWS_AS(parse(R"({"compiler_id": "x", "groups": []})"), ConfigError);
    // duplicate flag across groups
    CHECK_THROWS_WITH_AS(parse(R"({"compiler_id": "x", "groups": [
        {"index": 1, "description": "g1",
         "members": [{"name": "dup", "o3_default": true}]},
        {"index": 2, "description": "g2",
         "members": [{"name": "dup", "o3_default": false}]}]})"),
                         doctest::Contains("dup"), ConfigError);
    // duplicate group index
    CHECK_THROWS_AS(parse(R"({"compiler_id": "x", "groups": [
        {"index": 1, "description": "g1",
         "members": [{"name": "a", "o3_default": true}]},
        {"index": 1, "description": "g2",
         "members": [{"name": "b", "o3_default": false}]}]})"),
                    ConfigError);
    // member without o3_default, named in the message
    CHECK_THROWS_WITH_AS(parse(R"({"compiler_id": "x", "groups": [
        {"index": 1, "description": "g1", "members": [{"name": "lonely"}]}]})"),
                         doctest::Contains("lonely"), ConfigError);
    // empty member list
    CHECK_THROWS_AS(parse(R"({"compiler_id": "x", "groups": [
        {"index": 1, "description": "g1", "members": []}]})"),
                    ConfigError);
}

TEST_CASE("combination bit accessors and bitstring round-trip") {
    const auto table = testutil::two_group_table();
    Combination c = default_combination(table);
    // defaults: a0=1 a1=0 a2=1 b0=0 b1=1 b2=0
    CHECK(c.to_bitstring() == "101010");
    c.flip(0);
    c.set(3, true);
    CHECK(c.to_bitstring() == "001110");
    CHECK_FALSE(c.enabled(0));
    CHECK(c.enabled(3));
    const Combination back = Combination::from_bitstring("001110");
    CHECK(back == c);
    CHECK_THROWS_AS(Combination::from_bitstring("0012"), ConfigError);
}

TEST_CASE("render_flags emits -O3 plus one explicit token per flag") {
    const auto table = testutil::two_group_table();
    Combination c = default_combination(table);
    c.flip(1); // a1 on
    c.flip(4); // b1 off
    const auto tokens = render_flags(c, table);
    REQUIRE(tokens.size() == 1 + table.flag_count());
    CHECK(tokens[0] == "-O3");
    CHECK(tokens[1] == "-fa0");
    CHECK(tokens[2] == "-fa1");
    CHECK(tokens[3] == "-fa2");
    CHECK(tokens[4] == "-fno-b0");
    CHECK(tokens[5] == "-fno-b1");
    CHECK(tokens[6] == "-fno-b2");

    SUBCASE("parse_flags inverts it") {
        CHECK(parse_flags(tokens, table) == c);
    }
    SUBCASE("parse_flags starts from the -O3 defaults") {
        CHECK(parse_flags({"-fno-a0"}, table).to_bitstring() == "001010");
    }
    SUBCASE("unknown tokens are rejected") {
        CHECK_THROWS_AS(parse_flags({"-fwhatever"}, table), ConfigError);
        CHECK_THROWS_AS(parse_flags({"-O2"}, table), ConfigError);
    }
    SUBCASE("size mismatch is rejected") {
        CHECK_THROWS_AS(render_flags(Combination(3), table), ConfigError);
    }
}
