#include <doctest.h>

#include <cmath>

#include "grouptune/error.hpp"
#include "grouptune/synthetic.hpp"

#include "test_util.hpp"

using namespace grouptune;

namespace {
SyntheticLandscape demo_land() {
    return SyntheticLandscape::from_json_text(R"({
        "base": 10.0,
        "floor": 0.5,
        "weights": {"a0": 1.0, "a1": -0.5, "b1": 2.0},
        "synergies": [
            {"pattern": {"a0": true, "b0": false}, "bonus": 3.0},
            {"pattern": {"a1": true, "a2": true, "b2": true}, "bonus": 1.0}
        ]})");
}
} // namespace

TEST_CASE("perf_of applies weights and exact-pattern synergies") {
    const auto table = testutil::two_group_table();
    SyntheticEvaluator eval(table, demo_land());

    // defaults 101010: a0=1, a1=0, a2=1, b0=0, b1=1, b2=0
    // weights: a0 enabled (-1.0), b1 enabled (-2.0); synergy 1 matches
    // (a0 on, b0 off, -3.0); synergy 2 does not (a1 off).
    const Combination c = default_combination(table);
    CHECK(eval.perf_of(c) == doctest::Approx(10.0 - 1.0 - 2.0 - 3.0));

    // all off: no weights, no synergies except none match (a0 off)
    CHECK(eval.perf_of(Combination(6)) == doctest::Approx(10.0));

    // a1 enabled costs -(-0.5) => slower
    Combination d = Combination(6);
    d.set(1, true);
    CHECK(eval.perf_of(d) == doctest::Approx(10.5));

    // full synergy 2: a1, a2, b2 on => weights a1 (-(-0.5)) and bonus 1.0
    Combination e = Combination(6);
    e.set(1, true);
    e.set(2, true);
    e.set(5, true);
    CHECK(eval.perf_of(e) == doctest::Approx(10.0 + 0.5 - 1.0));
}

TEST_CASE("perf never drops below the floor") {
    const auto table = testutil::two_group_table();
    auto land = SyntheticLandscape::from_json_text(R"({
        "base": 1.0, "floor": 0.75,
        "weights": {"a0": 5.0}})");
    SyntheticEvaluator eval(table, land);
    Combination c(6);
    c.set(0, true);
    CHECK(eval.perf_of(c) == 0.75);
    const Measurement m = eval.evaluate(c);
    CHECK(m.is_valid());
    CHECK(*m.perf == 0.75);
}

TEST_CASE("noiseless evaluation is the pure function") {
    const auto table = testutil::two_group_table();
    SyntheticEvaluator eval(table, demo_land());
    CHECK(eval.deterministic());
    const Combination c = default_combination(table);
    const Measurement a = eval.evaluate(c);
    const Measurement b = eval.evaluate(c);
    CHECK(*a.perf == *b.perf);
    CHECK(*a.perf == eval.perf_of(c));
    CHECK(a.runs.size() == 1);
    CHECK(a.output_digest == b.output_digest);
}

TEST_CASE("noise stays inside the amplitude and reproduces by seed") {
    const auto table = testutil::two_group_table();
    auto land = demo_land();
    land.noise_amplitude = 0.25;
    SyntheticEvaluator e1(table, land, 77), e2(table, land, 77),
        e3(table, land, 78);
    CHECK_FALSE(e1.deterministic());
    const Combination c = default_combination(table);
    const double pure = e1.perf_of(c);
    bool differs_from_pure = false, differs_by_seed = false;
    for (int i = 0; i < 200; ++i) {
        const double p1 = *e1.evaluate(c).perf;
        const double p2 = *e2.evaluate(c).perf;
        const double p3 = *e3.evaluate(c).perf;
        CHECK(std::abs(p1 - pure) <= 0.25 + 1e-12);
        CHECK(p1 == p2); // same noise seed, same stream
        if (p1 != pure) differs_from_pure = true;
        if (p1 != p3) differs_by_seed = true;
    }
    CHECK(differs_from_pure);
    CHECK(differs_by_seed);
}

TEST_CASE("landscape parsing rejects bad documents") {
    CHECK_THROWS_AS(SyntheticLandscape::from_json_text("nope"), ConfigError);
    CHECK_THROWS_AS(
        SyntheticLandscape::from_json_text(R"({"floor": 0.0})"), ConfigError);
    CHECK_THROWS_AS(
        SyntheticLandscape::from_json_text(R"({"noise_amplitude": -1})"),
        ConfigError);
    CHECK_THROWS_AS(
        SyntheticLandscape::from_json_text(R"({"weights": {"a": "x"}})"),
        ConfigError);
    CHECK_THROWS_AS(SyntheticLandscape::from_json_text(
                        R"({"synergies": [{"bonus": 1.0}]})"),
                    ConfigError);
    CHECK_THROWS_AS(SyntheticLandscape::from_json_text(
                        R"({"synergies": [{"pattern": {}, "bonus": 1}]})"),
                    ConfigError);
    CHECK_THROWS_AS(SyntheticLandscape::from_json_text(
                        R"({"synergies": [{"pattern": {"a": 1}, "bonus": 1}]})"),
                    ConfigError);
}

TEST_CASE("unknown flags in the landscape are named in the error") {
    const auto table = testutil::two_group_table();
    auto bad_weight = SyntheticLandscape::from_json_text(
        R"({"weights": {"zz": 1.0}})");
    CHECK_THROWS_WITH_AS(SyntheticEvaluator(table, bad_weight),
                         doctest::Contains("zz"), ConfigError);
    auto bad_pattern = SyntheticLandscape::from_json_text(
        R"({"synergies": [{"pattern": {"yy": true}, "bonus": 1}]})");
    CHECK_THROWS_WITH_AS(SyntheticEvaluator(table, bad_pattern),
                         doctest::Contains("yy"), ConfigError);
}

TEST_CASE("digest distinguishes landscapes") {
    const auto a = demo_land();
    auto b = demo_land();
    CHECK(a.digest() == b.digest());
    b.weights["a0"] = 1.0001;
    CHECK(a.digest() != b.digest());
    auto c = demo_land();
    c.synergies[0].bonus = 2.5;
    CHECK(a.digest() != c.digest());
}

TEST_CASE("shipped landscape files load") {
    const auto demo = load_landscape(testutil::source_dir() /
                                     "data/landscapes/demo-gcc.json");
    CHECK(demo.noise_amplitude == 0.0);
    CHECK_FALSE(demo.weights.empty());
    const auto planted = load_landscape(testutil::source_dir() /
                                        "data/landscapes/planted-60.json");
    CHECK(planted.synergies.size() == 3);
    std::size_t zero_weight_mentions = planted.weights.size();
    CHECK(zero_weight_mentions == 40); // 20 of the 60 flags carry no weight
}
