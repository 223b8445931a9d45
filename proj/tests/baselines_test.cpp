#include <doctest.h>

#include <cmath>

#include "grouptune/baselines.hpp"
#include "grouptune/error.hpp"
#include "grouptune/search.hpp"

#include "test_util.hpp"

using namespace grouptune;

namespace {
Measurement popcount_perf(const Combination& c) {
    double perf = 1.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c.enabled(i)) perf += 0.1;
    return Measurement::valid({perf}, "toy");
}
} // namespace

TEST_CASE("random_combination draws one coin per flag, enabled when u < 0.5") {
    const auto table = testutil::two_group_table();
    testutil::ScriptedRng rng({0.1, 0.5, 0.49999, 0.9, 0.0, 0.5}, {});
    const Combination c = random_combination(table, rng);
    CHECK(c.to_bitstring() == "101010");
    CHECK(rng.u01_consumed() == 6);
}

TEST_CASE("rio keeps the running best over independent draws") {
    const auto table = testutil::two_group_table();
    FunctionEvaluator eval(popcount_perf);
    Rng rng(31);
    VectorHistoryWriter history;
    const SearchResult res = run_rio(table, 50, eval, rng, &history);

    CHECK(res.evaluations_used == 50);
    REQUIRE(history.records.size() == 50);
    double best = 1e100;
    for (std::size_t i = 0; i < history.records.size(); ++i) {
        const auto& rec = history.records[i];
        CHECK(rec.iteration == i);
        CHECK(rec.phase == Phase::anneal);
        CHECK(rec.algorithm == SearcherKind::rio);
        CHECK_FALSE(rec.mutated_group.has_value());
        CHECK_FALSE(rec.temperature.has_value());
        CHECK_FALSE(rec.timestamp.has_value());
        const double perf = *rec.measurement.perf;
        CHECK(rec.accepted == (perf < best)); // accepted == new running best
        best = std::min(best, perf);
    }
    CHECK(res.best_perf == doctest::Approx(best));
    CHECK(res.final_list.size() == 1);
    CHECK(res.final_list[0].perf == doctest::Approx(best));
}

TEST_CASE("rio throws BudgetExhausted when nothing is valid") {
    const auto table = testutil::two_group_table();
    FunctionEvaluator eval([](const Combination&) {
        return Measurement::failure(EvalStatus::timeout);
    });
    Rng rng(1);
    VectorHistoryWriter history;
    CHECK_THROWS_AS(run_rio(table, 8, eval, rng, &history), BudgetExhausted);
    CHECK(history.records.size() == 8); // the attempts are still on record
    CHECK_THROWS_AS(run_rio(table, 0, eval, rng), ConfigError);
}

// Over a one-group table, group-aware mutation picks the only group without
// consuming a draw (uniform_index(1) is draw-free) and then flips every flag
// of the space -- exactly what global mutation does. Same seed, same
// evaluator: the two algorithms must produce identical trajectories.
TEST_CASE("global-sa is trace-identical to group-tuner on one group") {
    const auto table = testutil::one_group_table();
    FunctionEvaluator eval_a(popcount_perf), eval_b(popcount_perf);
    Rng rng_a(123), rng_b(123);
    VectorHistoryWriter hist_a, hist_b;
    const auto schedule = AnnealingSchedule::derive(1.0, 0.001, 1.0, 40, 5);

    const SearchResult a = run_annealing(table, schedule, 5, 40,
                                         SearcherKind::group_tuner, eval_a,
                                         rng_a, &hist_a);
    const SearchResult b = run_annealing(table, schedule, 5, 40,
                                         SearcherKind::global_sa, eval_b,
                                         rng_b, &hist_b);

    CHECK(a.best == b.best);
    CHECK(a.best_perf == b.best_perf);
    REQUIRE(hist_a.records.size() == hist_b.records.size());
    for (std::size_t i = 0; i < hist_a.records.size(); ++i) {
        const auto& ra = hist_a.records[i];
        const auto& rb = hist_b.records[i];
        CHECK(ra.combination == rb.combination);
        CHECK(ra.accepted == rb.accepted);
        CHECK(*ra.measurement.perf == *rb.measurement.perf);
        CHECK(ra.temperature == rb.temperature);
        // only the labels differ
        CHECK(ra.algorithm == SearcherKind::group_tuner);
        CHECK(rb.algorithm == SearcherKind::global_sa);
        CHECK(ra.mutated_group.has_value());
        CHECK_FALSE(rb.mutated_group.has_value());
    }
}
