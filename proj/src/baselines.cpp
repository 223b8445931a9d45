#include "grouptune/baselines.hpp"

#include <string>

#include "grouptune/error.hpp"

namespace grouptune {

Combination random_combination(const GroupTable& table, Rng& rng) {
    Combination c(table.flag_count());
    for (std::size_t fi = 0; fi < table.flag_count(); ++fi)
        c.set(fi, rng.uniform01() < 0.5);
    return c;
}

SearchResult run_rio(const GroupTable& table, std::uint64_t budget,
                     Evaluator& evaluator, Rng& rng, HistoryWriter* history,
                     bool wall_timestamps) {
    if (budget == 0) throw ConfigError("budget must be >= 1");

    SearchResult result;
    bool have_best = false;
    for (std::uint64_t iter = 0; iter < budget; ++iter) {
        Combination comb = random_combination(table, rng);
        Measurement meas = evaluator.evaluate(comb);
        bool improved = false;
        if (meas.is_valid() &&
            (!have_best || *meas.perf < result.best_perf)) {
            result.best = comb;
            result.best_perf = *meas.perf;
            have_best = true;
            improved = true;
        }
        if (history) {
            HistoryRecord rec;
            rec.iteration = iter;
            rec.phase = Phase::anneal;
            rec.algorithm = SearcherKind::rio;
            rec.combination = comb.to_bitstring();
            rec.measurement = meas;
            rec.accepted = improved;
            if (wall_timestamps) rec.timestamp = iso8601_now();
            history->append(rec);
        }
    }
    result.evaluations_used = budget;
    if (!have_best)
        throw BudgetExhausted("no valid evaluation within the budget of " +
                              std::to_string(budget));
    result.final_list = {Candidate{result.best, result.best_perf, 0}};
    return result;
}

} // namespace grouptune
