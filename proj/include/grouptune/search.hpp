#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "grouptune/candidate_list.hpp"
#include "grouptune/evaluator.hpp"
#include "grouptune/history.hpp"
#include "grouptune/option_space.hpp"
#include "grouptune/rng.hpp"
#include "grouptune/schedule.hpp"

namespace grouptune {

struct MutationResult {
    Combination comb;
    std::optional<int> group_index; // table group index; absent for global moves
};

// Picks one group uniformly, then flips each of its members independently
// with probability 1/2. Flags outside the chosen group are never touched.
// Draw order: uniform_index(group_count), then one uniform01 per member in
// member order (flip when u <= 0.5).
MutationResult group_aware_mutation(const Combination& comb,
                                    const GroupTable& table, Rng& rng);

// Flips every flag of the space independently with probability 1/2, flat
// order, same coin rule. Over a one-group table this consumes exactly the
// same draws as group_aware_mutation (uniform_index(1) is draw-free).
MutationResult global_mutation(const Combination& comb, const GroupTable& table,
                               Rng& rng);

// P = exp(-delta / (T * alpha)), delta = (perf_new - perf_worst) /
// perf_worst. Requires perf_worst > 0, T > 0, alpha > 0, perf_new >=
// perf_worst (throws std::domain_error otherwise).
double acceptance_probability(double perf_new, double perf_worst,
                              double temperature, double alpha);

struct SearchResult {
    Combination best;
    double best_perf = 0.0;
    std::uint64_t evaluations_used = 0;
    std::vector<Candidate> final_list;
};

using MutationPolicy =
    std::function<MutationResult(const Combination&, const GroupTable&, Rng&)>;

// Initialization phase: applies `policy` to comb_O3 independently until
// `list` holds `list.capacity()` valid measurements.
// Invalid evaluations are recorded, consume budget and are retried; throws
// BudgetExhausted if the budget runs out before the list fills.
void initialize_candidates(const GroupTable& table, CandidateList& list,
                           std::uint64_t budget, std::uint64_t& used,
                           std::uint64_t& iteration, double t0,
                           SearcherKind kind, const MutationPolicy& policy,
                           Evaluator& evaluator, Rng& rng,
                           HistoryWriter* history, bool wall_timestamps);

// Full annealing session: initialization followed by the temperature loop. `kind` selects the mutation policy: group_tuner uses
// group_aware_mutation, global_sa uses global_mutation. The candidate list
// capacity equals n_init. Per iteration the rng is consumed in this order:
// candidate pick, mutation draws, then (valid, non-improving measurements
// only) one acceptance draw, accepted when u < P.
SearchResult run_annealing(const GroupTable& table,
                           const AnnealingSchedule& schedule,
                           std::uint64_t n_init, std::uint64_t budget,
                           SearcherKind kind, Evaluator& evaluator, Rng& rng,
                           HistoryWriter* history = nullptr,
                           bool wall_timestamps = false);

} // namespace grouptune
