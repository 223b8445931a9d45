#include "grouptune/search.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "grouptune/error.hpp"

namespace grouptune {

namespace {

void emit(HistoryWriter* history, std::uint64_t iteration, Phase phase,
          SearcherKind kind, const MutationResult& m, const Measurement& meas,
          bool accepted, std::optional<double> temperature,
          bool wall_timestamps) {
    if (!history) return;
    HistoryRecord rec;
    rec.iteration = iteration;
    rec.phase = phase;
    rec.algorithm = kind;
    rec.mutated_group = m.group_index;
    rec.combination = m.comb.to_bitstring();
    rec.measurement = meas;
    rec.accepted = accepted;
    rec.temperature = temperature;
    if (wall_timestamps) rec.timestamp = iso8601_now();
    history->append(rec);
}

MutationPolicy policy_for(SearcherKind kind) {
    switch (kind) {
    case SearcherKind::group_tuner: return group_aware_mutation;
    case SearcherKind::global_sa: return global_mutation;
    case SearcherKind::rio: break;
    }
    throw std::logic_error("rio does not use the annealing loop");
}

} // namespace

MutationResult group_aware_mutation(const Combination& comb,
                                    const GroupTable& table, Rng& rng) {
    if (comb.size() != table.flag_count())
        throw ConfigError("combination size does not match the group table");
    MutationResult out{comb, std::nullopt};
    const std::size_t gi = rng.uniform_index(table.group_count());
    const OptionGroup& g = table.group(gi);
    const std::size_t start = table.first_flag_of(gi);
    for (std::size_t k = 0; k < g.members.size(); ++k)
        if (rng.uniform01() <= 0.5) out.comb.flip(start + k);
    out.group_index = g.index;
    return out;
}

MutationResult global_mutation(const Combination& comb, const GroupTable& table,
                               Rng& rng) {
    if (comb.size() != table.flag_count())
        throw ConfigError("combination size does not match the group table");
    MutationResult out{comb, std::nullopt};
    for (std::size_t fi = 0; fi < table.flag_count(); ++fi)
        if (rng.uniform01() <= 0.5) out.comb.flip(fi);
    return out;
}

double acceptance_probability(double perf_new, double perf_worst,
                              double temperature, double alpha) {
    if (!(perf_worst > 0.0))
        throw std::domain_error("acceptance_probability: perf_worst must be > 0");
    if (!(temperature > 0.0))
        throw std::domain_error("acceptance_probability: temperature must be > 0");
    if (!(alpha > 0.0))
        throw std::domain_error("acceptance_probability: alpha must be > 0");
    if (perf_new < perf_worst)
        throw std::domain_error(
            "acceptance_probability: perf_new < perf_worst is the sure-replace case");
    const double delta = (perf_new - perf_worst) / perf_worst;
    return std::exp(-delta / (temperature * alpha));
}

void initialize_candidates(const GroupTable& table, CandidateList& list,
                           std::uint64_t budget, std::uint64_t& used,
                           std::uint64_t& iteration, double t0,
                           SearcherKind kind, const MutationPolicy& policy,
                           Evaluator& evaluator, Rng& rng,
                           HistoryWriter* history, bool wall_timestamps) {
    const Combination comb_o3 = default_combination(table);
    while (!list.full()) {
        if (used >= budget)
            throw BudgetExhausted(
                "evaluation budget (" + std::to_string(budget) +
                ") exhausted before the candidate list filled (" +
                std::to_string(list.size()) + "/" +
                std::to_string(list.capacity()) + " valid)");
        MutationResult m = policy(comb_o3, table, rng);
        Measurement meas = evaluator.evaluate(m.comb);
        ++used;
        const bool ok = meas.is_valid();
        if (ok) list.add(m.comb, *meas.perf);
        emit(history, iteration++, Phase::init, kind, m, meas, ok, t0,
             wall_timestamps);
    }
}

SearchResult run_annealing(const GroupTable& table,
                           const AnnealingSchedule& schedule,
                           std::uint64_t n_init, std::uint64_t budget,
                           SearcherKind kind, Evaluator& evaluator, Rng& rng,
                           HistoryWriter* history, bool wall_timestamps) {
    schedule.validate();
    if (n_init == 0) throw ConfigError("n_init must be >= 1");
    if (budget <= n_init)
        throw ConfigError("budget (" + std::to_string(budget) +
                          ") must exceed n_init (" + std::to_string(n_init) +
                          ")");
    const MutationPolicy policy = policy_for(kind);

    CandidateList list(n_init);
    std::uint64_t used = 0;
    std::uint64_t iteration = 0;
    initialize_candidates(table, list, budget, used, iteration, schedule.t0,
                          kind, policy, evaluator, rng, history,
                          wall_timestamps);

    double t = schedule.t0;
    while (t > schedule.t_min && used < budget) {
        const std::size_t ci = rng.uniform_index(list.size());
        MutationResult m = policy(list.at(ci).comb, table, rng);
        Measurement meas = evaluator.evaluate(m.comb);
        ++used;
        bool accepted = false;
        if (meas.is_valid()) {
            const double perf_new = *meas.perf;
            const double perf_worst = list.worst().perf;
            if (perf_new < perf_worst) {
                accepted = true;
            } else {
                const double p = acceptance_probability(perf_new, perf_worst, t,
                                                        schedule.alpha);
                accepted = rng.uniform01() < p;
            }
            if (accepted) list.replace_worst(m.comb, perf_new);
        }
        emit(history, iteration++, Phase::anneal, kind, m, meas, accepted, t,
             wall_timestamps);
        t *= schedule.cool_r;
    }

    const Candidate& best = list.best();
    return {best.comb, best.perf, used, list.entries()};
}

} // namespace grouptune
