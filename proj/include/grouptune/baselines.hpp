#pragma once

#include <cstdint>

#include "grouptune/evaluator.hpp"
#include "grouptune/history.hpp"
#include "grouptune/option_space.hpp"
#include "grouptune/rng.hpp"
#include "grouptune/search.hpp"

namespace grouptune {

// Fresh combination with every flag drawn uniformly (enabled when u < 0.5),
// flat order, independent of any previous state.
Combination random_combination(const GroupTable& table, Rng& rng);

// Random iterative optimization: `budget` independent uniform draws, keeping
// the best valid result. No candidate list, no temperature. Throws
// BudgetExhausted when no evaluation in the whole session was valid.
SearchResult run_rio(const GroupTable& table, std::uint64_t budget,
                     Evaluator& evaluator, Rng& rng,
                     HistoryWriter* history = nullptr,
                     bool wall_timestamps = false);

} // namespace grouptune
