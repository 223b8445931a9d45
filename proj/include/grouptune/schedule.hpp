#pragma once

#include <cstdint>

namespace grouptune {

// Geometric cooling schedule. The annealing loop runs while T > t_min,
// multiplying T by cool_r each iteration.
struct AnnealingSchedule {
    double t0 = 1.0;
    double t_min = 0.001;
    double cool_r = 0.99;
    double alpha = 1.0;

    // Throws ConfigError unless 0 < t_min < t0, 0 < cool_r < 1, alpha > 0.
    void validate() const;

    // cool_r = (t_min/t0)^(1/(budget - n_init)), so the loop consumes exactly
    // budget - n_init evaluations after initialization.
    static AnnealingSchedule derive(double t0, double t_min, double alpha,
                                    std::uint64_t budget, std::uint64_t n_init);
};

} // namespace grouptune
