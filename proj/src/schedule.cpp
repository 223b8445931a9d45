#include "grouptune/schedule.hpp"

#include <cmath>
#include <string>

#include "grouptune/error.hpp"

namespace grouptune {

void AnnealingSchedule::validate() const {
    if (!(t0 > 0.0) || !std::isfinite(t0))
        throw ConfigError("schedule: t0 must be finite and > 0");
    if (!(t_min > 0.0) || !(t_min < t0))
        throw ConfigError("schedule: t_min must satisfy 0 < t_min < t0");
    if (!(cool_r > 0.0) || !(cool_r < 1.0))
        throw ConfigError("schedule: cool_r must lie in (0, 1)");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ConfigError("schedule: alpha must be finite and > 0");
}

AnnealingSchedule AnnealingSchedule::derive(double t0, double t_min,
                                            double alpha, std::uint64_t budget,
                                            std::uint64_t n_init) {
    if (budget <= n_init)
        throw ConfigError("budget (" + std::to_string(budget) +
                          ") must exceed n_init (" + std::to_string(n_init) +
                          ")");
    AnnealingSchedule s;
    s.t0 = t0;
    s.t_min = t_min;
    s.alpha = alpha;
    s.cool_r = std::pow(t_min / t0,
                        1.0 / static_cast<double>(budget - n_init));
    s.validate();
    return s;
}

} // namespace grouptune
