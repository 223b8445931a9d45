#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "grouptune/evaluator.hpp"
#include "grouptune/option_space.hpp"
#include "grouptune/rng.hpp"

namespace grouptune {

// Bonus granted only when every listed flag is in exactly the required state.
struct SynergyRule {
    std::vector<std::pair<std::string, bool>> pattern;
    double bonus = 0.0;
};

// Deterministic benchmark stand-in:
//   perf(c) = base - sum(weight[f] for enabled f) - sum(matched bonuses) + noise
// clamped below by `floor` (> 0 so the relative-delta in the acceptance
// probability stays well-defined).
struct SyntheticLandscape {
    double base = 0.0;
    double floor = 1e-3;
    double noise_amplitude = 0.0;
    std::map<std::string, double> weights; // flags absent here weigh 0
    std::vector<SynergyRule> synergies;

    static SyntheticLandscape from_json_text(const std::string& text,
                                             const std::string& origin = "<string>");
    std::string digest() const;
};

SyntheticLandscape load_landscape(const std::filesystem::path& path);

class SyntheticEvaluator : public Evaluator {
public:
    // Throws ConfigError if the landscape names a flag the table lacks.
    SyntheticEvaluator(const GroupTable& table, SyntheticLandscape land,
                       std::uint64_t noise_seed = 0);

    Measurement evaluate(const Combination& comb) override;
    bool deterministic() const override {
        return landscape_.noise_amplitude == 0.0;
    }

    // Noiseless value; pure function of the combination. Also used to price
    // comb_O3 as the session's reference.
    double perf_of(const Combination& comb) const;

    const SyntheticLandscape& landscape() const { return landscape_; }

private:
    double raw_perf(const Combination& comb) const; // unclamped, noiseless

    const GroupTable& table_;
    SyntheticLandscape landscape_;
    std::vector<double> weight_by_flag_;
    std::vector<std::vector<std::pair<std::size_t, bool>>> resolved_patterns_;
    Rng noise_rng_;
};

} // namespace grouptune
