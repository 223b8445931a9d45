#pragma once

#include <functional>

#include "grouptune/measurement.hpp"
#include "grouptune/option_space.hpp"

namespace grouptune {

class Evaluator {
public:
    virtual ~Evaluator() = default;
    virtual Measurement evaluate(const Combination& comb) = 0;

    // True when identical inputs always produce identical measurements;
    // sessions over deterministic evaluators are reproducible byte-for-byte
    // and omit wall-clock timestamps from their history.
    virtual bool deterministic() const { return false; }
};

// Adapter for tests and synthetic setups that already have a perf function.
class FunctionEvaluator : public Evaluator {
public:
    using Fn = std::function<Measurement(const Combination&)>;
    explicit FunctionEvaluator(Fn fn, bool deterministic = true)
        : fn_(std::move(fn)), deterministic_(deterministic) {}

    Measurement evaluate(const Combination& comb) override { return fn_(comb); }
    bool deterministic() const override { return deterministic_; }

private:
    Fn fn_;
    bool deterministic_;
};

} // namespace grouptune
