#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "grouptune/option_space.hpp"

namespace grouptune {

struct Candidate {
    Combination comb;
    double perf = 0.0;
    std::uint64_t seq = 0; // insertion order, breaks perf ties (earliest wins)
};

// Fixed-capacity pool of the best combinations seen so far. Lower perf is
// better. Duplicates are allowed; replacement only ever evicts the current
// worst entry, so the best entry is monotone over a session.
class CandidateList {
public:
    explicit CandidateList(std::size_t capacity);

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return entries_.size(); }
    bool full() const { return entries_.size() == capacity_; }
    const Candidate& at(std::size_t i) const { return entries_[i]; }
    const std::vector<Candidate>& entries() const { return entries_; }

    // Fill phase only; throws std::logic_error when already full.
    void add(Combination comb, double perf);

    // Evicts the worst entry (max perf, earliest insertion on ties) and
    // inserts the argument in its place with a fresh sequence number.
    void replace_worst(Combination comb, double perf);

    const Candidate& best() const { return entries_[best_index()]; }
    const Candidate& worst() const { return entries_[worst_index()]; }
    std::size_t best_index() const;  // min perf, earliest insertion on ties
    std::size_t worst_index() const; // max perf, earliest insertion on ties

private:
    std::size_t capacity_;
    std::vector<Candidate> entries_;
    std::uint64_t next_seq_ = 0;
};

} // namespace grouptune
