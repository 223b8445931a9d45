#include "grouptune/candidate_list.hpp"

#include <stdexcept>

namespace grouptune {

CandidateList::CandidateList(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0)
        throw std::invalid_argument("candidate list capacity must be >= 1");
    entries_.reserve(capacity);
}

void CandidateList::add(Combination comb, double perf) {
    if (full())
        throw std::logic_error("add() on a full candidate list");
    entries_.push_back({std::move(comb), perf, next_seq_++});
}

void CandidateList::replace_worst(Combination comb, double perf) {
    if (entries_.empty())
        throw std::logic_error("replace_worst() on an empty candidate list");
    entries_[worst_index()] = {std::move(comb), perf, next_seq_++};
}

std::size_t CandidateList::best_index() const {
    if (entries_.empty())
        throw std::logic_error("best_index() on an empty candidate list");
    std::size_t best = 0;
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        const Candidate& c = entries_[i];
        const Candidate& b = entries_[best];
        if (c.perf < b.perf || (c.perf == b.perf && c.seq < b.seq)) best = i;
    }
    return best;
}

std::size_t CandidateList::worst_index() const {
    if (entries_.empty())
        throw std::logic_error("worst_index() on an empty candidate list");
    std::size_t worst = 0;
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        const Candidate& c = entries_[i];
        const Candidate& w = entries_[worst];
        if (c.perf > w.perf || (c.perf == w.perf && c.seq < w.seq)) worst = i;
    }
    return worst;
}

} // namespace grouptune
