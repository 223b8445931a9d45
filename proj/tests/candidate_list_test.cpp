#include <doctest.h>

#include <stdexcept>

#include "grouptune/candidate_list.hpp"
#include "grouptune/rng.hpp"

using namespace grouptune;

namespace {
Combination comb_of(std::uint8_t tag) {
    Combination c(8);
    for (std::size_t i = 0; i < 8; ++i) c.set(i, (tag >> i) & 1);
    return c;
}
} // namespace

TEST_CASE("fill phase, then replacement only") {
    CandidateList list(3);
    CHECK(list.capacity() == 3);
    CHECK_THROWS_AS(list.replace_worst(comb_of(0), 1.0), std::logic_error);
    list.add(comb_of(1), 5.0);
    list.add(comb_of(2), 3.0);
    CHECK_FALSE(list.full());
    list.add(comb_of(3), 4.0);
    CHECK(list.full());
    CHECK_THROWS_AS(list.add(comb_of(4), 1.0), std::logic_error);

    CHECK(list.best().perf == 3.0);
    CHECK(list.worst().perf == 5.0);

    list.replace_worst(comb_of(4), 2.0);
    CHECK(list.best().perf == 2.0);
    CHECK(list.worst().perf == 4.0);
    CHECK(list.size() == 3);
}

TEST_CASE("zero capacity is rejected") {
    CHECK_THROWS_AS(CandidateList(0), std::invalid_argument);
}

TEST_CASE("perf ties break toward the earliest insertion") {
    CandidateList list(3);
    list.add(comb_of(1), 7.0); // seq 0
    list.add(comb_of(2), 7.0); // seq 1
    list.add(comb_of(3), 7.0); // seq 2
    CHECK(list.best_index() == 0);
    CHECK(list.worst_index() == 0);

    // replacement gets a fresh seq, so it is now the *latest* 7.0
    list.replace_worst(comb_of(4), 7.0); // evicts seq 0, inserts seq 3
    CHECK(list.at(list.worst_index()).seq == 1);
    CHECK(list.at(list.best_index()).seq == 1);
}

TEST_CASE("the best entry is monotone under replacement") {
    CandidateList list(4);
    Rng rng(11);
    for (int i = 0; i < 4; ++i)
        list.add(comb_of(std::uint8_t(i)), 1.0 + rng.uniform01());
    double best = list.best().perf;
    for (int i = 0; i < 500; ++i) {
        list.replace_worst(comb_of(std::uint8_t(i)), 3.0 * rng.uniform01());
        CHECK(list.best().perf <= best + 1e-15);
        best = list.best().perf;
        CHECK(list.size() == 4);
    }
}

TEST_CASE("replacement preserves the non-worst entries") {
    CandidateList list(3);
    list.add(comb_of(10), 1.0);
    list.add(comb_of(20), 9.0);
    list.add(comb_of(30), 2.0);
    list.replace_worst(comb_of(40), 5.0);
    bool saw_10 = false, saw_30 = false, saw_40 = false;
    for (const Candidate& c : list.entries()) {
        if (c.comb == comb_of(10)) saw_10 = true;
        if (c.comb == comb_of(30)) saw_30 = true;
        if (c.comb == comb_of(40)) saw_40 = true;
        CHECK(c.comb != comb_of(20));
    }
    CHECK(saw_10);
    CHECK(saw_30);
    CHECK(saw_40);
}
