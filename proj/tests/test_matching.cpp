#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "recourse/adversaries.hpp"
#include "recourse/matching.hpp"
#include "recourse/oracles.hpp"

using namespace recourse;

TEST_CASE("path budget from the target factor", "[matching]") {
    CHECK(l_from_t(Rat(3, 2)) == 1);
    CHECK(l_from_t(Rat(7, 5)) == 2);
    CHECK(l_from_t(Rat(199, 100)) == 1);
    CHECK(l_from_t(Rat(2)) == 0);
    CHECK(l_from_t(Rat(3)) == 0);
    CHECK(l_from_t(Rat(6, 5)) == 4);
    CHECK_THROWS_AS(l_from_t(Rat(1)), ConfigError);
    CHECK_THROWS_AS(l_from_t(Rat(1, 2)), ConfigError);
}

TEST_CASE("bound tables", "[matching]") {
    CHECK(lgreedy_ratio_bound(0) == Rat(2));
    CHECK(lgreedy_ratio_bound(1) == Rat(3, 2));
    CHECK(lgreedy_ratio_bound(2) == Rat(4, 3));
    CHECK(lgreedy_amortized_bound(0) == Rat(1));
    CHECK(lgreedy_amortized_bound(1) == Rat(1));
    CHECK(lgreedy_amortized_bound(2) == Rat(7, 5));
    CHECK(lgreedy_amortized_bound(3) == Rat(13, 7));
    CHECK_THROWS_AS(LGreedyMatching({-1, ArrivalModel::edge}), ConfigError);
}

TEST_CASE("middle-out path costs two then four", "[matching]") {
    EventStream s = gen_matching_path(2);
    REQUIRE(s.events.size() == 5);
    LGreedyMatching alg({2, ArrivalModel::edge});
    std::vector<long> late;
    for (const auto& ev : s.events) late.push_back(alg.process(ev).late_ops);
    CHECK(late == std::vector<long>{0, 0, 2, 0, 4});
    CHECK(alg.matching_size() == 3);
    CHECK(alg.ledger().type2() == Rat(6));
    CHECK_FALSE(alg.has_short_augmenting_path());
}

TEST_CASE("middle-out path totals grow quadratically", "[matching]") {
    for (int rounds = 1; rounds <= 5; ++rounds) {
        EventStream s = gen_matching_path(rounds);
        LGreedyMatching alg({rounds, ArrivalModel::edge});
        for (const auto& ev : s.events) alg.process(ev);
        CHECK(alg.ledger().type2() == Rat(rounds) * Rat(rounds + 1));
        CHECK(alg.element_count() == 2 * rounds + 1);
        CHECK(alg.matching_size() == rounds + 1);
    }
}

TEST_CASE("a zero budget is plain greedy", "[matching]") {
    // Outer edges of this stream arrive with both endpoints free, so even
    // the greedy matches them all; the point is that it never pays late ops.
    EventStream s = gen_matching_path(4);
    LGreedyMatching alg({0, ArrivalModel::edge});
    for (const auto& ev : s.events) {
        auto r = alg.process(ev);
        CHECK(r.late_ops == 0);
    }
    CHECK(alg.matching_size() == 5);
    CHECK(alg.ledger().type2() == Rat(0));
}

TEST_CASE("vertex arrivals match the smallest free neighbor", "[matching]") {
    LGreedyMatching alg({3, ArrivalModel::vertex});
    alg.process(VertexArrival{0, {}});
    alg.process(VertexArrival{1, {}});
    auto r = alg.process(VertexArrival{2, {1, 0}});
    CHECK(r.elements == 2);
    CHECK(r.late_ops == 0);
    int e02 = alg.graph().edge_index(alg.graph().index_of(0), alg.graph().index_of(2));
    REQUIRE(e02 >= 0);
    CHECK(alg.assignment().value(e02) == Rat(1));
    CHECK(alg.matching_size() == 1);
}

TEST_CASE("arrival model is enforced", "[matching]") {
    LGreedyMatching vertex_alg({1, ArrivalModel::vertex});
    CHECK_THROWS_AS(vertex_alg.process(EdgeArrival{0, 1}), StreamError);
    LGreedyMatching edge_alg({1, ArrivalModel::edge});
    CHECK_THROWS_AS(edge_alg.process(VertexArrival{0, {}}), StreamError);
}

TEST_CASE("flips are charged to the event they happen in", "[matching]") {
    EventStream s = gen_matching_path(2);
    LGreedyMatching alg({2, ArrivalModel::edge});
    int event = 0;
    for (const auto& ev : s.events) {
        auto r = alg.process(ev);
        CHECK(alg.ledger().late_ops_in_event(event) == r.late_ops);
        CHECK(r.late_abs == Rat(r.late_ops));  // 0/1 values: both recourse types agree
        ++event;
    }
    CHECK(alg.ledger().type1() == 6);
}

TEST_CASE("no short augmenting path survives an event", "[matching]") {
    for (std::uint64_t seed = 30; seed < 40; ++seed) {
        for (int L : {0, 1, 2}) {
            RandomStreamOptions ro;
            ro.n = 10;
            ro.p_num = 1;
            ro.p_den = 3;
            ro.seed = seed;
            ro.model = ArrivalModel::edge;
            EventStream s = gen_random(ro);
            LGreedyMatching alg({L, ArrivalModel::edge});
            for (const auto& ev : s.events) {
                alg.process(ev);
                CHECK_FALSE(alg.has_short_augmenting_path());
                CHECK(feasible(Problem::matching, alg.graph(), alg.assignment()));
                long opt = max_matching_value(alg.graph());
                CHECK(Rat(opt) * Rat(L + 1) <= Rat(alg.matching_size()) * Rat(L + 2));
            }
            Rat amortized = amortized_recourse(alg.ledger(), alg.element_count(),
                                               RecourseType::type2);
            CHECK(amortized <= lgreedy_amortized_bound(L));
        }
    }
}

TEST_CASE("a generous budget yields a maximum matching", "[matching]") {
    // With no augmenting path of any length the matching is maximum.
    for (std::uint64_t seed = 50; seed < 56; ++seed) {
        RandomStreamOptions ro;
        ro.n = 9;
        ro.p_num = 2;
        ro.p_den = 5;
        ro.seed = seed;
        ro.model = ArrivalModel::edge;
        EventStream s = gen_random(ro);
        LGreedyMatching alg({8, ArrivalModel::edge});
        for (const auto& ev : s.events) alg.process(ev);
        CHECK(alg.matching_size() == max_matching_value(alg.graph()));
    }
}

TEST_CASE("shorter augmentations are preferred", "[matching]") {
    // A length-1 path and a length-3 path are both available; the length-1
    // one must win, leaving the long one alone.
    LGreedyMatching alg({1, ArrivalModel::edge});
    alg.process(EdgeArrival{0, 1});  // matched
    alg.process(EdgeArrival{1, 2});  // blocked
    auto r = alg.process(EdgeArrival{3, 4});  // free pair: a length-1 augmentation
    CHECK(r.late_ops == 0);
    CHECK(alg.matching_size() == 2);
    int e01 = alg.graph().edge_index(alg.graph().index_of(0), alg.graph().index_of(1));
    CHECK(alg.assignment().value(e01) == Rat(1));  // untouched
}

TEST_CASE("vertex batches subsume the greedy baseline", "[matching]") {
    // A batch never needs late flips when the budget is zero.
    for (std::uint64_t seed = 60; seed < 66; ++seed) {
        RandomStreamOptions ro;
        ro.n = 12;
        ro.p_num = 1;
        ro.p_den = 4;
        ro.seed = seed;
        EventStream s = gen_random(ro);
        LGreedyMatching alg({0, ArrivalModel::vertex});
        for (const auto& ev : s.events) {
            auto r = alg.process(ev);
            CHECK(r.late_ops == 0);
        }
        CHECK(alg.ledger().type2() == Rat(0));
    }
}
