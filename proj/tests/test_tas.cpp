#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "recourse/adversaries.hpp"
#include "recourse/oracles.hpp"
#include "recourse/tas.hpp"

using namespace recourse;

namespace {

TargetAndSwitch make_tas(Problem p, ArrivalModel m, Rat t, bool switching = true) {
    return TargetAndSwitch({p, m, t, make_exact_yardstick(p), switching});
}

}  // namespace

TEST_CASE("ratio comparisons", "[tas]") {
    CHECK_FALSE(ratio_exceeds(Rat(0), Rat(0), Rat(2)));  // empty instance counts as 1
    CHECK(ratio_exceeds(Rat(0), Rat(1), Rat(100)));
    CHECK(ratio_exceeds(Rat(1), Rat(0), Rat(100)));
    CHECK_FALSE(ratio_exceeds(Rat(3), Rat(2), Rat(3, 2)));  // equality is fine
    CHECK(ratio_exceeds(Rat(3), Rat(2), Rat(4, 3)));
    CHECK(ratio_exceeds(Rat(2), Rat(3), Rat(4, 3)));  // symmetric
    CHECK(ratio_string(Rat(0), Rat(0)) == "1");
    CHECK(ratio_string(Rat(2), Rat(0)) == "inf");
    CHECK(ratio_string(Rat(2), Rat(3)) == "3/2");
}

TEST_CASE("configuration is validated", "[tas]") {
    CHECK_THROWS_AS(make_tas(Problem::independent_set, ArrivalModel::vertex, Rat(1)),
                    ConfigError);
    CHECK_THROWS_AS(make_tas(Problem::independent_set, ArrivalModel::edge, Rat(2)),
                    ConfigError);
    CHECK_THROWS_AS(TargetAndSwitch({Problem::independent_set, ArrivalModel::vertex, Rat(2),
                                     Yardstick{}, true}),
                    ConfigError);
}

TEST_CASE("star forces one rebuild at factor 2", "[tas]") {
    auto alg = make_tas(Problem::independent_set, ArrivalModel::vertex, Rat(2));

    auto r0 = alg.process(VertexArrival{0, {}});
    CHECK(r0.alg == Rat(1));
    CHECK_FALSE(r0.switched);

    auto r1 = alg.process(VertexArrival{1, {0}});
    CHECK(r1.alg == Rat(1));
    CHECK(r1.ref == Rat(1));

    auto r2 = alg.process(VertexArrival{2, {0}});
    CHECK(r2.alg == Rat(1));
    CHECK(r2.ref == Rat(2));  // ratio exactly 2 stays put
    CHECK_FALSE(r2.switched);

    auto r3 = alg.process(VertexArrival{3, {0}});
    CHECK(r3.switched);
    CHECK(r3.alg == Rat(3));  // the three leaves
    CHECK(r3.ref == Rat(3));
    CHECK(r3.late_ops == 3);  // drop the center, accept two old leaves; v3 is free
    CHECK(r3.late_abs == Rat(3));

    CHECK(alg.switches() == 1);
    CHECK(alg.ledger().type1() == 3);
    CHECK(alg.ledger().type2() == Rat(3));
    CHECK(alg.assignment().value(0) == Rat(0));
    for (int leaf : {1, 2, 3}) CHECK(alg.assignment().value(leaf) == Rat(1));

    REQUIRE(alg.phases().size() == 2);
    CHECK(alg.phases()[0].closed);
    CHECK(alg.phases()[0].elements == 4);
    CHECK(alg.phases()[0].switch_recourse == Rat(3));
    CHECK_FALSE(alg.phases()[1].closed);
    CHECK(alg.phases()[1].elements == 0);
}

TEST_CASE("isolated vertices never trigger work", "[tas]") {
    auto alg = make_tas(Problem::independent_set, ArrivalModel::vertex, Rat(3, 2));
    alg.process(VertexArrival{0, {}});
    alg.process(VertexArrival{1, {}});
    CHECK(alg.alg_value() == Rat(2));
    CHECK(alg.switches() == 0);
    CHECK(alg.ledger().type2() == Rat(0));
}

TEST_CASE("cover greedy only accepts needed vertices", "[tas]") {
    auto alg = make_tas(Problem::vertex_cover, ArrivalModel::vertex, Rat(3, 2));
    auto r0 = alg.process(VertexArrival{0, {}});
    CHECK(r0.alg == Rat(0));  // nothing to cover yet
    auto r1 = alg.process(VertexArrival{1, {0}});
    CHECK(r1.alg == Rat(1));
    CHECK_FALSE(r1.switched);
    CHECK(alg.assignment().value(1) == Rat(1));
    CHECK(alg.ledger().type2() == Rat(0));
}

TEST_CASE("growing star rebuilds the cover onto the center", "[tas]") {
    auto alg = make_tas(Problem::vertex_cover, ArrivalModel::vertex, Rat(3, 2));
    alg.process(VertexArrival{0, {}});
    auto r1 = alg.process(VertexArrival{1, {0}});
    CHECK(r1.alg == Rat(1));

    // Second leaf: greedy would reach 2 against an optimum of 1.
    auto r2 = alg.process(VertexArrival{2, {0}});
    CHECK(r2.switched);
    CHECK(r2.alg == Rat(1));
    CHECK(r2.late_ops == 2);  // accept the center, drop leaf 1; leaf 2 never set
    CHECK(alg.assignment().value(0) == Rat(1));
    CHECK(alg.assignment().value(1) == Rat(0));
    CHECK(alg.assignment().value(2) == Rat(0));

    auto r3 = alg.process(VertexArrival{3, {0}});
    CHECK_FALSE(r3.switched);
    CHECK(r3.alg == Rat(1));
    CHECK(feasible(Problem::vertex_cover, alg.graph(), alg.assignment()));
}

TEST_CASE("matching rebuild adopts the lexicographic witness", "[tas]") {
    auto alg = make_tas(Problem::matching, ArrivalModel::edge, Rat(3, 2));
    auto r0 = alg.process(EdgeArrival{0, 1});
    CHECK(r0.alg == Rat(1));
    auto r1 = alg.process(EdgeArrival{0, 2});
    CHECK(r1.alg == Rat(1));
    CHECK_FALSE(r1.switched);

    // Optimum jumps to 2 while greedy is stuck: rebuild.
    auto r2 = alg.process(EdgeArrival{1, 3});
    CHECK(r2.switched);
    CHECK(r2.alg == Rat(2));
    CHECK(r2.late_ops == 2);  // drop e0-1, accept e0-2; e1-3 arrives now
    int e02 = alg.graph().edge_index(alg.graph().index_of(0), alg.graph().index_of(2));
    int e13 = alg.graph().edge_index(alg.graph().index_of(1), alg.graph().index_of(3));
    CHECK(alg.assignment().value(e02) == Rat(1));
    CHECK(alg.assignment().value(e13) == Rat(1));
}

TEST_CASE("vertex arrivals feed matching edges smallest neighbor first", "[tas]") {
    auto alg = make_tas(Problem::matching, ArrivalModel::vertex, Rat(2));
    alg.process(VertexArrival{0, {}});
    alg.process(VertexArrival{1, {}});
    auto r2 = alg.process(VertexArrival{2, {1, 0}});
    CHECK(r2.elements == 2);
    CHECK(r2.alg == Rat(1));
    int e02 = alg.graph().edge_index(alg.graph().index_of(0), alg.graph().index_of(2));
    CHECK(alg.assignment().value(e02) == Rat(1));  // 0 beats 1 despite listing order
    CHECK(alg.element_count() == 2);
}

TEST_CASE("disabled switching gives the unbounded greedy baseline", "[tas]") {
    auto alg = make_tas(Problem::independent_set, ArrivalModel::vertex, Rat(2), false);
    alg.process(VertexArrival{0, {}});
    for (int leaf = 1; leaf <= 6; ++leaf) alg.process(VertexArrival{leaf, {0}});
    CHECK(alg.alg_value() == Rat(1));
    CHECK(alg.switches() == 0);
    CHECK(alg.ledger().type2() == Rat(0));
    // The reference has pulled away by a factor 6 already.
    CHECK(max_is_value(alg.graph()) == 6);
}

TEST_CASE("every prefix respects the target factor", "[tas]") {
    const Rat ts[] = {Rat(5, 4), Rat(3, 2), Rat(2), Rat(3)};
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        for (Problem p : {Problem::independent_set, Problem::vertex_cover}) {
            for (const Rat& t : ts) {
                RandomStreamOptions ro;
                ro.n = 12;
                ro.p_num = 1;
                ro.p_den = 3;
                ro.seed = seed;
                EventStream s = gen_random(ro);
                auto alg = make_tas(p, ArrivalModel::vertex, t);
                Rat prev_ref(0);
                for (const auto& ev : s.events) {
                    auto r = alg.process(ev);
                    INFO("problem " << to_string(p) << " t " << to_string(t) << " seed "
                                    << seed);
                    CHECK_FALSE(ratio_exceeds(r.alg, r.ref, t));
                    CHECK(feasible(p, alg.graph(), alg.assignment()));
                    CHECK(r.alg == alg.assignment().sum());
                    CHECK(r.ref >= prev_ref);  // reference grows with the instance
                    prev_ref = r.ref;
                }
                Rat bound = (t + Rat(1)) / (t - Rat(1));
                Rat amortized = amortized_recourse(alg.ledger(), alg.element_count(),
                                                   RecourseType::type2);
                CHECK(amortized <= bound);
                long phase_elements = 0;
                for (const auto& ph : alg.phases()) {
                    phase_elements += ph.elements;
                    if (ph.closed) CHECK(ph.switch_recourse <= bound * Rat(ph.elements));
                }
                CHECK(phase_elements == alg.element_count());
            }
        }
    }
}

TEST_CASE("edge-arrival matching prefixes respect the factor", "[tas]") {
    const Rat ts[] = {Rat(3, 2), Rat(2)};
    for (std::uint64_t seed = 20; seed <= 24; ++seed) {
        for (const Rat& t : ts) {
            RandomStreamOptions ro;
            ro.n = 10;
            ro.p_num = 1;
            ro.p_den = 3;
            ro.seed = seed;
            ro.model = ArrivalModel::edge;
            EventStream s = gen_random(ro);
            auto alg = make_tas(Problem::matching, ArrivalModel::edge, t);
            for (const auto& ev : s.events) {
                auto r = alg.process(ev);
                CHECK_FALSE(ratio_exceeds(r.alg, r.ref, t));
                CHECK(feasible(Problem::matching, alg.graph(), alg.assignment()));
            }
            CHECK(amortized_recourse(alg.ledger(), alg.element_count(), RecourseType::type2) <=
                  (t + Rat(1)) / (t - Rat(1)));
        }
    }
}

TEST_CASE("late ops happen only at rebuilds", "[tas]") {
    RandomStreamOptions ro;
    ro.n = 14;
    ro.p_num = 1;
    ro.p_den = 4;
    ro.seed = 7;
    EventStream s = gen_random(ro);
    auto alg = make_tas(Problem::independent_set, ArrivalModel::vertex, Rat(3, 2));
    int event = 0;
    for (const auto& ev : s.events) {
        auto r = alg.process(ev);
        if (!r.switched) CHECK(alg.ledger().late_ops_in_event(event) == 0);
        ++event;
    }
}
