#include <numeric>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "recourse/adversaries.hpp"
#include "recourse/oracles.hpp"

using namespace recourse;

namespace {

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

Graph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
    return make_graph(n, e);
}

Graph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return make_graph(n, e);
}

Graph petersen() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
        e.push_back({i, (i + 1) % 5});      // outer cycle
        e.push_back({i, i + 5});            // spokes
        e.push_back({i + 5, (i + 2) % 5 + 5});  // inner pentagram
    }
    Graph g;
    for (int i = 0; i < 10; ++i) g.add_vertex(i);
    for (auto [a, b] : e)
        if (g.edge_index(g.index_of(a), g.index_of(b)) < 0) g.add_edge(a, b);
    return g;
}

Graph complete_bipartite(int a, int b) {
    Graph g;
    for (int i = 0; i < a + b; ++i) g.add_vertex(i);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
    return g;
}

Graph random_graph(int n, long num, long den, std::uint64_t seed) {
    StreamRng rng(seed);
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.chance(num, den)) e.push_back({i, j});
    return make_graph(n, e);
}

}  // namespace

TEST_CASE("known optima", "[oracles]") {
    Graph p = petersen();
    CHECK(max_is_value(p) == 4);
    CHECK(min_vc_value(p) == 6);
    CHECK(max_matching_value(p) == 5);

    Graph c5 = cycle(5);
    CHECK(max_is_value(c5) == 2);
    CHECK(min_vc_value(c5) == 3);
    CHECK(max_matching_value(c5) == 2);

    Graph c9 = cycle(9);
    CHECK(max_is_value(c9) == 4);
    CHECK(min_vc_value(c9) == 5);
    CHECK(max_matching_value(c9) == 4);

    Graph k33 = complete_bipartite(3, 3);
    CHECK(max_is_value(k33) == 3);
    CHECK(min_vc_value(k33) == 3);
    CHECK(max_matching_value(k33) == 3);

    Graph star = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(max_is_value(star) == 3);
    CHECK(min_vc_value(star) == 1);
    CHECK(max_matching_value(star) == 1);

    Graph empty = make_graph(5, {});
    CHECK(max_is_value(empty) == 5);
    CHECK(min_vc_value(empty) == 0);
    CHECK(max_matching_value(empty) == 0);
}

TEST_CASE("solvers agree with brute force", "[oracles]") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        int n = 4 + static_cast<int>(seed % 11);  // 4..14
        Graph g = random_graph(n, 1 + seed % 3, 4, seed);
        INFO("seed " << seed << " n " << n);
        long is = max_is_value(g), vc = min_vc_value(g), mm = max_matching_value(g);
        CHECK(is == brute_is_value(g));
        CHECK(vc == brute_vc_value(g));
        CHECK(mm == brute_matching_value(g));
        CHECK(is + vc == n);  // complement duality
        CHECK(mm <= vc);      // weak duality
    }
}

TEST_CASE("blossom handles odd structures", "[oracles]") {
    // Two triangles joined by a bridge: perfect matching exists.
    Graph g = make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {3, 5}});
    CHECK(max_matching_value(g) == 3);
    CHECK(brute_matching_value(g) == 3);

    // Odd cycle with a pendant: the blossom must flip around the cycle.
    Graph f = make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {2, 5}});
    CHECK(max_matching_value(f) == 3);
}

TEST_CASE("witnesses are optimal, feasible, lexicographically least", "[oracles]") {
    Graph p3 = path(3);
    CHECK(max_is_witness(p3) == std::vector<int>{0, 2});
    CHECK(min_vc_witness(p3) == std::vector<int>{1});
    CHECK(max_matching_witness(p3) == std::vector<int>{0});  // edge 0-1

    Graph one = make_graph(2, {{0, 1}});
    CHECK(max_is_witness(one) == std::vector<int>{0});
    CHECK(min_vc_witness(one) == std::vector<int>{0});

    Graph c4 = cycle(4);
    CHECK(max_is_witness(c4) == std::vector<int>{0, 2});

    Graph p4 = path(4);
    auto mw = max_matching_witness(p4);
    REQUIRE(mw.size() == 2);
    CHECK(p4.edge_element(mw[0]).str() == "e0-1");
    CHECK(p4.edge_element(mw[1]).str() == "e2-3");

    // External ids drive the order, not insertion order or dense indices.
    Graph shuffled;
    shuffled.add_vertex(9);
    shuffled.add_vertex(1);
    shuffled.add_vertex(5);
    shuffled.add_edge(5, 1);
    shuffled.add_edge(1, 9);
    auto w = max_is_witness(shuffled);
    std::vector<VertexId> ids;
    for (int idx : w) ids.push_back(shuffled.id_of(idx));
    CHECK(ids == std::vector<VertexId>{5, 9});
}

TEST_CASE("witnesses check out on random graphs", "[oracles]") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        int n = 5 + static_cast<int>(seed % 8);
        Graph g = random_graph(n, 1, 3, seed);
        INFO("seed " << seed);

        auto wi = max_is_witness(g);
        CHECK(static_cast<long>(wi.size()) == max_is_value(g));
        Assignment ai;
        ai.kind = ElementKind::vertex;
        for (int v : wi) ai.set(v, Rat(1));
        CHECK(feasible(Problem::independent_set, g, ai));

        auto wv = min_vc_witness(g);
        CHECK(static_cast<long>(wv.size()) == min_vc_value(g));
        Assignment av;
        av.kind = ElementKind::vertex;
        for (int v : wv) av.set(v, Rat(1));
        CHECK(feasible(Problem::vertex_cover, g, av));

        auto wm = max_matching_witness(g);
        CHECK(static_cast<long>(wm.size()) == max_matching_value(g));
        Assignment am;
        am.kind = ElementKind::edge;
        for (int e : wm) am.set(e, Rat(1));
        CHECK(feasible(Problem::matching, g, am));
    }
}

TEST_CASE("large sparse instances use the wide solver path", "[oracles]") {
    OracleOptions opt;
    opt.vertex_cap = 200;
    Graph p70 = path(70);
    CHECK(max_is_value(p70, opt) == 35);
    CHECK(min_vc_value(p70, opt) == 35);
    CHECK(max_matching_value(p70, opt) == 35);
    Graph kb = complete_bipartite(30, 41);
    CHECK(max_is_value(kb, opt) == 41);
    CHECK(min_vc_value(kb, opt) == 30);
    CHECK(max_matching_value(kb, opt) == 30);
}

TEST_CASE("vertex cap limits the exponential solvers only", "[oracles]") {
    Graph g = path(41);
    OracleOptions opt;  // default cap 40
    CHECK_THROWS_AS(max_is_value(g, opt), OracleLimitError);
    CHECK_THROWS_AS(min_vc_value(g, opt), OracleLimitError);
    CHECK_THROWS_AS(max_is_witness(g, opt), OracleLimitError);
    CHECK(max_matching_value(g, opt) == 20);  // polynomial, no cap
    opt.vertex_cap = 41;
    CHECK(max_is_value(g, opt) == 21);
}

TEST_CASE("value cache hits on repeated graphs", "[oracles]") {
    OracleCache cache;
    OracleOptions opt;
    opt.cache = &cache;
    Graph g = cycle(7);
    CHECK(max_is_value(g, opt) == 3);
    CHECK(max_is_value(g, opt) == 3);
    CHECK(cache.hits == 1);
    CHECK(cache.misses == 1);
    // A different problem on the same graph must not collide.
    CHECK(min_vc_value(g, opt) == 4);
    CHECK(cache.misses == 2);
    // Same structure built in a different insertion order still hits.
    Graph h;
    for (int i = 6; i >= 0; --i) h.add_vertex(i);
    for (int i = 0; i < 7; ++i) h.add_edge(i, (i + 1) % 7);
    CHECK(max_is_value(h, opt) == 3);
    CHECK(cache.hits == 2);
}

TEST_CASE("exact yardstick evaluates and witnesses each problem", "[oracles]") {
    Graph g = cycle(5);
    for (Problem p : {Problem::independent_set, Problem::vertex_cover, Problem::matching}) {
        Yardstick y = make_exact_yardstick(p);
        auto value_only = y.eval(g, false);
        CHECK_FALSE(value_only.witness.has_value());
        auto with = y.eval(g, true);
        REQUIRE(with.witness.has_value());
        CHECK(static_cast<long>(with.witness->size()) ==
              static_cast<long>(boost::rational_cast<long long>(with.value)));
    }
    CHECK(make_exact_yardstick(Problem::independent_set).eval(g, false).value == Rat(2));
    CHECK(make_exact_yardstick(Problem::vertex_cover).eval(g, false).value == Rat(3));
    CHECK(make_exact_yardstick(Problem::matching).eval(g, false).value == Rat(2));
}

TEST_CASE("incremental sanity check of a yardstick", "[oracles]") {
    EventStream s;
    s.model = ArrivalModel::vertex;
    s.events = {VertexArrival{0, {}}, VertexArrival{1, {}}, VertexArrival{2, {0, 1}},
                VertexArrival{3, {2}}};

    auto ok = verify_incremental(make_exact_yardstick(Problem::independent_set), s);
    CHECK(ok.ok);
    CHECK(ok.values == std::vector<Rat>{Rat(1), Rat(2), Rat(2), Rat(3)});

    // A deliberately broken reference whose value oscillates with parity.
    Yardstick broken;
    broken.name = "parity";
    broken.eval = [](const Graph& g, bool) {
        return YardstickResult{Rat(g.n() % 2), std::nullopt};
    };
    auto bad = verify_incremental(broken, s);
    CHECK_FALSE(bad.ok);
    CHECK(bad.first_violation == 1);
}

TEST_CASE("brute-force guards", "[oracles]") {
    Graph big = path(25);
    CHECK_THROWS_AS(brute_is_value(big), ConfigError);
    CHECK_THROWS_AS(brute_vc_value(big), ConfigError);
    Graph big21 = path(21);
    CHECK_THROWS_AS(brute_matching_value(big21), ConfigError);
}
