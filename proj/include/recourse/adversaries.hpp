#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "recourse/core.hpp"
#include "recourse/oracles.hpp"
#include "recourse/tas.hpp"

namespace recourse {

// Deterministic helpers on top of the standard engine: unbiased bounded
// draws and exact-threshold coin flips, so generated streams are identical
// across platforms for a given seed.
class StreamRng {
  public:
    explicit StreamRng(std::uint64_t seed) : g_(seed) {}

    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        std::uint64_t limit = max - max % bound;
        std::uint64_t r;
        do {
            r = g_();
        } while (r >= limit);
        return r % bound;
    }

    bool chance(long num, long den) { return below(static_cast<std::uint64_t>(den)) <
                                             static_cast<std::uint64_t>(num); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::mt19937_64 g_;
};

// ---- adaptive bipartite instance against the switching algorithm ----

struct BipartiteGameResult {
    EventStream stream;
    long switches = 0;
    long elements = 0;
    Rat total_late{0};
    Rat amortized{0};
    Rat final_alg{0};
    Rat final_ref{0};
};

// Plays the worst case for independent set: every reveal lands on the side
// opposite the algorithm's current solution and attaches to all of the
// occupied side, so the revealed graph stays complete bipartite and the
// greedy gains nothing between rebuilds. Stops once the algorithm has been
// forced to rebuild the requested number of times. The exact solver cap is
// lifted here; complete bipartite instances stay easy at any size.
inline BipartiteGameResult play_bipartite_is_adversary(const Rat& t, int stop_after_switches,
                                                       OracleOptions opt = {}) {
    if (stop_after_switches < 1) throw ConfigError("the game needs at least one rebuild");
    opt.vertex_cap = std::numeric_limits<int>::max();
    TargetAndSwitch alg({Problem::independent_set, ArrivalModel::vertex, t,
                         make_exact_yardstick(Problem::independent_set, opt), true});

    BipartiteGameResult out;
    out.stream.label = "bipartite-is";
    out.stream.model = ArrivalModel::vertex;

    std::vector<VertexId> side[2];
    VertexId next = 0;
    auto reveal = [&](int s) {
        VertexArrival ev{next, side[1 - s]};
        side[s].push_back(next);
        ++next;
        out.stream.events.push_back(ev);
        return alg.process(ev);
    };

    auto r = reveal(0);
    while (out.switches < stop_after_switches) {
        int occ = 1;
        for (VertexId id : side[0]) {
            if (alg.assignment().value(alg.graph().index_of(id)) == Rat(1)) {
                occ = 0;
                break;
            }
        }
        r = reveal(1 - occ);
        if (r.switched) ++out.switches;
    }
    out.elements = alg.element_count();
    out.total_late = alg.ledger().type2();
    out.amortized = amortized_recourse(alg.ledger(), out.elements, RecourseType::type2);
    out.final_alg = r.alg;
    out.final_ref = r.ref;
    return out;
}

// ---- fixed streams ----

// A path revealed from the middle outward under edge arrivals: the center
// edge first, then each round extends the left end and the right end once.
// Every right extension completes one augmenting path through the whole
// revealed prefix, so a matcher that clears short augmenting paths rewrites
// everything it holds, round after round.
inline EventStream gen_matching_path(int rounds) {
    if (rounds < 0) throw ConfigError("rounds must be non-negative");
    EventStream s;
    s.label = "path";
    s.model = ArrivalModel::edge;
    s.events.push_back(EdgeArrival{0, 1});
    VertexId left = 0, right = 1, next = 2;
    for (int k = 1; k <= rounds; ++k) {
        s.events.push_back(EdgeArrival{next, left});
        left = next++;
        s.events.push_back(EdgeArrival{right, next});
        right = next++;
    }
    return s;
}

// The repeating cover gadget: a four-vertex seed and then one pair of
// vertices per round wired into the rolling last four, arranged so the duo
// keeps getting dragged through its expensive reshuffles.
inline EventStream gen_vc_repeating_gadget(int rounds) {
    if (rounds < 0) throw ConfigError("rounds must be non-negative");
    EventStream s;
    s.label = "vc-gadget";
    s.model = ArrivalModel::vertex;
    VertexId a = 0, b = 1, c = 2, d = 3;
    s.events.push_back(VertexArrival{0, {}});
    s.events.push_back(VertexArrival{1, {0}});
    s.events.push_back(VertexArrival{2, {0}});
    s.events.push_back(VertexArrival{3, {2}});
    VertexId next = 4;
    for (int k = 0; k < rounds + 1; ++k) {
        VertexId e = next++;
        VertexId f = next++;
        s.events.push_back(VertexArrival{e, {b, c}});
        s.events.push_back(VertexArrival{f, {e, a}});
        a = c;
        b = d;
        c = e;
        d = f;
    }
    return s;
}

// k disjoint edges, then one apex adjacent to all of their endpoints. The
// cover drops every second endpoint while the edges are isolated and has to
// buy them all back when the apex lands.
inline EventStream gen_vc_triangle_fan(int k) {
    if (k < 1) throw ConfigError("the fan needs at least one edge");
    EventStream s;
    s.label = "triangle-fan";
    s.model = ArrivalModel::vertex;
    for (int i = 0; i < k; ++i) {
        s.events.push_back(VertexArrival{2 * i, {}});
        s.events.push_back(VertexArrival{2 * i + 1, {2 * i}});
    }
    std::vector<VertexId> all;
    for (int i = 0; i < 2 * k; ++i) all.push_back(i);
    s.events.push_back(VertexArrival{2 * k, all});
    return s;
}

struct RandomStreamOptions {
    int n = 10;
    long p_num = 1;   // edge probability p_num / p_den
    long p_den = 2;
    std::uint64_t seed = 1;
    ArrivalModel model = ArrivalModel::vertex;
};

// G(n, p) revealed online. Vertex model: vertices in id order, each with its
// sampled back-edges. Edge model: the sampled edges in shuffled order.
inline EventStream gen_random(const RandomStreamOptions& o) {
    if (o.n < 1) throw ConfigError("random stream needs at least one vertex");
    if (o.p_num < 0 || o.p_den < 1 || o.p_num > o.p_den)
        throw ConfigError("edge probability must lie in [0, 1]");
    StreamRng rng(o.seed);
    EventStream s;
    s.label = "random-n" + std::to_string(o.n) + "-s" + std::to_string(o.seed);
    s.model = o.model;
    if (o.model == ArrivalModel::vertex) {
        for (int v = 0; v < o.n; ++v) {
            VertexArrival ev{v, {}};
            for (int u = 0; u < v; ++u)
                if (rng.chance(o.p_num, o.p_den)) ev.adj.push_back(u);
            s.events.push_back(ev);
        }
    } else {
        std::vector<EdgeArrival> edges;
        for (int v = 0; v < o.n; ++v)
            for (int u = 0; u < v; ++u)
                if (rng.chance(o.p_num, o.p_den)) edges.push_back(EdgeArrival{u, v});
        rng.shuffle(edges);
        for (const auto& e : edges) s.events.push_back(e);
    }
    return s;
}

}  // namespace recourse
