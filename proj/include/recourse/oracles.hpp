#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "recourse/core.hpp"
#include "recourse/detail/bitset.hpp"

namespace recourse {

// Value memo shared across prefix replays. Keyed by the exact adjacency
// structure (vertices ordered by external id), so equal revealed graphs hit
// regardless of which stream produced them.
struct OracleCache {
    std::unordered_map<std::string, long> is_vals, vc_vals, mm_vals;
    long hits = 0;
    long misses = 0;
};

struct OracleOptions {
    // Vertex limit for the exact independent-set / vertex-cover solvers.
    // Matching has no limit; its solver is polynomial.
    int vertex_cap = 40;
    OracleCache* cache = nullptr;
};

namespace detail {

template <class M>
M empty_mask(int nbits);
template <>
inline Mask64 empty_mask<Mask64>(int) {
    return {};
}
template <>
inline MaskDyn empty_mask<MaskDyn>(int n) {
    return MaskDyn(n);
}

// Solver-side view of the revealed graph: position k is the vertex with the
// k-th smallest external id, which makes ascending-position scans equal to
// lexicographic scans.
template <class M>
struct SolverGraph {
    int n = 0;
    std::vector<M> adj;     // by position
    std::vector<int> dense; // position -> dense index in the Graph
};

template <class M>
SolverGraph<M> build_solver_graph(const Graph& g) {
    SolverGraph<M> sg;
    sg.n = g.n();
    sg.dense.resize(sg.n);
    std::iota(sg.dense.begin(), sg.dense.end(), 0);
    std::sort(sg.dense.begin(), sg.dense.end(),
              [&](int a, int b) { return g.id_of(a) < g.id_of(b); });
    std::vector<int> pos(sg.n);
    for (int k = 0; k < sg.n; ++k) pos[sg.dense[k]] = k;
    sg.adj.assign(sg.n, empty_mask<M>(sg.n));
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.edge(e);
        sg.adj[pos[a]].set(pos[b]);
        sg.adj[pos[b]].set(pos[a]);
    }
    return sg;
}

template <class M>
std::string cache_key(const SolverGraph<M>& sg) {
    std::string key;
    key.reserve(8 + sg.n * 8);
    auto push_word = [&key](std::uint64_t w) {
        for (int i = 0; i < 8; ++i) key.push_back(static_cast<char>((w >> (8 * i)) & 0xff));
    };
    push_word(static_cast<std::uint64_t>(sg.n));
    for (const auto& m : sg.adj) {
        if constexpr (std::is_same_v<M, Mask64>) {
            push_word(m.w);
        } else {
            for (auto w : m.w) push_word(w);
        }
    }
    return key;
}

// ---- independent set ----

template <class M>
long is_greedy(const std::vector<M>& adj, M active) {
    long val = 0;
    while (active.any()) {
        int best = -1, bestd = 1 << 30;
        active.for_each([&](int v) {
            int d = (adj[v] & active).count();
            if (d < bestd) {
                bestd = d;
                best = v;
            }
        });
        ++val;
        M rest = active.andnot(adj[best]);
        rest.reset(best);
        active = rest;
    }
    return val;
}

template <class M>
void is_branch(const std::vector<M>& adj, M active, long cur, long& best) {
    for (;;) {
        int cnt = active.count();
        if (cur + cnt <= best) return;
        int v = -1, maxd = -1;
        long degsum = 0;
        active.for_each([&](int u) {
            int d = (adj[u] & active).count();
            degsum += d;
            if (d > maxd) {
                maxd = d;
                v = u;
            }
        });
        if (maxd <= 1) {
            // Isolated vertices plus disjoint edges: take everything except
            // one endpoint per edge.
            long total = cur + cnt - degsum / 2;
            if (total > best) best = total;
            return;
        }
        M with = active.andnot(adj[v]);
        with.reset(v);
        is_branch(adj, with, cur + 1, best);
        active.reset(v);
    }
}

template <class M>
long is_value(const std::vector<M>& adj, M active) {
    long best = is_greedy(adj, active);
    is_branch(adj, active, 0, best);
    return best;
}

// ---- vertex cover ----

template <class M>
long vc_greedy(const std::vector<M>& adj, M active) {
    long val = 0;
    for (;;) {
        int v = -1, maxd = 0;
        active.for_each([&](int u) {
            int d = (adj[u] & active).count();
            if (d > maxd) {
                maxd = d;
                v = u;
            }
        });
        if (maxd == 0) return val;
        ++val;
        active.reset(v);
    }
}

template <class M>
long vc_matching_bound(const std::vector<M>& adj, M active) {
    long lb = 0;
    M rem = active;
    while (rem.any()) {
        int v = rem.lowest();
        rem.reset(v);
        M nb = adj[v] & rem;
        if (nb.any()) {
            rem.reset(nb.lowest());
            ++lb;
        }
    }
    return lb;
}

template <class M>
void vc_branch(const std::vector<M>& adj, M active, long cur, long& best) {
    for (;;) {
        if (cur >= best) return;
        int v = -1, maxd = 0, deg1 = -1;
        long degsum = 0;
        active.for_each([&](int u) {
            int d = (adj[u] & active).count();
            degsum += d;
            if (d > maxd) {
                maxd = d;
                v = u;
            }
            if (d == 1) deg1 = u;
        });
        if (maxd == 0) {
            best = cur;
            return;
        }
        if (maxd == 1) {
            // Disjoint edges: one endpoint each.
            long total = cur + degsum / 2;
            if (total < best) best = total;
            return;
        }
        if (cur + vc_matching_bound(adj, active) >= best) return;
        if (deg1 >= 0) {
            // A pendant vertex is never needed; its neighbor covers at least
            // as much.
            int w = (adj[deg1] & active).lowest();
            active.reset(w);
            active.reset(deg1);
            cur += 1;
            continue;
        }
        M in = active;
        in.reset(v);
        vc_branch(adj, in, cur + 1, best);
        // v stays out, so every neighbor goes in.
        M nb = adj[v] & active;
        cur += nb.count();
        M out = active.andnot(nb);
        out.reset(v);
        active = out;
    }
}

template <class M>
long vc_value(const std::vector<M>& adj, M active) {
    long best = vc_greedy(adj, active);
    vc_branch(adj, active, 0, best);
    return best;
}

// ---- shared entry points ----

enum class SolveKind { is, vc };

template <class M>
long solve_value(const SolverGraph<M>& sg, SolveKind kind, const OracleOptions& opt) {
    std::string key;
    if (opt.cache) {
        key = cache_key(sg);
        auto& map = kind == SolveKind::is ? opt.cache->is_vals : opt.cache->vc_vals;
        auto it = map.find(key);
        if (it != map.end()) {
            ++opt.cache->hits;
            return it->second;
        }
        ++opt.cache->misses;
    }
    M full = M::full(sg.n);
    long val = kind == SolveKind::is ? is_value(sg.adj, full) : vc_value(sg.adj, full);
    if (opt.cache) {
        auto& map = kind == SolveKind::is ? opt.cache->is_vals : opt.cache->vc_vals;
        map.emplace(std::move(key), val);
    }
    return val;
}

// Lexicographically smallest maximum independent set, as solver positions.
template <class M>
std::vector<int> is_witness_positions(const SolverGraph<M>& sg, long target) {
    M active = M::full(sg.n);
    long fixed = 0;
    std::vector<int> out;
    for (int p = 0; p < sg.n; ++p) {
        if (!active.test(p)) continue;
        M rest = active.andnot(sg.adj[p]);
        rest.reset(p);
        if (fixed + 1 + is_value(sg.adj, rest) == target) {
            out.push_back(p);
            ++fixed;
            active = rest;
        } else {
            active.reset(p);
        }
    }
    return out;
}

// Lexicographically smallest minimum vertex cover, as solver positions.
template <class M>
std::vector<int> vc_witness_positions(const SolverGraph<M>& sg, long target) {
    M undecided = M::full(sg.n);
    std::vector<char> in_cover(sg.n, 0);
    long fixed = 0;
    for (int p = 0; p < sg.n; ++p) {
        if (!undecided.test(p)) continue;
        M rest = undecided;
        rest.reset(p);
        if (fixed + 1 + vc_value(sg.adj, rest) == target) {
            in_cover[p] = 1;
            ++fixed;
            undecided = rest;
        } else {
            // p stays out of the cover, which forces its undecided
            // neighbors in.
            M nb = sg.adj[p] & rest;
            nb.for_each([&](int q) { in_cover[q] = 1; });
            fixed += nb.count();
            undecided = rest.andnot(nb);
        }
    }
    std::vector<int> out;
    for (int p = 0; p < sg.n; ++p)
        if (in_cover[p]) out.push_back(p);
    return out;
}

}  // namespace detail

// ---- maximum matching (augmenting paths with blossom contraction) ----

class BlossomMatcher {
  public:
    explicit BlossomMatcher(const std::vector<std::vector<int>>& adj)
        : n_(static_cast<int>(adj.size())), g_(adj), match_(n_, -1), p_(n_), base_(n_),
          used_(n_), blossom_(n_) {}

    // Returns the matching size; pairs are available via match().
    int solve() {
        int res = 0;
        for (int v = 0; v < n_; ++v) {
            if (match_[v] != -1) continue;
            for (int to : g_[v]) {
                if (match_[to] == -1) {
                    match_[v] = to;
                    match_[to] = v;
                    ++res;
                    break;
                }
            }
        }
        for (int v = 0; v < n_; ++v)
            if (match_[v] == -1 && augment_from(v)) ++res;
        return res;
    }

    const std::vector<int>& match() const { return match_; }

  private:
    int lca(int a, int b) {
        std::vector<char> seen(n_, 0);
        int x = a;
        for (;;) {
            x = base_[x];
            seen[x] = 1;
            if (match_[x] == -1) break;
            x = p_[match_[x]];
        }
        int y = b;
        for (;;) {
            y = base_[y];
            if (seen[y]) return y;
            y = p_[match_[y]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base_[v] != b) {
            blossom_[base_[v]] = 1;
            blossom_[base_[match_[v]]] = 1;
            p_[v] = child;
            child = match_[v];
            v = p_[match_[v]];
        }
    }

    bool augment_from(int root) {
        std::fill(used_.begin(), used_.end(), 0);
        std::fill(p_.begin(), p_.end(), -1);
        std::iota(base_.begin(), base_.end(), 0);
        used_[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : g_[v]) {
                if (base_[v] == base_[to] || match_[v] == to) continue;
                if (to == root || (match_[to] != -1 && p_[match_[to]] != -1)) {
                    int cur = lca(v, to);
                    std::fill(blossom_.begin(), blossom_.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 0; i < n_; ++i) {
                        if (!blossom_[base_[i]]) continue;
                        base_[i] = cur;
                        if (!used_[i]) {
                            used_[i] = 1;
                            q.push(i);
                        }
                    }
                } else if (p_[to] == -1) {
                    p_[to] = v;
                    if (match_[to] == -1) {
                        // Alternate match/unmatch back to the root.
                        int u = to;
                        while (u != -1) {
                            int pv = p_[u], ppv = match_[pv];
                            match_[u] = pv;
                            match_[pv] = u;
                            u = ppv;
                        }
                        return true;
                    }
                    used_[match_[to]] = 1;
                    q.push(match_[to]);
                }
            }
        }
        return false;
    }

    int n_;
    std::vector<std::vector<int>> g_;
    std::vector<int> match_, p_, base_;
    std::vector<char> used_, blossom_;
};

// ---- public oracle calls ----

inline void check_cap(const Graph& g, const OracleOptions& opt, const char* what) {
    if (g.n() > opt.vertex_cap)
        throw OracleLimitError(std::string(what) + ": instance has " + std::to_string(g.n()) +
                               " vertices, exact-solver cap is " + std::to_string(opt.vertex_cap));
}

inline long max_is_value(const Graph& g, const OracleOptions& opt = {}) {
    check_cap(g, opt, "max_independent_set");
    if (g.n() <= 64) {
        auto sg = detail::build_solver_graph<detail::Mask64>(g);
        return detail::solve_value(sg, detail::SolveKind::is, opt);
    }
    auto sg = detail::build_solver_graph<detail::MaskDyn>(g);
    return detail::solve_value(sg, detail::SolveKind::is, opt);
}

inline long min_vc_value(const Graph& g, const OracleOptions& opt = {}) {
    check_cap(g, opt, "min_vertex_cover");
    if (g.n() <= 64) {
        auto sg = detail::build_solver_graph<detail::Mask64>(g);
        return detail::solve_value(sg, detail::SolveKind::vc, opt);
    }
    auto sg = detail::build_solver_graph<detail::MaskDyn>(g);
    return detail::solve_value(sg, detail::SolveKind::vc, opt);
}

inline long max_matching_value(const Graph& g, const OracleOptions& opt = {}) {
    std::string key;
    detail::SolverGraph<detail::MaskDyn> keyg;
    if (opt.cache) {
        keyg = detail::build_solver_graph<detail::MaskDyn>(g);
        key = detail::cache_key(keyg);
        auto it = opt.cache->mm_vals.find(key);
        if (it != opt.cache->mm_vals.end()) {
            ++opt.cache->hits;
            return it->second;
        }
        ++opt.cache->misses;
    }
    std::vector<std::vector<int>> adj(g.n());
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.edge(e);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    long val = BlossomMatcher(adj).solve();
    if (opt.cache) opt.cache->mm_vals.emplace(std::move(key), val);
    return val;
}

// Witnesses are the lexicographically smallest optimal id set; runs that
// adopt them are therefore replayable. Returned as dense indices.

inline std::vector<int> max_is_witness(const Graph& g, const OracleOptions& opt = {}) {
    check_cap(g, opt, "max_independent_set");
    std::vector<int> pos;
    std::vector<int> dense;
    if (g.n() <= 64) {
        auto sg = detail::build_solver_graph<detail::Mask64>(g);
        pos = detail::is_witness_positions(sg, detail::solve_value(sg, detail::SolveKind::is, opt));
        dense = sg.dense;
    } else {
        auto sg = detail::build_solver_graph<detail::MaskDyn>(g);
        pos = detail::is_witness_positions(sg, detail::solve_value(sg, detail::SolveKind::is, opt));
        dense = sg.dense;
    }
    std::vector<int> out;
    out.reserve(pos.size());
    for (int p : pos) out.push_back(dense[p]);
    return out;
}

inline std::vector<int> min_vc_witness(const Graph& g, const OracleOptions& opt = {}) {
    check_cap(g, opt, "min_vertex_cover");
    std::vector<int> pos;
    std::vector<int> dense;
    if (g.n() <= 64) {
        auto sg = detail::build_solver_graph<detail::Mask64>(g);
        pos = detail::vc_witness_positions(sg, detail::solve_value(sg, detail::SolveKind::vc, opt));
        dense = sg.dense;
    } else {
        auto sg = detail::build_solver_graph<detail::MaskDyn>(g);
        pos = detail::vc_witness_positions(sg, detail::solve_value(sg, detail::SolveKind::vc, opt));
        dense = sg.dense;
    }
    std::vector<int> out;
    out.reserve(pos.size());
    for (int p : pos) out.push_back(dense[p]);
    return out;
}

// Lexicographically smallest maximum matching under the canonical edge-key
// order. Returned as edge indices.
inline std::vector<int> max_matching_witness(const Graph& g, const OracleOptions& opt = {}) {
    long target = max_matching_value(g, opt);
    std::vector<int> order(g.m());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        ElementId ea = g.edge_element(a), eb = g.edge_element(b);
        return std::tie(ea.u, ea.v) < std::tie(eb.u, eb.v);
    });
    std::vector<char> vertex_gone(g.n(), 0), banned(g.m(), 0);
    std::vector<int> chosen;
    auto solve_rest = [&]() {
        std::vector<std::vector<int>> adj(g.n());
        for (int e = 0; e < g.m(); ++e) {
            if (banned[e]) continue;
            auto [a, b] = g.edge(e);
            if (vertex_gone[a] || vertex_gone[b]) continue;
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        return BlossomMatcher(adj).solve();
    };
    for (int e : order) {
        auto [a, b] = g.edge(e);
        if (vertex_gone[a] || vertex_gone[b]) continue;
        vertex_gone[a] = vertex_gone[b] = 1;
        if (static_cast<long>(chosen.size()) + 1 + solve_rest() == target) {
            chosen.push_back(e);
        } else {
            vertex_gone[a] = vertex_gone[b] = 0;
            banned[e] = 1;
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

// ---- brute-force references (small n, used to cross-check the solvers) ----

inline long brute_is_value(const Graph& g) {
    int n = g.n();
    if (n > 24) throw ConfigError("brute_is_value is limited to 24 vertices");
    std::vector<std::uint64_t> adj(n, 0);
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.edge(e);
        adj[a] |= 1ULL << b;
        adj[b] |= 1ULL << a;
    }
    long best = 0;
    for (std::uint64_t s = 0; s < (1ULL << n); ++s) {
        bool ok = true;
        for (int v = 0; v < n && ok; ++v)
            if ((s >> v) & 1ULL) ok = (adj[v] & s) == 0;
        if (ok) best = std::max(best, static_cast<long>(std::popcount(s)));
    }
    return best;
}

inline long brute_vc_value(const Graph& g) {
    int n = g.n();
    if (n > 24) throw ConfigError("brute_vc_value is limited to 24 vertices");
    long best = n;
    for (std::uint64_t s = 0; s < (1ULL << n); ++s) {
        bool covers = true;
        for (int e = 0; e < g.m() && covers; ++e) {
            auto [a, b] = g.edge(e);
            covers = ((s >> a) & 1ULL) || ((s >> b) & 1ULL);
        }
        if (covers) best = std::min(best, static_cast<long>(std::popcount(s)));
    }
    return best;
}

inline long brute_matching_value(const Graph& g) {
    int n = g.n();
    if (n > 20) throw ConfigError("brute_matching_value is limited to 20 vertices");
    std::vector<std::uint32_t> adj(n, 0);
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.edge(e);
        adj[a] |= 1U << b;
        adj[b] |= 1U << a;
    }
    std::vector<int> f(1U << n, 0);
    for (std::uint32_t s = 1; s < (1U << n); ++s) {
        int v = std::countr_zero(s);
        std::uint32_t rest = s & (s - 1);  // without v
        int best = f[rest];
        std::uint32_t cand = adj[v] & rest;
        while (cand) {
            int u = std::countr_zero(cand);
            cand &= cand - 1;
            best = std::max(best, 1 + f[rest & ~(1U << u)]);
        }
        f[s] = best;
    }
    return f[(1U << n) - 1];
}

// ---- yardstick interface used by target-and-switch and the harness ----

struct YardstickResult {
    Rat value{0};
    // Accepted dense vertex indices (vertex problems) or edge indices
    // (matching); only filled when a witness was requested.
    std::optional<std::vector<int>> witness;
};

struct Yardstick {
    std::string name;
    std::function<YardstickResult(const Graph&, bool want_witness)> eval;
};

inline Yardstick make_exact_yardstick(Problem p, OracleOptions opt = {}) {
    Yardstick y;
    y.name = "exact";
    y.eval = [p, opt](const Graph& g, bool want_witness) {
        YardstickResult r;
        switch (p) {
            case Problem::independent_set:
                r.value = Rat(max_is_value(g, opt));
                if (want_witness) r.witness = max_is_witness(g, opt);
                break;
            case Problem::vertex_cover:
                r.value = Rat(min_vc_value(g, opt));
                if (want_witness) r.witness = min_vc_witness(g, opt);
                break;
            case Problem::matching:
                r.value = Rat(max_matching_value(g, opt));
                if (want_witness) r.witness = max_matching_witness(g, opt);
                break;
        }
        return r;
    };
    return y;
}

struct IncrementalCheck {
    bool ok = true;
    int first_violation = -1;  // event index where the value decreased
    std::vector<Rat> values;
};

// A usable reference for the switching algorithm must never lose value as
// the instance grows. Replays the stream and checks the value trajectory.
inline IncrementalCheck verify_incremental(const Yardstick& y, const EventStream& s) {
    IncrementalCheck out;
    replay(s, [&](const Graph& g, int idx) {
        Rat v = y.eval(g, false).value;
        if (!out.values.empty() && v < out.values.back() && out.ok) {
            out.ok = false;
            out.first_violation = idx;
        }
        out.values.push_back(v);
    });
    return out;
}

}  // namespace recourse
