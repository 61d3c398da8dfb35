#pragma once

#include <algorithm>
#include <utility>
#include <variant>
#include <vector>

#include "recourse/core.hpp"
#include "recourse/rational.hpp"

namespace recourse {

// Path-length budget that makes the (L+2)/(L+1) guarantee meet a target
// factor t: the least L with (L+2)/(L+1) <= t.
inline int l_from_t(const Rat& t) {
    if (t <= Rat(1)) throw ConfigError("target factor must be greater than 1");
    long L = rat_ceil(Rat(1) / (t - Rat(1))) - 1;
    return static_cast<int>(std::max(0L, L));
}

inline Rat lgreedy_ratio_bound(int L) { return Rat(L + 2) / Rat(L + 1); }

// Worst-case amortized late movement per edge.
inline Rat lgreedy_amortized_bound(int L) {
    long l = L;
    return Rat(l * l + l + 1) / Rat(2 * l + 1);
}

// Maintains a matching with no augmenting path of at most 2L+1 edges.
// After each arrival it flips shortest augmenting paths, lexicographically
// smallest first, until none remain. Flips on edges revealed by the current
// event are free; flips on older edges are late.
class LGreedyMatching {
  public:
    struct Options {
        int L = 0;
        ArrivalModel model = ArrivalModel::edge;
    };

    struct EventResult {
        Rat alg{0};
        long late_ops = 0;
        Rat late_abs{0};
        long elements = 0;
        long augmentations = 0;
    };

    explicit LGreedyMatching(Options o) : opt_(std::move(o)) {
        if (opt_.L < 0) throw ConfigError("path budget must be non-negative");
        assign_.kind = ElementKind::edge;
    }

    EventResult process(const ArrivalEvent& ev) {
        int event = event_count_++;
        EventResult res;
        if (const auto* va = std::get_if<VertexArrival>(&ev)) {
            if (opt_.model != ArrivalModel::vertex)
                throw StreamError("stream event does not match the edge-arrival model");
            graph_.add_vertex(va->v);
            match_.push_back(-1);
            auto adj = va->adj;
            std::sort(adj.begin(), adj.end());
            for (VertexId u : adj) {
                graph_.add_edge(u, va->v);
                arrival_event_.push_back(event);
                ++res.elements;
            }
        } else {
            if (opt_.model != ArrivalModel::edge)
                throw StreamError("stream event does not match the vertex-arrival model");
            const auto& ea = std::get<EdgeArrival>(ev);
            graph_.ensure_vertex(ea.u);
            graph_.ensure_vertex(ea.v);
            while (static_cast<int>(match_.size()) < graph_.n()) match_.push_back(-1);
            graph_.add_edge(ea.u, ea.v);
            arrival_event_.push_back(event);
            ++res.elements;
        }
        element_count_ += res.elements;

        std::vector<int> path;
        while (find_augmenting_path(path)) {
            flip(event, path, res);
            ++res.augmentations;
        }
        res.alg = assign_.sum();
        return res;
    }

    const Graph& graph() const { return graph_; }
    const Assignment& assignment() const { return assign_; }
    const RecourseLedger& ledger() const { return ledger_; }
    long element_count() const { return element_count_; }
    Rat alg_value() const { return assign_.sum(); }
    int matching_size() const {
        int c = 0;
        for (int v = 0; v < graph_.n(); ++v)
            if (match_[v] >= 0) ++c;
        return c / 2;
    }

    // Exposed for tests: true when some augmenting path of at most 2L+1
    // edges exists for the current matching.
    bool has_short_augmenting_path() {
        std::vector<int> path;
        return find_augmenting_path(path);
    }

  private:
    // Shortest augmenting path within the budget; ties broken by the
    // lexicographically smallest vertex sequence (scanning start vertices
    // and neighbors in ascending external-id order). Fills `path` with a
    // dense vertex sequence.
    bool find_augmenting_path(std::vector<int>& path) {
        int limit = 2 * opt_.L + 1;
        std::vector<int> order(graph_.n());
        for (int i = 0; i < graph_.n(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return graph_.id_of(a) < graph_.id_of(b); });
        for (int len = 1; len <= limit; len += 2) {
            for (int s : order) {
                if (match_[s] >= 0) continue;
                path.assign(1, s);
                visited_.assign(graph_.n(), 0);
                visited_[s] = 1;
                if (extend(s, len, true, path)) return true;
                path.clear();
            }
        }
        return false;
    }

    bool extend(int v, int rem, bool unmatched_step, std::vector<int>& path) {
        if (unmatched_step) {
            for (int q : graph_.neighbors(v)) {
                if (visited_[q]) continue;
                if (assign_.value(graph_.edge_index(v, q)) != Rat(0)) continue;
                if (rem == 1) {
                    if (match_[q] >= 0) continue;
                    path.push_back(q);
                    return true;
                }
                visited_[q] = 1;
                path.push_back(q);
                if (extend(q, rem - 1, false, path)) return true;
                path.pop_back();
                visited_[q] = 0;
            }
            return false;
        }
        int q = match_[v];
        if (q < 0 || visited_[q]) return false;
        visited_[q] = 1;
        path.push_back(q);
        if (extend(q, rem - 1, true, path)) return true;
        path.pop_back();
        visited_[q] = 0;
        return false;
    }

    void flip(int event, const std::vector<int>& path, EventResult& res) {
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            int e = graph_.edge_index(path[i], path[i + 1]);
            Rat before = assign_.value(e);
            Rat after = before == Rat(0) ? Rat(1) : Rat(0);
            OpPhase phase = arrival_event_[e] == event ? OpPhase::arrival : OpPhase::late;
            ledger_.log(event, graph_.edge_element(e), before, after, phase);
            assign_.set(e, after);
            if (phase == OpPhase::late) {
                ++res.late_ops;
                res.late_abs += Rat(1);
            }
        }
        for (std::size_t i = 0; i + 1 < path.size(); i += 2) {
            match_[path[i]] = path[i + 1];
            match_[path[i + 1]] = path[i];
        }
    }

    Options opt_;
    Graph graph_;
    Assignment assign_;
    RecourseLedger ledger_;
    std::vector<int> match_;          // dense vertex -> partner or -1
    std::vector<int> arrival_event_;  // by edge index
    std::vector<char> visited_;
    int event_count_ = 0;
    long element_count_ = 0;
};

}  // namespace recourse
