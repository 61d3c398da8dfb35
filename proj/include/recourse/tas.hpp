#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "recourse/core.hpp"
#include "recourse/oracles.hpp"

namespace recourse {

// max{a/b, b/a} > t, with the empty-instance convention 0/0 = 1 and a zero
// on one side only treated as unbounded.
inline bool ratio_exceeds(const Rat& a, const Rat& b, const Rat& t) {
    if (a == b) return Rat(1) > t;
    if (a == Rat(0) || b == Rat(0)) return true;
    Rat hi = a, lo = b;
    if (hi < lo) std::swap(hi, lo);
    return hi > t * lo;
}

// The same quantity as a display string for reports.
inline std::string ratio_string(const Rat& a, const Rat& b) {
    if (a == b) return "1";
    if (a == Rat(0) || b == Rat(0)) return "inf";
    Rat hi = a, lo = b;
    if (hi < lo) std::swap(hi, lo);
    return to_string(hi / lo);
}

// One stretch between rebuilds. The element that triggers a rebuild counts
// toward the stretch it closes; its rebuild cost is charged to that stretch.
struct PhaseRecord {
    int start_event = 0;
    long elements = 0;
    Rat switch_recourse{0};  // late movement spent by the closing rebuild
    bool closed = false;
};

// Keeps a cheap greedy solution until its value drifts more than a factor t
// from the reference, then adopts the reference witness wholesale and starts
// over. Works for any problem whose objective is the sum of 0/1 element
// values and whose reference value never shrinks as the instance grows.
class TargetAndSwitch {
  public:
    struct Options {
        Problem problem = Problem::independent_set;
        ArrivalModel model = ArrivalModel::vertex;
        Rat t{2};
        Yardstick yardstick;
        // Disabled switching gives the plain greedy baseline.
        bool switching_enabled = true;
    };

    struct EventResult {
        Rat alg{0};
        Rat ref{0};
        bool switched = false;
        long late_ops = 0;   // late value changes in this event
        Rat late_abs{0};     // late absolute movement in this event
        long elements = 0;   // elements that arrived in this event
    };

    explicit TargetAndSwitch(Options o) : opt_(std::move(o)) {
        if (opt_.t <= Rat(1)) throw ConfigError("target factor must be greater than 1");
        if (!opt_.yardstick.eval) throw ConfigError("target-and-switch needs a yardstick");
        if (element_kind(opt_.problem) == ElementKind::vertex &&
            opt_.model != ArrivalModel::vertex)
            throw ConfigError("vertex problems take vertex arrivals");
        assign_.kind = element_kind(opt_.problem);
        phases_.push_back({0, 0, Rat(0), false});
    }

    EventResult process(const ArrivalEvent& ev) {
        int event = event_count_++;
        EventResult res;
        if (opt_.problem == Problem::matching) {
            process_matching_event(event, ev, res);
        } else {
            const auto* va = std::get_if<VertexArrival>(&ev);
            if (!va) throw StreamError("vertex problems take vertex arrivals");
            graph_.apply(ev, ArrivalModel::vertex);
            handle_element(event, graph_.n() - 1, res);
        }
        if (res.elements == 0) res.ref = opt_.yardstick.eval(graph_, false).value;
        res.alg = alg_sum_;
        return res;
    }

    const Graph& graph() const { return graph_; }
    const Assignment& assignment() const { return assign_; }
    const RecourseLedger& ledger() const { return ledger_; }
    const std::vector<PhaseRecord>& phases() const { return phases_; }
    int switches() const { return switches_; }
    long element_count() const { return element_count_; }
    Rat alg_value() const { return alg_sum_; }

  private:
    void process_matching_event(int event, const ArrivalEvent& ev, EventResult& res) {
        if (const auto* va = std::get_if<VertexArrival>(&ev)) {
            if (opt_.model != ArrivalModel::vertex)
                throw StreamError("stream event does not match the edge-arrival model");
            graph_.add_vertex(va->v);
            auto adj = va->adj;
            std::sort(adj.begin(), adj.end());
            for (VertexId u : adj) {
                int e = graph_.add_edge(u, va->v);
                handle_element(event, e, res);
            }
        } else {
            if (opt_.model != ArrivalModel::edge)
                throw StreamError("stream event does not match the vertex-arrival model");
            const auto& ea = std::get<EdgeArrival>(ev);
            graph_.ensure_vertex(ea.u);
            graph_.ensure_vertex(ea.v);
            int e = graph_.add_edge(ea.u, ea.v);
            handle_element(event, e, res);
        }
    }

    // idx is a dense vertex index for vertex problems, an edge index for
    // matching. The graph already contains the element.
    void handle_element(int event, int idx, EventResult& res) {
        ++res.elements;
        ++element_count_;
        arrival_event_.push_back(event);
        ++phases_.back().elements;

        Rat g = greedy_value(idx);
        Rat prospective = alg_sum_ + g;
        YardstickResult yr = opt_.yardstick.eval(graph_, false);
        res.ref = yr.value;

        if (opt_.switching_enabled && ratio_exceeds(prospective, yr.value, opt_.t)) {
            YardstickResult w = opt_.yardstick.eval(graph_, true);
            if (!w.witness) throw ConfigError("yardstick produced no witness for a rebuild");
            adopt_witness(event, *w.witness, res);
            res.ref = w.value;
            res.switched = true;
            ++switches_;
            phases_.push_back({event, 0, Rat(0), false});
            return;
        }
        if (g != Rat(0)) {
            ledger_.log(event, element_id(idx), assign_.value(idx), g, OpPhase::arrival);
            assign_.set(idx, g);
            alg_sum_ += g;
        }
    }

    Rat greedy_value(int idx) const {
        switch (opt_.problem) {
            case Problem::independent_set:
                for (int q : graph_.neighbors(idx))
                    if (assign_.value(q) == Rat(1)) return Rat(0);
                return Rat(1);
            case Problem::vertex_cover:
                for (int q : graph_.neighbors(idx))
                    if (assign_.value(q) == Rat(0)) return Rat(1);
                return Rat(0);
            case Problem::matching: {
                auto [x, y] = graph_.edge(idx);
                return vertex_free(x) && vertex_free(y) ? Rat(1) : Rat(0);
            }
        }
        return Rat(0);
    }

    bool vertex_free(int v) const {
        for (int q : graph_.neighbors(v)) {
            int e = graph_.edge_index(v, q);
            if (e >= 0 && assign_.value(e) == Rat(1)) return false;
        }
        return true;
    }

    ElementId element_id(int idx) const {
        return assign_.kind == ElementKind::vertex ? graph_.vertex_element(idx)
                                                   : graph_.edge_element(idx);
    }

    void adopt_witness(int event, const std::vector<int>& witness, EventResult& res) {
        long domain = assign_.kind == ElementKind::vertex ? graph_.n() : graph_.m();
        std::vector<char> take(domain, 0);
        for (int w : witness) take[w] = 1;
        Rat moved(0);
        for (int i = 0; i < domain; ++i) {
            Rat before = assign_.value(i);
            Rat after = take[i] ? Rat(1) : Rat(0);
            if (before == after) continue;
            OpPhase phase = arrival_event_[i] == event ? OpPhase::arrival : OpPhase::late;
            ledger_.log(event, element_id(i), before, after, phase);
            assign_.set(i, after);
            if (phase == OpPhase::late) {
                ++res.late_ops;
                Rat d = rat_abs(after - before);
                res.late_abs += d;
                moved += d;
            }
        }
        phases_.back().switch_recourse = moved;
        phases_.back().closed = true;
        alg_sum_ = assign_.sum();
    }

    Options opt_;
    Graph graph_;
    Assignment assign_;
    RecourseLedger ledger_;
    std::vector<PhaseRecord> phases_;
    std::vector<int> arrival_event_;  // by element index
    Rat alg_sum_{0};
    int event_count_ = 0;
    int switches_ = 0;
    long element_count_ = 0;
};

}  // namespace recourse
