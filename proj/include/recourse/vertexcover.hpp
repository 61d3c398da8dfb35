#pragma once

#include <algorithm>
#include <utility>
#include <variant>
#include <vector>

#include "recourse/core.hpp"
#include "recourse/rational.hpp"

namespace recourse {

struct DuoHalveEventResult {
    Rat alg{0};
    long late_ops = 0;
    Rat late_abs{0};
    bool matched = false;   // this arrival extended the matching
    long outside_accepts = 0;  // forced late accepts outside the duo scope
    Rat phi_before{0};
    Rat phi_after{0};
    bool monitor_ok = true;
    long elements = 1;
};

struct DuoHalveShiftRecord {
    int event = 0;
    bool ok = true;  // demoted duo edge stayed unchanged or went full -> half
};

struct DuoHalveMonitorRow {
    int event = 0;
    long late_ops = 0;
    Rat phi_before{0};
    Rat phi_after{0};
    bool ok = true;
};

// Online vertex cover under vertex arrivals. Grows a maximal matching by
// pairing each arrival with its smallest unmatched neighbor, keeps the two
// newest matching edges (the duo) re-optimizable, and re-assigns their four
// endpoints after every arrival so that as many duo edges as possible are
// covered by a single endpoint. Everything older is frozen except for
// forced accepts that new edges make unavoidable. Late work per arrival is
// bounded by 10/3 against the potential of the frozen region.
class DuoHalve {
  public:
    struct Options {
        // Tie order inside the re-assignment. The default prefers accepting
        // the arriving vertex; flipping it explores the other convention.
        bool prefer_accept_arriving = true;
    };

    DuoHalve() { assign_.kind = ElementKind::vertex; }
    explicit DuoHalve(Options o) : opt_(o) { assign_.kind = ElementKind::vertex; }

    DuoHalveEventResult process(const ArrivalEvent& ev) {
        int event = event_count_++;
        const auto* va = std::get_if<VertexArrival>(&ev);
        if (!va) throw StreamError("vertex cover takes vertex arrivals");

        DuoHalveEventResult res;
        res.phi_before = potential();

        graph_.apply(ev, ArrivalModel::vertex);
        int v = graph_.n() - 1;
        match_.push_back(-1);
        arrival_event_.push_back(event);

        // Pair v with its smallest unmatched revealed neighbor, if any.
        int p = -1;
        for (int q : graph_.neighbors(v)) {
            if (match_[q] >= 0) continue;
            if (p < 0 || graph_.id_of(q) < graph_.id_of(p)) p = q;
        }
        int demoted = me1_;
        bool demoted_was_half = me1_ >= 0 && edge_half(me1_);
        int demoted_accepted = -1;
        if (demoted >= 0 && demoted_was_half) {
            auto [a, b] = graph_.edge(demoted);
            demoted_accepted = accepted(a) ? a : b;
        }
        if (p >= 0) {
            int e = graph_.edge_index(p, v);
            match_[p] = v;
            match_[v] = p;
            duo_edges_.push_back(e);
            me2_ = me1_;
            me2_newer_ = me1_newer_;
            me1_ = e;
            me1_newer_ = v;
            res.matched = true;
        }

        // New edges into the frozen region: a rejected matched neighbor
        // outside the duo must be accepted, or the new edge stays uncovered
        // whenever v is rejected. These accepts are forced.
        for (int q : graph_.neighbors(v)) {
            if (in_scope(q) || match_[q] < 0) continue;
            if (assign_.value(q) == Rat(0)) {
                set_value(event, q, Rat(1), res);
                ++res.outside_accepts;
            }
        }

        rebalance_duo(event, v, res);

        if (res.matched && demoted >= 0) {
            bool ok;
            if (!demoted_was_half) {
                ok = true;  // full stays full or loses one endpoint
            } else {
                auto [a, b] = graph_.edge(demoted);
                ok = edge_half(demoted) && accepted(demoted_accepted) &&
                     (demoted_accepted == a || demoted_accepted == b);
            }
            shift_records_.push_back({event, ok});
        }

        res.phi_after = potential();
        res.alg = assign_.sum();
        Rat slack = Rat(10, 3) - Rat(res.late_ops) - (res.phi_after - res.phi_before);
        res.monitor_ok = slack >= Rat(0);
        monitor_rows_.push_back({event, res.late_ops, res.phi_before, res.phi_after,
                                 res.monitor_ok});
        return res;
    }

    const Graph& graph() const { return graph_; }
    const Assignment& assignment() const { return assign_; }
    const RecourseLedger& ledger() const { return ledger_; }
    const std::vector<DuoHalveShiftRecord>& shift_records() const { return shift_records_; }
    const std::vector<DuoHalveMonitorRow>& monitor_rows() const { return monitor_rows_; }
    int me1() const { return me1_; }
    int me2() const { return me2_; }
    long element_count() const { return graph_.n(); }
    Rat alg_value() const { return assign_.sum(); }
    static Rat recourse_bound() { return Rat(10, 3); }

    bool accepted(int idx) const { return assign_.value(idx) == Rat(1); }

    bool edge_half(int e) const {
        auto [a, b] = graph_.edge(e);
        return accepted(a) != accepted(b);
    }

    // Frozen half edges count whole, duo acceptances a third each, and a
    // re-orientable half duo tail two thirds.
    Rat potential() const {
        Rat phi(0);
        for (int e : duo_edges_)
            if (e != me1_ && e != me2_ && edge_half(e)) phi += Rat(1);
        for (int s : scope_vertices())
            if (accepted(s)) phi += Rat(1, 3);
        if (me2_ >= 0 && edge_half(me2_) && me2_orientation_free()) phi += Rat(2, 3);
        return phi;
    }

    // Post-arrival duo shape, for tests. Vertex u is the older endpoint of
    // the newest duo edge:
    //   1 u accepted, full second edge      4 u accepted, half second edge
    //   2 newer accepted, full second edge  5 newer accepted, half second edge
    //   3 everything accepted               6 both accepted, half second edge
    // 0 when fewer than two duo edges exist.
    int classify_state() const {
        if (me1_ < 0 || me2_ < 0) return 0;
        auto [a, b] = graph_.edge(me1_);
        int newer = me1_newer_;
        int older = a == newer ? b : a;
        bool oa = accepted(older), na = accepted(newer);
        bool half2 = edge_half(me2_);
        if (!half2) {
            if (oa && na) return 3;
            return oa ? 1 : 2;
        }
        if (oa && na) return 6;
        return oa ? 4 : 5;
    }

  private:
    bool in_scope(int idx) const {
        for (int s : scope_vertices())
            if (s == idx) return true;
        return false;
    }

    std::vector<int> scope_vertices() const {
        std::vector<int> out;
        for (int e : {me1_, me2_}) {
            if (e < 0) continue;
            auto [a, b] = graph_.edge(e);
            for (int x : {a, b})
                if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
        }
        return out;
    }

    void set_value(int event, int idx, const Rat& val, DuoHalveEventResult& res) {
        Rat before = assign_.value(idx);
        if (before == val) return;
        OpPhase phase = arrival_event_[idx] == event ? OpPhase::arrival : OpPhase::late;
        ledger_.log(event, graph_.vertex_element(idx), before, val, phase);
        assign_.set(idx, val);
        if (phase == OpPhase::late) {
            ++res.late_ops;
            res.late_abs += rat_abs(val - before);
        }
    }

    // A duo configuration is valid when both duo edges are covered and every
    // rejected scope vertex has all its edges covered, reading scope values
    // from the configuration and everything else from current statuses.
    bool config_valid(const std::vector<int>& scope, unsigned mask) const {
        auto conf_accepted = [&](int idx) {
            for (std::size_t i = 0; i < scope.size(); ++i)
                if (scope[i] == idx) return (mask >> i & 1u) != 0;
            return accepted(idx);
        };
        for (int e : {me1_, me2_}) {
            if (e < 0) continue;
            auto [a, b] = graph_.edge(e);
            if (!conf_accepted(a) && !conf_accepted(b)) return false;
        }
        for (std::size_t i = 0; i < scope.size(); ++i) {
            if (mask >> i & 1u) continue;
            for (int q : graph_.neighbors(scope[i]))
                if (!conf_accepted(q)) return false;
        }
        return true;
    }

    // The half second duo edge banks 2/3 of potential only while it is
    // genuinely re-orientable: each of its endpoints must be able to carry
    // the half while the newest duo edge stays half too. When testing an
    // orientation, rejected matched vertices outside the duo count as
    // available cover (a late accept can always promote them), but unmatched
    // vertices never do. A four-flip rebalance both requires this freedom
    // beforehand and burns it, which is what pays for the two extra flips.
    bool me2_orientation_free() const {
        if (me1_ < 0 || me2_ < 0) return false;
        auto [u, w] = graph_.edge(me2_);
        auto [p, v] = graph_.edge(me1_);
        auto coverable = [&](int r1, int r2) {
            for (int r : {r1, r2})
                for (int q : graph_.neighbors(r))
                    if (q == r1 || q == r2 || match_[q] < 0) return false;
            return true;
        };
        for (int keep : {u, w}) {
            int drop = keep == u ? w : u;
            if (!coverable(drop, p) && !coverable(drop, v)) return false;
        }
        return true;
    }

    void rebalance_duo(int event, int arriving, DuoHalveEventResult& res) {
        auto scope = scope_vertices();
        if (scope.empty()) return;
        unsigned count = 1u << scope.size();
        int arriving_bit = -1;
        for (std::size_t i = 0; i < scope.size(); ++i)
            if (scope[i] == arriving) arriving_bit = static_cast<int>(i);

        struct Rank {
            int half_edges;
            int late_ops;
            int me1_accepted;
            int arriving_accepted;
            std::vector<VertexId> accepted_ids;
        };
        auto rank_of = [&](unsigned mask) {
            Rank r{0, 0, 0, 0, {}};
            for (int e : {me1_, me2_}) {
                if (e < 0) continue;
                auto [a, b] = graph_.edge(e);
                bool aa = false, ba = false;
                for (std::size_t i = 0; i < scope.size(); ++i) {
                    if (scope[i] == a) aa = (mask >> i & 1u) != 0;
                    if (scope[i] == b) ba = (mask >> i & 1u) != 0;
                }
                if (aa != ba) ++r.half_edges;
            }
            for (std::size_t i = 0; i < scope.size(); ++i) {
                bool want = (mask >> i & 1u) != 0;
                if (want != accepted(scope[i]) && static_cast<int>(i) != arriving_bit)
                    ++r.late_ops;
                if (want) r.accepted_ids.push_back(graph_.id_of(scope[i]));
            }
            if (me1_ >= 0) {
                auto [a, b] = graph_.edge(me1_);
                for (std::size_t i = 0; i < scope.size(); ++i)
                    if ((scope[i] == a || scope[i] == b) && (mask >> i & 1u)) ++r.me1_accepted;
            }
            if (arriving_bit >= 0)
                r.arriving_accepted = (mask >> arriving_bit & 1u) != 0 ? 1 : 0;
            std::sort(r.accepted_ids.begin(), r.accepted_ids.end());
            return r;
        };
        auto better = [&](const Rank& x, const Rank& y) {
            if (x.half_edges != y.half_edges) return x.half_edges > y.half_edges;
            if (x.late_ops != y.late_ops) return x.late_ops < y.late_ops;
            if (x.me1_accepted != y.me1_accepted) return x.me1_accepted < y.me1_accepted;
            if (x.arriving_accepted != y.arriving_accepted)
                return opt_.prefer_accept_arriving ? x.arriving_accepted > y.arriving_accepted
                                                   : x.arriving_accepted < y.arriving_accepted;
            return std::lexicographical_compare(x.accepted_ids.begin(), x.accepted_ids.end(),
                                                y.accepted_ids.begin(), y.accepted_ids.end());
        };

        bool have = false;
        unsigned best_mask = 0;
        Rank best_rank{0, 0, 0, 0, {}};
        for (unsigned mask = 0; mask < count; ++mask) {
            if (!config_valid(scope, mask)) continue;
            Rank r = rank_of(mask);
            if (!have || better(r, best_rank)) {
                have = true;
                best_mask = mask;
                best_rank = std::move(r);
            }
        }
        if (!have) throw Error("no valid duo configuration");
        for (std::size_t i = 0; i < scope.size(); ++i)
            set_value(event, scope[i], (best_mask >> i & 1u) ? Rat(1) : Rat(0), res);
    }

    Options opt_;
    Graph graph_;
    Assignment assign_;
    RecourseLedger ledger_;
    std::vector<int> match_;          // dense vertex -> partner or -1
    std::vector<int> arrival_event_;  // by dense vertex
    std::vector<int> duo_edges_;      // all matching edges, in creation order
    std::vector<DuoHalveShiftRecord> shift_records_;
    std::vector<DuoHalveMonitorRow> monitor_rows_;
    int me1_ = -1;
    int me2_ = -1;
    int me1_newer_ = -1;
    int me2_newer_ = -1;
    int event_count_ = 0;
};

}  // namespace recourse
