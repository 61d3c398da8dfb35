#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "recourse/rational.hpp"

namespace recourse {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Malformed instance stream (duplicate vertex, unknown neighbor, ...).
struct StreamError : Error {
    using Error::Error;
};
// Bad parameters, flags or report contents.
struct ConfigError : Error {
    using Error::Error;
};
// Instance exceeds the configured exact-solver size limit.
struct OracleLimitError : Error {
    using Error::Error;
};

using VertexId = long long;

// Identifies an assignable element: a vertex, or an edge keyed by its
// endpoint ids ordered u < v.
struct ElementId {
    bool edge = false;
    VertexId u = 0;
    VertexId v = 0;

    static ElementId vertex(VertexId id) { return ElementId{false, id, 0}; }
    static ElementId make_edge(VertexId a, VertexId b) {
        if (a == b) throw StreamError("self-loop edge " + std::to_string(a));
        if (a > b) std::swap(a, b);
        return ElementId{true, a, b};
    }
    bool operator==(const ElementId&) const = default;
    std::string str() const {
        if (!edge) return "v" + std::to_string(u);
        return "e" + std::to_string(u) + "-" + std::to_string(v);
    }
};

enum class ArrivalModel { vertex, edge };

inline std::string to_string(ArrivalModel m) {
    return m == ArrivalModel::vertex ? "vertex" : "edge";
}

// Vertex arrival: the vertex plus its edges to previously revealed vertices.
struct VertexArrival {
    VertexId v = 0;
    std::vector<VertexId> adj;
};

// Edge arrival: endpoints are revealed implicitly.
struct EdgeArrival {
    VertexId u = 0;
    VertexId v = 0;
};

using ArrivalEvent = std::variant<VertexArrival, EdgeArrival>;

struct EventStream {
    std::string label;
    ArrivalModel model = ArrivalModel::vertex;
    std::vector<ArrivalEvent> events;
};

// The revealed graph. Vertices get dense indices in arrival order; external
// ids are kept for reporting and for every lexicographic tie-break.
class Graph {
  public:
    int add_vertex(VertexId id) {
        if (index_.count(id))
            throw StreamError("duplicate vertex " + std::to_string(id));
        int idx = static_cast<int>(ids_.size());
        ids_.push_back(id);
        index_.emplace(id, idx);
        adj_.emplace_back();
        return idx;
    }

    int ensure_vertex(VertexId id) {
        auto it = index_.find(id);
        if (it != index_.end()) return it->second;
        return add_vertex(id);
    }

    // Endpoints must already be revealed. Returns the new edge index.
    int add_edge(VertexId a, VertexId b) {
        if (a == b) throw StreamError("self-loop edge " + std::to_string(a));
        auto ia = index_.find(a);
        auto ib = index_.find(b);
        if (ia == index_.end())
            throw StreamError("edge references unknown vertex " + std::to_string(a));
        if (ib == index_.end())
            throw StreamError("edge references unknown vertex " + std::to_string(b));
        int da = ia->second, db = ib->second;
        std::uint64_t key = pack(da, db);
        if (edge_index_.count(key))
            throw StreamError("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
        int e = static_cast<int>(edges_.size());
        edges_.emplace_back(std::min(da, db), std::max(da, db));
        edge_index_.emplace(key, e);
        insert_sorted(adj_[da], db);
        insert_sorted(adj_[db], da);
        return e;
    }

    void apply(const ArrivalEvent& ev, ArrivalModel model) {
        if (model == ArrivalModel::vertex) {
            const auto* va = std::get_if<VertexArrival>(&ev);
            if (!va) throw StreamError("edge event in a vertex-arrival stream");
            add_vertex(va->v);
            for (VertexId u : va->adj) {
                if (u == va->v) throw StreamError("self-loop edge " + std::to_string(u));
                add_edge(u, va->v);
            }
        } else {
            const auto* ea = std::get_if<EdgeArrival>(&ev);
            if (!ea) throw StreamError("vertex event in an edge-arrival stream");
            ensure_vertex(ea->u);
            ensure_vertex(ea->v);
            add_edge(ea->u, ea->v);
        }
    }

    int n() const { return static_cast<int>(ids_.size()); }
    int m() const { return static_cast<int>(edges_.size()); }

    VertexId id_of(int idx) const { return ids_[idx]; }
    int index_of(VertexId id) const {
        auto it = index_.find(id);
        return it == index_.end() ? -1 : it->second;
    }

    // Neighbor indices sorted by external vertex id.
    const std::vector<int>& neighbors(int idx) const { return adj_[idx]; }

    // Dense endpoints, lower arrival index first. With vertex arrivals the
    // second endpoint is always the one revealed later.
    std::pair<int, int> edge(int e) const { return edges_[e]; }

    int edge_index(int da, int db) const {
        auto it = edge_index_.find(pack(da, db));
        return it == edge_index_.end() ? -1 : it->second;
    }

    ElementId edge_element(int e) const {
        return ElementId::make_edge(ids_[edges_[e].first], ids_[edges_[e].second]);
    }

    ElementId vertex_element(int idx) const { return ElementId::vertex(ids_[idx]); }

  private:
    static std::uint64_t pack(int a, int b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    }
    void insert_sorted(std::vector<int>& list, int idx) {
        auto cmp = [this](int x, int y) { return ids_[x] < ids_[y]; };
        list.insert(std::upper_bound(list.begin(), list.end(), idx, cmp), idx);
    }

    std::vector<VertexId> ids_;
    std::unordered_map<VertexId, int> index_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
    std::unordered_map<std::uint64_t, int> edge_index_;
};

// Replays a stream, invoking fn(graph, event_index) after each event.
// Throws StreamError on malformed input.
template <class F>
Graph replay(const EventStream& s, F fn) {
    Graph g;
    for (std::size_t i = 0; i < s.events.size(); ++i) {
        g.apply(s.events[i], s.model);
        fn(static_cast<const Graph&>(g), static_cast<int>(i));
    }
    return g;
}

inline Graph replay(const EventStream& s) {
    return replay(s, [](const Graph&, int) {});
}

enum class Problem { independent_set, vertex_cover, matching };
enum class Direction { maximize, minimize };
enum class ElementKind { vertex, edge };

inline Direction direction(Problem p) {
    return p == Problem::vertex_cover ? Direction::minimize : Direction::maximize;
}
inline ElementKind element_kind(Problem p) {
    return p == Problem::matching ? ElementKind::edge : ElementKind::vertex;
}
inline std::string to_string(Problem p) {
    switch (p) {
        case Problem::independent_set: return "is";
        case Problem::vertex_cover: return "vc";
        default: return "matching";
    }
}
inline std::optional<Problem> problem_from_string(std::string_view s) {
    if (s == "is") return Problem::independent_set;
    if (s == "vc") return Problem::vertex_cover;
    if (s == "matching") return Problem::matching;
    return std::nullopt;
}

// Values per element, indexed densely (vertex index or edge index depending
// on the problem). Missing entries read as 0.
struct Assignment {
    ElementKind kind = ElementKind::vertex;
    std::vector<Rat> values;

    Rat value(int idx) const {
        if (idx < 0 || idx >= static_cast<int>(values.size())) return Rat(0);
        return values[idx];
    }
    void set(int idx, const Rat& v) {
        if (idx >= static_cast<int>(values.size())) values.resize(idx + 1, Rat(0));
        values[idx] = v;
    }
    Rat sum() const {
        Rat s(0);
        for (const auto& v : values) s += v;
        return s;
    }
};

inline bool is_zero_one(const Rat& v) { return v == Rat(0) || v == Rat(1); }

// Feasibility of an assignment on the revealed graph. The three problems
// here are 0/1; fractional values are infeasible by definition.
inline bool feasible(Problem p, const Graph& g, const Assignment& a) {
    if (element_kind(p) != a.kind) return false;
    for (const auto& v : a.values)
        if (!is_zero_one(v)) return false;
    switch (p) {
        case Problem::independent_set:
            for (int e = 0; e < g.m(); ++e) {
                auto [x, y] = g.edge(e);
                if (a.value(x) == Rat(1) && a.value(y) == Rat(1)) return false;
            }
            return true;
        case Problem::vertex_cover:
            for (int e = 0; e < g.m(); ++e) {
                auto [x, y] = g.edge(e);
                if (a.value(x) == Rat(0) && a.value(y) == Rat(0)) return false;
            }
            return true;
        case Problem::matching: {
            std::vector<int> deg(g.n(), 0);
            for (int e = 0; e < g.m(); ++e) {
                if (a.value(e) != Rat(1)) continue;
                auto [x, y] = g.edge(e);
                if (++deg[x] > 1 || ++deg[y] > 1) return false;
            }
            return true;
        }
    }
    return false;
}

// One assignment operation. Assignments made when the element arrives are
// free; everything else is late and counts toward recourse.
enum class OpPhase { arrival, late };

struct LedgerEntry {
    int event = 0;  // 0-based stream event index
    ElementId element;
    Rat before{0};
    Rat after{0};
    OpPhase phase = OpPhase::arrival;
};

enum class RecourseType { type1, type2 };

struct RecourseLedger {
    std::vector<LedgerEntry> entries;

    void log(int event, ElementId el, Rat before, Rat after, OpPhase phase) {
        entries.push_back({event, el, std::move(before), std::move(after), phase});
    }
    // Number of late operations that changed a value.
    long type1() const {
        long c = 0;
        for (const auto& e : entries)
            if (e.phase == OpPhase::late && e.before != e.after) ++c;
        return c;
    }
    // Total late value movement.
    Rat type2() const {
        Rat s(0);
        for (const auto& e : entries)
            if (e.phase == OpPhase::late) s += rat_abs(e.after - e.before);
        return s;
    }
    long late_ops_in_event(int event) const {
        long c = 0;
        for (const auto& e : entries)
            if (e.event == event && e.phase == OpPhase::late && e.before != e.after) ++c;
        return c;
    }
};

inline Rat amortized_recourse(const RecourseLedger& ledger, long element_count,
                              RecourseType type) {
    if (element_count <= 0)
        throw ConfigError("amortized recourse needs a positive element count");
    Rat total = type == RecourseType::type1 ? Rat(ledger.type1()) : ledger.type2();
    return total / Rat(element_count);
}

}  // namespace recourse
