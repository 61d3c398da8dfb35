#pragma once

#include <cstdlib>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "recourse/adversaries.hpp"
#include "recourse/core.hpp"
#include "recourse/matching.hpp"
#include "recourse/oracles.hpp"
#include "recourse/report.hpp"
#include "recourse/tas.hpp"
#include "recourse/vertexcover.hpp"

namespace recourse {

// Exact-solver size limit: explicit value, else RECOURSE_LAB_ORACLE_CAP,
// else 40.
inline int resolve_oracle_cap(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RECOURSE_LAB_ORACLE_CAP")) {
        std::string s(env);
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(s, &pos);
        } catch (...) {
            pos = 0;
        }
        if (pos != s.size() || v < 1)
            throw ConfigError("RECOURSE_LAB_ORACLE_CAP must be a positive integer, got '" + s +
                              "'");
        return static_cast<int>(std::min<long>(v, std::numeric_limits<int>::max()));
    }
    return 40;
}

struct ExperimentConfig {
    std::string algo = "tas";  // tas | lgreedy | dh | greedy-is
    Problem problem = Problem::independent_set;
    ArrivalModel arrival = ArrivalModel::vertex;
    Rat t{2};
    int L = -1;  // lgreedy path budget; derived from t when negative
    std::string yardstick = "exact";  // or "none" to skip reference values
    bool monitor = true;
    int oracle_cap = 0;  // 0 resolves from the environment
};

namespace detail {

inline std::string event_label(const ArrivalEvent& ev) {
    if (const auto* va = std::get_if<VertexArrival>(&ev)) {
        std::string s = "v" + std::to_string(va->v);
        if (!va->adj.empty()) s += "+" + std::to_string(va->adj.size()) + "e";
        return s;
    }
    const auto& ea = std::get<EdgeArrival>(ev);
    return ElementId::make_edge(ea.u, ea.v).str();
}

class CheckSet {
  public:
    void fail(const std::string& name, const std::string& detail) {
        for (auto& c : checks_)
            if (c.name == name) {
                if (c.ok) {
                    c.ok = false;
                    c.detail = detail;
                }
                return;
            }
        checks_.push_back({name, false, detail});
    }
    void ensure(const std::string& name) {
        for (auto& c : checks_)
            if (c.name == name) return;
        checks_.push_back({name, true, ""});
    }
    bool all_ok() const {
        for (const auto& c : checks_)
            if (!c.ok) return false;
        return true;
    }
    std::vector<BoundCheck> take() { return std::move(checks_); }

  private:
    std::vector<BoundCheck> checks_;
};

}  // namespace detail

inline Rat tas_amortized_bound(const Rat& t) { return (t + Rat(1)) / (t - Rat(1)); }
inline Rat tas_is_amortized_bound(const Rat& t) { return t / (t - Rat(1)); }

// Per-prefix guarantee of the cover maintainer: optimal up to a single
// optimum of one, and within a factor 2 - 2/ref beyond that.
inline bool dh_prefix_ok(const Rat& alg, const Rat& ref) {
    if (ref <= Rat(1)) return alg == ref;
    return alg <= Rat(2) * ref - Rat(2);
}

inline RunReport run_experiment(const ExperimentConfig& cfg, const EventStream& stream) {
    if (stream.model != cfg.arrival)
        throw ConfigError("stream '" + stream.label + "' uses " + to_string(stream.model) +
                          " arrivals but the run is configured for " + to_string(cfg.arrival));
    int cap = resolve_oracle_cap(cfg.oracle_cap);
    OracleCache cache;
    OracleOptions oopt{cap, &cache};

    RunReport rep;
    rep.algo = cfg.algo;
    rep.problem = to_string(cfg.problem);
    rep.arrival = to_string(cfg.arrival);
    rep.yardstick = cfg.yardstick;
    rep.stream_label = stream.label;
    rep.monitor = cfg.monitor;

    detail::CheckSet checks;
    bool want_ref = cfg.yardstick != "none";

    if (cfg.algo == "tas" || cfg.algo == "greedy-is") {
        bool switching = cfg.algo == "tas";
        if (!switching && cfg.problem != Problem::independent_set)
            throw ConfigError("greedy-is only runs independent set");
        if (!want_ref) throw ConfigError(cfg.algo + " needs a reference; yardstick "
                                                    "'none' is not usable here");
        if (cfg.yardstick != "exact")
            throw ConfigError("unknown yardstick '" + cfg.yardstick + "'");
        rep.t = cfg.t;
        TargetAndSwitch alg({cfg.problem, cfg.arrival, cfg.t,
                             make_exact_yardstick(cfg.problem, oopt), switching});
        int idx = 0;
        for (const auto& ev : stream.events) {
            auto r = alg.process(ev);
            StepRecord s;
            s.event = idx;
            s.element = detail::event_label(ev);
            s.elements = r.elements;
            s.alg = r.alg;
            s.ref = r.ref;
            s.ratio = ratio_string(r.alg, r.ref);
            s.switched = r.switched;
            s.late_ops = r.late_ops;
            s.late_abs = r.late_abs;
            rep.steps.push_back(std::move(s));
            if (cfg.monitor) {
                checks.ensure("feasible");
                if (!feasible(cfg.problem, alg.graph(), alg.assignment()))
                    checks.fail("feasible", "infeasible assignment after event " +
                                                std::to_string(idx));
                if (switching) {
                    checks.ensure("prefix-ratio");
                    if (ratio_exceeds(r.alg, r.ref, cfg.t))
                        checks.fail("prefix-ratio",
                                    "event " + std::to_string(idx) + ": alg " + to_string(r.alg) +
                                        " vs ref " + to_string(r.ref) + " breaks factor " +
                                        to_string(cfg.t));
                }
            }
            ++idx;
        }
        rep.elements = alg.element_count();
        rep.late_ops_total = alg.ledger().type1();
        rep.late_abs_total = alg.ledger().type2();
        rep.final_alg = alg.alg_value();
        if (!rep.steps.empty()) rep.final_ref = rep.steps.back().ref;
        if (cfg.monitor && switching) {
            checks.ensure("amortized");
            checks.ensure("phase");
            if (rep.elements > 0) {
                rep.amortized = rep.late_abs_total / Rat(rep.elements);
                if (rep.amortized > tas_amortized_bound(cfg.t))
                    checks.fail("amortized", "amortized " + to_string(rep.amortized) +
                                                 " exceeds " +
                                                 to_string(tas_amortized_bound(cfg.t)));
                if (cfg.problem == Problem::independent_set) {
                    checks.ensure("amortized-is");
                    if (rep.amortized > tas_is_amortized_bound(cfg.t))
                        checks.fail("amortized-is",
                                    "amortized " + to_string(rep.amortized) + " exceeds " +
                                        to_string(tas_is_amortized_bound(cfg.t)));
                }
            }
            int pi = 0;
            for (const auto& ph : alg.phases()) {
                if (ph.closed && ph.switch_recourse > tas_amortized_bound(cfg.t) * Rat(ph.elements))
                    checks.fail("phase", "phase " + std::to_string(pi) + ": movement " +
                                             to_string(ph.switch_recourse) + " exceeds bound on " +
                                             std::to_string(ph.elements) + " elements");
                ++pi;
            }
        } else if (rep.elements > 0) {
            rep.amortized = rep.late_abs_total / Rat(rep.elements);
        }
    } else if (cfg.algo == "lgreedy") {
        if (cfg.problem != Problem::matching)
            throw ConfigError("lgreedy only runs matching");
        if (want_ref && cfg.yardstick != "exact")
            throw ConfigError("unknown yardstick '" + cfg.yardstick + "'");
        int L = cfg.L >= 0 ? cfg.L : l_from_t(cfg.t);
        rep.L = L;
        Rat rbound = lgreedy_ratio_bound(L);
        LGreedyMatching alg({L, cfg.arrival});
        int idx = 0;
        for (const auto& ev : stream.events) {
            auto r = alg.process(ev);
            StepRecord s;
            s.event = idx;
            s.element = detail::event_label(ev);
            s.elements = r.elements;
            s.alg = r.alg;
            if (want_ref) s.ref = Rat(max_matching_value(alg.graph(), oopt));
            s.ratio = s.ref ? ratio_string(s.alg, *s.ref) : "";
            s.late_ops = r.late_ops;
            s.late_abs = r.late_abs;
            rep.steps.push_back(std::move(s));
            if (cfg.monitor) {
                checks.ensure("feasible");
                if (!feasible(cfg.problem, alg.graph(), alg.assignment()))
                    checks.fail("feasible", "infeasible assignment after event " +
                                                std::to_string(idx));
                if (want_ref) {
                    checks.ensure("prefix-ratio");
                    const auto& back = rep.steps.back();
                    if (ratio_exceeds(back.alg, *back.ref, rbound))
                        checks.fail("prefix-ratio",
                                    "event " + std::to_string(idx) + ": matching " +
                                        to_string(back.alg) + " vs optimum " +
                                        to_string(*back.ref) + " breaks factor " +
                                        to_string(rbound));
                }
            }
            ++idx;
        }
        rep.elements = alg.element_count();
        rep.late_ops_total = alg.ledger().type1();
        rep.late_abs_total = alg.ledger().type2();
        rep.final_alg = alg.alg_value();
        if (!rep.steps.empty()) rep.final_ref = rep.steps.back().ref;
        if (rep.elements > 0) rep.amortized = rep.late_abs_total / Rat(rep.elements);
        if (cfg.monitor) {
            checks.ensure("amortized");
            if (rep.elements > 0 && rep.amortized > lgreedy_amortized_bound(L))
                checks.fail("amortized", "amortized " + to_string(rep.amortized) + " exceeds " +
                                             to_string(lgreedy_amortized_bound(L)));
        }
    } else if (cfg.algo == "dh") {
        if (cfg.problem != Problem::vertex_cover)
            throw ConfigError("dh only runs vertex cover");
        if (cfg.arrival != ArrivalModel::vertex)
            throw ConfigError("dh takes vertex arrivals");
        if (want_ref && cfg.yardstick != "exact")
            throw ConfigError("unknown yardstick '" + cfg.yardstick + "'");
        DuoHalve alg;
        int idx = 0;
        for (const auto& ev : stream.events) {
            auto r = alg.process(ev);
            StepRecord s;
            s.event = idx;
            s.element = detail::event_label(ev);
            s.elements = r.elements;
            s.alg = r.alg;
            if (want_ref) s.ref = Rat(min_vc_value(alg.graph(), oopt));
            s.ratio = s.ref ? ratio_string(s.alg, *s.ref) : "";
            s.late_ops = r.late_ops;
            s.late_abs = r.late_abs;
            s.phi = r.phi_after;
            rep.steps.push_back(std::move(s));
            if (cfg.monitor) {
                checks.ensure("feasible");
                if (!feasible(cfg.problem, alg.graph(), alg.assignment()))
                    checks.fail("feasible", "infeasible assignment after event " +
                                                std::to_string(idx));
                checks.ensure("event-budget");
                if (!r.monitor_ok)
                    checks.fail("event-budget",
                                "event " + std::to_string(idx) + ": " +
                                    std::to_string(r.late_ops) + " late ops with potential " +
                                    to_string(r.phi_before) + " -> " + to_string(r.phi_after));
                if (want_ref) {
                    checks.ensure("prefix-ratio");
                    const auto& back = rep.steps.back();
                    if (!dh_prefix_ok(back.alg, *back.ref))
                        checks.fail("prefix-ratio", "event " + std::to_string(idx) + ": cover " +
                                                        to_string(back.alg) + " vs optimum " +
                                                        to_string(*back.ref));
                }
            }
            ++idx;
        }
        rep.elements = alg.element_count();
        rep.late_ops_total = alg.ledger().type1();
        rep.late_abs_total = alg.ledger().type2();
        rep.final_alg = alg.alg_value();
        if (!rep.steps.empty()) rep.final_ref = rep.steps.back().ref;
        if (rep.elements > 0) rep.amortized = rep.late_abs_total / Rat(rep.elements);
        if (cfg.monitor) {
            checks.ensure("amortized");
            if (rep.elements > 0 && rep.amortized > DuoHalve::recourse_bound())
                checks.fail("amortized", "amortized " + to_string(rep.amortized) + " exceeds " +
                                             to_string(DuoHalve::recourse_bound()));
            checks.ensure("shift");
            for (const auto& srec : alg.shift_records())
                if (!srec.ok)
                    checks.fail("shift", "event " + std::to_string(srec.event) +
                                             " re-oriented or re-completed the demoted edge");
        }
    } else {
        throw ConfigError("unknown algorithm '" + cfg.algo + "'");
    }

    rep.checks = checks.take();
    rep.all_ok = true;
    for (const auto& c : rep.checks) rep.all_ok = rep.all_ok && c.ok;
    return rep;
}

// Re-derives every derivable claim in a report from its per-step data:
// internal consistency of the totals plus the per-prefix and amortized
// bounds for the algorithm named in the summary. Does not re-run anything.
struct VerifyResult {
    bool ok = true;
    std::vector<BoundCheck> checks;
};

inline VerifyResult verify_report(const RunReport& r) {
    detail::CheckSet checks;
    checks.ensure("summary");
    long elements = 0, late_ops = 0;
    Rat late_abs(0);
    for (const auto& s : r.steps) {
        elements += s.elements;
        late_ops += s.late_ops;
        late_abs += s.late_abs;
    }
    if (elements != r.elements)
        checks.fail("summary", "step elements sum to " + std::to_string(elements) +
                                   ", summary says " + std::to_string(r.elements));
    if (late_ops != r.late_ops_total)
        checks.fail("summary", "step late ops sum to " + std::to_string(late_ops) +
                                   ", summary says " + std::to_string(r.late_ops_total));
    if (late_abs != r.late_abs_total)
        checks.fail("summary", "step late movement sums to " + to_string(late_abs) +
                                   ", summary says " + to_string(r.late_abs_total));
    if (!r.steps.empty() && r.steps.back().alg != r.final_alg)
        checks.fail("summary", "last step value " + to_string(r.steps.back().alg) +
                                   " differs from summary " + to_string(r.final_alg));
    if (r.elements > 0 && r.amortized != r.late_abs_total / Rat(r.elements))
        checks.fail("summary", "amortized field does not equal late movement over elements");

    auto prefix_fail = [&](int event, const Rat& alg, const Rat& ref, const std::string& why) {
        checks.fail("prefix-ratio", "event " + std::to_string(event) + ": alg " + to_string(alg) +
                                        " vs ref " + to_string(ref) + " " + why);
    };

    if (r.algo == "tas") {
        if (!r.t) {
            checks.fail("summary", "a switching run must record t");
        } else {
            Rat t = *r.t;
            checks.ensure("prefix-ratio");
            checks.ensure("phase");
            long group_elems = 0;
            for (const auto& s : r.steps) {
                if (s.ref && ratio_exceeds(s.alg, *s.ref, t))
                    prefix_fail(s.event, s.alg, *s.ref, "breaks factor " + to_string(t));
                group_elems += s.elements;
                if (s.switched) {
                    if (s.late_abs > tas_amortized_bound(t) * Rat(group_elems))
                        checks.fail("phase", "event " + std::to_string(s.event) + ": movement " +
                                                 to_string(s.late_abs) + " exceeds bound on " +
                                                 std::to_string(group_elems) + " elements");
                    group_elems = 0;
                } else if (s.late_ops != 0) {
                    checks.fail("phase", "event " + std::to_string(s.event) +
                                             " has late ops without a rebuild");
                }
            }
            checks.ensure("amortized");
            if (r.elements > 0 && r.amortized > tas_amortized_bound(t))
                checks.fail("amortized", "amortized " + to_string(r.amortized) + " exceeds " +
                                             to_string(tas_amortized_bound(t)));
            if (r.problem == "is") {
                checks.ensure("amortized-is");
                if (r.elements > 0 && r.amortized > tas_is_amortized_bound(t))
                    checks.fail("amortized-is", "amortized " + to_string(r.amortized) +
                                                    " exceeds " +
                                                    to_string(tas_is_amortized_bound(t)));
            }
        }
    } else if (r.algo == "lgreedy") {
        if (r.L < 0) {
            checks.fail("summary", "a matching run must record L");
        } else {
            Rat rbound = lgreedy_ratio_bound(r.L);
            checks.ensure("prefix-ratio");
            for (const auto& s : r.steps)
                if (s.ref && ratio_exceeds(s.alg, *s.ref, rbound))
                    prefix_fail(s.event, s.alg, *s.ref, "breaks factor " + to_string(rbound));
            checks.ensure("amortized");
            if (r.elements > 0 && r.amortized > lgreedy_amortized_bound(r.L))
                checks.fail("amortized", "amortized " + to_string(r.amortized) + " exceeds " +
                                             to_string(lgreedy_amortized_bound(r.L)));
        }
    } else if (r.algo == "dh") {
        checks.ensure("prefix-ratio");
        checks.ensure("event-budget");
        Rat prev_phi(0);
        for (const auto& s : r.steps) {
            if (s.ref && !dh_prefix_ok(s.alg, *s.ref))
                prefix_fail(s.event, s.alg, *s.ref, "outside the cover guarantee");
            if (s.phi) {
                if (Rat(s.late_ops) + (*s.phi - prev_phi) > DuoHalve::recourse_bound())
                    checks.fail("event-budget",
                                "event " + std::to_string(s.event) + ": " +
                                    std::to_string(s.late_ops) + " late ops with potential " +
                                    to_string(prev_phi) + " -> " + to_string(*s.phi));
                prev_phi = *s.phi;
            }
        }
        checks.ensure("amortized");
        if (r.elements > 0 && r.amortized > DuoHalve::recourse_bound())
            checks.fail("amortized", "amortized " + to_string(r.amortized) + " exceeds " +
                                         to_string(DuoHalve::recourse_bound()));
    } else if (r.algo != "greedy-is") {
        checks.fail("summary", "unknown algorithm '" + r.algo + "'");
    }

    VerifyResult out;
    out.checks = checks.take();
    for (const auto& c : out.checks) out.ok = out.ok && c.ok;
    return out;
}

// ---- parameter sweeps ----

struct SweepRow {
    std::string family;
    std::string param;
    std::string algo;
    long elements = 0;
    Rat late_abs{0};
    Rat amortized{0};
    std::string bound;
    std::string ratio;
    bool ok = true;
};

struct SweepConfig {
    std::string family = "bipartite-is";
    std::string algo = "tas";
    Problem problem = Problem::independent_set;
    ArrivalModel arrival = ArrivalModel::vertex;
    std::vector<Rat> t_values;  // bipartite-is
    int switches = 6;           // bipartite-is
    int max_rounds = 10;        // path, vc-gadget
    int max_k = 8;              // triangle-fan
    int count = 10;             // random: number of seeds
    int n = 12;                 // random
    long p_num = 1;             // random
    long p_den = 2;             // random
    std::uint64_t seed = 1;     // random
    Rat t{2};
    int L = -1;
    std::string yardstick = "exact";
    int oracle_cap = 0;
};

inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    std::vector<SweepRow> rows;
    auto from_report = [](const RunReport& rep, const std::string& family,
                          const std::string& param, const std::string& bound) {
        SweepRow row;
        row.family = family;
        row.param = param;
        row.algo = rep.algo;
        row.elements = rep.elements;
        row.late_abs = rep.late_abs_total;
        row.amortized = rep.amortized;
        row.bound = bound;
        if (rep.final_ref) row.ratio = ratio_string(rep.final_alg, *rep.final_ref);
        row.ok = rep.all_ok;
        return row;
    };

    if (cfg.family == "bipartite-is") {
        if (cfg.algo != "tas") throw ConfigError("the bipartite-is family sweeps tas");
        std::vector<Rat> ts = cfg.t_values;
        if (ts.empty()) ts = {cfg.t};
        for (const Rat& t : ts) {
            auto g = play_bipartite_is_adversary(t, cfg.switches);
            SweepRow row;
            row.family = cfg.family;
            row.param = "t=" + to_string(t);
            row.algo = "tas";
            row.elements = g.elements;
            row.late_abs = g.total_late;
            row.amortized = g.amortized;
            row.bound = to_string(tas_is_amortized_bound(t));
            row.ratio = ratio_string(g.final_alg, g.final_ref);
            row.ok = g.amortized <= tas_is_amortized_bound(t);
            rows.push_back(std::move(row));
        }
    } else if (cfg.family == "path") {
        if (cfg.algo != "lgreedy") throw ConfigError("the path family sweeps lgreedy");
        for (int rounds = 1; rounds <= cfg.max_rounds; ++rounds) {
            ExperimentConfig ec;
            ec.algo = "lgreedy";
            ec.problem = Problem::matching;
            ec.arrival = ArrivalModel::edge;
            ec.L = cfg.L >= 0 ? cfg.L : rounds;
            ec.yardstick = cfg.yardstick;
            ec.oracle_cap = cfg.oracle_cap;
            auto rep = run_experiment(ec, gen_matching_path(rounds));
            rows.push_back(from_report(rep, cfg.family, "rounds=" + std::to_string(rounds),
                                       to_string(lgreedy_amortized_bound(ec.L))));
        }
    } else if (cfg.family == "vc-gadget" || cfg.family == "triangle-fan") {
        if (cfg.algo != "dh") throw ConfigError("the cover families sweep dh");
        int limit = cfg.family == "vc-gadget" ? cfg.max_rounds : cfg.max_k;
        for (int p = 1; p <= limit; ++p) {
            ExperimentConfig ec;
            ec.algo = "dh";
            ec.problem = Problem::vertex_cover;
            ec.arrival = ArrivalModel::vertex;
            ec.yardstick = cfg.yardstick;
            ec.oracle_cap = cfg.oracle_cap;
            EventStream s = cfg.family == "vc-gadget" ? gen_vc_repeating_gadget(p)
                                                      : gen_vc_triangle_fan(p);
            auto rep = run_experiment(ec, s);
            std::string pname = cfg.family == "vc-gadget" ? "rounds=" : "k=";
            rows.push_back(from_report(rep, cfg.family, pname + std::to_string(p),
                                       to_string(DuoHalve::recourse_bound())));
        }
    } else if (cfg.family == "random") {
        for (int i = 0; i < cfg.count; ++i) {
            RandomStreamOptions ro;
            ro.n = cfg.n;
            ro.p_num = cfg.p_num;
            ro.p_den = cfg.p_den;
            ro.seed = cfg.seed + static_cast<std::uint64_t>(i);
            ro.model = cfg.arrival;
            ExperimentConfig ec;
            ec.algo = cfg.algo;
            ec.problem = cfg.problem;
            ec.arrival = cfg.arrival;
            ec.t = cfg.t;
            ec.L = cfg.L;
            ec.yardstick = cfg.yardstick;
            ec.oracle_cap = cfg.oracle_cap;
            auto rep = run_experiment(ec, gen_random(ro));
            std::string bound;
            if (cfg.algo == "tas")
                bound = to_string(tas_amortized_bound(cfg.t));
            else if (cfg.algo == "lgreedy")
                bound = to_string(lgreedy_amortized_bound(rep.L));
            else if (cfg.algo == "dh")
                bound = to_string(DuoHalve::recourse_bound());
            rows.push_back(from_report(rep, cfg.family,
                                       "seed=" + std::to_string(ro.seed), bound));
        }
    } else {
        throw ConfigError("unknown family '" + cfg.family + "'");
    }
    return rows;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "family,param,algo,elements,late_abs,amortized,bound,ratio,ok\n";
    for (const auto& r : rows) {
        out << r.family << ',' << r.param << ',' << r.algo << ',' << r.elements << ','
            << to_string(r.late_abs) << ',' << to_string(r.amortized) << ',' << r.bound << ','
            << r.ratio << ',' << (r.ok ? "true" : "false") << '\n';
    }
}

}  // namespace recourse
