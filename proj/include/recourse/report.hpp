#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "recourse/core.hpp"
#include "recourse/rational.hpp"

namespace recourse {

// One stream event as the run saw it. Values are exact; the JSON form keeps
// them as "p/q" strings.
struct StepRecord {
    int event = 0;
    std::string element;  // "v3", "e2-7", or "v3+2e" for an edge batch
    long elements = 0;
    Rat alg{0};
    std::optional<Rat> ref;
    std::string ratio;  // display only; verification recomputes from alg/ref
    bool switched = false;
    long late_ops = 0;
    Rat late_abs{0};
    std::optional<Rat> phi;  // cover-maintenance potential, when tracked
};

struct BoundCheck {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct RunReport {
    std::string algo;
    std::string problem;
    std::string arrival;
    std::string yardstick;
    std::string stream_label;
    std::optional<Rat> t;
    int L = -1;  // negative when unused
    bool monitor = true;
    std::vector<StepRecord> steps;
    long elements = 0;
    Rat final_alg{0};
    std::optional<Rat> final_ref;
    long late_ops_total = 0;
    Rat late_abs_total{0};
    Rat amortized{0};
    std::vector<BoundCheck> checks;
    bool all_ok = true;
};

namespace detail {

inline nlohmann::json rat_json(const Rat& r) { return to_string(r); }

inline Rat rat_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_string()) throw ConfigError(what + " must be a rational string");
    auto r = parse_rational(j.get<std::string>());
    if (!r) throw ConfigError(what + " is not a valid rational: " + j.get<std::string>());
    return *r;
}

}  // namespace detail

inline nlohmann::json report_to_json(const RunReport& r) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : r.steps) {
        nlohmann::json j{{"event", s.event},   {"element", s.element},
                         {"elements", s.elements}, {"alg", detail::rat_json(s.alg)},
                         {"ratio", s.ratio},   {"switched", s.switched},
                         {"late_ops", s.late_ops}, {"late_abs", detail::rat_json(s.late_abs)}};
        if (s.ref) j["ref"] = detail::rat_json(*s.ref);
        if (s.phi) j["phi"] = detail::rat_json(*s.phi);
        steps.push_back(std::move(j));
    }
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    nlohmann::json summary{{"algo", r.algo},
                           {"problem", r.problem},
                           {"arrival", r.arrival},
                           {"yardstick", r.yardstick},
                           {"stream", r.stream_label},
                           {"monitor", r.monitor},
                           {"elements", r.elements},
                           {"final_alg", detail::rat_json(r.final_alg)},
                           {"late_ops", r.late_ops_total},
                           {"late_abs", detail::rat_json(r.late_abs_total)},
                           {"amortized", detail::rat_json(r.amortized)},
                           {"checks", std::move(checks)},
                           {"ok", r.all_ok}};
    if (r.t) summary["t"] = detail::rat_json(*r.t);
    if (r.L >= 0) summary["L"] = r.L;
    if (r.final_ref) summary["final_ref"] = detail::rat_json(*r.final_ref);
    return nlohmann::json{{"steps", std::move(steps)}, {"summary", std::move(summary)}};
}

inline RunReport report_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("steps") || !j.contains("summary"))
        throw ConfigError("report must be an object with steps and summary");
    RunReport r;
    const auto& sm = j.at("summary");
    r.algo = sm.at("algo").get<std::string>();
    r.problem = sm.at("problem").get<std::string>();
    r.arrival = sm.at("arrival").get<std::string>();
    r.yardstick = sm.value("yardstick", std::string("exact"));
    r.stream_label = sm.value("stream", std::string());
    if (sm.contains("t")) r.t = detail::rat_from_json(sm.at("t"), "summary.t");
    r.L = sm.value("L", -1);
    r.monitor = sm.value("monitor", true);
    r.elements = sm.at("elements").get<long>();
    r.final_alg = detail::rat_from_json(sm.at("final_alg"), "summary.final_alg");
    if (sm.contains("final_ref"))
        r.final_ref = detail::rat_from_json(sm.at("final_ref"), "summary.final_ref");
    r.late_ops_total = sm.at("late_ops").get<long>();
    r.late_abs_total = detail::rat_from_json(sm.at("late_abs"), "summary.late_abs");
    r.amortized = detail::rat_from_json(sm.at("amortized"), "summary.amortized");
    r.all_ok = sm.at("ok").get<bool>();
    for (const auto& c : sm.value("checks", nlohmann::json::array()))
        r.checks.push_back({c.at("name").get<std::string>(), c.at("ok").get<bool>(),
                            c.value("detail", std::string())});
    for (const auto& js : j.at("steps")) {
        StepRecord s;
        s.event = js.at("event").get<int>();
        s.element = js.value("element", std::string());
        s.elements = js.at("elements").get<long>();
        s.alg = detail::rat_from_json(js.at("alg"), "step.alg");
        if (js.contains("ref")) s.ref = detail::rat_from_json(js.at("ref"), "step.ref");
        s.ratio = js.value("ratio", std::string());
        s.switched = js.value("switched", false);
        s.late_ops = js.at("late_ops").get<long>();
        s.late_abs = detail::rat_from_json(js.at("late_abs"), "step.late_abs");
        if (js.contains("phi")) s.phi = detail::rat_from_json(js.at("phi"), "step.phi");
        r.steps.push_back(std::move(s));
    }
    return r;
}

inline void write_report_file(const std::string& path, const RunReport& r) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write report file " + path);
    out << report_to_json(r).dump(2) << "\n";
}

inline RunReport read_report_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open report file " + path);
    try {
        nlohmann::json j;
        in >> j;
        return report_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed report JSON in " + path + ": " + e.what());
    }
}

}  // namespace recourse
