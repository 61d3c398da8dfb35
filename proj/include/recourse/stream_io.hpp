#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "recourse/core.hpp"

namespace recourse {

// Instance files are JSON Lines, one arrival event per line:
//   vertex arrival  {"v": 4, "adj": [0, 2]}
//   edge arrival    {"e": [0, 1]}
// A stream must stick to one event shape throughout.

inline EventStream read_stream(std::istream& in, const std::string& label) {
    EventStream s;
    s.label = label;
    bool model_known = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw StreamError("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!j.is_object())
            throw StreamError("line " + std::to_string(lineno) + ": event must be an object");
        if (j.contains("v")) {
            if (model_known && s.model != ArrivalModel::vertex)
                throw StreamError("line " + std::to_string(lineno) +
                                  ": vertex event in an edge-arrival stream");
            s.model = ArrivalModel::vertex;
            model_known = true;
            VertexArrival va;
            if (!j["v"].is_number_integer())
                throw StreamError("line " + std::to_string(lineno) + ": \"v\" must be an integer");
            va.v = j["v"].get<VertexId>();
            if (j.contains("adj")) {
                if (!j["adj"].is_array())
                    throw StreamError("line " + std::to_string(lineno) + ": \"adj\" must be an array");
                for (const auto& x : j["adj"]) {
                    if (!x.is_number_integer())
                        throw StreamError("line " + std::to_string(lineno) +
                                          ": \"adj\" entries must be integers");
                    va.adj.push_back(x.get<VertexId>());
                }
            }
            s.events.emplace_back(std::move(va));
        } else if (j.contains("e")) {
            if (model_known && s.model != ArrivalModel::edge)
                throw StreamError("line " + std::to_string(lineno) +
                                  ": edge event in a vertex-arrival stream");
            s.model = ArrivalModel::edge;
            model_known = true;
            const auto& e = j["e"];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer())
                throw StreamError("line " + std::to_string(lineno) +
                                  ": \"e\" must be a pair of integers");
            s.events.emplace_back(EdgeArrival{e[0].get<VertexId>(), e[1].get<VertexId>()});
        } else {
            throw StreamError("line " + std::to_string(lineno) + ": expected \"v\" or \"e\" event");
        }
    }
    return s;
}

inline EventStream read_stream_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open instance file " + path);
    std::string label = path;
    if (auto pos = label.find_last_of('/'); pos != std::string::npos) label = label.substr(pos + 1);
    if (auto pos = label.rfind(".jsonl"); pos != std::string::npos) label = label.substr(0, pos);
    return read_stream(in, label);
}

inline void write_stream(std::ostream& out, const EventStream& s) {
    for (const auto& ev : s.events) {
        nlohmann::json j;
        if (const auto* va = std::get_if<VertexArrival>(&ev)) {
            j["v"] = va->v;
            j["adj"] = va->adj;
        } else {
            const auto& ea = std::get<EdgeArrival>(ev);
            j["e"] = {ea.u, ea.v};
        }
        out << j.dump() << "\n";
    }
}

inline std::string stream_to_string(const EventStream& s) {
    std::ostringstream os;
    write_stream(os, s);
    return os.str();
}

}  // namespace recourse
