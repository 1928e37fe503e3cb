#pragma once

// Network JSON schema and GraphViz DOT export.
//
// {"kind":"network",
//  "nodes":[...],
//  "doors":[{"id":...,"init_open":...}],
//  "edges":[{"from":...,"to":...,"lane":{"kind":...,"door"?:...},"directed":...}],
//  "start":..., "goal":...,
//  "gadget_spans"?: {"Q1":[nodes...], ...}}

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hf/errors.hpp"
#include "hf/gadget_net.hpp"

namespace hf {

inline const char* lane_kind_name(LaneKind k) {
    switch (k) {
        case LaneKind::Plain: return "plain";
        case LaneKind::Traverse: return "traverse";
        case LaneKind::Open: return "open";
        case LaneKind::Close: return "close";
    }
    return "plain";
}

inline LaneKind lane_kind_from(const std::string& s) {
    if (s == "plain") return LaneKind::Plain;
    if (s == "traverse") return LaneKind::Traverse;
    if (s == "open") return LaneKind::Open;
    if (s == "close") return LaneKind::Close;
    throw ParseError("unknown lane kind '" + s + "'");
}

inline nlohmann::json network_to_json(
    const DoorNetwork& net,
    const std::map<std::string, std::vector<std::string>>* gadget_spans = nullptr) {
    nlohmann::json j;
    j["kind"] = "network";
    j["nodes"] = net.nodes;
    j["doors"] = nlohmann::json::array();
    for (const Door& d : net.doors)
        j["doors"].push_back({{"id", d.id}, {"init_open", d.init_open}});
    j["edges"] = nlohmann::json::array();
    for (const NetEdge& e : net.edges) {
        nlohmann::json lane{{"kind", lane_kind_name(e.lane.kind)}};
        if (e.lane.kind != LaneKind::Plain) lane["door"] = e.lane.door;
        j["edges"].push_back(
            {{"from", e.from}, {"to", e.to}, {"lane", lane}, {"directed", e.directed}});
    }
    j["start"] = net.start;
    j["goal"] = net.goal;
    if (gadget_spans) {
        nlohmann::json spans = nlohmann::json::object();
        for (const auto& [name, nodes] : *gadget_spans) spans[name] = nodes;
        j["gadget_spans"] = spans;
    }
    return j;
}

inline DoorNetwork network_from_json(const nlohmann::json& j) {
    try {
        if (j.at("kind").get<std::string>() != "network")
            throw ParseError("document kind is not 'network'");
        DoorNetwork net;
        net.nodes = j.at("nodes").get<std::vector<std::string>>();
        for (const auto& d : j.at("doors"))
            net.doors.push_back({d.at("id").get<std::string>(), d.at("init_open").get<bool>()});
        for (const auto& e : j.at("edges")) {
            NetEdge edge;
            edge.from = e.at("from").get<std::string>();
            edge.to = e.at("to").get<std::string>();
            edge.lane.kind = lane_kind_from(e.at("lane").at("kind").get<std::string>());
            if (edge.lane.kind != LaneKind::Plain)
                edge.lane.door = e.at("lane").at("door").get<std::string>();
            edge.directed = e.at("directed").get<bool>();
            net.edges.push_back(std::move(edge));
        }
        net.start = j.at("start").get<std::string>();
        net.goal = j.at("goal").get<std::string>();
        return net;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad network JSON: ") + e.what());
    }
}

inline std::string serialize_network(
    const DoorNetwork& net,
    const std::map<std::string, std::vector<std::string>>* gadget_spans = nullptr) {
    return network_to_json(net, gadget_spans).dump(2) + "\n";
}

inline DoorNetwork parse_network(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    return network_from_json(j);
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace detail

// Lane kinds become edge labels; door lanes are colored by the door's
// initial state (green open, red closed).
inline std::string to_dot(const DoorNetwork& net) {
    std::map<std::string, bool> init;
    for (const Door& d : net.doors) init[d.id] = d.init_open;

    std::ostringstream out;
    out << "digraph doors {\n";
    out << "  rankdir=LR;\n";
    for (const auto& n : net.nodes) {
        out << "  " << detail::dot_quote(n);
        if (n == net.start && n == net.goal)
            out << " [shape=doublecircle,label=" << detail::dot_quote(n + " (start=goal)") << "]";
        else if (n == net.start)
            out << " [shape=box,label=" << detail::dot_quote(n + " (start)") << "]";
        else if (n == net.goal)
            out << " [shape=doublecircle,label=" << detail::dot_quote(n + " (goal)") << "]";
        out << ";\n";
    }
    for (const NetEdge& e : net.edges) {
        std::string label = lane_kind_name(e.lane.kind);
        std::string color = "black";
        if (e.lane.kind != LaneKind::Plain) {
            label += " " + e.lane.door;
            if (e.lane.kind == LaneKind::Traverse)
                color = init.count(e.lane.door) && init[e.lane.door] ? "forestgreen" : "crimson";
            else if (e.lane.kind == LaneKind::Open)
                color = "steelblue";
            else
                color = "orange";
        }
        out << "  " << detail::dot_quote(e.from) << " -> " << detail::dot_quote(e.to)
            << " [label=" << detail::dot_quote(label) << ",color=" << detail::dot_quote(color);
        if (!e.directed) out << ",dir=none";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace hf
