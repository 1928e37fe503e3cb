#pragma once

// Door-gadget network model and exact reachability solver.
//
// A network is a graph whose edges carry lanes. A lane either does nothing
// (PLAIN), requires a door to be open (TRAVERSE), lets the player open a
// door if they wish (OPEN), or closes a door unconditionally (CLOSE).
// Crossings between paths are free in a graph model, so no crossover
// structure exists here; the network is the post-crossover abstraction.
//
// Door bits are packed into a word ordered by door id, and BFS expands
// edges in insertion order, so verdicts and witnesses are reproducible.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hf/errors.hpp"

namespace hf {

class NetError : public std::runtime_error {
public:
    explicit NetError(const std::string& what) : std::runtime_error(what) {}
};

class StepError : public std::runtime_error {
public:
    explicit StepError(const std::string& what) : std::runtime_error(what) {}
};

struct Door {
    std::string id;
    bool init_open = false;

    bool operator==(const Door&) const = default;
};

enum class LaneKind { Plain, Traverse, Open, Close };

struct Lane {
    LaneKind kind = LaneKind::Plain;
    std::string door;  // empty for Plain

    bool operator==(const Lane&) const = default;
};

inline Lane plain() { return {LaneKind::Plain, ""}; }
inline Lane traverse(std::string door) { return {LaneKind::Traverse, std::move(door)}; }
inline Lane open_lane(std::string door) { return {LaneKind::Open, std::move(door)}; }
inline Lane close_lane(std::string door) { return {LaneKind::Close, std::move(door)}; }

struct NetEdge {
    std::string from;
    std::string to;
    Lane lane;
    bool directed = true;

    bool operator==(const NetEdge&) const = default;
};

struct DoorNetwork {
    std::vector<std::string> nodes;
    std::vector<Door> doors;
    std::vector<NetEdge> edges;
    std::string start;
    std::string goal;

    bool operator==(const DoorNetwork&) const = default;
};

// Player location plus one open/closed bit per door (bit index = the
// door's rank in id order).
struct NetworkState {
    int node = 0;
    uint64_t open_bits = 0;

    bool operator==(const NetworkState&) const = default;
};

struct WitnessStep {
    int edge = 0;
    bool opened = false;  // choice taken on an OPEN lane

    bool operator==(const WitnessStep&) const = default;
};

struct Verdict {
    bool reachable = false;
    std::optional<std::vector<WitnessStep>> witness;
    uint64_t states_explored = 0;
};

struct NetCaps {
    int doors = 25;
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    bool ok() const { return violations.empty(); }
};

inline ValidationReport validate(const DoorNetwork& net) {
    ValidationReport rep;
    auto flag = [&rep](std::string msg) { rep.violations.push_back(std::move(msg)); };

    std::map<std::string, int> node_count;
    for (const auto& n : net.nodes) ++node_count[n];
    for (const auto& [name, cnt] : node_count)
        if (cnt > 1) flag("duplicate node id '" + name + "'");

    std::map<std::string, int> door_index;
    for (size_t i = 0; i < net.doors.size(); ++i) {
        if (door_index.count(net.doors[i].id))
            flag("duplicate door id '" + net.doors[i].id + "'");
        door_index[net.doors[i].id] = static_cast<int>(i);
    }

    if (!node_count.count(net.start)) flag("start node '" + net.start + "' missing");
    if (!node_count.count(net.goal)) flag("goal node '" + net.goal + "' missing");

    std::map<std::string, int> traverse_lanes, open_lanes, close_lanes;
    for (size_t i = 0; i < net.edges.size(); ++i) {
        const NetEdge& e = net.edges[i];
        std::string where = "edge #" + std::to_string(i) + " (" + e.from + " -> " + e.to + ")";
        if (!node_count.count(e.from)) flag(where + ": dangling endpoint '" + e.from + "'");
        if (!node_count.count(e.to)) flag(where + ": dangling endpoint '" + e.to + "'");
        if (e.lane.kind != LaneKind::Plain) {
            if (!door_index.count(e.lane.door)) {
                flag(where + ": unknown door '" + e.lane.door + "'");
                continue;
            }
            switch (e.lane.kind) {
                case LaneKind::Traverse: ++traverse_lanes[e.lane.door]; break;
                case LaneKind::Open: ++open_lanes[e.lane.door]; break;
                case LaneKind::Close: ++close_lanes[e.lane.door]; break;
                default: break;
            }
        } else if (!e.lane.door.empty()) {
            flag(where + ": PLAIN lane names a door");
        }
    }

    for (const Door& d : net.doors) {
        int t = traverse_lanes.count(d.id) ? traverse_lanes[d.id] : 0;
        int o = open_lanes.count(d.id) ? open_lanes[d.id] : 0;
        int c = close_lanes.count(d.id) ? close_lanes[d.id] : 0;
        if (t != 1)
            flag("door '" + d.id + "' has " + std::to_string(t) + " TRAVERSE lanes, wants exactly 1");
        if (o > 1) flag("door '" + d.id + "' has " + std::to_string(o) + " OPEN lanes");
        if (c > 1) flag("door '" + d.id + "' has " + std::to_string(c) + " CLOSE lanes");
        if (o == 0 && !d.init_open)
            rep.warnings.push_back("door '" + d.id + "' is permanently sealed (closed, no OPEN lane)");
    }
    return rep;
}

// Immutable lookup structure for stepping and solving one network.
class NetView {
public:
    explicit NetView(const DoorNetwork& net) : net_(net) {
        if (net.doors.size() > 64) throw NetError("more than 64 doors");
        for (size_t i = 0; i < net.nodes.size(); ++i)
            node_id_.emplace(net.nodes[i], static_cast<int>(i));
        std::vector<std::string> ids;
        for (const Door& d : net.doors) ids.push_back(d.id);
        std::sort(ids.begin(), ids.end());
        for (size_t i = 0; i < ids.size(); ++i) door_bit_.emplace(ids[i], static_cast<int>(i));
        if (!node_id_.count(net.start) || !node_id_.count(net.goal))
            throw NetError("start or goal is not a node");
    }

    const DoorNetwork& net() const { return net_; }

    int node_id(const std::string& name) const {
        auto it = node_id_.find(name);
        if (it == node_id_.end()) throw NetError("unknown node '" + name + "'");
        return it->second;
    }

    const std::string& node_name(int id) const { return net_.nodes[id]; }

    int door_bit(const std::string& id) const {
        auto it = door_bit_.find(id);
        if (it == door_bit_.end()) throw NetError("unknown door '" + id + "'");
        return it->second;
    }

    NetworkState initial_state() const {
        NetworkState s;
        s.node = node_id(net_.start);
        for (const Door& d : net_.doors)
            if (d.init_open) s.open_bits |= uint64_t{1} << door_bit(d.id);
        return s;
    }

    bool door_open(const NetworkState& s, const std::string& id) const {
        return (s.open_bits >> door_bit(id)) & 1;
    }

    // Destination node when taking `edge` from state `s`, or -1 when the
    // edge is not usable from here (not incident / wrong direction).
    int destination(const NetworkState& s, int edge) const {
        const NetEdge& e = net_.edges[edge];
        int from = node_id(e.from), to = node_id(e.to);
        if (s.node == from) return to;
        if (!e.directed && s.node == to) return from;
        return -1;
    }

    std::optional<NetworkState> try_step(const NetworkState& s, int edge,
                                         bool open_choice = true,
                                         std::string* why = nullptr) const {
        if (edge < 0 || edge >= static_cast<int>(net_.edges.size())) {
            if (why) *why = "edge index out of range";
            return std::nullopt;
        }
        const NetEdge& e = net_.edges[edge];
        int dest = destination(s, edge);
        if (dest < 0) {
            if (why)
                *why = e.directed && s.node == node_id(e.to)
                           ? "wrong direction on a directed edge"
                           : "edge not incident to current node";
            return std::nullopt;
        }
        NetworkState next = s;
        next.node = dest;
        switch (e.lane.kind) {
            case LaneKind::Plain:
                break;
            case LaneKind::Traverse:
                if (!door_open(s, e.lane.door)) {
                    if (why) *why = "door '" + e.lane.door + "' is closed";
                    return std::nullopt;
                }
                break;
            case LaneKind::Open:
                if (open_choice) next.open_bits |= uint64_t{1} << door_bit(e.lane.door);
                break;
            case LaneKind::Close:
                next.open_bits &= ~(uint64_t{1} << door_bit(e.lane.door));
                break;
        }
        return next;
    }

    NetworkState step(const NetworkState& s, int edge, bool open_choice = true) const {
        std::string why;
        auto next = try_step(s, edge, open_choice, &why);
        if (!next) throw StepError("illegal step: " + why);
        return *next;
    }

private:
    const DoorNetwork& net_;
    std::unordered_map<std::string, int> node_id_;
    std::unordered_map<std::string, int> door_bit_;
};

namespace detail {

struct NetKey {
    int node;
    uint64_t bits;
    bool operator==(const NetKey&) const = default;
};

struct NetKeyHash {
    size_t operator()(const NetKey& k) const {
        uint64_t h = k.bits * 0x9e3779b97f4a7c15ull;
        h ^= static_cast<uint64_t>(k.node) + 0x9e3779b9 + (h << 6) + (h >> 2);
        return static_cast<size_t>(h);
    }
};

// Shared BFS; `branch_open` keeps the player's open-or-skip choice as two
// successor states, greedy mode always opens.
inline Verdict net_bfs(const DoorNetwork& net, bool branch_open, const NetCaps& caps) {
    if (static_cast<int>(net.doors.size()) > caps.doors)
        throw CapError("solve_network: door cap exceeded");
    NetView view(net);
    const int goal = view.node_id(net.goal);

    struct Entry {
        NetworkState state;
        int parent;
        WitnessStep via;
    };
    std::vector<Entry> entries;
    std::unordered_map<NetKey, int, NetKeyHash> seen;
    std::deque<int> frontier;

    auto push = [&](const NetworkState& s, int parent, WitnessStep via) -> int {
        NetKey key{s.node, s.open_bits};
        if (seen.count(key)) return -1;
        int idx = static_cast<int>(entries.size());
        seen.emplace(key, idx);
        entries.push_back({s, parent, via});
        frontier.push_back(idx);
        return idx;
    };

    Verdict verdict;
    auto finish = [&](int idx) {
        std::vector<WitnessStep> path;
        for (int at = idx; entries[at].parent >= 0; at = entries[at].parent)
            path.push_back(entries[at].via);
        std::reverse(path.begin(), path.end());
        verdict.reachable = true;
        verdict.witness = std::move(path);
        verdict.states_explored = entries.size();
    };

    int idx0 = push(view.initial_state(), -1, {});
    if (entries[idx0].state.node == goal) {
        finish(idx0);
        return verdict;
    }

    while (!frontier.empty()) {
        int at = frontier.front();
        frontier.pop_front();
        NetworkState s = entries[at].state;  // copy: entries may reallocate
        for (int e = 0; e < static_cast<int>(net.edges.size()); ++e) {
            const bool is_open_lane = net.edges[e].lane.kind == LaneKind::Open;
            const bool choices[2] = {true, false};
            const int nchoices = (is_open_lane && branch_open) ? 2 : 1;
            for (int c = 0; c < nchoices; ++c) {
                auto next = view.try_step(s, e, choices[c]);
                if (!next) continue;
                int idx = push(*next, at, {e, is_open_lane && choices[c]});
                if (idx >= 0 && next->node == goal) {
                    finish(idx);
                    return verdict;
                }
            }
        }
    }
    verdict.reachable = false;
    verdict.states_explored = entries.size();
    return verdict;
}

}  // namespace detail

inline Verdict solve_network(const DoorNetwork& net, const NetCaps& caps = {}) {
    return detail::net_bfs(net, /*branch_open=*/true, caps);
}

// Same search with OPEN lanes always taken; dominance against
// solve_network is a tested property, not an assumption.
inline Verdict greedy_solve(const DoorNetwork& net, const NetCaps& caps = {}) {
    return detail::net_bfs(net, /*branch_open=*/false, caps);
}

// Replays a witness through step(); throws on any violation.
inline NetworkState replay_witness(const DoorNetwork& net,
                                   const std::vector<WitnessStep>& witness) {
    NetView view(net);
    NetworkState s = view.initial_state();
    for (const WitnessStep& w : witness) s = view.step(s, w.edge, w.opened);
    return s;
}

}  // namespace hf
