#pragma once

// Translates a quantified Boolean formula into a door network whose goal
// is reachable iff the formula is true.
//
// Shape of the compiled network:
//
//   start = top-left of Q1.  The top path chains Q1..Qn, then the clause
//   row C1..Cm.  The clause-row exit feeds the bottom-right of Qn, the
//   bottom path chains right-to-left through the quantifiers, and the
//   bottom-left exit of Q1 is the goal.
//
//   Each clause is three parallel TRAVERSE lanes, one per literal
//   occurrence door.  An existential quantifier forks into a TRUE and a
//   FALSE branch; each branch opens its own guard door, closes the rival
//   guard, then sets every occurrence door of its variable.  A universal
//   quantifier sets its variable true on the way in and uses doors a/d to
//   meter the two backtracking passes; door c makes the exit one-way.
//
// Every gadget-internal door starts closed.  The edge feeding TRAVERSE(c)
// carries OPEN(c): the figure this gadget reconstructs gives c no other
// operator, and a closed c would seal the gadget.
//
// Occurrence doors all start closed; whichever branch/pass runs first
// assigns them. All edges are directed.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "hf/formula.hpp"
#include "hf/gadget_net.hpp"

namespace hf {

struct OccDoor {
    int clause = 0;  // 1-based clause index
    int slot = 0;    // 1-based slot within the clause
    std::string door;

    bool operator==(const OccDoor&) const = default;
};

// Per variable: occurrence doors in clause order, split by polarity.
struct OccurrenceIndex {
    std::map<int, std::vector<OccDoor>> positive;
    std::map<int, std::vector<OccDoor>> negative;

    const std::vector<OccDoor>& pos(int var) const { return at(positive, var); }
    const std::vector<OccDoor>& neg(int var) const { return at(negative, var); }

private:
    static const std::vector<OccDoor>& at(const std::map<int, std::vector<OccDoor>>& m, int var) {
        static const std::vector<OccDoor> empty;
        auto it = m.find(var);
        return it == m.end() ? empty : it->second;
    }
};

struct CompiledQbf {
    DoorNetwork network;
    OccurrenceIndex occ;
    std::map<std::string, std::vector<std::string>> gadget_spans;
};

struct DoorCensus {
    int occurrence = 0;
    int existential = 0;
    int universal = 0;

    int total() const { return occurrence + existential + universal; }
};

inline DoorCensus door_census(const Qbf& q) {
    DoorCensus c;
    c.occurrence = 3 * static_cast<int>(q.matrix.clauses.size());
    for (const QuantifiedVar& qv : q.prefix)
        (qv.q == Quantifier::Exists ? c.existential : c.universal) +=
            qv.q == Quantifier::Exists ? 2 : 3;
    return c;
}

// Incrementally assembles a network; records which nodes belong to which
// gadget so tests can audit the construction.
class QbfNetBuilder {
public:
    DoorNetwork net;
    std::map<std::string, std::vector<std::string>> spans;

    std::string add_node(const std::string& gadget, const std::string& name) {
        net.nodes.push_back(name);
        if (!gadget.empty()) spans[gadget].push_back(name);
        return name;
    }

    void add_door(const std::string& id, bool init_open = false) {
        net.doors.push_back({id, init_open});
    }

    void add_edge(const std::string& from, const std::string& to, Lane lane) {
        net.edges.push_back({from, to, std::move(lane), /*directed=*/true});
    }

    // Directed path from `from` through `lanes`, materializing fresh
    // interior nodes named `<stem>0`, `<stem>1`, ...; returns the last node.
    std::string add_path(const std::string& gadget, const std::string& from,
                         const std::vector<Lane>& lanes, const std::string& stem) {
        std::string at = from;
        for (size_t i = 0; i < lanes.size(); ++i) {
            std::string next = add_node(gadget, stem + std::to_string(i));
            add_edge(at, next, lanes[i]);
            at = next;
        }
        return at;
    }

    struct QuantifierPorts {
        std::string top_in, top_out, bottom_in, bottom_out;
    };

    QuantifierPorts add_existential(int qi, const std::vector<std::string>& pos_doors,
                                    const std::vector<std::string>& neg_doors) {
        const std::string g = "Q" + std::to_string(qi);
        const std::string a = g + "_a", b = g + "_b";
        add_door(a);
        add_door(b);

        QuantifierPorts p;
        p.top_in = add_node(g, g + "_in");
        std::string fork = add_node(g, g + "_fork");
        add_edge(p.top_in, fork, plain());

        std::vector<Lane> true_lanes{open_lane(a), close_lane(b)};
        for (const auto& d : pos_doors) true_lanes.push_back(open_lane(d));
        for (const auto& d : neg_doors) true_lanes.push_back(close_lane(d));
        true_lanes.push_back(traverse(a));
        std::string t_end = add_path(g, fork, true_lanes, g + "_t");

        std::vector<Lane> false_lanes{open_lane(b), close_lane(a)};
        for (const auto& d : pos_doors) false_lanes.push_back(close_lane(d));
        for (const auto& d : neg_doors) false_lanes.push_back(open_lane(d));
        false_lanes.push_back(traverse(b));
        std::string f_end = add_path(g, fork, false_lanes, g + "_f");

        p.top_out = add_node(g, g + "_out");
        add_edge(t_end, p.top_out, plain());
        add_edge(f_end, p.top_out, plain());

        // lower part: a straight right-to-left path
        p.bottom_in = add_node(g, g + "_bin");
        p.bottom_out = add_node(g, g + "_bout");
        add_edge(p.bottom_in, p.bottom_out, plain());
        return p;
    }

    QuantifierPorts add_universal(int qi, const std::vector<std::string>& pos_doors,
                                  const std::vector<std::string>& neg_doors) {
        const std::string g = "Q" + std::to_string(qi);
        const std::string a = g + "_a", c = g + "_c", d = g + "_d";
        add_door(a);
        add_door(c);
        add_door(d);

        QuantifierPorts p;
        p.top_in = add_node(g, g + "_in");

        // entry: open a (arming the first backtrack), close d, set var true
        std::vector<Lane> entry_lanes{open_lane(a), close_lane(d)};
        for (const auto& dd : pos_doors) entry_lanes.push_back(open_lane(dd));
        for (const auto& dd : neg_doors) entry_lanes.push_back(close_lane(dd));
        std::string merge = add_node(g, g + "_merge");
        std::string entry_end = add_path(g, p.top_in, entry_lanes, g + "_s");
        add_edge(entry_end, merge, plain());

        // shared exit; c has no closer anywhere, so it is opened in place
        std::vector<Lane> exit_lanes{open_lane(c), traverse(c)};
        std::string exit_end = add_path(g, merge, exit_lanes, g + "_x");
        p.top_out = add_node(g, g + "_out");
        add_edge(exit_end, p.top_out, plain());

        p.bottom_in = add_node(g, g + "_bin");
        p.bottom_out = add_node(g, g + "_bout");

        // upper fork of the backtrack entrance: only live while d is
        // closed; sets var false, opens d, disarms itself by closing a
        std::vector<Lane> upper_lanes{traverse(a)};
        for (const auto& dd : pos_doors) upper_lanes.push_back(close_lane(dd));
        for (const auto& dd : neg_doors) upper_lanes.push_back(open_lane(dd));
        upper_lanes.push_back(open_lane(d));
        upper_lanes.push_back(close_lane(a));
        std::string upper_end = add_path(g, p.bottom_in, upper_lanes, g + "_u");
        add_edge(upper_end, merge, plain());

        // lower fork: exits once both values have been tested
        add_edge(p.bottom_in, p.bottom_out, traverse(d));
        return p;
    }

    // entry fans out to three parallel TRAVERSE lanes joining at the exit
    std::pair<std::string, std::string> add_clause(int cj, const std::array<std::string, 3>& doors) {
        const std::string g = "C" + std::to_string(cj);
        std::string in = add_node(g, g + "_in");
        std::string out = add_node(g, g + "_out");
        for (const auto& d : doors) add_edge(in, out, traverse(d));
        return {in, out};
    }
};

inline CompiledQbf compile_qbf(const Qbf& q) {
    check_qbf(q);
    CompiledQbf out;
    QbfNetBuilder b;

    if (q.prefix.empty()) {
        // no quantifiers implies no clauses (free variables are rejected),
        // so the network degenerates to a single node
        b.add_node("", "s");
        b.net.start = b.net.goal = "s";
        out.network = std::move(b.net);
        return out;
    }

    // occurrence doors, one per matrix slot, all initially closed
    std::map<int, int> pos_counter, neg_counter;
    std::vector<std::array<std::string, 3>> clause_doors(q.matrix.clauses.size());
    for (size_t j = 0; j < q.matrix.clauses.size(); ++j) {
        for (int s = 0; s < 3; ++s) {
            Lit l = q.matrix.clauses[j][s];
            int v = var_of(l);
            std::string id;
            if (is_pos(l)) {
                id = "x" + std::to_string(v) + "_" + std::to_string(++pos_counter[v]);
                out.occ.positive[v].push_back({static_cast<int>(j + 1), s + 1, id});
            } else {
                id = "nx" + std::to_string(v) + "_" + std::to_string(++neg_counter[v]);
                out.occ.negative[v].push_back({static_cast<int>(j + 1), s + 1, id});
            }
            b.add_door(id, /*init_open=*/false);
            clause_doors[j][s] = id;
        }
    }

    auto doors_of = [](const std::vector<OccDoor>& v) {
        std::vector<std::string> ids;
        for (const OccDoor& o : v) ids.push_back(o.door);
        return ids;
    };

    std::vector<QbfNetBuilder::QuantifierPorts> ports;
    for (size_t i = 0; i < q.prefix.size(); ++i) {
        const QuantifiedVar& qv = q.prefix[i];
        auto pos = doors_of(out.occ.pos(qv.var));
        auto neg = doors_of(out.occ.neg(qv.var));
        ports.push_back(qv.q == Quantifier::Exists
                            ? b.add_existential(static_cast<int>(i + 1), pos, neg)
                            : b.add_universal(static_cast<int>(i + 1), pos, neg));
    }

    // top path: Q1..Qn then the clause row, one-way left to right
    for (size_t i = 0; i + 1 < ports.size(); ++i)
        b.add_edge(ports[i].top_out, ports[i + 1].top_in, plain());
    std::string row_tail = ports.back().top_out;
    for (size_t j = 0; j < q.matrix.clauses.size(); ++j) {
        auto [in, outn] = b.add_clause(static_cast<int>(j + 1), clause_doors[j]);
        b.add_edge(row_tail, in, plain());
        row_tail = outn;
    }

    // the row exit feeds the bottom-right of Qn; the bottom path walks
    // back right-to-left; the bottom-left of Q1 is the goal
    b.add_edge(row_tail, ports.back().bottom_in, plain());
    for (size_t i = ports.size(); i-- > 1;)
        b.add_edge(ports[i].bottom_out, ports[i - 1].bottom_in, plain());

    b.net.start = ports.front().top_in;
    b.net.goal = ports.front().bottom_out;

    ValidationReport rep = validate(b.net);
    if (!rep.ok()) throw NetError("compile_qbf produced an invalid network: " + rep.violations[0]);

    out.network = std::move(b.net);
    out.gadget_spans = std::move(b.spans);
    return out;
}

}  // namespace hf
