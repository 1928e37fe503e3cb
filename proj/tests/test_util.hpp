#pragma once

// Shared helpers for the test suites: a deterministic random network
// generator that respects the door-lane invariants, and a small
// independent DOT syntax checker used as the oracle for to_dot output.

#include <cctype>
#include <string>
#include <vector>

#include "hf/gadget_net.hpp"
#include "hf/random_formula.hpp"

namespace hftest {

inline hf::DoorNetwork random_network(hf::Rng& rng, int max_doors) {
    hf::DoorNetwork net;
    const int n_nodes = 2 + static_cast<int>(rng.below(7));
    for (int i = 0; i < n_nodes; ++i) net.nodes.push_back("n" + std::to_string(i));
    net.start = net.nodes.front();
    net.goal = net.nodes.back();

    auto pick_node = [&]() { return net.nodes[rng.below(net.nodes.size())]; };

    const int n_doors = static_cast<int>(rng.below(max_doors + 1));
    for (int d = 0; d < n_doors; ++d) {
        hf::Door door{"d" + std::to_string(d), rng.below(2) == 1};
        net.doors.push_back(door);
        net.edges.push_back({pick_node(), pick_node(), hf::traverse(door.id), rng.below(4) != 0});
        if (rng.below(10) < 8)
            net.edges.push_back({pick_node(), pick_node(), hf::open_lane(door.id), rng.below(4) != 0});
        if (rng.below(10) < 5)
            net.edges.push_back({pick_node(), pick_node(), hf::close_lane(door.id), rng.below(4) != 0});
    }
    const int n_plain = 1 + static_cast<int>(rng.below(6));
    for (int i = 0; i < n_plain; ++i)
        net.edges.push_back({pick_node(), pick_node(), hf::plain(), rng.below(4) != 0});
    return net;
}

// Exhaustive small-formula enumeration used by the oracle-equivalence
// suites. Clauses are canonical (sorted) literal triples over variables
// 1..n; formulas are non-decreasing clause tuples, so each pattern occurs
// once up to clause reordering.
inline std::vector<hf::Clause> all_clauses(int n) {
    std::vector<int> lits;
    for (int v = 1; v <= n; ++v) {
        lits.push_back(v);
        lits.push_back(-v);
    }
    std::vector<hf::Clause> out;
    for (size_t a = 0; a < lits.size(); ++a)
        for (size_t b = a; b < lits.size(); ++b)
            for (size_t c = b; c < lits.size(); ++c)
                out.push_back({lits[a], lits[b], lits[c]});
    return out;
}

inline std::vector<hf::Cnf> all_cnfs(int n, int max_m) {
    std::vector<hf::Clause> clauses = all_clauses(n);
    std::vector<hf::Cnf> out;
    // m = 1
    for (const auto& c : clauses) out.push_back({n, {c}});
    if (max_m >= 2)
        for (size_t i = 0; i < clauses.size(); ++i)
            for (size_t j = i; j < clauses.size(); ++j)
                out.push_back({n, {clauses[i], clauses[j]}});
    return out;
}

// Every quantifier pattern over exactly n variables.
inline std::vector<std::vector<hf::QuantifiedVar>> all_prefixes(int n) {
    std::vector<std::vector<hf::QuantifiedVar>> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<hf::QuantifiedVar> p;
        for (int v = 1; v <= n; ++v)
            p.push_back({(mask >> (v - 1)) & 1 ? hf::Quantifier::Forall : hf::Quantifier::Exists, v});
        out.push_back(p);
    }
    return out;
}

// Minimal DOT structure check, independent of the emitter: one
// digraph header, balanced braces and brackets, every statement is a
// node / edge / attr statement terminated by ';', quotes balanced.
inline bool dot_syntax_ok(const std::string& text) {
    size_t pos = text.find("digraph");
    if (pos == std::string::npos) return false;
    size_t brace = text.find('{', pos);
    if (brace == std::string::npos) return false;
    int depth = 0;
    bool in_quote = false;
    int brackets = 0;
    for (size_t i = brace; i < text.size(); ++i) {
        char c = text[i];
        if (in_quote) {
            if (c == '\\') ++i;
            else if (c == '"') in_quote = false;
            continue;
        }
        if (c == '"') in_quote = true;
        else if (c == '{') ++depth;
        else if (c == '}') { --depth; if (depth == 0) return brackets == 0 && !in_quote; }
        else if (c == '[') ++brackets;
        else if (c == ']') --brackets;
        if (depth < 0 || brackets < 0) return false;
    }
    return false;  // unbalanced
}

}  // namespace hftest
