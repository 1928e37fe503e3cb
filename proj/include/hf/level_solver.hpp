#pragma once

// Exact reachability over platformer game states, plus the port search
// used to certify gadget templates.
//
// The solver is a plain breadth-first search over GameStates, with two
// representation tricks that keep multi-million-state instances cheap:
// delta bit-sets are interned (states reference a small id), and the
// visited set is an open-addressing table of packed 64-bit keys. Frontier
// order and action order are fixed, so verdicts and witnesses are
// deterministic.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hf/errors.hpp"
#include "hf/platformer.hpp"

namespace hf {

struct LevelCaps {
    int grid_cells = 20000;
    uint64_t state_budget = 50'000'000;
};

struct LevelVerdict {
    bool reachable = false;
    std::optional<std::vector<Action>> witness;
    uint64_t states_explored = 0;
};

namespace detail {

constexpr Action kActionOrder[4] = {Action::Left, Action::Right, Action::Up, Action::Down};

struct DeltaHash {
    size_t operator()(const DeltaBits& d) const {
        uint64_t h = 0x9e3779b97f4a7c15ull;
        for (uint64_t w : d) {
            h ^= w;
            h *= 0x100000001b3ull;
        }
        return static_cast<size_t>(h);
    }
};

class DeltaInterner {
public:
    uint32_t intern(const DeltaBits& d) {
        auto [it, inserted] = ids_.emplace(d, static_cast<uint32_t>(pool_.size()));
        if (inserted) pool_.push_back(d);
        return it->second;
    }
    const DeltaBits& get(uint32_t id) const { return pool_[id]; }

private:
    std::vector<DeltaBits> pool_;
    std::unordered_map<DeltaBits, uint32_t, DeltaHash> ids_;
};

// pos:18 | form:1 | rise:4 | star:5 | delta_id:24
inline uint64_t pack_state(uint32_t pos, const GameState& s, uint32_t delta_id) {
    return uint64_t(pos) | (uint64_t(s.form == Form::Super) << 18) |
           (uint64_t(uint8_t(s.rise)) << 19) | (uint64_t(uint16_t(s.star)) << 23) |
           (uint64_t(delta_id) << 28);
}

// Open-addressing set of nonzero 64-bit keys.
class KeySet {
public:
    explicit KeySet(size_t initial = 1 << 16) { rehash(initial); }

    // returns true when the key was absent
    bool insert(uint64_t key) {
        ++key;  // reserve 0 as the empty slot
        if (2 * (count_ + 1) > slots_.size()) rehash(slots_.size() * 2);
        size_t i = probe(key);
        if (slots_[i] == key) return false;
        slots_[i] = key;
        ++count_;
        return true;
    }

    size_t size() const { return count_; }

private:
    size_t probe(uint64_t key) const {
        size_t mask = slots_.size() - 1;
        size_t i = (key * 0x9e3779b97f4a7c15ull) & mask;
        while (slots_[i] != 0 && slots_[i] != key) i = (i + 1) & mask;
        return i;
    }

    void rehash(size_t n) {
        std::vector<uint64_t> old = std::move(slots_);
        slots_.assign(n, 0);
        for (uint64_t k : old)
            if (k) slots_[probe(k)] = k;
    }

    std::vector<uint64_t> slots_;
    size_t count_ = 0;
};

}  // namespace detail

inline LevelVerdict solve_level(const Level& level, const LevelCaps& caps = {}) {
    if (level.width * level.height > caps.grid_cells)
        throw CapError("solve_level: grid cap exceeded");
    if (level.params.jump_budget > 15 || level.params.star_duration > 31)
        throw CapError("solve_level: params exceed packed-state limits");
    LevelView view(level);

    struct Entry {
        Cell feet;
        Form form;
        int8_t rise;
        int16_t star;
        uint32_t delta_id;
        int32_t parent;
        Action via;
    };
    detail::DeltaInterner deltas;
    std::vector<Entry> entries;
    std::deque<uint32_t> frontier;

    // Dominance-pruned visited structure: per (pos, form) an antichain of
    // (rise, star, delta). One state covers another at the same cell and
    // form when it has at least the rise and star budget, at least the
    // helpful world changes (broken bricks, used blocks) and at most the
    // consumed pickups: every move of the weaker state can be mimicked,
    // with bumps of already-spent cells skipped as no-ops. Dropping
    // covered states preserves reachability exactly while collapsing the
    // combinatorics of optional world changes.
    const DeltaBits helpful = view.helpful_mask();
    struct Mark {
        int8_t rise;
        int16_t star;
        uint32_t delta_id;
    };
    detail::KeySet exact;
    std::unordered_map<uint32_t, std::vector<Mark>> seen;
    // past this many antichain entries per cell the scan costs more than
    // the pruning saves; fall back to the exact filter alone
    constexpr size_t kChainCap = 48;

    auto covers = [&](const Mark& m, const GameState& s) {
        if (m.rise < s.rise || m.star < s.star) return false;
        const DeltaBits& a = deltas.get(m.delta_id);
        for (int w = 0; w < kDeltaWords; ++w) {
            if ((s.delta[w] & helpful[w]) & ~(a[w] & helpful[w])) return false;
            if ((a[w] & ~helpful[w]) & ~(s.delta[w] & ~helpful[w])) return false;
        }
        return true;
    };
    auto covered_by = [&](const Mark& m, const GameState& s) {
        if (s.rise < m.rise || s.star < m.star) return false;
        const DeltaBits& b = deltas.get(m.delta_id);
        for (int w = 0; w < kDeltaWords; ++w) {
            if ((b[w] & helpful[w]) & ~(s.delta[w] & helpful[w])) return false;
            if ((s.delta[w] & ~helpful[w]) & ~(b[w] & ~helpful[w])) return false;
        }
        return true;
    };

    auto pos_of = [&](Cell c) { return uint32_t(c.y * level.width + c.x); };
    // hint: most successors keep the parent's delta set, skipping the intern
    auto push = [&](const GameState& s, int32_t parent, Action via,
                    uint32_t delta_hint, const DeltaBits& hint_bits) -> int32_t {
        uint32_t did = s.delta == hint_bits ? delta_hint : deltas.intern(s.delta);
        if (!exact.insert(detail::pack_state(pos_of(s.feet), s, did))) return -1;
        uint32_t key = pos_of(s.feet) << 1 | uint32_t(s.form == Form::Super);
        std::vector<Mark>& chain = seen[key];
        for (const Mark& m : chain)
            if (covers(m, s)) return -1;
        if (chain.size() < kChainCap) {
            std::erase_if(chain, [&](const Mark& m) { return covered_by(m, s); });
            chain.push_back({s.rise, s.star, did});
        }
        entries.push_back({s.feet, s.form, s.rise, s.star, did, parent, via});
        frontier.push_back(static_cast<uint32_t>(entries.size() - 1));
        return static_cast<int32_t>(entries.size() - 1);
    };
    auto unpack = [&](const Entry& e) {
        GameState s;
        s.feet = e.feet;
        s.form = e.form;
        s.rise = e.rise;
        s.star = e.star;
        s.delta = deltas.get(e.delta_id);
        return s;
    };

    LevelVerdict verdict;
    auto finish = [&](int32_t idx) {
        std::vector<Action> path;
        for (int32_t at = idx; entries[at].parent >= 0; at = entries[at].parent)
            path.push_back(entries[at].via);
        std::reverse(path.begin(), path.end());
        verdict.reachable = true;
        verdict.witness = std::move(path);
        verdict.states_explored = entries.size();
    };

    GameState init = view.initial_state();
    int32_t idx0 = push(init, -1, Action::Left, deltas.intern(init.delta), init.delta);
    if (entries[idx0].feet == level.goal) {
        finish(idx0);
        return verdict;
    }

    while (!frontier.empty()) {
        uint32_t at = frontier.front();
        frontier.pop_front();
        const uint32_t parent_did = entries[at].delta_id;
        GameState s = unpack(entries[at]);
        for (Action a : detail::kActionOrder) {
            auto next = view.try_step(s, a);
            if (!next) continue;
            int32_t idx = push(*next, static_cast<int32_t>(at), a, parent_did, s.delta);
            if (idx < 0) continue;
            if (next->feet == level.goal) {
                finish(idx);
                return verdict;
            }
            if (entries.size() > caps.state_budget)
                throw CapError("solve_level: state budget exceeded");
        }
    }
    verdict.reachable = false;
    verdict.states_explored = entries.size();
    return verdict;
}

// Replays a witness from the initial state; throws on any illegal action.
inline GameState replay_witness(const Level& level, const std::vector<Action>& witness) {
    LevelView view(level);
    GameState s = view.initial_state();
    for (Action a : witness) s = view.step(s, a);
    return s;
}

// --- port reachability -----------------------------------------------------

// How a port search enters the template.
struct EntryClass {
    Form form = Form::Super;
    int star = 0;
    DeltaBits delta{};  // world changes already in effect
};

struct PortReport {
    // first state observed at each reached port
    std::map<std::string, GameState> reached;
    uint64_t states_explored = 0;

    bool port_reachable(const std::string& name) const { return reached.count(name) > 0; }
};

// Exhaustive search from a named port; reports every declared port
// reached. The level's ports map supplies the port cells.
inline PortReport port_reachability(const Level& level, const std::string& entry_port,
                                    const EntryClass& entry = {},
                                    uint64_t state_budget = 5'000'000) {
    auto pit = level.ports.find(entry_port);
    if (pit == level.ports.end()) throw NetError("unknown port '" + entry_port + "'");
    LevelView view(level);

    GameState s0;
    s0.feet = pit->second;
    s0.form = entry.form;
    s0.star = static_cast<int16_t>(entry.star);
    s0.rise = static_cast<int8_t>(level.params.jump_budget);
    s0.delta = entry.delta;

    PortReport report;
    std::unordered_map<GameState, bool, GameStateHash> seen;
    std::deque<GameState> frontier;

    auto visit = [&](const GameState& s) {
        for (const auto& [name, cell] : level.ports)
            if (s.feet == cell && !report.reached.count(name)) report.reached.emplace(name, s);
    };

    seen.emplace(s0, true);
    frontier.push_back(s0);
    visit(s0);
    while (!frontier.empty()) {
        GameState s = frontier.front();
        frontier.pop_front();
        for (Action a : detail::kActionOrder) {
            auto next = view.try_step(s, a);
            if (!next) continue;
            if (!seen.emplace(*next, true).second) continue;
            visit(*next);
            frontier.push_back(*next);
            if (seen.size() > state_budget)
                throw CapError("port_reachability: state budget exceeded");
        }
    }
    report.states_explored = seen.size();
    return report;
}

}  // namespace hf
