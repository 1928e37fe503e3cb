#pragma once

// Discrete tile-grid platformer semantics.
//
// The player occupies one cell (SMALL) or two stacked cells (SUPER) and
// moves one cell per action. Jumping is a rise budget: up to J consecutive
// UP moves since last standing on solid ground. Lateral movement is free
// while airborne; gravity only acts through voluntary DOWN moves, so
// one-way passages are drops deeper than J and gadgets enforce the rest
// with walls and ceilings.
//
// World changes are monotone: bricks break (SUPER bumping them from
// below), item blocks are consumed (releasing a pickup at their mapped
// spawn cell; used blocks stay solid), pickups are taken. A star lasts S
// actions; hazards knock SUPER down to SMALL and kill SMALL.
//
// A step either succeeds or signals an illegal move leaving the state
// untouched. Effects within one move resolve hazards before pickups;
// growing via a mushroom needs free headroom, and the freed head cell's
// own effects do not apply retroactively.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hf/errors.hpp"
#include "hf/gadget_net.hpp"  // StepError

namespace hf {

struct Cell {
    int x = 0;
    int y = 0;
    auto operator<=>(const Cell&) const = default;
};

enum class TileKind : uint8_t {
    Empty,
    Solid,
    Brick,
    ItemMushroom,
    ItemStar,
    PickupMushroom,
    PickupStar,
    Hazard,
    Firebar,
    Goal,
};

inline bool is_item_block(TileKind k) {
    return k == TileKind::ItemMushroom || k == TileKind::ItemStar;
}
inline bool is_pickup(TileKind k) {
    return k == TileKind::PickupMushroom || k == TileKind::PickupStar;
}

struct LevelParams {
    int jump_budget = 4;   // J: max consecutive UP moves between supports
    int star_duration = 24;  // S: actions of invincibility per star

    bool operator==(const LevelParams&) const = default;
};

struct Level {
    int width = 0;
    int height = 0;
    std::vector<TileKind> grid;  // row-major, y * width + x
    Cell start;
    Cell goal;
    LevelParams params;
    std::map<Cell, Cell> item_spawns;      // item block -> spawn cell
    std::map<std::string, Cell> ports;     // template annotations

    bool operator==(const Level&) const = default;

    bool in_bounds(Cell c) const {
        return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
    }
    TileKind at(Cell c) const { return grid[c.y * width + c.x]; }
    TileKind& at(Cell c) { return grid[c.y * width + c.x]; }
};

enum class Form : uint8_t { Small, Super };
enum class Action : uint8_t { Left, Right, Up, Down };

inline const char* action_name(Action a) {
    switch (a) {
        case Action::Left: return "L";
        case Action::Right: return "R";
        case Action::Up: return "U";
        case Action::Down: return "D";
    }
    return "?";
}

// One bit per mutable cell (brick/item/pickup/spawn target); set = the
// cell's one-shot transition happened (broken/used/taken).
constexpr int kDeltaWords = 4;
using DeltaBits = std::array<uint64_t, kDeltaWords>;

struct GameState {
    Cell feet;
    Form form = Form::Small;
    int8_t rise = 0;
    int16_t star = 0;
    DeltaBits delta{};

    bool operator==(const GameState&) const = default;
};

struct GameStateHash {
    size_t operator()(const GameState& s) const {
        uint64_t h = 0xcbf29ce484222325ull;
        auto mix = [&h](uint64_t v) {
            h ^= v;
            h *= 0x100000001b3ull;
        };
        mix(static_cast<uint64_t>(static_cast<uint32_t>(s.feet.x)) << 32 |
            static_cast<uint32_t>(s.feet.y));
        mix(static_cast<uint64_t>(s.form) << 16 | static_cast<uint64_t>(uint8_t(s.rise)) << 8 |
            static_cast<uint16_t>(s.star));
        for (uint64_t w : s.delta) mix(w);
        return static_cast<size_t>(h);
    }
};

// Consistency problems of a Level; empty result means usable.
inline std::vector<std::string> check_level(const Level& level) {
    std::vector<std::string> problems;
    auto cell_str = [](Cell c) {
        return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
    };
    if (level.width <= 0 || level.height <= 0 ||
        static_cast<int>(level.grid.size()) != level.width * level.height) {
        problems.push_back("grid dimensions inconsistent");
        return problems;
    }
    if (!level.in_bounds(level.start)) problems.push_back("start out of bounds");
    if (!level.in_bounds(level.goal)) problems.push_back("goal out of bounds");
    else if (level.at(level.goal) != TileKind::Goal)
        problems.push_back("goal cell is not GOAL");

    std::map<Cell, TileKind> spawn_content;
    for (int y = 0; y < level.height; ++y)
        for (int x = 0; x < level.width; ++x) {
            Cell c{x, y};
            if (!is_item_block(level.at(c))) continue;
            auto it = level.item_spawns.find(c);
            Cell target;
            if (it != level.item_spawns.end()) {
                target = it->second;
            } else if (level.at(c) == TileKind::ItemMushroom) {
                target = {x, y - 1};  // mushrooms may default to the block's top neighbor
            } else {
                problems.push_back("ITEM block " + cell_str(c) + " has no spawn target");
                continue;
            }
            if (!level.in_bounds(target)) {
                problems.push_back("spawn target " + cell_str(target) + " out of bounds");
                continue;
            }
            if (level.at(target) != TileKind::Empty) {
                problems.push_back("spawn target " + cell_str(target) + " is not empty");
                continue;
            }
            TileKind content = level.at(c) == TileKind::ItemMushroom ? TileKind::PickupMushroom
                                                                     : TileKind::PickupStar;
            auto [sit, inserted] = spawn_content.emplace(target, content);
            if (!inserted && sit->second != content)
                problems.push_back("spawn target " + cell_str(target) + " has mixed contents");
        }
    for (const auto& [block, target] : level.item_spawns) {
        if (!level.in_bounds(block) || !is_item_block(level.at(block)))
            problems.push_back("item_spawns entry " + cell_str(block) + " is not an ITEM block");
        (void)target;
    }
    return problems;
}

// Immutable stepping context for one level: resolves spawn wiring and
// assigns delta-bit indices to every mutable cell. Lookup structures are
// flat grid-sized arrays; the solver leans on this being cheap.
class LevelView {
public:
    explicit LevelView(const Level& level)
        : level_(level),
          mutable_index_(level.width * level.height, -1),
          spawn_list_index_(level.width * level.height, -1) {
        auto problems = check_level(level);
        if (!problems.empty()) throw NetError("bad level: " + problems.front());

        for (int y = 0; y < level.height; ++y)
            for (int x = 0; x < level.width; ++x) {
                Cell c{x, y};
                TileKind k = level.at(c);
                if (k == TileKind::Brick || is_item_block(k) || is_pickup(k)) add_mutable(c);
                if (is_item_block(k)) {
                    Cell target = spawn_target(c);
                    add_mutable(target);
                    int32_t& li = spawn_list_index_[target.y * level.width + target.x];
                    if (li < 0) {
                        li = static_cast<int32_t>(spawn_sources_.size());
                        spawn_sources_.emplace_back();
                        spawned_content_.push_back(k == TileKind::ItemMushroom
                                                       ? TileKind::PickupMushroom
                                                       : TileKind::PickupStar);
                    }
                    spawn_sources_[li].push_back(c);
                }
            }
        if (mutable_cells_.size() > kDeltaWords * 64)
            throw CapError("level has more than " + std::to_string(kDeltaWords * 64) +
                           " mutable cells");
    }

    const Level& level() const { return level_; }
    int mutable_count() const { return static_cast<int>(mutable_cells_.size()); }

    // Bits whose being set can only ever help (broken bricks, used item
    // blocks); the remaining bits are consumed pickups, where unset is
    // the stronger position. Solvers use this split for dominance checks.
    DeltaBits helpful_mask() const {
        DeltaBits mask{};
        for (size_t i = 0; i < mutable_cells_.size(); ++i) {
            TileKind k = level_.at(mutable_cells_[i]);
            if (k == TileKind::Brick || is_item_block(k))
                mask[i >> 6] |= uint64_t{1} << (i & 63);
        }
        return mask;
    }

    Cell spawn_target(Cell block) const {
        auto it = level_.item_spawns.find(block);
        if (it != level_.item_spawns.end()) return it->second;
        return {block.x, block.y - 1};
    }

    bool delta_set(const GameState& s, Cell c) const {
        int32_t bit = mutable_index_[c.y * level_.width + c.x];
        if (bit < 0) return false;
        return (s.delta[bit >> 6] >> (bit & 63)) & 1;
    }

    bool broken(const GameState& s, Cell c) const {
        return level_.at(c) == TileKind::Brick && delta_set(s, c);
    }
    bool used(const GameState& s, Cell c) const {
        return is_item_block(level_.at(c)) && delta_set(s, c);
    }
    bool taken(const GameState& s, Cell c) const { return delta_set(s, c); }

    // Tile kind as the player currently experiences it.
    TileKind effective(const GameState& s, Cell c) const {
        if (!level_.in_bounds(c)) return TileKind::Solid;
        TileKind k = level_.at(c);
        switch (k) {
            case TileKind::Brick:
                return delta_set(s, c) ? TileKind::Empty : TileKind::Brick;
            case TileKind::PickupMushroom:
            case TileKind::PickupStar:
                return delta_set(s, c) ? TileKind::Empty : k;
            case TileKind::Empty: {
                int32_t li = spawn_list_index_[c.y * level_.width + c.x];
                if (li < 0) return TileKind::Empty;
                if (delta_set(s, c)) return TileKind::Empty;  // spawned and taken
                for (Cell block : spawn_sources_[li])
                    if (delta_set(s, block)) return spawned_content_[li];
                return TileKind::Empty;
            }
            default:
                return k;  // item blocks stay solid after use
        }
    }

    bool solid_like(const GameState& s, Cell c) const {
        if (!level_.in_bounds(c)) return true;
        TileKind k = effective(s, c);
        return k == TileKind::Solid || k == TileKind::Brick || is_item_block(k);
    }

    bool supported(const GameState& s) const {
        return solid_like(s, {s.feet.x, s.feet.y + 1});
    }

    GameState initial_state() const {
        GameState s;
        s.feet = level_.start;
        s.form = Form::Small;
        s.rise = static_cast<int8_t>(level_.params.jump_budget);
        s.star = 0;
        return s;
    }

    std::optional<GameState> try_step(const GameState& s, Action a,
                                      std::string* why = nullptr) const {
        const int h = s.form == Form::Super ? 2 : 1;
        GameState next = s;
        std::array<Cell, 2> entered_buf;
        int entered_count = 0;
        auto entered = [&](Cell c) { entered_buf[entered_count++] = c; };

        auto fail = [&](const char* msg) -> std::optional<GameState> {
            if (why) *why = msg;
            return std::nullopt;
        };
        auto enterable = [&](Cell c) -> const char* {
            TileKind k = effective(s, c);
            switch (k) {
                case TileKind::Solid: return "blocked by solid";
                case TileKind::Brick: return "blocked by brick";
                case TileKind::ItemMushroom:
                case TileKind::ItemStar: return "blocked by item block";
                case TileKind::Hazard:
                    return s.form == Form::Super ? nullptr : "hazard kills small player";
                case TileKind::Firebar:
                    return s.star > 0 ? nullptr : "firebar without a star";
                default: return nullptr;
            }
        };

        switch (a) {
            case Action::Left:
            case Action::Right: {
                int dx = a == Action::Left ? -1 : 1;
                for (int dy = 0; dy < h; ++dy) {
                    Cell c{s.feet.x + dx, s.feet.y - dy};
                    if (const char* msg = enterable(c)) return fail(msg);
                    entered(c);
                }
                next.feet.x += dx;
                break;
            }
            case Action::Down: {
                Cell below{s.feet.x, s.feet.y + 1};
                if (const char* msg = enterable(below)) return fail(msg);
                entered(below);
                next.feet.y += 1;
                break;
            }
            case Action::Up: {
                if (s.rise <= 0) return fail("rise budget exhausted");
                Cell bump{s.feet.x, s.feet.y - h};
                if (!level_.in_bounds(bump)) return fail("blocked by solid");
                TileKind k = effective(s, bump);
                if (k == TileKind::Brick) {
                    if (s.form != Form::Super) return fail("small player cannot break bricks");
                    set_delta(next, bump);  // destroyed; player stays put
                } else if (is_item_block(k)) {
                    if (delta_set(s, bump)) return fail("blocked by used item block");
                    set_delta(next, bump);  // released; pickup appears at the spawn cell
                } else if (k == TileKind::Solid) {
                    return fail("blocked by solid");
                } else {
                    if (const char* msg = enterable(bump)) return fail(msg);
                    entered(bump);
                    next.feet.y -= 1;
                }
                next.rise = static_cast<int8_t>(s.rise - 1);
                break;
            }
        }

        // hazards hurt before pickups mend
        for (int i = 0; i < entered_count; ++i)
            if (effective(s, entered_buf[i]) == TileKind::Hazard && next.form == Form::Super)
                next.form = Form::Small;
        for (int i = 0; i < entered_count; ++i) {
            Cell c = entered_buf[i];
            TileKind k = effective(s, c);
            if (!is_pickup(k)) continue;
            set_delta(next, c);
            if (k == TileKind::PickupMushroom) {
                if (next.form == Form::Small) {
                    Cell head{next.feet.x, next.feet.y - 1};
                    TileKind above = effective(next, head);
                    bool free_headroom = !(above == TileKind::Solid || above == TileKind::Brick ||
                                           is_item_block(above));
                    if (!free_headroom) return fail("no headroom to grow");
                    next.form = Form::Super;
                }
            } else {
                next.star = static_cast<int16_t>(level_.params.star_duration);
            }
        }

        if (supported(next)) next.rise = static_cast<int8_t>(level_.params.jump_budget);
        next.star = static_cast<int16_t>(std::max(next.star - 1, 0));
        return next;
    }

    GameState step(const GameState& s, Action a) const {
        std::string why;
        auto next = try_step(s, a, &why);
        if (!next) throw StepError("illegal move: " + why);
        return *next;
    }

    std::vector<Action> legal_actions(const GameState& s) const {
        std::vector<Action> out;
        for (Action a : {Action::Left, Action::Right, Action::Up, Action::Down})
            if (try_step(s, a)) out.push_back(a);
        return out;
    }

private:
    void add_mutable(Cell c) {
        int32_t& slot = mutable_index_[c.y * level_.width + c.x];
        if (slot >= 0) return;
        slot = static_cast<int32_t>(mutable_cells_.size());
        mutable_cells_.push_back(c);
    }

    void set_delta(GameState& s, Cell c) const {
        int32_t bit = mutable_index_[c.y * level_.width + c.x];
        s.delta[bit >> 6] |= uint64_t{1} << (bit & 63);
    }

    const Level& level_;
    std::vector<Cell> mutable_cells_;
    std::vector<int32_t> mutable_index_;       // grid-sized, -1 = immutable
    std::vector<int32_t> spawn_list_index_;    // grid-sized, -1 = not a target
    std::vector<std::vector<Cell>> spawn_sources_;
    std::vector<TileKind> spawned_content_;
};

}  // namespace hf
