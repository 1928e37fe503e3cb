#pragma once

// Compiles a 3-CNF into a platformer level that is solvable iff the
// formula is satisfiable.
//
// Gadget inventory (see sat_plan.hpp for the global layout):
//
//   start    mushroom block next to the start cell; the finish plug brick
//            is what makes skipping it fatal.
//   variable a choice corridor whose floor has two one-way drop gaps.
//   lane     per (clause, literal-of-the-clause) vertical shaft from the
//            literal's track up to a pocket; the pocket's star block
//            spawns into the clause's check segment. Entry is a one-way
//            pit; the shaft descends one pit depth, so the track resumes
//            lower after the visit.
//   crossing where a lane cuts through another literal's track: the
//            track squeezes through a one-tall corridor (hazard on the
//            approach side, mushroom block on the exit side restores the
//            big form), while the shaft passes vertically behind brick
//            baffles only the climbing player can break.
//   check    per clause: padding, the spawn cell, then a firebar run.
//   finish   a brick plug under the goal; only the big form breaks it.
//
// Climbing idiom used by shafts: column A carries solid steps, column B
// is the through column holding the brick gates; a support step every
// three rows keeps the climb within the rise budget, and the descent
// falls down column B jogging around the occasional B-side step.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "hf/errors.hpp"
#include "hf/level_io.hpp"
#include "hf/level_solver.hpp"
#include "hf/platformer.hpp"
#include "hf/sat_plan.hpp"

namespace hf {

struct GadgetTemplate {
    std::string name;
    Level level;  // carries the port annotations
};

struct CompiledCnf {
    Level level;
    LayoutPlan plan;
    std::map<std::string, std::array<int, 4>> gadget_spans;  // name -> x0,y0,x1,y1
};

namespace satgen {

// Thin carving layer over an all-solid canvas.
class Canvas {
public:
    Canvas(int width, int height) {
        level_.width = width;
        level_.height = height;
        level_.grid.assign(width * height, TileKind::Solid);
    }

    Level& level() { return level_; }

    void set(int x, int y, TileKind k) {
        if (x < 0 || x >= level_.width || y < 0 || y >= level_.height)
            throw NetError("carve out of bounds at (" + std::to_string(x) + "," +
                           std::to_string(y) + ")");
        level_.at({x, y}) = k;
    }

    void open(int x, int y) { set(x, y, TileKind::Empty); }

    void open_rect(int x0, int y0, int x1, int y1) {
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) open(x, y);
    }

    // 2-tall corridor with feet row `feet`
    void corridor(int x0, int x1, int feet) { open_rect(x0, feet - 1, x1, feet); }

    void item(int x, int y, TileKind kind, Cell spawn) {
        set(x, y, kind);
        level_.item_spawns[{x, y}] = spawn;
    }

private:
    Level level_;
};

// --- lane shaft pieces -------------------------------------------------

// Crossing unit: the lane (columns a, a+1) cutting the track whose feet
// row is `row`. `track_rightward` orients the hazard/mushroom pair.
inline void stamp_crossing(Canvas& cv, int a, int row, bool track_rightward) {
    const int b = a + 1;
    // vertical: brick gates in column B, steps guarding the corridor rows
    cv.open_rect(a, row - 3, b, row + 5);
    cv.set(b, row - 3, TileKind::Brick);
    cv.set(a, row - 2, TileKind::Solid);
    cv.set(a, row + 1, TileKind::Solid);
    cv.set(b, row + 2, TileKind::Brick);
    cv.set(b, row + 5, TileKind::Solid);

    // horizontal: approach, hazard, squeeze, mushroom reload, exit. The
    // mushroom sits in the corridor itself: stepping on it is forced, so
    // the search never branches on a bump-or-skip choice here.
    int haz = track_rightward ? a - 3 : b + 3;
    int sq1 = track_rightward ? a - 2 : b + 2;
    int sq2 = track_rightward ? a - 1 : b + 1;
    int sq3 = track_rightward ? b + 1 : a - 1;
    int sq4 = track_rightward ? b + 2 : a - 2;
    int pick = track_rightward ? b + 3 : a - 3;
    int approach = track_rightward ? a - 4 : b + 4;

    cv.open(approach, row - 1);
    cv.open(approach, row);
    cv.open(haz, row - 1);
    cv.set(haz, row, TileKind::Hazard);
    cv.open(sq1, row);  // head row stays solid: one-tall squeeze
    cv.open(sq2, row);
    cv.open(sq3, row);
    cv.open(sq4, row);
    cv.set(pick, row, TileKind::PickupMushroom);
    cv.open(pick, row - 1);
}

// One-way pit entering a lane: the track ends, drops into the pit, and
// resumes one pit depth lower past a firebar gate. The gate's star spawns
// only at the lane's pocket, so the only way forward is up the shaft and
// back; it also burns out after one pass, making the chamber one-shot.
inline void stamp_lane_pit(Canvas& cv, int a, int row, bool track_rightward) {
    const int b = a + 1;
    int drop = track_rightward ? a - 2 : b + 2;  // track-end cell with the hole
    int wall = track_rightward ? a - 1 : b + 1;  // seals the drop from the shaft

    cv.open(drop, row - 1);
    cv.open(drop, row);
    cv.open_rect(drop, row + 1, drop, row + 4);  // the drop itself
    for (int y = row - 1; y <= row + 4; ++y) cv.set(wall, y, TileKind::Solid);

    cv.open_rect(a, row - 2, b, row + 4);  // shaft through the track rows
    cv.set(a, row - 1, TileKind::Solid);   // climb step
    cv.set(a, row + 3, TileKind::Solid);   // climb step

    // chamber with the gate on the forward side; six firebar columns so a
    // residual star from the previous lane's gate dies before clearing it
    int dir = track_rightward ? 1 : -1;
    int gate = track_rightward ? b + 1 : a - 1;
    int left = track_rightward ? drop : a - 7;
    int right = track_rightward ? b + 7 : drop;
    cv.open_rect(left, row + 5, right, row + 6);
    for (int k = 1; k <= 6; ++k) {
        cv.set(gate + dir * k, row + 5, TileKind::Firebar);
        cv.set(gate + dir * k, row + 6, TileKind::Firebar);
    }
}

inline Cell lane_gate_spawn(int a, int row, bool track_rightward) {
    return track_rightward ? Cell{a + 2, row + 6} : Cell{a - 1, row + 6};
}

// Pocket at the top of a lane: two star blocks overhead, one spawning
// into the clause's check segment, one arming the pit's exit gate.
inline void stamp_pocket(Canvas& cv, int a, int block_row, Cell check_spawn, Cell gate_spawn) {
    const int b = a + 1;
    cv.item(a, block_row, TileKind::ItemStar, check_spawn);
    cv.item(b, block_row, TileKind::ItemStar, gate_spawn);
    cv.open_rect(a, block_row + 1, b, block_row + 2);
    cv.open(b, block_row + 3);  // shaft mouth; (a, block_row+3) stays solid: floor
}

// --- whole-lane stamp ----------------------------------------------------

struct LaneCrossing {
    int row = 0;
    bool track_rightward = true;
};

// Shaft from the pit below `base_row` up to the pocket, with a crossing
// unit at each crossed track row and filler steps in between.
//
// Support-step arithmetic, all in column A with the through column B kept
// clear: consecutive steps at most 3 rows apart keep the climb inside the
// rise budget; a crossing unit wants a step at row R+8 and leaves one at
// R-2; the pocket wants one at block_row+7.
inline void stamp_lane(Canvas& cv, int a, int base_row, bool owner_rightward,
                       const std::vector<LaneCrossing>& crossings_bottom_up,
                       int pocket_block_row, Cell spawn) {
    const int b = a + 1;
    stamp_lane_pit(cv, a, base_row, owner_rightward);
    stamp_pocket(cv, a, pocket_block_row, spawn,
                 lane_gate_spawn(a, base_row, owner_rightward));

    // raw shaft between the pocket floor and the pit's carved region
    cv.open_rect(a, pocket_block_row + 4, b, base_row - 3);

    int support = base_row - 1;  // the pit's exit step
    // Chain filler steps upward in strides of 3 or 4 until one lands
    // inside the feature's acceptance window [lo, hi]. A stride outside
    // {3,4} is unclimbable or blocks the climber's head, so the plan's
    // row alignment must keep the endgame distance away from 1.
    auto ensure_support = [&](int lo, int hi) {
        if (support >= lo && support <= hi) return;
        if (support < lo)
            throw NetError("lane ladder: support above the next feature window");
        while (support - hi > 4) {
            support -= 3;
            cv.set(a, support, TileKind::Solid);
        }
        int g = support - hi;
        if (g == 0) return;
        if (g == 3 || g == 4) {
            support = hi;
        } else if (support - lo == 3 || support - lo == 4) {
            support = lo;
        } else {
            throw NetError("lane ladder: unbridgeable support gap");
        }
        cv.set(a, support, TileKind::Solid);
    };

    for (const LaneCrossing& c : crossings_bottom_up) {
        ensure_support(c.row + 8, c.row + 9);
        stamp_crossing(cv, a, c.row, c.track_rightward);
        support = c.row - 2;  // the unit's exit step
    }
    ensure_support(pocket_block_row + 6, pocket_block_row + 7);
}

}  // namespace satgen

// --- compiler ------------------------------------------------------------

inline CompiledCnf compile_cnf(const Cnf& cnf, const LevelCaps& caps = {},
                               const SatGeometry& geom = {}) {
    LayoutPlan plan = plan_layout(cnf, geom);
    if (plan.width * plan.height > caps.grid_cells)
        throw CapError("compile_cnf: grid cap exceeded (" +
                       std::to_string(plan.width * plan.height) + " cells)");

    satgen::Canvas cv(plan.width, plan.height);
    Level& level = cv.level();
    level.params.jump_budget = geom.jump_budget;
    level.params.star_duration = geom.star_duration;

    CompiledCnf out;
    auto span = [&out](const std::string& name, int x0, int y0, int x1, int y1) {
        out.gadget_spans[name] = {x0, y0, x1, y1};
    };

    const int D = geom.drop_depth;
    const int m = static_cast<int>(cnf.clauses.size());

    // check corridor with per-clause segments, then the finish plug
    const int chk = plan.check_feet_row;
    cv.corridor(2, plan.finish_col, chk);
    for (int j = 0; j < m; ++j) {
        int sp = plan.spawn_cols[j];
        for (int x = sp + 2; x < sp + 2 + geom.firebar_run; ++x) {
            cv.set(x, chk, TileKind::Firebar);
            cv.set(x, chk - 1, TileKind::Firebar);
        }
        span("C" + std::to_string(j + 1), sp - geom.check_padding, chk - 1,
             sp + 2 + geom.firebar_run, chk);
    }
    cv.open(plan.finish_col, chk - 4);
    cv.set(plan.finish_col, chk - 3, TileKind::Goal);
    cv.set(plan.finish_col, chk - 2, TileKind::Brick);
    level.goal = {plan.finish_col, chk - 3};
    span("finish", plan.finish_col - 1, chk - 4, plan.finish_col, chk);

    // staircase from the bottom corridor to a landing above the check,
    // then a one-way drop in: a star picked up in the check can never be
    // carried back into the rest of the level
    cv.open_rect(2, chk - 7, 3, chk - 6);        // landing
    cv.open_rect(3, chk - 5, 3, chk - 1);        // drop into the corridor
    cv.open_rect(1, chk - 5, 2, plan.bottom_row - 2);
    {
        const int hi = chk - 1, lo = chk - 2;  // top stair step window
        int y = plan.bottom_row - 2;
        cv.set(1, y, TileKind::Solid);
        while (y - hi > 4) {
            y -= 3;
            cv.set(1, y, TileKind::Solid);
        }
        if (y > hi) {
            int g = y - hi;
            if (g == 3 || g == 4) y = hi;
            else if (y - lo == 3 || y - lo == 4) y = lo;
            else throw NetError("staircase: unbridgeable stride");
            cv.set(1, y, TileKind::Solid);
        }
    }
    span("stairs", 1, chk - 7, 3, plan.bottom_row);

    // bands: choice corridor (+ start zone on band 1), drop shafts, merge
    for (const BandPlan& band : plan.bands) {
        const TrackPlan& pos = plan.tracks.at(band.var);
        const TrackPlan& neg = plan.tracks.at(-band.var);
        int cr = band.choice_row;

        int lo = std::min({band.choice_entry_col, band.gap_false_col, band.gap_true_col});
        int hi = std::max({band.choice_entry_col, band.gap_false_col, band.gap_true_col});
        if (band.var == 1) lo = std::min(lo, plan.start_col - 1);
        cv.corridor(lo, hi, cr);
        cv.open(band.gap_false_col, cr + 1);
        cv.open(band.gap_true_col, cr + 1);
        cv.open_rect(band.gap_false_col, cr + 2, band.gap_false_col, neg.start_row - 2);
        cv.open_rect(band.gap_true_col, cr + 2, band.gap_true_col, pos.start_row - 2);
        span("V" + std::to_string(band.var), lo, cr - 1, hi, cr + 1);

        if (band.var == 1) {
            level.start = {plan.start_col, cr};
            cv.item(plan.start_col + 1, cr - 1, TileKind::ItemMushroom,
                    {plan.start_col + 2, cr});
            span("start", plan.start_col - 1, cr - 1, plan.start_col + 2, cr);
        }

        // merge holes and shafts into the pit chamber
        cv.open(neg.end_col, neg.end_row - 1);
        cv.open(neg.end_col, neg.end_row);
        cv.open_rect(neg.end_col, neg.end_row + 1, neg.end_col, band.pit_row - 2);
        cv.open(pos.end_col, pos.end_row - 1);
        cv.open(pos.end_col, pos.end_row);
        cv.open_rect(pos.end_col, pos.end_row + 1, pos.end_col, band.pit_row - 2);
        int plo = std::min(band.merge_first_col, band.merge_second_col) - 1;
        int phi = std::max(band.merge_first_col, band.merge_second_col) + 1;
        cv.corridor(plo, phi, band.pit_row);
        span("J" + std::to_string(band.var), plo, band.pit_row - 1, phi, band.pit_row);
    }

    // next band's choice corridor continues from the pit chamber; carve
    // the connecting run (they share rows by construction)
    for (size_t i = 0; i + 1 < plan.bands.size(); ++i) {
        const BandPlan& done = plan.bands[i];
        const BandPlan& next = plan.bands[i + 1];
        int lo = std::min({done.merge_first_col, done.merge_second_col, next.choice_entry_col,
                           next.gap_false_col, next.gap_true_col});
        int hi = std::max({done.merge_first_col, done.merge_second_col, next.choice_entry_col,
                           next.gap_false_col, next.gap_true_col});
        cv.corridor(lo, hi, next.choice_row);
    }

    // bottom corridor from the last pit to the staircase
    if (!plan.bands.empty()) {
        const BandPlan& last = plan.bands.back();
        int hi = std::max(last.merge_first_col, last.merge_second_col) + 1;
        cv.corridor(1, hi, plan.bottom_row);
    } else {
        // no variables: the start sits directly on the bottom corridor;
        // the mushroom spawns on the staircase side so the used block
        // never walls the player off
        cv.corridor(1, 8, plan.bottom_row);
        level.start = {plan.start_col, plan.bottom_row};
        cv.item(plan.start_col, plan.bottom_row - 1, TileKind::ItemMushroom,
                {plan.start_col - 1, plan.bottom_row});
        span("start", plan.start_col - 1, plan.bottom_row - 1, plan.start_col + 1,
             plan.bottom_row);
    }

    // tracks: plain runs between the reserved footprints of pits/crossings
    struct Reserved {
        int lo, hi;
    };
    for (const auto& [lit, track] : plan.tracks) {
        std::vector<Reserved> skip;
        for (int li : track.lane_indices) {
            int a = plan.lanes[li].col_a;
            skip.push_back(track.rightward ? Reserved{a - 2, a + 8} : Reserved{a - 7, a + 3});
        }
        for (const CrossingPlan& c : plan.crossings)
            if (c.track_lit == lit) {
                int a = plan.lanes[c.lane].col_a;
                skip.push_back(track.rightward ? Reserved{a - 4, a + 4} : Reserved{a - 3, a + 5});
            }
        int lo_col = std::min(track.start_col, track.end_col);
        int hi_col = std::max(track.start_col, track.end_col);
        for (int x = lo_col; x <= hi_col; ++x) {
            bool reserved = false;
            for (const Reserved& r : skip) reserved |= (x >= r.lo && x <= r.hi);
            if (!reserved) cv.corridor(x, x, track_row_at(plan, track, x));
        }
    }

    // lanes: pit, shaft with crossings, pocket
    for (size_t k = 0; k < plan.lanes.size(); ++k) {
        const LanePlan& lane = plan.lanes[k];
        std::vector<satgen::LaneCrossing> ups;
        for (const CrossingPlan& c : plan.crossings)
            if (c.lane == static_cast<int>(k)) ups.push_back({c.row, c.track_rightward});
        std::sort(ups.begin(), ups.end(),
                  [](const auto& x, const auto& y) { return x.row > y.row; });  // bottom-up
        Cell spawn{plan.spawn_cols[lane.clause - 1], plan.check_feet_row};
        satgen::stamp_lane(cv, lane.col_a, lane.base_row,
                           plan.tracks.at(lane.lit).rightward, ups,
                           /*pocket_block_row=*/plan.pocket_feet_row - 2, spawn);
        span("L" + std::to_string(k), lane.col_a - 4, plan.pocket_feet_row - 2,
             lane.col_a + 5, lane.base_row + 7);
    }

    auto problems = check_level(level);
    if (!problems.empty())
        throw NetError("compile_cnf produced a bad level: " + problems.front());

    out.level = std::move(level);
    out.plan = std::move(plan);
    return out;
}

// Compiled level JSON with the gadget_spans annotation block.
inline std::string serialize_compiled(const CompiledCnf& c) {
    nlohmann::json j = level_to_json(c.level);
    nlohmann::json spans = nlohmann::json::object();
    for (const auto& [name, rect] : c.gadget_spans) spans[name] = rect;
    j["gadget_spans"] = spans;
    return j.dump(2) + "\n";
}

}  // namespace hf
