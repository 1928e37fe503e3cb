#pragma once

// Deterministic geometric plan for compiling a 3-CNF into a level.
//
// Global shape: variable bands stacked top to bottom, the flow zigzagging
// (odd bands walk rightward, even bands leftward). Each band has a choice
// corridor with two one-way drop gaps (true / false), two literal tracks,
// and a merge pit feeding the next band. The last pit reaches a bottom
// corridor that climbs a staircase into the check corridor at the top,
// which threads one spawn-plus-firebar segment per clause and ends at the
// finish plug.
//
// Each clause visit is a vertical lane hanging off its literal's track: a
// one-way pit entry, a brick-gated shaft crossing every higher track, and
// a pocket at the top whose star block spawns into the clause's check
// segment. A track drops one pit depth (6 rows) at each of its own lanes,
// so a track's row is a per-column step function. Crossings are
// enumerated as (lane column x track-local row) intersections.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "hf/errors.hpp"
#include "hf/formula.hpp"

namespace hf {

// Row pitches are multiples of 3 so every track row lands on the same
// residue: the climb ladders inside lane shafts advance in strides of 3
// or 4 and could not bridge misaligned support windows otherwise.
struct SatGeometry {
    int jump_budget = 4;
    int star_duration = 24;
    int drop_depth = 6;        // jump_budget + 2: one-way pits
    int first_drop = 9;        // choice corridor down to the first track
    int track_gap = 15;        // a track's last row to the next track's first
    int firebar_run = 6;       // < star_duration
    int lane_pitch = 16;       // columns between adjacent lane shafts
    int check_pitch = 24;      // columns per clause check segment
    int check_padding = 16;    // star-decay padding before each spawn cell
};

// One clause visit: a lane owned by `lit`, ascending from the owner's
// track to the pocket band.
struct LanePlan {
    int clause = 0;  // 1-based
    Lit lit = 0;
    int col_a = 0;       // step column; the through column is col_a + 1
    int base_row = 0;    // owner track feet row right before the lane's pit
    int order_on_track = 0;
};

struct CrossingPlan {
    int lane = 0;        // index into lanes
    Lit track_lit = 0;   // the horizontal path crossed
    int row = 0;         // crossed track's local feet row at the lane column
    bool track_rightward = true;
};

struct TrackPlan {
    Lit lit = 0;
    bool rightward = true;
    int start_col = 0;   // landing column (below the choice gap)
    int start_row = 0;
    int end_col = 0;     // merge hole column
    int end_row = 0;     // final segment feet row
    std::vector<int> lane_indices;  // own lanes in walk order
};

struct BandPlan {
    int var = 0;
    bool rightward = true;
    int choice_row = 0;        // choice corridor feet row
    int choice_entry_col = 0;  // where the corridor begins (previous pit side)
    int gap_false_col = 0;     // drop gap for the negative literal (deeper)
    int gap_true_col = 0;      // drop gap for the positive literal
    int pit_row = 0;           // merge pit feet row == next band's choice row
    int merge_first_col = 0;   // deeper track's hole
    int merge_second_col = 0;  // shallower track's hole
};

struct LayoutPlan {
    SatGeometry geom;
    int width = 0;
    int height = 0;

    std::vector<BandPlan> bands;                 // variable order
    std::map<Lit, TrackPlan> tracks;
    std::vector<LanePlan> lanes;                 // clause-major order
    std::vector<CrossingPlan> crossings;

    // check corridor (entered one-way by a drop from the stair landing)
    int check_feet_row = 10;
    int check_left_col = 0;
    std::vector<int> spawn_cols;                 // per clause
    int finish_col = 0;

    int stair_col_a = 1;                         // staircase step column
    int bottom_row = 0;                          // bottom corridor feet row
    int start_col = 0;                           // player start cell column

    // derived row constants
    int pocket_feet_row = 14;                    // star blocks at row 12
};

// The owner track's feet row at a given column (tracks step down one
// drop depth at each of their own lane pits).
inline int track_row_at(const LayoutPlan& plan, const TrackPlan& track, int col) {
    int row = track.start_row;
    for (int li : track.lane_indices) {
        const LanePlan& lane = plan.lanes[li];
        bool passed = track.rightward ? (lane.col_a + 1 < col) : (lane.col_a > col);
        if (passed) row += plan.geom.drop_depth;
    }
    return row;
}

inline std::vector<Lit> distinct_clause_literals(const Clause& c) {
    std::vector<Lit> out;
    for (Lit l : c)
        if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    return out;
}

inline LayoutPlan plan_layout(const Cnf& cnf, const SatGeometry& geom = {}) {
    check_cnf(cnf);
    LayoutPlan plan;
    plan.geom = geom;
    const int n = cnf.num_vars;
    const int m = static_cast<int>(cnf.clauses.size());
    const int D = geom.drop_depth;

    // --- lanes, clause-major ---
    for (int j = 0; j < m; ++j)
        for (Lit l : distinct_clause_literals(cnf.clauses[j]))
            plan.lanes.push_back({j + 1, l, 0, 0, 0});

    // --- columns ---
    const int lane_field_left = 18;  // border, staircase, wall, left margin
    for (size_t k = 0; k < plan.lanes.size(); ++k)
        plan.lanes[k].col_a = lane_field_left + 4 + geom.lane_pitch * static_cast<int>(k);
    const int lane_field_right =
        plan.lanes.empty() ? lane_field_left + 6
                           : plan.lanes.back().col_a + 5;
    const int right_margin_left = lane_field_right + 1;
    const int left_choice_entry = 4;

    // --- bands, tracks, pits ---
    int choice_row = 18;  // below the check corridor and the pocket band
    for (int i = 1; i <= n; ++i) {
        BandPlan band;
        band.var = i;
        band.rightward = (i % 2) == 1;
        band.choice_row = choice_row;

        TrackPlan pos, neg;
        pos.lit = i;
        neg.lit = -i;
        pos.rightward = neg.rightward = band.rightward;
        for (size_t k = 0; k < plan.lanes.size(); ++k) {
            if (plan.lanes[k].lit == i) pos.lane_indices.push_back(static_cast<int>(k));
            if (plan.lanes[k].lit == -i) neg.lane_indices.push_back(static_cast<int>(k));
        }
        // walk order: ascending columns on rightward bands, else descending
        auto by_walk = [&](int a, int b) {
            return band.rightward ? plan.lanes[a].col_a < plan.lanes[b].col_a
                                  : plan.lanes[a].col_a > plan.lanes[b].col_a;
        };
        std::sort(pos.lane_indices.begin(), pos.lane_indices.end(), by_walk);
        std::sort(neg.lane_indices.begin(), neg.lane_indices.end(), by_walk);

        // choice gaps: the deeper (negative) drop sits on the entry side
        // so its shaft never crosses the positive track
        if (band.rightward) {
            band.choice_entry_col = left_choice_entry;
            band.gap_false_col = 10;
            band.gap_true_col = 13;
        } else {
            band.choice_entry_col = right_margin_left + 12;
            band.gap_false_col = right_margin_left + 8;
            band.gap_true_col = right_margin_left + 5;
        }

        pos.start_col = band.gap_true_col;
        pos.start_row = choice_row + geom.first_drop;
        pos.end_row = pos.start_row + D * static_cast<int>(pos.lane_indices.size());
        neg.start_col = band.gap_false_col;
        neg.start_row = pos.end_row + geom.track_gap;
        neg.end_row = neg.start_row + D * static_cast<int>(neg.lane_indices.size());

        // merge: deeper-ending track takes the first hole along the walk
        int first_col, second_col;
        if (band.rightward) {
            first_col = right_margin_left + 3;
            second_col = first_col + 3;
        } else {
            first_col = 15;
            second_col = first_col - 3;
        }
        // negative track always ends deeper (it starts below the positive
        // track's final row), so it merges first
        neg.end_col = first_col;
        pos.end_col = second_col;
        band.merge_first_col = first_col;
        band.merge_second_col = second_col;
        band.pit_row = neg.end_row + D;

        plan.bands.push_back(band);
        plan.tracks[i] = pos;
        plan.tracks[-i] = neg;
        choice_row = band.pit_row;
    }
    // the final pit row doubles as the bottom corridor; with no bands the
    // row is pushed down so the staircase stride still lands at the top
    plan.bottom_row = n == 0 ? choice_row + 3 : choice_row;

    // --- lane base rows and crossings ---
    for (size_t k = 0; k < plan.lanes.size(); ++k) {
        LanePlan& lane = plan.lanes[k];
        const TrackPlan& owner = plan.tracks.at(lane.lit);
        int order = 0;
        for (int li : owner.lane_indices) {
            if (li == static_cast<int>(k)) break;
            ++order;
        }
        lane.order_on_track = order;
        lane.base_row = owner.start_row + D * order;

        for (const auto& [lit, track] : plan.tracks) {
            if (lit == lane.lit) continue;
            int row = track_row_at(plan, track, lane.col_a);
            if (row < lane.base_row)
                plan.crossings.push_back({static_cast<int>(k), lit, row, track.rightward});
        }
    }
    std::sort(plan.crossings.begin(), plan.crossings.end(), [](const auto& a, const auto& b) {
        return a.lane != b.lane ? a.lane < b.lane : a.row < b.row;
    });

    // --- check corridor, staircase, start, finish ---
    plan.check_left_col = 4;
    for (int j = 0; j < m; ++j)
        plan.spawn_cols.push_back(plan.check_left_col + geom.check_pitch * j +
                                  geom.check_padding);
    plan.finish_col = plan.check_left_col + geom.check_pitch * m + 4;
    plan.start_col = 5;

    plan.width = std::max({right_margin_left + 16, plan.finish_col + 4});
    plan.height = plan.bottom_row + 3;
    return plan;
}

// Independent recount used by tests: sweep every (lane column, track)
// pair geometrically and compare with the plan's crossing list.
inline int count_crossings_by_sweep(const LayoutPlan& plan) {
    int count = 0;
    for (size_t k = 0; k < plan.lanes.size(); ++k)
        for (const auto& [lit, track] : plan.tracks) {
            if (lit == plan.lanes[k].lit) continue;
            if (track_row_at(plan, track, plan.lanes[k].col_a) < plan.lanes[k].base_row)
                ++count;
        }
    return count;
}

}  // namespace hf
