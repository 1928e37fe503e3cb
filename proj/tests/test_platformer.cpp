#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unordered_set>

#include "hf/level_io.hpp"
#include "hf/level_solver.hpp"
#include "hf/platformer.hpp"
#include "hf/random_formula.hpp"

using namespace hf;

namespace {

Level lvl(std::initializer_list<const char*> rows) {
    std::string text;
    for (const char* r : rows) {
        text += r;
        text += '\n';
    }
    return parse_level_text(text);
}

// Full-state-space oracle: iterative depth-first enumeration, no frontier
// ordering in common with the BFS solver.
bool dfs_reachable(const Level& level) {
    LevelView view(level);
    std::vector<GameState> stack{view.initial_state()};
    std::unordered_set<GameState, GameStateHash> visited{stack.back()};
    while (!stack.empty()) {
        GameState s = stack.back();
        stack.pop_back();
        if (s.feet == level.goal) return true;
        for (Action a : {Action::Down, Action::Up, Action::Right, Action::Left})
            if (auto next = view.try_step(s, a))
                if (visited.insert(*next).second) stack.push_back(*next);
    }
    return false;
}

}  // namespace

TEST_CASE("flat corridor walk") {
    Level level = lvl({
        "######",
        "#S..E#",
        "######",
    });
    LevelView view(level);
    GameState s = view.initial_state();
    CHECK(s.form == Form::Small);
    CHECK(s.rise == level.params.jump_budget);
    s = view.step(s, Action::Right);
    s = view.step(s, Action::Right);
    s = view.step(s, Action::Right);
    CHECK(s.feet == level.goal);

    LevelVerdict v = solve_level(level);
    CHECK(v.reachable);
    CHECK(v.witness->size() == 3);
}

TEST_CASE("legal_actions on characteristic states") {
    SUBCASE("supported in an open field: left, right, up") {
        Level level = lvl({
            "##########",
            "#........#",
            "#..S...E.#",
            "##########",
        });
        LevelView view(level);
        auto acts = view.legal_actions(view.initial_state());
        CHECK(acts == std::vector<Action>{Action::Left, Action::Right, Action::Up});
    }
    SUBCASE("airborne with rise 0: left, right, down") {
        Level level = lvl({
            "#####",
            "#...#",
            "#...#",
            "#...#",
            "#...#",
            "#.S.#",
            "#E###",
        });
        LevelView view(level);
        GameState s = view.initial_state();
        for (int i = 0; i < 4; ++i) s = view.step(s, Action::Up);
        CHECK(s.rise == 0);
        auto acts = view.legal_actions(s);
        CHECK(acts == std::vector<Action>{Action::Left, Action::Right, Action::Down});
    }
    SUBCASE("sealed pocket: dead state") {
        Level level = lvl({
            "####",
            "#S##",
            "##E#",
            "####",
        });
        LevelView view(level);
        CHECK(view.legal_actions(view.initial_state()).empty());
        CHECK_FALSE(solve_level(level).reachable);
    }
}

TEST_CASE("rise budget resets on support and survives lateral moves") {
    Level level = lvl({
        "#####",
        "#...#",
        "#...#",
        "#.#.#",
        "#S#E#",
        "#####",
    });
    LevelView view(level);
    GameState s = view.initial_state();
    s = view.step(s, Action::Up);
    CHECK(s.rise == level.params.jump_budget - 1);
    s = view.step(s, Action::Up);
    CHECK(s.rise == level.params.jump_budget - 2);
    s = view.step(s, Action::Right);  // land on the spire top (2,2)
    CHECK(s.feet == Cell{2, 2});
    CHECK(s.rise == level.params.jump_budget);
    s = view.step(s, Action::Right);  // airborne over the goal column
    CHECK(s.rise == level.params.jump_budget);  // unchanged while airborne
    s = view.step(s, Action::Down);
    s = view.step(s, Action::Down);
    CHECK(s.feet == level.goal);
}

TEST_CASE("goal atop a climb deeper than the jump budget is unreachable") {
    Level level = lvl({
        "#####",
        "#.E.#",
        "#...#",
        "#...#",
        "#...#",
        "#...#",
        "#.S.#",
        "#####",
    });
    CHECK_FALSE(solve_level(level).reachable);

    Level easier = level;
    easier.params.jump_budget = 5;
    CHECK(solve_level(easier).reachable);
}

TEST_CASE("bricks break only from below and only for SUPER") {
    Level level = lvl({
        "#####",
        "#B.E#",
        "#...#",
        "#S..#",
        "#####",
    });
    LevelView view(level);

    SUBCASE("small player cannot break") {
        GameState s = view.initial_state();
        s = view.step(s, Action::Up);  // feet (1,2), head below the brick
        std::string why;
        CHECK_FALSE(view.try_step(s, Action::Up, &why));
        CHECK(why.find("break") != std::string::npos);
    }
    SUBCASE("super player breaks in place") {
        GameState s = view.initial_state();
        s.form = Form::Super;  // headroom at (1,2) exists
        GameState after = view.step(s, Action::Up);  // bump (1,1)
        CHECK(after.feet == s.feet);
        CHECK(view.broken(after, {1, 1}));
        CHECK(after.rise == level.params.jump_budget);  // still supported
    }
}

TEST_CASE("item blocks release a pickup at the spawn cell and go inert") {
    Level level = lvl({
        "#####",
        "#..E#",
        "#.M.#",
        "#.S.#",
        "#####",
    });
    // M at (2,2) with default spawn (2,1); start (2,3)
    LevelView view(level);
    GameState s = view.initial_state();
    CHECK(view.effective(s, {2, 1}) == TileKind::Empty);
    GameState after = view.step(s, Action::Up);  // bump, player stays
    CHECK(after.feet == s.feet);
    CHECK(view.used(after, {2, 2}));
    CHECK(view.effective(after, {2, 1}) == TileKind::PickupMushroom);

    std::string why;
    CHECK_FALSE(view.try_step(after, Action::Up, &why));
    CHECK(why.find("used item block") != std::string::npos);
}

TEST_CASE("mushroom grows, hazard shrinks, small dies on hazards") {
    Level level = lvl({
        "########",
        "#......#",
        "#Sm.G.E#",
        "########",
    });
    LevelView view(level);
    GameState s = view.initial_state();
    s = view.step(s, Action::Right);  // take the mushroom at (2,2)
    CHECK(s.form == Form::Super);
    CHECK(view.taken(s, {2, 2}));

    s = view.step(s, Action::Right);
    GameState hurt = view.step(s, Action::Right);  // into the hazard (4,2)
    CHECK(hurt.form == Form::Small);
    CHECK(hurt.feet == Cell{4, 2});

    GameState small_at_gate = view.initial_state();
    small_at_gate.feet = {3, 2};
    std::string why;
    CHECK_FALSE(view.try_step(small_at_gate, Action::Right, &why));
    CHECK(why.find("hazard") != std::string::npos);

    // the full level is solvable: grow, take the hit, walk out
    CHECK(solve_level(level).reachable);
}

TEST_CASE("super cannot fit a one-tall corridor") {
    Level level = lvl({
        "######",
        "#.##.#",
        "#S..E#",
        "######",
    });
    LevelView view(level);
    GameState small = view.initial_state();
    CHECK(view.try_step(small, Action::Right));

    GameState super = small;
    super.form = Form::Super;
    std::string why;
    CHECK_FALSE(view.try_step(super, Action::Right, &why));
    CHECK(why.find("solid") != std::string::npos);
}

TEST_CASE("mushroom growth requires headroom") {
    Level level = lvl({
        "######",
        "#.####",
        "#Sm.E#",
        "######",
    });
    LevelView view(level);
    std::string why;
    CHECK_FALSE(view.try_step(view.initial_state(), Action::Right, &why));
    CHECK(why.find("headroom") != std::string::npos);
}

TEST_CASE("firebars require a running star") {
    // two-tall firebar columns: an open head row would let a small player
    // drift across above the flames
    Level level = lvl({
        "#########",
        "#..FFF..#",
        "#S.FFF.E#",
        "#########",
    });
    LevelView view(level);
    GameState s = view.initial_state();
    s = view.step(s, Action::Right);
    std::string why;
    CHECK_FALSE(view.try_step(s, Action::Right, &why));
    CHECK(why.find("firebar") != std::string::npos);

    SUBCASE("star timer gates each firebar cell and ticks per action") {
        GameState lit = s;
        lit.star = 3;
        GameState in = view.step(lit, Action::Right);
        CHECK(in.star == 2);
        GameState in2 = view.step(in, Action::Right);
        CHECK(in2.star == 1);
        GameState in3 = view.step(in2, Action::Right);
        CHECK(in3.star == 0);
        CHECK(view.try_step(in3, Action::Right));  // (6,2) is plain floor
    }
    SUBCASE("star pickup sets the timer to S, then the action tick applies") {
        Level starlvl = lvl({
            "#########",
            "#..FFF..#",
            "#S*FFF.E#",
            "#########",
        });
        LevelView sv(starlvl);
        GameState t = sv.initial_state();
        t = sv.step(t, Action::Right);
        CHECK(t.star == starlvl.params.star_duration - 1);
        CHECK(solve_level(starlvl).reachable);
    }
    SUBCASE("without any star source the level is unsolvable") {
        CHECK_FALSE(solve_level(level).reachable);
    }
}

TEST_CASE("goal behind a brick: solvable only via mushroom then break") {
    // the ceiling row seals the wall at (3,*): the only way to the goal is
    // up through the brick plug
    Level level = lvl({
        "######",
        "#..#.#",
        "#..#E#",
        "#.M#B#",
        "#....#",
        "#S...#",
        "######",
    });
    LevelVerdict v = solve_level(level);
    CHECK(v.reachable);

    LevelView view(level);
    GameState s = view.initial_state();
    int grows = 0;
    for (Action a : *v.witness) {
        GameState next = view.step(s, a);
        if (s.form == Form::Small && next.form == Form::Super) ++grows;
        s = next;
    }
    CHECK(s.feet == level.goal);
    CHECK(grows == 1);

    Level sealed = level;
    sealed.at({2, 3}) = TileKind::Solid;
    CHECK_FALSE(solve_level(sealed).reachable);
}

TEST_CASE("level parsing errors") {
    CHECK_THROWS_AS(lvl({"###", "#S#", "###"}), ParseError);            // no goal
    CHECK_THROWS_AS(lvl({"###", "#E#", "###"}), ParseError);            // no start
    CHECK_THROWS_AS(lvl({"####", "#SE#", "#Q##", "####"}), ParseError); // unknown glyph
    // 'T' star block without an explicit spawn entry
    CHECK_THROWS_AS(lvl({"#####", "#...#", "#STE#", "#####"}), ParseError);
    CHECK_THROWS_AS(parse_level_text("####\n#SE\n####\n"), ParseError); // ragged
}

TEST_CASE("level serialization round-trips") {
    Level level = lvl({
        "########",
        "#......#",
        "#Sm.G.E#",
        "########",
    });
    level.params.jump_budget = 6;
    level.ports["left"] = {1, 2};

    SUBCASE("JSON keeps params, spawns, ports") {
        Level back = parse_level(serialize_level(level));
        CHECK(back == level);
    }
    SUBCASE("glyph text round-trips the grid") {
        std::string text = level_glyphs(level);
        Level back = parse_level_text(text);
        CHECK(level_glyphs(back) == text);
        CHECK(back.grid == level.grid);
    }
    SUBCASE("explicit star spawn survives the round trip") {
        Level star = lvl({"#####", "#...#", "#S.E#", "#####"});
        star.at({2, 2}) = TileKind::ItemStar;
        star.item_spawns[{2, 2}] = {2, 1};
        Level back = parse_level(serialize_level(star));
        CHECK(back == star);
    }
}

TEST_CASE("random-walk invariants: monotone deltas, support reset, shrink needs a hazard") {
    Level level = lvl({
        "##############",
        "#............#",
        "#S.m.G.*.FF..#",
        "###.####...###",
        "#...#....#...#",
        "#.B.#.M..#.E.#",
        "#...#....#...#",
        "##############",
    });
    LevelView view(level);
    Rng rng(4242);
    for (int walk = 0; walk < 50; ++walk) {
        GameState s = view.initial_state();
        for (int step_i = 0; step_i < 120; ++step_i) {
            auto acts = view.legal_actions(s);
            if (acts.empty()) break;
            Action a = acts[rng.below(acts.size())];
            GameState next = view.step(s, a);

            for (int w = 0; w < kDeltaWords; ++w)
                CHECK((next.delta[w] & s.delta[w]) == s.delta[w]);  // monotone

            if (view.supported(next))
                CHECK(next.rise == level.params.jump_budget);  // support reset

            if (s.form == Form::Super && next.form == Form::Small) {
                bool hazard_nearby = false;
                for (int dx = -1; dx <= 1; ++dx)
                    for (int dy = -2; dy <= 1; ++dy) {
                        Cell c{next.feet.x + dx, next.feet.y + dy};
                        if (level.in_bounds(c) && level.at(c) == TileKind::Hazard)
                            hazard_nearby = true;
                    }
                CHECK(hazard_nearby);
            }
            s = next;
        }
    }
}

TEST_CASE("solver agrees with a depth-first enumeration oracle") {
    std::vector<Level> cases;
    cases.push_back(lvl({"######", "#S..E#", "######"}));
    cases.push_back(lvl({"#####", "#.E.#", "#...#", "#...#", "#...#", "#...#", "#.S.#", "#####"}));
    cases.push_back(lvl({"######", "#....#", "#..#E#", "#.M#B#", "#....#", "#S...#", "######"}));
    cases.push_back(lvl({"#########", "#.......#", "#S*FFF.E#", "#########"}));
    cases.push_back(lvl({"#########", "#.......#", "#S.FFF.E#", "#########"}));
    cases.push_back(lvl({"####", "#S##", "##E#", "####"}));
    for (const Level& level : cases) {
        CAPTURE(level_glyphs(level));
        CHECK(solve_level(level).reachable == dfs_reachable(level));
    }
}

TEST_CASE("witness replay ends on the goal; solver is deterministic") {
    Level level = lvl({
        "##########",
        "#........#",
        "#S.m.G..E#",
        "##########",
    });
    LevelVerdict v = solve_level(level);
    REQUIRE(v.reachable);
    GameState end = replay_witness(level, *v.witness);
    CHECK(end.feet == level.goal);

    LevelVerdict v2 = solve_level(level);
    CHECK(v2.reachable == v.reachable);
    CHECK(*v2.witness == *v.witness);
}

TEST_CASE("port_reachability reports reachable ports with their states") {
    // hazard passage sealed above by the one-tall ceiling after it; the
    // pit drop at x=3 is deeper than the jump budget
    Level level = lvl({
        "#########",
        "#.....#.#",
        "#....G.E#",
        "###.#####",
        "###.#####",
        "###.#####",
        "#...#####",
        "#S..#####",
        "#########",
    });
    level.ports["top_left"] = {1, 2};
    level.ports["top_right"] = {7, 2};
    level.ports["pit"] = {1, 7};

    SUBCASE("super entry crosses the hazard, shrinking") {
        PortReport rep = port_reachability(level, "top_left", {Form::Super, 0, {}});
        CHECK(rep.port_reachable("top_right"));
        CHECK(rep.reached.at("top_right").form == Form::Small);
        CHECK(rep.port_reachable("pit"));  // falls through the shaft at x=3
    }
    SUBCASE("small entry is stopped by the hazard") {
        PortReport rep = port_reachability(level, "top_left", {Form::Small, 0, {}});
        CHECK_FALSE(rep.port_reachable("top_right"));
        CHECK(rep.port_reachable("pit"));
    }
    SUBCASE("pit entry cannot climb back out") {
        PortReport rep = port_reachability(level, "pit", {Form::Super, 0, {}});
        CHECK_FALSE(rep.port_reachable("top_left"));
        CHECK_FALSE(rep.port_reachable("top_right"));
    }
    SUBCASE("unknown port") {
        CHECK_THROWS(port_reachability(level, "nope"));
    }
}

TEST_CASE("solve_level caps") {
    Level level = lvl({"######", "#S..E#", "######"});
    LevelCaps caps;
    caps.grid_cells = 4;
    CHECK_THROWS_AS(solve_level(level, caps), CapError);
}
