#pragma once

// Level text and JSON formats.
//
// Glyph grid:  '#' solid   '.' empty     'B' brick    'M' item(mushroom)
//              'T' item(star)  'm' pickup(mushroom)  '*' pickup(star)
//              'G' hazard      'F' firebar  'S' start  'E' goal
//
// The JSON wrapper carries what glyphs cannot: params, item spawn
// targets, and optional port annotations:
//
// {"kind":"level", "grid":[...rows...], "params":{"jump_budget":J,
//  "star_duration":S}, "item_spawns":[{"block":[x,y],"spawn":[x,y]}],
//  "ports":{"name":[x,y]}}

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hf/errors.hpp"
#include "hf/platformer.hpp"

namespace hf {

inline char tile_glyph(TileKind k) {
    switch (k) {
        case TileKind::Empty: return '.';
        case TileKind::Solid: return '#';
        case TileKind::Brick: return 'B';
        case TileKind::ItemMushroom: return 'M';
        case TileKind::ItemStar: return 'T';
        case TileKind::PickupMushroom: return 'm';
        case TileKind::PickupStar: return '*';
        case TileKind::Hazard: return 'G';
        case TileKind::Firebar: return 'F';
        case TileKind::Goal: return 'E';
    }
    return '?';
}

// Grid text only; the start cell renders as 'S'.
inline std::string level_glyphs(const Level& level) {
    std::string out;
    for (int y = 0; y < level.height; ++y) {
        for (int x = 0; x < level.width; ++x) {
            Cell c{x, y};
            out += c == level.start ? 'S' : tile_glyph(level.at(c));
        }
        out += '\n';
    }
    return out;
}

namespace detail {

// Glyph scan without the final consistency check.
inline Level scan_glyphs(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) rows.push_back(line);
    }
    if (rows.empty()) throw ParseError("empty level");
    Level level;
    level.height = static_cast<int>(rows.size());
    level.width = static_cast<int>(rows[0].size());
    level.grid.assign(level.width * level.height, TileKind::Empty);
    bool have_start = false, have_goal = false;
    for (int y = 0; y < level.height; ++y) {
        if (static_cast<int>(rows[y].size()) != level.width)
            throw ParseError("ragged level rows");
        for (int x = 0; x < level.width; ++x) {
            Cell c{x, y};
            switch (rows[y][x]) {
                case '#': level.at(c) = TileKind::Solid; break;
                case '.': level.at(c) = TileKind::Empty; break;
                case 'B': level.at(c) = TileKind::Brick; break;
                case 'M': level.at(c) = TileKind::ItemMushroom; break;
                case 'T': level.at(c) = TileKind::ItemStar; break;
                case 'm': level.at(c) = TileKind::PickupMushroom; break;
                case '*': level.at(c) = TileKind::PickupStar; break;
                case 'G': level.at(c) = TileKind::Hazard; break;
                case 'F': level.at(c) = TileKind::Firebar; break;
                case 'S':
                    if (have_start) throw ParseError("multiple start cells");
                    level.at(c) = TileKind::Empty;
                    level.start = c;
                    have_start = true;
                    break;
                case 'E':
                    if (have_goal) throw ParseError("multiple goal cells");
                    level.at(c) = TileKind::Goal;
                    level.goal = c;
                    have_goal = true;
                    break;
                default:
                    throw ParseError(std::string("unknown glyph '") + rows[y][x] + "'");
            }
        }
    }
    if (!have_start) throw ParseError("no start cell");
    if (!have_goal) throw ParseError("no goal cell");
    return level;
}

}  // namespace detail

inline Level parse_level_text(const std::string& text) {
    Level level = detail::scan_glyphs(text);
    auto problems = check_level(level);
    if (!problems.empty()) throw ParseError(problems.front());
    return level;
}

inline nlohmann::json level_to_json(const Level& level) {
    nlohmann::json j;
    j["kind"] = "level";
    std::vector<std::string> rows;
    {
        std::istringstream in(level_glyphs(level));
        std::string line;
        while (std::getline(in, line)) rows.push_back(line);
    }
    j["grid"] = rows;
    j["params"] = {{"jump_budget", level.params.jump_budget},
                   {"star_duration", level.params.star_duration}};
    j["item_spawns"] = nlohmann::json::array();
    for (const auto& [block, spawn] : level.item_spawns)
        j["item_spawns"].push_back(
            {{"block", {block.x, block.y}}, {"spawn", {spawn.x, spawn.y}}});
    if (!level.ports.empty()) {
        nlohmann::json ports = nlohmann::json::object();
        for (const auto& [name, cell] : level.ports) ports[name] = {cell.x, cell.y};
        j["ports"] = ports;
    }
    return j;
}

inline Level level_from_json(const nlohmann::json& j) {
    try {
        if (j.at("kind").get<std::string>() != "level")
            throw ParseError("document kind is not 'level'");
        std::string glyphs;
        for (const auto& row : j.at("grid")) glyphs += row.get<std::string>() + "\n";
        Level level = detail::scan_glyphs(glyphs);
        if (j.contains("params")) {
            level.params.jump_budget = j["params"].value("jump_budget", 4);
            level.params.star_duration = j["params"].value("star_duration", 24);
        }
        if (j.contains("item_spawns"))
            for (const auto& e : j["item_spawns"]) {
                Cell block{e.at("block")[0].get<int>(), e.at("block")[1].get<int>()};
                Cell spawn{e.at("spawn")[0].get<int>(), e.at("spawn")[1].get<int>()};
                level.item_spawns[block] = spawn;
            }
        if (j.contains("ports"))
            for (auto it = j["ports"].begin(); it != j["ports"].end(); ++it)
                level.ports[it.key()] = {it.value()[0].get<int>(), it.value()[1].get<int>()};
        auto problems = check_level(level);
        if (!problems.empty()) throw ParseError(problems.front());
        return level;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad level JSON: ") + e.what());
    }
}

inline std::string serialize_level(const Level& level) {
    return level_to_json(level).dump(2) + "\n";
}

inline Level parse_level(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\n' || c == '\t' || c == '\r') continue;
        if (c == '{') {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(text);
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(std::string("bad JSON: ") + e.what());
            }
            return level_from_json(j);
        }
        break;
    }
    return parse_level_text(text);
}

}  // namespace hf
