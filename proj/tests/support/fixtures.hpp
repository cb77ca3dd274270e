#pragma once

// Worked fixtures: the one-dimensional grid-map chain whose cells merge in
// three steps (two pairs, then a third cell into one of them, then the last
// pair), and the 2-periodic four-vertex map that turns mixing when an edge
// is added.  Cell placement on the depth-5 dyadic grid is chosen so the
// dyadic coarsening schedule reproduces exactly those merges.

#include <map>
#include <string>
#include <vector>

#include "morse_persist/grid.hpp"
#include "morse_persist/gridmap.hpp"

namespace fixtures {

namespace mp = morse_persist;

inline mp::Box unit_interval() {
    return mp::Box({mp::Rational(0)}, {mp::Rational(1)});
}

struct GridMapChain {
    std::vector<mp::Grid> grids;    // finest first: depths 5,4,3,2
    std::vector<mp::GridMap> maps;  // levels A,B,C,D
    // label -> cell key, per level
    std::vector<std::map<std::string, mp::CellKey>> cells;
};

inline GridMapChain fig_chain() {
    GridMapChain f;
    mp::Box box = unit_interval();
    for (int depth : {5, 4, 3, 2}) f.grids.emplace_back(box, depth);

    f.cells = {
        {{"G1", 8}, {"G2", 9}, {"G3", 0}, {"G4", 1}, {"G5", 2}, {"G6", 16}, {"G7", 20}},
        {{"G12", 4}, {"G34", 0}, {"G5", 1}, {"G6", 8}, {"G7", 10}},
        {{"G12", 2}, {"G345", 0}, {"G6", 4}, {"G7", 5}},
        {{"G12", 1}, {"G345", 0}, {"G67", 2}},
    };

    auto build = [&](int level, const std::vector<std::pair<std::string, std::string>>& edges) {
        const auto& names = f.cells[level];
        std::vector<mp::CellKey> vertices;
        for (const auto& [name, key] : names) vertices.push_back(key);
        std::vector<std::pair<mp::CellKey, mp::CellKey>> keyed;
        for (const auto& [a, b] : edges) keyed.emplace_back(names.at(a), names.at(b));
        return mp::GridMap(f.grids[level], std::move(vertices), keyed);
    };

    f.maps.push_back(build(0, {{"G2", "G2"},
                               {"G1", "G2"},
                               {"G1", "G3"},
                               {"G2", "G3"},
                               {"G4", "G5"},
                               {"G5", "G6"},
                               {"G6", "G6"},
                               {"G7", "G7"},
                               {"G7", "G6"}}));
    f.maps.push_back(build(1, {{"G12", "G12"},
                               {"G12", "G34"},
                               {"G34", "G5"},
                               {"G5", "G6"},
                               {"G6", "G6"},
                               {"G7", "G7"},
                               {"G7", "G6"}}));
    f.maps.push_back(build(2, {{"G12", "G12"},
                               {"G12", "G345"},
                               {"G345", "G345"},
                               {"G345", "G6"},
                               {"G6", "G6"},
                               {"G7", "G7"},
                               {"G7", "G6"}}));
    f.maps.push_back(build(3, {{"G12", "G12"},
                               {"G12", "G345"},
                               {"G345", "G345"},
                               {"G345", "G67"},
                               {"G67", "G67"}}));
    return f;
}

struct PeriodicFixture {
    mp::Grid grid;
    mp::GridMap periodic;  // 2-periodic
    mp::GridMap mixing;    // one extra edge v11 -> v12
    mp::CellKey v11 = 0, v12 = 1, v21 = 2, v22 = 3;
};

inline PeriodicFixture periodic_fixture() {
    mp::Box box = unit_interval();
    mp::Grid grid(box, 2);
    std::vector<mp::CellKey> vertices{0, 1, 2, 3};
    std::vector<std::pair<mp::CellKey, mp::CellKey>> edges{
        {1, 3}, {0, 2}, {0, 3}, {2, 0}, {2, 1}, {3, 0}};
    PeriodicFixture f{grid, mp::GridMap(grid, vertices, edges), mp::GridMap(), 0, 1, 2, 3};
    edges.emplace_back(0, 1);
    f.mixing = mp::GridMap(grid, vertices, edges);
    return f;
}

// A grid map over [0,1] realizing a small abstract digraph: vertex i is
// cell i of a grid deep enough to hold n cells.
inline mp::GridMap graph_as_gridmap(const mp::graph::Digraph& g) {
    int depth = 0;
    while ((1 << depth) < std::max(g.size(), 1)) ++depth;
    mp::Grid grid(unit_interval(), depth);
    std::vector<mp::CellKey> vertices;
    for (int v = 0; v < g.size(); ++v) vertices.push_back(static_cast<mp::CellKey>(v));
    std::vector<std::pair<mp::CellKey, mp::CellKey>> edges;
    for (auto [u, v] : g.edges())
        edges.emplace_back(static_cast<mp::CellKey>(u), static_cast<mp::CellKey>(v));
    return mp::GridMap(grid, std::move(vertices), edges);
}

}  // namespace fixtures
