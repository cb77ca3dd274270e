#pragma once

#include <json.hpp>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "morse_persist/barcode.hpp"
#include "morse_persist/grid.hpp"
#include "morse_persist/gridmap.hpp"
#include "morse_persist/merge_tree.hpp"
#include "morse_persist/morse.hpp"
#include "morse_persist/recurrence.hpp"

namespace morse_persist {

// All JSON output uses ordered_json with sorted content, so identical
// inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

inline Json box_json(const Box& box) {
    Json lo = Json::array(), hi = Json::array();
    for (const auto& v : box.lo) lo.push_back(format_rational(v));
    for (const auto& v : box.hi) hi.push_back(format_rational(v));
    return Json{{"lo", lo}, {"hi", hi}};
}

inline Box box_from_json(const Json& j) {
    std::vector<Rational> lo, hi;
    for (const auto& v : j.at("lo")) lo.push_back(parse_rational(v.get<std::string>()));
    for (const auto& v : j.at("hi")) hi.push_back(parse_rational(v.get<std::string>()));
    return Box(std::move(lo), std::move(hi));
}

inline Json grid_json(const Grid& grid) {
    return Json{{"box", box_json(grid.box())}, {"depth", grid.depth()}};
}

inline Grid grid_from_json(const Json& j) {
    return Grid(box_from_json(j.at("box")), j.at("depth").get<int>());
}

inline Json gridmap_json(const GridMap& map) {
    const Grid& g = map.grid();
    std::vector<std::string> vertices;
    vertices.reserve(map.vertex_count());
    for (CellKey k : map.vertices()) vertices.push_back(g.cell_id(k));
    std::sort(vertices.begin(), vertices.end());

    std::vector<std::pair<std::string, std::string>> edges;
    edges.reserve(map.edge_count());
    for (auto [a, b] : map.edge_list()) edges.emplace_back(g.cell_id(a), g.cell_id(b));
    std::sort(edges.begin(), edges.end());

    Json jv = Json::array(), je = Json::array();
    for (auto& v : vertices) jv.push_back(v);
    for (auto& [a, b] : edges) je.push_back(Json::array({a, b}));
    return Json{{"grid", grid_json(g)}, {"vertices", jv}, {"edges", je}};
}

inline GridMap gridmap_from_json(const Json& j) {
    Grid grid = grid_from_json(j.at("grid"));
    std::vector<CellKey> vertices;
    for (const auto& v : j.at("vertices"))
        vertices.push_back(grid.key(Grid::parse_cell_id(v.get<std::string>())));
    std::vector<std::pair<CellKey, CellKey>> edges;
    for (const auto& e : j.at("edges"))
        edges.emplace_back(grid.key(Grid::parse_cell_id(e.at(0).get<std::string>())),
                           grid.key(Grid::parse_cell_id(e.at(1).get<std::string>())));
    return GridMap(std::move(grid), std::move(vertices), edges);
}

inline Json cellset_ids(const CellSet& s) {
    Json ids = Json::array();
    for (CellKey k : s.cells) ids.push_back(s.grid.cell_id(k));
    return ids;
}

inline Json decomposition_json(const MorseDecomposition& md) {
    Json sets = Json::array();
    for (const CellSet& s : md.sets) sets.push_back(cellset_ids(s));
    Json order = Json::array();
    for (auto [j, k] : md.order) order.push_back(Json::array({j, k}));
    return Json{{"sets", sets}, {"order", order}};
}

inline Json augmented_json(const AugmentedMorseDecomposition& aug) {
    Json j = decomposition_json(aug.decomposition);
    Json restr = Json::array();
    const Grid& g = aug.decomposition.map.grid();
    for (const GridMap& r : aug.restriction_maps) {
        std::vector<std::pair<std::string, std::string>> edges;
        for (auto [a, b] : r.edge_list()) edges.emplace_back(g.cell_id(a), g.cell_id(b));
        std::sort(edges.begin(), edges.end());
        Json je = Json::array();
        for (auto& [a, b] : edges) je.push_back(Json::array({a, b}));
        restr.push_back(je);
    }
    j["restrictions"] = restr;
    return j;
}

inline Json morse_graph_json(const MorseGraph& mg) {
    Json edges = Json::array();
    for (auto [i, j] : mg.edges) edges.push_back(Json::array({i, j}));
    return Json{{"vertices", mg.vertex_count}, {"edges", edges}};
}

inline Json merge_tree_json(const MergeTree& t) {
    Json levels = Json::array();
    for (const auto& l : t.labels) levels.push_back(l);
    Json nodes = Json::array();
    for (int k = 0; k < t.levels(); ++k)
        for (int i = 0; i < t.level_sizes[k]; ++i) nodes.push_back(Json::array({k, i}));
    Json parents = Json::array();
    for (std::size_t k = 0; k < t.parent.size(); ++k)
        for (std::size_t i = 0; i < t.parent[k].size(); ++i)
            parents.push_back(Json::array({Json::array({k, i}),
                                           Json::array({k + 1, t.parent[k][i]})}));
    return Json{{"levels", levels}, {"nodes", nodes}, {"parents", parents}};
}

inline Json barcode_json(const Barcode& bc) {
    Json bars = Json::array();
    for (const Bar& b : bc.bars) {
        Json jb{{"dim", b.dim}, {"birth", b.birth}};
        if (b.death < 0)
            jb["death"] = nullptr;
        else
            jb["death"] = b.death;
        bars.push_back(jb);
    }
    return bars;
}

inline Json mixing_json(const std::vector<MixingReportEntry>& report, const Grid& grid) {
    Json out = Json::array();
    for (const MixingReportEntry& e : report) {
        Json classes = Json::array();
        for (const auto& cls : e.classes) {
            Json ids = Json::array();
            for (CellKey k : cls) ids.push_back(grid.cell_id(k));
            classes.push_back(ids);
        }
        out.push_back(Json{{"set", e.set},
                           {"period", e.period},
                           {"classes", classes},
                           {"mixing", e.mixing}});
    }
    return out;
}

}  // namespace morse_persist
