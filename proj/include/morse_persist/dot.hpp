#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "morse_persist/gridmap.hpp"
#include "morse_persist/merge_tree.hpp"
#include "morse_persist/morse_graph.hpp"

namespace morse_persist {

// DOT emitters: nodes and edges sorted, output byte-identical across runs.

inline std::string emit_dot(const MorseGraph& mg,
                            const std::vector<std::string>& labels = {}) {
    std::string out = "digraph morse_graph {\n";
    for (int v = 0; v < mg.vertex_count; ++v) {
        out += "  v" + std::to_string(v);
        if (v < static_cast<int>(labels.size()))
            out += " [label=\"" + labels[v] + "\"]";
        out += ";\n";
    }
    for (auto [i, j] : mg.edges)
        out += "  v" + std::to_string(i) + " -> v" + std::to_string(j) + ";\n";
    out += "}\n";
    return out;
}

inline std::string emit_dot(const MergeTree& t) {
    std::string out = "digraph merge_tree {\n";
    for (int k = 0; k < t.levels(); ++k)
        for (int i = 0; i < t.level_sizes[k]; ++i)
            out += "  n" + std::to_string(k) + "_" + std::to_string(i) + " [label=\"" +
                   t.labels[k] + ":" + std::to_string(i) + "\"];\n";
    for (std::size_t k = 0; k < t.parent.size(); ++k)
        for (std::size_t i = 0; i < t.parent[k].size(); ++i)
            out += "  n" + std::to_string(k) + "_" + std::to_string(i) + " -> n" +
                   std::to_string(k + 1) + "_" + std::to_string(t.parent[k][i]) + ";\n";
    out += "}\n";
    return out;
}

inline std::string emit_dot(const GridMap& map) {
    const Grid& g = map.grid();
    std::vector<std::string> vertices;
    vertices.reserve(map.vertex_count());
    for (CellKey k : map.vertices()) vertices.push_back(g.cell_id(k));
    std::sort(vertices.begin(), vertices.end());
    std::vector<std::pair<std::string, std::string>> edges;
    edges.reserve(map.edge_count());
    for (auto [a, b] : map.edge_list()) edges.emplace_back(g.cell_id(a), g.cell_id(b));
    std::sort(edges.begin(), edges.end());

    std::string out = "digraph grid_map {\n";
    for (const auto& v : vertices) out += "  \"" + v + "\";\n";
    for (const auto& [a, b] : edges) out += "  \"" + a + "\" -> \"" + b + "\";\n";
    out += "}\n";
    return out;
}

}  // namespace morse_persist
