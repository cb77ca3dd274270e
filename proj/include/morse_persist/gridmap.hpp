#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "morse_persist/digraph.hpp"
#include "morse_persist/errors.hpp"
#include "morse_persist/grid.hpp"
#include "morse_persist/mapspec.hpp"

namespace morse_persist {

// Multivalued map F: G =: G as a directed graph on a subset of the grid's
// cells.  Immutable after construction; operations return new maps.
class GridMap {
public:
    GridMap() = default;
    GridMap(Grid grid, std::vector<CellKey> vertices,
            const std::vector<std::pair<CellKey, CellKey>>& edges)
        : grid_(std::move(grid)), verts_(std::move(vertices)) {
        std::sort(verts_.begin(), verts_.end());
        verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
        for (CellKey k : verts_) grid_.cell(k);  // range check
        graph_ = graph::Digraph(static_cast<int>(verts_.size()));
        for (auto [a, b] : edges) {
            auto u = position(a), v = position(b);
            if (!u || !v)
                throw DataError("edge endpoint is not a vertex of the map: " +
                                grid_.cell_id(u ? b : a));
            graph_.add_edge(*u, *v);
        }
        graph_.normalize();
    }

    const Grid& grid() const { return grid_; }
    std::span<const CellKey> vertices() const { return verts_; }
    std::size_t vertex_count() const { return verts_.size(); }
    std::size_t edge_count() const { return graph_.edge_count(); }
    const graph::Digraph& digraph() const { return graph_; }

    CellKey vertex_cell(int pos) const { return verts_[pos]; }
    std::optional<int> position(CellKey key) const {
        auto it = std::lower_bound(verts_.begin(), verts_.end(), key);
        if (it == verts_.end() || *it != key) return std::nullopt;
        return static_cast<int>(it - verts_.begin());
    }
    bool has_vertex(CellKey key) const { return position(key).has_value(); }

    bool has_edge(CellKey a, CellKey b) const {
        auto u = position(a), v = position(b);
        return u && v && graph_.has_edge(*u, *v);
    }

    // Image F(G) as cell keys; empty for non-vertices.
    std::vector<CellKey> image(CellKey a) const {
        std::vector<CellKey> out;
        if (auto u = position(a)) {
            out.reserve(graph_.out[*u].size());
            for (int v : graph_.out[*u]) out.push_back(verts_[v]);
        }
        return out;
    }

    std::vector<std::pair<CellKey, CellKey>> edge_list() const {
        std::vector<std::pair<CellKey, CellKey>> result;
        result.reserve(edge_count());
        for (int u = 0; u < graph_.size(); ++u)
            for (int v : graph_.out[u]) result.emplace_back(verts_[u], verts_[v]);
        return result;
    }

    CellSet vertex_set() const { return CellSet(grid_, {verts_.begin(), verts_.end()}); }

    friend bool operator==(const GridMap& a, const GridMap& b) {
        return a.grid_ == b.grid_ && a.verts_ == b.verts_ && a.graph_.out == b.graph_.out;
    }

private:
    Grid grid_;
    std::vector<CellKey> verts_;
    graph::Digraph graph_;
};

// Minimal multivalued map of f on the grid, via interval enclosures:
// F(G) = all cells whose closed box meets the enclosure of f(G).  Boundary
// touch counts.  The enclosure contains the true image, so this is an
// outer approximation; enclosures may be wider than the image, which only
// adds edges.  Throws DataError when an enclosure escapes the box.
inline GridMap minimal_map(const MapSpec& f, const Grid& grid) {
    if (f.dim() != grid.dim())
        throw ConfigError("map spec dimension does not match grid dimension");
    const std::uint64_t count = grid.cell_count();
    if (count > (std::uint64_t{1} << 24))
        throw ConfigError("grid too large for full map construction");

    std::vector<CellKey> vertices(count);
    for (std::uint64_t k = 0; k < count; ++k) vertices[k] = k;

    std::vector<std::pair<CellKey, CellKey>> edges;
    const int n = grid.dim();
    for (std::uint64_t k = 0; k < count; ++k) {
        std::vector<Interval> enclosure = f.eval_box(grid.cell_box(k));
        std::vector<std::uint64_t> first(n), last(n);
        for (int a = 0; a < n; ++a) {
            if (!grid.box().axis(a).contains(enclosure[a]))
                throw DataError("map not into X: enclosure of cell " + grid.cell_id(k) +
                                " leaves the box on axis " + std::to_string(a));
            bool any = grid.axis_range(a, enclosure[a], first[a], last[a]);
            detail::require(any, "enclosure inside the box must meet some cell");
        }
        // product of per-axis index ranges
        std::vector<std::uint64_t> idx(first);
        while (true) {
            CellKey h = 0;
            for (int a = 0; a < n; ++a) h = h * grid.cells_per_axis() + idx[a];
            edges.emplace_back(k, h);
            int a = n - 1;
            while (a >= 0) {
                if (idx[a] < last[a]) {
                    ++idx[a];
                    break;
                }
                idx[a] = first[a];
                --a;
            }
            if (a < 0) break;
        }
    }
    return GridMap(grid, std::move(vertices), edges);
}

inline bool is_closed(const GridMap& map) {
    const auto& g = map.digraph();
    std::vector<char> has_in(g.size(), 0);
    for (int u = 0; u < g.size(); ++u) {
        if (g.out[u].empty()) return false;
        for (int v : g.out[u]) has_in[v] = 1;
    }
    for (char h : has_in)
        if (!h) return false;
    return true;  // vacuously true for the empty map
}

// Cascade removal of stranded vertices (missing in- or out-edges) to the
// fixed point.  The result is closed or empty; vertices on bi-infinite
// orbits are never removed.
inline GridMap trim_stranded(const GridMap& map) {
    const auto& g = map.digraph();
    int n = g.size();
    auto rev = g.reversed();
    std::vector<int> outdeg(n), indeg(n);
    for (int u = 0; u < n; ++u) {
        outdeg[u] = static_cast<int>(g.out[u].size());
        indeg[u] = static_cast<int>(rev.out[u].size());
    }
    std::vector<char> dead(n, 0);
    std::vector<int> work;
    for (int u = 0; u < n; ++u)
        if (outdeg[u] == 0 || indeg[u] == 0) {
            dead[u] = 1;
            work.push_back(u);
        }
    while (!work.empty()) {
        int u = work.back();
        work.pop_back();
        for (int v : g.out[u])
            if (!dead[v] && --indeg[v] == 0) {
                dead[v] = 1;
                work.push_back(v);
            }
        for (int v : rev.out[u])
            if (!dead[v] && --outdeg[v] == 0) {
                dead[v] = 1;
                work.push_back(v);
            }
    }
    std::vector<CellKey> vertices;
    for (int u = 0; u < n; ++u)
        if (!dead[u]) vertices.push_back(map.vertex_cell(u));
    std::vector<std::pair<CellKey, CellKey>> edges;
    for (int u = 0; u < n; ++u)
        if (!dead[u])
            for (int v : g.out[u])
                if (!dead[v]) edges.emplace_back(map.vertex_cell(u), map.vertex_cell(v));
    return GridMap(map.grid(), std::move(vertices), edges);
}

inline GridMap inverse(const GridMap& map) {
    std::vector<std::pair<CellKey, CellKey>> edges = map.edge_list();
    for (auto& e : edges) std::swap(e.first, e.second);
    return GridMap(map.grid(), {map.vertices().begin(), map.vertices().end()}, edges);
}

// S is invariant when S subset F(S) and S subset F^{-1}(S): every cell of S
// has a predecessor and a successor inside S.
inline bool is_invariant(const CellSet& s, const GridMap& map) {
    detail::require(s.grid == map.grid(), "cell set not on the map's grid");
    for (CellKey k : s.cells) {
        auto u = map.position(k);
        if (!u) return false;
        bool succ = false;
        for (int v : map.digraph().out[*u])
            if (s.contains(map.vertex_cell(v))) {
                succ = true;
                break;
            }
        if (!succ) return false;
    }
    auto rev = map.digraph().reversed();
    for (CellKey k : s.cells) {
        int u = *map.position(k);
        bool pred = false;
        for (int v : rev.out[u])
            if (s.contains(map.vertex_cell(v))) {
                pred = true;
                break;
            }
        if (!pred) return false;
    }
    return true;
}

// h is a grid map morphism when it sends vertices to vertices and every
// fine edge G->H to a coarse edge h(G)->h(H).
inline bool is_morphism(const RefinementCellMap& h, const GridMap& fine,
                        const GridMap& coarse) {
    if (!(h.fine() == fine.grid()) || !(h.coarse() == coarse.grid()))
        throw ConfigError("refinement map does not connect these grid maps");
    for (CellKey k : fine.vertices())
        if (!coarse.has_vertex(h.apply(k))) return false;
    for (auto [a, b] : fine.edge_list())
        if (!coarse.has_edge(h.apply(a), h.apply(b))) return false;
    return true;
}

// Induced coarse map h . F . h^{-1}: one edge h(G)->h(H) per fine edge
// G->H.  Contained in any coarse map for which h is a morphism.
inline GridMap induce_coarse(const GridMap& fine, const RefinementCellMap& h) {
    detail::require(h.fine() == fine.grid(), "refinement map does not start at this grid");
    std::vector<CellKey> vertices;
    vertices.reserve(fine.vertex_count());
    for (CellKey k : fine.vertices()) vertices.push_back(h.apply(k));
    std::vector<std::pair<CellKey, CellKey>> edges;
    edges.reserve(fine.edge_count());
    for (auto [a, b] : fine.edge_list()) edges.emplace_back(h.apply(a), h.apply(b));
    return GridMap(h.coarse(), std::move(vertices), edges);
}

}  // namespace morse_persist
