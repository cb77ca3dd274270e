#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "morse_persist/digraph.hpp"
#include "morse_persist/errors.hpp"
#include "morse_persist/gridmap.hpp"

namespace morse_persist {

// Finest Morse decomposition: Morse sets are the nontrivial strongly
// connected components (an SCC with at least one edge), ordered by
// reachability.  Sets are indexed canonically by their minimal cell, and
// `order` stores the strict relation S_j > S_k as pairs (j, k),
// transitively closed.
struct MorseDecomposition {
    GridMap map;
    std::vector<CellSet> sets;
    std::vector<std::pair<int, int>> order;

    int set_count() const { return static_cast<int>(sets.size()); }

    bool strictly_above(int j, int k) const {
        return std::binary_search(order.begin(), order.end(), std::make_pair(j, k));
    }
    // The partial order >= (reflexive).
    bool above(int j, int k) const { return j == k || strictly_above(j, k); }

    // Index of the Morse set containing the cell, or -1.
    int set_of(CellKey cell) const {
        for (int j = 0; j < set_count(); ++j)
            if (sets[j].contains(cell)) return j;
        return -1;
    }
};

namespace detail {

// Nontrivial SCCs of the map's graph as sorted vertex-position lists,
// ordered by minimal member.
inline std::vector<std::vector<int>> nontrivial_sccs(const GridMap& map) {
    auto comps = graph::strongly_connected_components(map.digraph());
    std::vector<std::vector<int>> result;
    for (auto& comp : comps) {
        bool nontrivial = comp.size() > 1 ||
                          map.digraph().has_edge(comp.front(), comp.front());
        if (nontrivial) result.push_back(std::move(comp));
    }
    return result;
}

}  // namespace detail

// Cells lying on some nontrivial orbit from themselves to themselves;
// the union of the nontrivial SCCs.
inline CellSet recurrent_cells(const GridMap& map) {
    std::vector<CellKey> cells;
    for (const auto& comp : detail::nontrivial_sccs(map))
        for (int v : comp) cells.push_back(map.vertex_cell(v));
    return CellSet(map.grid(), std::move(cells));
}

inline MorseDecomposition finest_decomposition(const GridMap& map) {
    auto comps = detail::nontrivial_sccs(map);
    int m = static_cast<int>(comps.size());

    MorseDecomposition md;
    md.map = map;
    md.sets.reserve(m);
    std::vector<int> set_of_vertex(map.digraph().size(), -1);
    for (int j = 0; j < m; ++j) {
        std::vector<CellKey> cells;
        cells.reserve(comps[j].size());
        for (int v : comps[j]) {
            cells.push_back(map.vertex_cell(v));
            set_of_vertex[v] = j;
        }
        md.sets.emplace_back(map.grid(), std::move(cells));
    }

    // Orbits between sets may pass through transient vertices; one BFS per
    // Morse set over the full graph decides reachability (any cell of the
    // target set extends to its representative inside the SCC).
    const auto& g = map.digraph();
    std::vector<int> queue;
    std::vector<char> seen(g.size());
    for (int j = 0; j < m; ++j) {
        std::fill(seen.begin(), seen.end(), 0);
        queue.assign(1, comps[j].front());
        seen[comps[j].front()] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (int v : g.out[queue[head]])
                if (!seen[v]) {
                    seen[v] = 1;
                    queue.push_back(v);
                }
        for (int k = 0; k < m; ++k) {
            if (j == k) continue;
            if (seen[comps[k].front()]) md.order.emplace_back(j, k);
        }
    }
    std::sort(md.order.begin(), md.order.end());
    return md;
}

// The decomposition together with the restriction of F to each Morse set.
struct AugmentedMorseDecomposition {
    MorseDecomposition decomposition;
    std::vector<GridMap> restriction_maps;

    const GridMap& restriction(int j) const { return restriction_maps[j]; }
};

inline AugmentedMorseDecomposition restrictions(const MorseDecomposition& md) {
    AugmentedMorseDecomposition aug;
    aug.decomposition = md;
    aug.restriction_maps.reserve(md.sets.size());
    for (const CellSet& s : md.sets) {
        std::vector<std::pair<CellKey, CellKey>> edges;
        for (CellKey a : s.cells)
            for (CellKey b : md.map.image(a))
                if (s.contains(b)) edges.emplace_back(a, b);
        GridMap r(md.map.grid(), {s.cells.begin(), s.cells.end()}, edges);
        detail::require(graph::is_strongly_connected(r.digraph()),
                        "Morse set restriction must be strongly connected");
        aug.restriction_maps.push_back(std::move(r));
    }
    return aug;
}

// Morphism of augmented Morse decompositions: the set-level map h-bar plus
// the underlying cell map whose per-set restrictions are the h_j.
struct MorseMorphism {
    RefinementCellMap cell_map;
    std::vector<int> set_map;  // source set index -> target set index
    int src_set_count = 0;
    int dst_set_count = 0;

    // h_j: the cells of source set j paired with their images.
    std::vector<std::pair<CellKey, CellKey>> restriction(const CellSet& src_set) const {
        std::vector<std::pair<CellKey, CellKey>> out;
        out.reserve(src_set.cells.size());
        for (CellKey k : src_set.cells) out.emplace_back(k, cell_map.apply(k));
        return out;
    }
};

inline MorseMorphism morse_morphism(const RefinementCellMap& h,
                                    const AugmentedMorseDecomposition& src,
                                    const AugmentedMorseDecomposition& dst) {
    const MorseDecomposition& a = src.decomposition;
    const MorseDecomposition& b = dst.decomposition;
    if (!is_morphism(h, a.map, b.map))
        throw DataError("not a morphism: refinement map does not carry the fine grid "
                        "map into the coarse one");

    MorseMorphism mm{h, {}, a.set_count(), b.set_count()};
    mm.set_map.reserve(a.sets.size());
    for (const CellSet& s : a.sets) {
        int target = -1;
        for (CellKey k : s.cells) {
            int t = b.set_of(h.apply(k));
            detail::require(t >= 0, "image of a recurrent cell must be recurrent");
            if (target == -1) target = t;
            detail::require(t == target, "Morse set image must land in one Morse set");
        }
        mm.set_map.push_back(target);
    }
    // order preservation follows from the Morse-set construction; verify.
    for (auto [j, k] : a.order)
        detail::require(b.above(mm.set_map[j], mm.set_map[k]),
                        "Morse morphism must preserve the partial order");
    return mm;
}

inline MorseMorphism compose(const MorseMorphism& first, const MorseMorphism& second) {
    detail::require(first.dst_set_count == second.src_set_count,
                    "Morse morphisms do not chain");
    MorseMorphism out{compose(first.cell_map, second.cell_map),
                      {},
                      first.src_set_count,
                      second.dst_set_count};
    out.set_map.reserve(first.set_map.size());
    for (int t : first.set_map) out.set_map.push_back(second.set_map[t]);
    return out;
}

}  // namespace morse_persist
