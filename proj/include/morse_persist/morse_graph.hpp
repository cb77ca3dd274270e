#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "morse_persist/errors.hpp"
#include "morse_persist/morse.hpp"

namespace morse_persist {

// Condensation of the grid map onto its Morse sets: vertex i is Morse set
// S_i, with an edge i->j when S_i > S_j.  Always a transitively closed DAG
// with no loops and no parallel edges.
struct MorseGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;  // sorted, strict pairs

    MorseGraph() = default;
    MorseGraph(int n, std::vector<std::pair<int, int>> e)
        : vertex_count(n), edges(std::move(e)) {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        validate();
    }

    bool has_edge(int i, int j) const {
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
    }

    // Vertices above v (u > v), below v, and incomparable to v.  With
    // transitive closure these are exactly the in/out neighbourhoods.
    std::vector<int> above(int v) const {
        std::vector<int> r;
        for (auto [i, j] : edges)
            if (j == v) r.push_back(i);
        return r;
    }
    std::vector<int> below(int v) const {
        std::vector<int> r;
        for (auto [i, j] : edges)
            if (i == v) r.push_back(j);
        return r;
    }
    std::vector<int> incomparable(int v) const {
        std::vector<int> r;
        for (int u = 0; u < vertex_count; ++u)
            if (u != v && !has_edge(u, v) && !has_edge(v, u)) r.push_back(u);
        return r;
    }
    // I(v, v'): vertices strictly between a pair v > v'.
    std::vector<int> between(int v, int vp) const {
        std::vector<int> r;
        for (int u = 0; u < vertex_count; ++u)
            if (has_edge(v, u) && has_edge(u, vp)) r.push_back(u);
        return r;
    }

    graph::Digraph digraph() const {
        return graph::Digraph::from_edges(vertex_count, edges);
    }

    friend bool operator==(const MorseGraph& a, const MorseGraph& b) {
        return a.vertex_count == b.vertex_count && a.edges == b.edges;
    }

private:
    void validate() const {
        for (auto [i, j] : edges) {
            detail::require(i >= 0 && i < vertex_count && j >= 0 && j < vertex_count,
                            "Morse graph edge out of range");
            detail::require(i != j, "Morse graph admits no loops");
        }
        auto g = digraph();
        detail::require(graph::is_dag(g), "Morse graph must be acyclic");
        for (auto [i, j] : edges)
            for (int k : g.out[j])
                detail::require(has_edge(i, k), "Morse graph must be transitively closed");
    }
};

inline MorseGraph morse_graph(const MorseDecomposition& md) {
    return MorseGraph(md.set_count(), md.order);
}

// The vertex map of the directed graph homomorphism induced by a Morse
// morphism; edges map to edges or collapse onto merged endpoints.
inline std::vector<int> graph_morphism(const MorseMorphism& mm) {
    return mm.set_map;
}

inline bool is_graph_homomorphism(const MorseGraph& src, const MorseGraph& dst,
                                  const std::vector<int>& vmap) {
    if (static_cast<int>(vmap.size()) != src.vertex_count) return false;
    for (int t : vmap)
        if (t < 0 || t >= dst.vertex_count) return false;
    for (auto [i, j] : src.edges) {
        if (vmap[i] == vmap[j]) continue;  // collapsed edge
        if (!dst.has_edge(vmap[i], vmap[j])) return false;
    }
    return true;
}

struct HomologySummary {
    long long h0 = 0;
    long long h1 = 0;

    friend bool operator==(const HomologySummary&, const HomologySummary&) = default;
};

// Connected components of the underlying undirected graph; -1 terms unused.
inline std::vector<int> undirected_components(const MorseGraph& mg) {
    std::vector<int> parent(mg.vertex_count);
    for (int i = 0; i < mg.vertex_count; ++i) parent[i] = i;
    std::vector<int>* p = &parent;
    auto find = [p](int x) {
        while ((*p)[x] != x) {
            (*p)[x] = (*p)[(*p)[x]];
            x = (*p)[x];
        }
        return x;
    };
    for (auto [i, j] : mg.edges) {
        int a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> comp(mg.vertex_count, -1);
    int next = 0;
    for (int i = 0; i < mg.vertex_count; ++i) {
        int r = find(i);
        if (comp[r] == -1) comp[r] = next++;
        comp[i] = comp[r];
    }
    return comp;
}

// Graph homology over R: H0 counts components, H1 the cycle space,
// dim H1 = E - V + components.
inline HomologySummary homology(const MorseGraph& mg) {
    auto comp = undirected_components(mg);
    long long components = comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
    HomologySummary h;
    h.h0 = components;
    h.h1 = static_cast<long long>(mg.edges.size()) - mg.vertex_count + components;
    detail::require(h.h1 >= 0, "cycle rank must be nonnegative");
    return h;
}

}  // namespace morse_persist
