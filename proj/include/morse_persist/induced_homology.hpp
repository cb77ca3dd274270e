#pragma once

#include <map>
#include <utility>
#include <vector>

#include "morse_persist/errors.hpp"
#include "morse_persist/morse_graph.hpp"
#include "morse_persist/ratmat.hpp"

namespace morse_persist {

// Cycle space of a Morse graph: spanning forest over the undirected graph,
// one fundamental cycle per non-forest edge, expressed as rational chains
// over the graph's canonical (sorted) directed edge list.
struct CycleBasis {
    std::vector<std::pair<int, int>> edges;  // == MorseGraph::edges
    std::vector<std::vector<Rational>> cycles;
};

inline CycleBasis cycle_basis(const MorseGraph& mg) {
    CycleBasis cb;
    cb.edges = mg.edges;
    int n = mg.vertex_count;
    int m = static_cast<int>(mg.edges.size());

    // undirected adjacency: (neighbour, edge index, +1 when traversing the
    // stored direction)
    std::vector<std::vector<std::tuple<int, int, int>>> adj(n);
    for (int e = 0; e < m; ++e) {
        auto [a, b] = mg.edges[e];
        adj[a].emplace_back(b, e, +1);
        adj[b].emplace_back(a, e, -1);
    }

    std::vector<int> parent(n, -1), parent_edge(n, -1), parent_dir(n, 0), depth(n, 0);
    std::vector<char> visited(n, 0), tree_edge(m, 0);
    for (int root = 0; root < n; ++root) {
        if (visited[root]) continue;
        visited[root] = 1;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [v, e, dir] : adj[u]) {
                if (visited[v]) continue;
                visited[v] = 1;
                parent[v] = u;
                parent_edge[v] = e;
                parent_dir[v] = dir;  // traversing v -> u is -dir
                depth[v] = depth[u] + 1;
                tree_edge[e] = 1;
                stack.push_back(v);
            }
        }
    }

    // fundamental cycle of e = (a, b): traverse e, then the tree path from b
    // back to a; moving from x to parent[x] traverses parent_edge against
    // parent_dir.
    for (int e = 0; e < m; ++e) {
        if (tree_edge[e]) continue;
        auto [a, b] = mg.edges[e];
        std::vector<Rational> vec(m, Rational(0));
        vec[e] += 1;
        int x = b, y = a;
        while (depth[x] > depth[y]) {
            vec[parent_edge[x]] += Rational(-parent_dir[x]);
            x = parent[x];
        }
        while (depth[y] > depth[x]) {
            vec[parent_edge[y]] -= Rational(-parent_dir[y]);
            y = parent[y];
        }
        while (x != y) {
            vec[parent_edge[x]] += Rational(-parent_dir[x]);
            vec[parent_edge[y]] -= Rational(-parent_dir[y]);
            x = parent[x];
            y = parent[y];
        }
        cb.cycles.push_back(std::move(vec));
    }
    return cb;
}

// Maps induced on H0 and H1 by a Morse graph homomorphism, as exact
// matrices with respect to the component bases and the fundamental cycle
// bases.  Collapsed edges push forward to zero.
struct InducedHomology {
    RatMatrix h0;  // dst components x src components
    RatMatrix h1;  // dim H1(dst) x dim H1(src)
    long long h0_rank = 0;
    long long h1_rank = 0;
};

inline InducedHomology induced_homology(const MorseGraph& src, const MorseGraph& dst,
                                        const std::vector<int>& vmap) {
    detail::require(is_graph_homomorphism(src, dst, vmap),
                    "induced homology needs a Morse graph homomorphism");
    InducedHomology out;

    auto src_comp = undirected_components(src);
    auto dst_comp = undirected_components(dst);
    int nsrc = src_comp.empty() ? 0 : 1 + *std::max_element(src_comp.begin(), src_comp.end());
    int ndst = dst_comp.empty() ? 0 : 1 + *std::max_element(dst_comp.begin(), dst_comp.end());
    out.h0 = rat_zero(ndst, nsrc);
    std::vector<int> image(nsrc, -1);
    for (int v = 0; v < src.vertex_count; ++v) {
        int c = src_comp[v], d = dst_comp[vmap[v]];
        detail::require(image[c] == -1 || image[c] == d,
                        "homomorphism must map components into components");
        image[c] = d;
    }
    for (int c = 0; c < nsrc; ++c) out.h0.at(image[c], c) = 1;
    out.h0_rank = rat_rank(out.h0);

    CycleBasis sb = cycle_basis(src);
    CycleBasis db = cycle_basis(dst);
    std::map<std::pair<int, int>, int> dst_edge_index;
    for (std::size_t e = 0; e < db.edges.size(); ++e)
        dst_edge_index[db.edges[e]] = static_cast<int>(e);

    // dst cycle basis as columns over the dst edge space
    RatMatrix basis = rat_zero(db.edges.size(), db.cycles.size());
    for (std::size_t c = 0; c < db.cycles.size(); ++c)
        for (std::size_t e = 0; e < db.edges.size(); ++e) basis.at(e, c) = db.cycles[c][e];

    out.h1 = rat_zero(db.cycles.size(), sb.cycles.size());
    for (std::size_t c = 0; c < sb.cycles.size(); ++c) {
        std::vector<Rational> pushed(db.edges.size(), Rational(0));
        for (std::size_t e = 0; e < sb.edges.size(); ++e) {
            if (sb.cycles[c][e] == 0) continue;
            auto [a, b] = sb.edges[e];
            int pa = vmap[a], pb = vmap[b];
            if (pa == pb) continue;  // collapsed
            auto it = dst_edge_index.find({pa, pb});
            detail::require(it != dst_edge_index.end(),
                            "edge image missing from target Morse graph");
            pushed[it->second] += sb.cycles[c][e];
        }
        auto coords = solve_in_span(basis, pushed);
        detail::require(coords.has_value(), "pushed cycle must lie in the target cycle space");
        for (std::size_t r = 0; r < coords->size(); ++r) out.h1.at(r, c) = (*coords)[r];
    }
    out.h1_rank = rat_rank(out.h1);
    return out;
}

}  // namespace morse_persist
