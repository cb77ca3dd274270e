#pragma once

#include <algorithm>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

#include "morse_persist/errors.hpp"

namespace morse_persist::graph {

// Plain directed graph on vertices 0..n-1.  The domain layers (grid maps,
// Morse sets) wrap this; the algorithms live here.
struct Digraph {
    std::vector<std::vector<int>> out;

    Digraph() = default;
    explicit Digraph(int n) : out(n) {}

    int size() const { return static_cast<int>(out.size()); }

    void add_edge(int u, int v) {
        detail::require(u >= 0 && u < size() && v >= 0 && v < size(),
                        "edge endpoint out of range");
        out[u].push_back(v);
    }

    // Sorts and dedupes adjacency lists; call after bulk edge insertion.
    void normalize() {
        for (auto& adj : out) {
            std::sort(adj.begin(), adj.end());
            adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        }
    }

    bool has_edge(int u, int v) const {
        return std::binary_search(out[u].begin(), out[u].end(), v);
    }

    std::size_t edge_count() const {
        std::size_t e = 0;
        for (const auto& adj : out) e += adj.size();
        return e;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> result;
        result.reserve(edge_count());
        for (int u = 0; u < size(); ++u)
            for (int v : out[u]) result.emplace_back(u, v);
        return result;
    }

    Digraph reversed() const {
        Digraph r(size());
        for (int u = 0; u < size(); ++u)
            for (int v : out[u]) r.out[v].push_back(u);
        r.normalize();
        return r;
    }

    static Digraph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        Digraph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        g.normalize();
        return g;
    }
};

// Tarjan's algorithm, iterative.  Components are listed with vertices
// sorted, ordered by their minimal vertex.
inline std::vector<std::vector<int>> strongly_connected_components(const Digraph& g) {
    int n = g.size();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int next_index = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    std::vector<Frame> call;
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            auto& fr = call.back();
            int v = fr.v;
            if (fr.child == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool descended = false;
            while (fr.child < g.out[v].size()) {
                int w = g.out[v][fr.child++];
                if (index[w] == -1) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                std::vector<int> scc;
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = static_cast<int>(comps.size());
                    scc.push_back(w);
                    if (w == v) break;
                }
                std::sort(scc.begin(), scc.end());
                comps.push_back(std::move(scc));
            }
            call.pop_back();
            if (!call.empty()) {
                int parent = call.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

// reach[u][v] == there is a path of length >= 1 from u to v.
inline std::vector<std::vector<char>> reachability(const Digraph& g) {
    int n = g.size();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (int s = 0; s < n; ++s) {
        std::queue<int> q;
        for (int v : g.out[s])
            if (!reach[s][v]) {
                reach[s][v] = 1;
                q.push(v);
            }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : g.out[u])
                if (!reach[s][v]) {
                    reach[s][v] = 1;
                    q.push(v);
                }
        }
    }
    return reach;
}

inline bool is_strongly_connected(const Digraph& g) {
    if (g.size() <= 1) return true;
    auto comps = strongly_connected_components(g);
    return comps.size() == 1;
}

// Period of a strongly connected graph with at least one edge: BFS level
// residues.  gcd over edges u->v of (level(u) + 1 - level(v)); classes are
// levels mod period, rotated so `root` lands in class 0.
inline int period_and_classes(const Digraph& g, int root, std::vector<int>* class_of) {
    detail::require(g.size() >= 1 && g.edge_count() >= 1,
                    "period needs a graph with at least one edge");
    int n = g.size();
    std::vector<long long> level(n, -1);
    std::queue<int> q;
    level[root] = 0;
    q.push(root);
    int visited = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.out[u])
            if (level[v] == -1) {
                level[v] = level[u] + 1;
                q.push(v);
                ++visited;
            }
    }
    detail::require(visited == n, "period requires a strongly connected graph");
    long long d = 0;
    for (int u = 0; u < n; ++u)
        for (int v : g.out[u]) d = std::gcd(d, std::abs(level[u] + 1 - level[v]));
    detail::require(d >= 1, "period residue gcd vanished");
    if (class_of) {
        class_of->assign(n, 0);
        for (int v = 0; v < n; ++v)
            (*class_of)[v] = static_cast<int>(((level[v] % d) + d) % d);
    }
    return static_cast<int>(d);
}

inline Digraph transitive_closure(const Digraph& g) {
    auto reach = reachability(g);
    Digraph c(g.size());
    for (int u = 0; u < g.size(); ++u)
        for (int v = 0; v < g.size(); ++v)
            if (reach[u][v] && u != v) c.out[u].push_back(v);
    c.normalize();
    return c;
}

inline bool is_dag(const Digraph& g) {
    auto reach = reachability(g);
    for (int v = 0; v < g.size(); ++v)
        if (reach[v][v]) return false;
    return true;
}

// Quotient by a block map: one edge (b(u), b(v)) per edge (u, v); internal
// edges become self-loops.
inline Digraph quotient(const Digraph& g, const std::vector<int>& block_of, int blocks) {
    Digraph q(blocks);
    for (int u = 0; u < g.size(); ++u)
        for (int v : g.out[u]) q.add_edge(block_of[u], block_of[v]);
    q.normalize();
    return q;
}

// Subgraph induced on `vertices` (sorted unique); vertex i of the result is
// vertices[i].
inline Digraph induced_subgraph(const Digraph& g, const std::vector<int>& vertices) {
    std::vector<int> pos(g.size(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<int>(i);
    Digraph s(static_cast<int>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (int v : g.out[vertices[i]])
            if (pos[v] != -1) s.out[i].push_back(pos[v]);
    s.normalize();
    return s;
}

// Edges of g^d: u -> v when there is a walk of exactly d edges.
inline Digraph power(const Digraph& g, int d) {
    detail::require(d >= 1, "graph power needs d >= 1");
    int n = g.size();
    std::vector<std::vector<char>> cur(n, std::vector<char>(n, 0));
    for (int u = 0; u < n; ++u)
        for (int v : g.out[u]) cur[u][v] = 1;
    for (int step = 1; step < d; ++step) {
        std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
        for (int u = 0; u < n; ++u)
            for (int m = 0; m < n; ++m)
                if (cur[u][m])
                    for (int v : g.out[m]) next[u][v] = 1;
        cur = std::move(next);
    }
    Digraph p(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (cur[u][v]) p.out[u].push_back(v);
    p.normalize();
    return p;
}

}  // namespace morse_persist::graph
