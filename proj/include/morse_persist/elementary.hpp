#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "morse_persist/errors.hpp"
#include "morse_persist/morse_graph.hpp"

namespace morse_persist {

// The three elementary Morse-graph operations.  MergeVertices(upper, lower)
// requires upper > lower; the merged vertex keeps `upper`'s id.
struct AddVertex {
    int id;
    friend bool operator==(const AddVertex&, const AddVertex&) = default;
};
struct AddEdge {
    int from, to;
    friend bool operator==(const AddEdge&, const AddEdge&) = default;
};
struct MergeVertices {
    int upper, lower;
    friend bool operator==(const MergeVertices&, const MergeVertices&) = default;
};
using ElementaryOp = std::variant<AddVertex, AddEdge, MergeVertices>;

inline std::string to_string(const ElementaryOp& op) {
    if (auto* av = std::get_if<AddVertex>(&op))
        return "add_vertex(" + std::to_string(av->id) + ")";
    if (auto* ae = std::get_if<AddEdge>(&op))
        return "add_edge(" + std::to_string(ae->from) + "," + std::to_string(ae->to) + ")";
    auto& mv = std::get<MergeVertices>(op);
    return "merge(" + std::to_string(mv.upper) + "," + std::to_string(mv.lower) + ")";
}

// Transitively closed DAG with stable vertex ids; the working
// representation while applying elementary operations.
class OpGraph {
public:
    OpGraph() = default;

    static OpGraph from(const MorseGraph& mg) {
        OpGraph g;
        for (int v = 0; v < mg.vertex_count; ++v) g.adj_[v];
        for (auto [i, j] : mg.edges) g.adj_[i].insert(j);
        return g;
    }

    bool has_vertex(int v) const { return adj_.count(v) != 0; }
    bool has_edge(int u, int v) const {
        auto it = adj_.find(u);
        return it != adj_.end() && it->second.count(v) != 0;
    }
    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const {
        std::size_t e = 0;
        for (const auto& [v, out] : adj_) e += out.size();
        return e;
    }
    std::vector<int> vertices() const {
        std::vector<int> vs;
        vs.reserve(adj_.size());
        for (const auto& [v, out] : adj_) vs.push_back(v);
        return vs;
    }
    const std::set<int>& below(int v) const { return adj_.at(v); }
    std::set<int> above(int v) const {
        std::set<int> r;
        for (const auto& [u, out] : adj_)
            if (out.count(v)) r.insert(u);
        return r;
    }
    bool comparable(int u, int v) const { return has_edge(u, v) || has_edge(v, u); }
    std::set<int> incomparable(int v) const {
        std::set<int> r;
        for (const auto& [u, out] : adj_)
            if (u != v && !comparable(u, v)) r.insert(u);
        return r;
    }
    std::set<int> between(int v, int vp) const {
        std::set<int> r;
        for (int u : adj_.at(v))
            if (has_edge(u, vp)) r.insert(u);
        return r;
    }

    // Side conditions; empty string means the operation is legal now.
    std::string check(const ElementaryOp& op) const {
        if (auto* av = std::get_if<AddVertex>(&op)) {
            if (has_vertex(av->id)) return "vertex id already in use";
            return {};
        }
        if (auto* ae = std::get_if<AddEdge>(&op)) {
            int v = ae->from, vp = ae->to;
            if (!has_vertex(v) || !has_vertex(vp)) return "edge endpoint missing";
            if (v == vp) return "loop edges are not allowed";
            if (comparable(v, vp)) return "endpoints must be incomparable";
            for (int u : above(v))
                if (!comparable(u, vp)) return "source is not maximal among vertices incomparable to target";
            for (int u : below(vp))
                if (!comparable(u, v)) return "target is not minimal among vertices incomparable to source";
            return {};
        }
        auto& mv = std::get<MergeVertices>(op);
        int v = mv.upper, vp = mv.lower;
        if (!has_vertex(v) || !has_vertex(vp)) return "merge endpoint missing";
        if (!has_edge(v, vp)) return "merge requires upper > lower";
        if (!between(v, vp).empty()) return "merge requires no intermediate vertices";
        for (int u : above(vp))
            for (int up : below(v))
                if (u != up && !has_edge(u, up))
                    return "merge requires everything above the lower vertex to dominate "
                           "everything below the upper one";
        return {};
    }

    void apply(const ElementaryOp& op) {
        std::string err = check(op);
        if (!err.empty())
            throw DataError("illegal elementary operation " + to_string(op) + ": " + err);
        if (auto* av = std::get_if<AddVertex>(&op)) {
            adj_[av->id];
            return;
        }
        if (auto* ae = std::get_if<AddEdge>(&op)) {
            adj_[ae->from].insert(ae->to);
            return;
        }
        auto& mv = std::get<MergeVertices>(op);
        int v = mv.upper, vp = mv.lower;
        std::set<int> out = adj_[v];
        for (int w : adj_[vp]) out.insert(w);
        out.erase(v);
        out.erase(vp);
        for (auto& [u, nbrs] : adj_) {
            if (nbrs.erase(vp)) nbrs.insert(v);
        }
        adj_.erase(vp);
        adj_[v] = std::move(out);
        adj_[v].erase(v);
    }

    HomologySummary homology() const {
        std::vector<int> ids;
        MorseGraph mg = to_morse_graph(&ids);
        return morse_persist::homology(mg);
    }

    // Canonical compaction: vertex i of the result is ids[i] (ascending).
    MorseGraph to_morse_graph(std::vector<int>* ids_out = nullptr) const {
        std::vector<int> ids = vertices();
        std::map<int, int> pos;
        for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<int>(i);
        std::vector<std::pair<int, int>> edges;
        for (const auto& [u, out] : adj_)
            for (int v : out) edges.emplace_back(pos.at(u), pos.at(v));
        if (ids_out) *ids_out = std::move(ids);
        return MorseGraph(static_cast<int>(adj_.size()), std::move(edges));
    }

private:
    std::map<int, std::set<int>> adj_;  // every vertex has an entry
};

// Homology change of one legal operation, per the elementary-operation
// homology theorem; computed without touching the graph.
inline std::pair<long long, long long> homology_delta(const ElementaryOp& op,
                                                      const MorseGraph& mg) {
    OpGraph g = OpGraph::from(mg);
    std::string err = g.check(op);
    if (!err.empty())
        throw DataError("illegal elementary operation " + to_string(op) + ": " + err);
    if (std::holds_alternative<AddVertex>(op)) return {+1, 0};
    if (auto* ae = std::get_if<AddEdge>(&op)) {
        auto comp = undirected_components(mg);
        if (comp[ae->from] != comp[ae->to]) return {-1, 0};
        return {0, +1};
    }
    auto& mv = std::get<MergeVertices>(op);
    long long a = static_cast<long long>(g.above(mv.upper).size());
    long long b = static_cast<long long>(g.below(mv.lower).size());
    return {0, -(a + b)};
}

inline MorseGraph apply_ops(const MorseGraph& start, const std::vector<ElementaryOp>& ops,
                            std::vector<int>* final_ids = nullptr) {
    OpGraph g = OpGraph::from(start);
    for (const auto& op : ops) g.apply(op);
    return g.to_morse_graph(final_ids);
}

namespace detail {

// Within one vmap fibre, the order in which vertices will be chained and
// merged: topological w.r.t. existing edges, smallest id first among ties.
inline std::vector<int> fibre_chain(const OpGraph& g, const std::set<int>& members) {
    std::vector<int> chain;
    std::set<int> remaining = members;
    while (!remaining.empty()) {
        int pick = -1;
        for (int v : remaining) {
            bool top = true;
            for (int u : remaining)
                if (u != v && g.has_edge(u, v)) {
                    top = false;
                    break;
                }
            if (top) {
                pick = v;
                break;  // set iteration is ascending, so first hit = smallest id
            }
        }
        detail::require(pick != -1, "fibre order must be acyclic");
        chain.push_back(pick);
        remaining.erase(pick);
    }
    return chain;
}

}  // namespace detail

// Decomposes the passage src -> dst (with vertex identification vmap) into
// a sequence of elementary operations, each legal at its application point:
// vertices first, then the forced edges picked maximal/minimal-first, then
// fibre merges top-down.
inline std::vector<ElementaryOp> elementary_decomposition(const MorseGraph& src,
                                                          const MorseGraph& dst,
                                                          const std::vector<int>& vmap) {
    if (!is_graph_homomorphism(src, dst, vmap))
        throw DataError("no valid decomposition: vertex map is not a Morse graph "
                        "homomorphism");

    std::vector<ElementaryOp> ops;
    OpGraph g = OpGraph::from(src);
    std::map<int, int> psi;  // working id -> dst vertex
    for (int v = 0; v < src.vertex_count; ++v) psi[v] = vmap[v];

    // 1. new vertices
    std::set<int> hit(vmap.begin(), vmap.end());
    int next_id = src.vertex_count;
    for (int t = 0; t < dst.vertex_count; ++t) {
        if (hit.count(t)) continue;
        ElementaryOp op = AddVertex{next_id};
        ops.push_back(op);
        g.apply(op);
        psi[next_id] = t;
        ++next_id;
    }

    // the proof's iterative edge procedure: make a > b by repeatedly adding
    // the legal pair (maximal above a incomparable to b, minimal below b
    // incomparable to that), ending with (a, b) itself
    auto add_edge_towards = [&](int a, int b) {
        detail::require(!g.has_edge(b, a), "edge procedure target is inverted");
        while (!g.has_edge(a, b)) {
            std::set<int> cand = g.above(a);
            cand.insert(a);
            int v = -1;
            for (int u : cand) {
                if (g.comparable(u, b) || u == b) continue;
                bool maximal = true;
                for (int w : cand)
                    if (w != u && w != b && !g.comparable(w, b) && g.has_edge(w, u)) {
                        maximal = false;
                        break;
                    }
                if (maximal) {
                    v = u;
                    break;
                }
            }
            detail::require(v != -1, "edge procedure found no source candidate");
            std::set<int> cand2 = g.below(b);
            cand2.insert(b);
            int vp = -1;
            for (int u : cand2) {
                if (g.comparable(u, v) || u == v) continue;
                bool minimal = true;
                for (int w : cand2)
                    if (w != u && w != v && !g.comparable(w, v) && g.has_edge(u, w)) {
                        minimal = false;
                        break;
                    }
                if (minimal) {
                    vp = u;
                    break;
                }
            }
            detail::require(vp != -1, "edge procedure found no target candidate");
            ElementaryOp op = AddEdge{v, vp};
            ops.push_back(op);
            g.apply(op);
        }
    };

    // 2. fibre chains: the merge order within each vmap fibre
    std::map<int, std::set<int>> fibre;
    for (const auto& [id, t] : psi) fibre[t].insert(id);
    std::map<int, std::vector<int>> chain;
    for (const auto& [t, members] : fibre) chain[t] = detail::fibre_chain(g, members);

    // 3. one representative edge per missing target edge, smallest working
    // ids first
    std::vector<std::pair<int, int>> representatives;
    for (auto [p, q] : dst.edges) {
        int best_a = -1, best_b = -1;
        bool covered = false;
        for (const auto& [a, ta] : psi) {
            if (ta != p) continue;
            for (const auto& [b, tb] : psi) {
                if (tb != q) continue;
                if (g.has_edge(a, b)) covered = true;
                if (best_a == -1 || std::make_pair(a, b) < std::make_pair(best_a, best_b)) {
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (!covered) representatives.emplace_back(best_a, best_b);
    }
    std::sort(representatives.begin(), representatives.end());
    for (auto [a, b] : representatives)
        if (!g.has_edge(a, b)) add_edge_towards(a, b);

    // 4. merges, per fibre, top of the chain absorbing downward; each merge
    // first secures its comparability and its above/below side condition
    for (const auto& [t, members] : chain) {
        if (members.size() < 2) continue;
        int acc = members.front();
        for (std::size_t i = 1; i < members.size(); ++i) {
            int lower = members[i];
            if (!g.has_edge(acc, lower)) add_edge_towards(acc, lower);
            while (true) {
                std::pair<int, int> missing{-1, -1};
                for (int u : g.above(lower)) {
                    for (int up : g.below(acc)) {
                        if (u == up || g.has_edge(u, up)) continue;
                        if (missing.first == -1 || std::make_pair(u, up) < missing)
                            missing = {u, up};
                    }
                }
                if (missing.first == -1) break;
                add_edge_towards(missing.first, missing.second);
            }
            ElementaryOp op = MergeVertices{acc, lower};
            ops.push_back(op);
            g.apply(op);
            psi.erase(lower);
        }
    }

    // the result must be dst exactly, under psi
    detail::require(g.vertex_count() == static_cast<std::size_t>(dst.vertex_count),
                    "decomposition must end with the target vertex count");
    std::size_t edges_seen = 0;
    for (int id : g.vertices()) {
        for (int w : g.below(id)) {
            detail::require(dst.has_edge(psi.at(id), psi.at(w)),
                            "decomposition produced a non-target edge");
            ++edges_seen;
        }
    }
    detail::require(edges_seen == dst.edges.size(),
                    "decomposition must produce every target edge");
    return ops;
}

}  // namespace morse_persist
