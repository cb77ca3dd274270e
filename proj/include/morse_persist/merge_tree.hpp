#pragma once

#include <string>
#include <utility>
#include <vector>

#include "morse_persist/errors.hpp"
#include "morse_persist/morse.hpp"

namespace morse_persist {

// Vertex-tracking tree across a grid chain, finest level first.  Node
// (k, i) is Morse set i at level k; its parent is the set h-bar sends it to
// at level k+1.
struct MergeTree {
    std::vector<std::string> labels;
    std::vector<int> level_sizes;
    std::vector<std::vector<int>> parent;  // parent[k][i], k < levels()-1

    int levels() const { return static_cast<int>(level_sizes.size()); }
    int node_count() const {
        int n = 0;
        for (int s : level_sizes) n += s;
        return n;
    }
    int edge_count() const { return node_count() - level_sizes.back(); }

    // Nodes at level k with no child at level k-1: first appearances.
    std::vector<int> new_nodes(int level) const {
        std::vector<char> has_child(level_sizes[level], 0);
        if (level > 0)
            for (int c : parent[level - 1]) has_child[c] = 1;
        std::vector<int> born;
        for (int i = 0; i < level_sizes[level]; ++i)
            if (level == 0 || !has_child[i]) born.push_back(i);
        return born;
    }

    struct BranchBar {
        int birth;  // level of first appearance
        int death;  // level where the branch merges into an older one; -1 = alive
    };

    // Branch persistence by the elder rule: at a merge, the branch with the
    // earliest birth (smallest node index on ties) survives.
    std::vector<BranchBar> branch_bars() const {
        std::vector<BranchBar> bars;
        // (birth, tiebreak) carried by the surviving branch at each node
        std::vector<std::pair<int, int>> current;
        for (int k = 0; k < levels(); ++k) {
            std::vector<std::pair<int, int>> next(level_sizes[k], {-1, -1});
            if (k > 0) {
                for (int i = 0; i < level_sizes[k - 1]; ++i) {
                    int p = parent[k - 1][i];
                    if (next[p].first == -1) {
                        next[p] = current[i];
                    } else if (current[i] < next[p]) {
                        bars.push_back({next[p].first, k});  // elder continues
                        next[p] = current[i];
                    } else {
                        bars.push_back({current[i].first, k});
                    }
                }
            }
            for (int i = 0; i < level_sizes[k]; ++i)
                if (next[i].first == -1) next[i] = {k, i};
            current = std::move(next);
        }
        for (const auto& [birth, tie] : current) bars.push_back({birth, -1});
        return bars;
    }

    // Branches spanning the whole chain.
    int full_branches() const {
        int n = 0;
        for (const auto& bar : branch_bars())
            if (bar.birth == 0 && bar.death == -1) ++n;
        return n;
    }
};

inline MergeTree merge_tree(const std::vector<MorseMorphism>& chain,
                            std::vector<std::string> labels) {
    detail::require(!chain.empty(), "merge tree needs at least one morphism");
    detail::require(labels.size() == chain.size() + 1,
                    "merge tree needs one label per level");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        if (chain[i].dst_set_count != chain[i + 1].src_set_count)
            throw DataError("morphism chain mismatch between levels " +
                            std::to_string(i) + " and " + std::to_string(i + 1));
    MergeTree t;
    t.labels = std::move(labels);
    t.level_sizes.push_back(chain.front().src_set_count);
    for (const auto& m : chain) {
        t.level_sizes.push_back(m.dst_set_count);
        t.parent.push_back(m.set_map);
    }
    return t;
}

inline MergeTree merge_tree_single(int sets, std::string label) {
    MergeTree t;
    t.labels = {std::move(label)};
    t.level_sizes = {sets};
    return t;
}

}  // namespace morse_persist
