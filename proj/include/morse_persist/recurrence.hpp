#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "morse_persist/digraph.hpp"
#include "morse_persist/errors.hpp"
#include "morse_persist/morse.hpp"

namespace morse_persist {

// Period d of a strongly connected map and its cyclic partition
// S_1,...,S_d: every edge leaves class i into class i+1 mod d.  Class 1
// (index 0 here) contains the lexicographically minimal cell.
struct PeriodData {
    GridMap map;
    int period = 1;
    std::vector<CellSet> classes;

    bool mixing() const { return period == 1; }

    // 0-based class of a cell, or -1.
    int class_of(CellKey cell) const {
        for (int i = 0; i < period; ++i)
            if (classes[i].contains(cell)) return i;
        return -1;
    }
};

inline PeriodData period(const GridMap& map) {
    if (!graph::is_strongly_connected(map.digraph()) || map.edge_count() == 0)
        throw DataError("period requires a strongly connected map with an edge");
    std::vector<int> class_of;
    // root 0 is the minimal cell, so class 0 contains it
    int d = graph::period_and_classes(map.digraph(), 0, &class_of);
    PeriodData pd;
    pd.map = map;
    pd.period = d;
    std::vector<std::vector<CellKey>> buckets(d);
    for (int v = 0; v < map.digraph().size(); ++v)
        buckets[class_of[v]].push_back(map.vertex_cell(v));
    pd.classes.reserve(d);
    for (auto& b : buckets) pd.classes.emplace_back(map.grid(), std::move(b));
    return pd;
}

inline bool is_mixing(const GridMap& map) { return period(map).period == 1; }

// Both divisibility claims relating a map, its induced coarse map, and a
// containing coarse map: per(F-bar) | per(F) and per(F') | per(F-bar).
struct PeriodDivisibility {
    int fine_period = 0;
    int induced_period = 0;
    int coarse_period = 0;
    bool edges_included = false;  // induced map's edges all lie in the coarse map
    bool induced_divides_fine = false;
    bool coarse_divides_induced = false;

    bool ok() const { return edges_included && induced_divides_fine && coarse_divides_induced; }
};

inline PeriodDivisibility period_divides(const GridMap& fine, const GridMap& coarse_induced,
                                         const GridMap& coarse) {
    if (!(coarse_induced.grid() == coarse.grid()))
        throw DataError("induced and coarse maps must share a grid");
    PeriodDivisibility r;
    r.fine_period = period(fine).period;
    r.induced_period = period(coarse_induced).period;
    r.coarse_period = period(coarse).period;
    r.edges_included = true;
    for (auto [a, b] : coarse_induced.edge_list())
        if (!coarse.has_edge(a, b)) {
            r.edges_included = false;
            break;
        }
    r.induced_divides_fine = r.fine_period % r.induced_period == 0;
    r.coarse_divides_induced = r.induced_period % r.coarse_period == 0;
    return r;
}

namespace detail {
inline int normalized_gcd(int d, long long delta) {
    long long r = ((delta % d) + d) % d;
    return static_cast<int>(std::gcd(static_cast<long long>(d), r));
}
}  // namespace detail

// Identifying G in class i with H in class j makes the induced map mixing
// when gcd(d, i - j) = 1 (single identification, h otherwise injective).
inline bool merge_creates_mixing(const PeriodData& pd, const Cell& g, const Cell& h) {
    if (pd.period <= 1)
        throw DataError("merge_creates_mixing needs a d-periodic map with d > 1");
    int i = pd.class_of(pd.map.grid().key(g));
    int j = pd.class_of(pd.map.grid().key(h));
    if (i < 0 || j < 0) throw DataError("cell outside the periodic partition");
    return detail::normalized_gcd(pd.period, i - j) == 1;
}

// A new edge from class i to class j (present in F' but not in F-bar)
// makes F' mixing when gcd(d, i - j + 1) = 1.
inline bool edge_creates_mixing(const PeriodData& pd, const Cell& gp, const Cell& hp) {
    if (pd.period <= 1)
        throw DataError("edge_creates_mixing needs a d-periodic map with d > 1");
    int i = pd.class_of(pd.map.grid().key(gp));
    int j = pd.class_of(pd.map.grid().key(hp));
    if (i < 0 || j < 0) throw DataError("cell outside the periodic partition");
    return detail::normalized_gcd(pd.period, i - j + 1) == 1;
}

struct MixingReportEntry {
    int set = 0;
    int period = 1;
    std::vector<std::vector<CellKey>> classes;
    bool mixing = true;
};

inline std::vector<MixingReportEntry> mixing_report(const AugmentedMorseDecomposition& aug) {
    std::vector<MixingReportEntry> report;
    report.reserve(aug.restriction_maps.size());
    for (std::size_t j = 0; j < aug.restriction_maps.size(); ++j) {
        PeriodData pd = period(aug.restriction_maps[j]);
        MixingReportEntry e;
        e.set = static_cast<int>(j);
        e.period = pd.period;
        for (const CellSet& c : pd.classes) e.classes.push_back(c.cells);
        e.mixing = pd.mixing();
        report.push_back(std::move(e));
    }
    return report;
}

}  // namespace morse_persist
