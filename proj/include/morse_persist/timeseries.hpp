#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "morse_persist/errors.hpp"
#include "morse_persist/grid.hpp"
#include "morse_persist/gridmap.hpp"

namespace morse_persist {

using Point = std::vector<Rational>;

// Observed orbit segments: each series is a run of consecutive
// observations y^0,...,y^{N-1} in R^m.
struct ObservationSet {
    int dim = 0;
    std::vector<std::vector<Point>> series;

    std::size_t transition_count() const {
        std::size_t n = 0;
        for (const auto& s : series)
            if (s.size() >= 2) n += s.size() - 1;
        return n;
    }
};

// Sampled dynamics: pairs (x, f(x)).
struct SampleSet {
    int dim = 0;
    std::vector<std::pair<Point, Point>> pairs;
};

// Sliding windows of length m over a scalar series.
inline ObservationSet delay_embed(const std::vector<Rational>& series, int m) {
    if (m < 1) throw ConfigError("delay embedding needs window length >= 1");
    if (static_cast<int>(series.size()) < m)
        throw DataError("series too short for delay embedding: length " +
                        std::to_string(series.size()) + " < m = " + std::to_string(m));
    ObservationSet obs;
    obs.dim = m;
    std::vector<Point> run;
    for (std::size_t i = 0; i + m <= series.size(); ++i)
        run.emplace_back(series.begin() + i, series.begin() + i + m);
    obs.series.push_back(std::move(run));
    return obs;
}

// Edge G->H per consecutive observation pair binned into (G, H); stranded
// vertices trimmed.
inline GridMap observation_map(const ObservationSet& obs, const Grid& grid) {
    if (obs.dim != grid.dim())
        throw DataError("observation dimension does not match grid dimension");
    std::vector<CellKey> vertices;
    std::vector<std::pair<CellKey, CellKey>> edges;
    for (const auto& run : obs.series) {
        std::optional<CellKey> prev;
        for (const Point& p : run) {
            CellKey k = grid.bin_point(p);
            vertices.push_back(k);
            if (prev) edges.emplace_back(*prev, k);
            prev = k;
        }
    }
    return trim_stranded(GridMap(grid, std::move(vertices), edges));
}

inline GridMap sampled_map(const SampleSet& data, const Grid& grid) {
    if (data.dim != grid.dim())
        throw DataError("sample dimension does not match grid dimension");
    std::vector<CellKey> vertices;
    std::vector<std::pair<CellKey, CellKey>> edges;
    for (const auto& [x, y] : data.pairs) {
        CellKey a = grid.bin_point(x);
        CellKey b = grid.bin_point(y);
        vertices.push_back(a);
        vertices.push_back(b);
        edges.emplace_back(a, b);
    }
    return trim_stranded(GridMap(grid, std::move(vertices), edges));
}

// Transition counts n(G,H), visit counts v(G), and their maximum.  v(G)
// counts every source point in G, including terminal observations that
// contribute no outgoing transition.
struct TransitionCounts {
    std::map<std::pair<CellKey, CellKey>, long long> n;
    std::map<CellKey, long long> v;
    long long n_max = 0;

    long long count(CellKey a, CellKey b) const {
        auto it = n.find({a, b});
        return it == n.end() ? 0 : it->second;
    }
    long long visits(CellKey a) const {
        auto it = v.find(a);
        return it == v.end() ? 0 : it->second;
    }

    static TransitionCounts from_samples(const SampleSet& data, const Grid& grid) {
        TransitionCounts tc;
        for (const auto& [x, y] : data.pairs) {
            CellKey a = grid.bin_point(x);
            CellKey b = grid.bin_point(y);
            ++tc.n[{a, b}];
            ++tc.v[a];
        }
        for (const auto& [key, cnt] : tc.n) tc.n_max = std::max(tc.n_max, cnt);
        return tc;
    }

    static TransitionCounts from_observations(const ObservationSet& obs, const Grid& grid) {
        TransitionCounts tc;
        for (const auto& run : obs.series) {
            std::optional<CellKey> prev;
            for (const Point& p : run) {
                CellKey k = grid.bin_point(p);
                ++tc.v[k];
                if (prev) ++tc.n[{*prev, k}];
                prev = k;
            }
        }
        for (const auto& [key, cnt] : tc.n) tc.n_max = std::max(tc.n_max, cnt);
        return tc;
    }
};

// Keeps edges with n(G,H) > mu * n_max; trimmed.
inline GridMap thresholded_map(const SampleSet& data, const Grid& grid, const Rational& mu) {
    if (mu < 0 || mu >= 1) throw ConfigError("threshold mu must satisfy 0 <= mu < 1");
    TransitionCounts tc = TransitionCounts::from_samples(data, grid);
    Rational cutoff = mu * Rational(tc.n_max);
    std::vector<CellKey> vertices;
    std::vector<std::pair<CellKey, CellKey>> edges;
    for (const auto& [key, cnt] : tc.n) {
        if (Rational(cnt) > cutoff) {
            vertices.push_back(key.first);
            vertices.push_back(key.second);
            edges.push_back(key);
        }
    }
    return trim_stranded(GridMap(grid, std::move(vertices), edges));
}

// Grid-only threshold schedule mu' = mu / M^2 with M the maximal number of
// fine cells inside one coarse cell; guarantees the thresholded maps stay
// related by the refinement morphism.
inline Rational persistent_threshold(const Rational& mu, const Grid& fine, const Grid& coarse) {
    RefinementCellMap h(fine, coarse);  // validates the refinement
    Integer m = Integer(1) << (fine.dim() * h.delta());
    return mu / Rational(m * m);
}

// Keeps edges with t(G,H) >= lambda * t(H,G) and n(G,H) >= mu, where
// t(G,H) = n(G,H)/v(G); t(H,G) is 0 when v(H) = 0.  Trimmed.
inline GridMap morita_map(const SampleSet& data, const Grid& grid, const Rational& lambda,
                          long long mu) {
    if (lambda < 0) throw ConfigError("morita threshold lambda must be >= 0");
    if (mu < 1) throw ConfigError("morita count threshold mu must be >= 1");
    TransitionCounts tc = TransitionCounts::from_samples(data, grid);
    std::vector<CellKey> vertices;
    std::vector<std::pair<CellKey, CellKey>> edges;
    for (const auto& [key, cnt] : tc.n) {
        auto [g, h] = key;
        if (cnt < mu) continue;
        long long vg = tc.visits(g);
        long long vh = tc.visits(h);
        detail::require(vg > 0, "source cell of a transition must have visits");
        // t(G,H) >= lambda * t(H,G)  <=>  n(G,H) * v(H) >= lambda * n(H,G) * v(G)
        Rational lhs = Rational(cnt) * Rational(vh);
        Rational rhs = lambda * Rational(tc.count(h, g)) * Rational(vg);
        if (vh == 0 || lhs >= rhs) {
            vertices.push_back(g);
            vertices.push_back(h);
            edges.push_back(key);
        }
    }
    return trim_stranded(GridMap(grid, std::move(vertices), edges));
}

struct ThresholdPersistenceReport {
    bool holds = false;
    bool schedule_ok = false;  // mu_coarse <= mu_fine / M^2
    Rational mu_fine, mu_coarse;
    Integer m;  // fine cells per coarse cell
    // first fine edge whose image is missing from the coarse map
    std::optional<std::pair<std::string, std::string>> counterexample;
};

// Builds both thresholded maps and checks whether the refinement map is a
// grid map morphism between them.
inline ThresholdPersistenceReport threshold_persistence_check(const SampleSet& data,
                                                              const Grid& fine,
                                                              const Grid& coarse,
                                                              const Rational& mu_fine,
                                                              const Rational& mu_coarse) {
    RefinementCellMap h(fine, coarse);
    ThresholdPersistenceReport report;
    report.mu_fine = mu_fine;
    report.mu_coarse = mu_coarse;
    report.m = Integer(1) << (fine.dim() * h.delta());
    report.schedule_ok = mu_coarse <= mu_fine / Rational(report.m * report.m);

    GridMap fine_map = thresholded_map(data, fine, mu_fine);
    GridMap coarse_map = thresholded_map(data, coarse, mu_coarse);
    report.holds = true;
    for (CellKey k : fine_map.vertices())
        if (!coarse_map.has_vertex(h.apply(k))) {
            report.holds = false;
            report.counterexample = {fine.cell_id(k), fine.cell_id(k)};
            return report;
        }
    for (auto [a, b] : fine_map.edge_list())
        if (!coarse_map.has_edge(h.apply(a), h.apply(b))) {
            report.holds = false;
            report.counterexample = {fine.cell_id(a), fine.cell_id(b)};
            return report;
        }
    return report;
}

// CSV input: one row of decimal numbers per record, columns separated by
// commas (whitespace tolerated).  Blank lines separate observation runs.
namespace csv {

inline std::vector<std::vector<Point>> read_blocks(std::istream& in, const std::string& name) {
    std::vector<std::vector<Point>> blocks(1);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        std::string stripped;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) stripped.push_back(c);
        if (stripped.empty()) {
            if (!blocks.back().empty()) blocks.emplace_back();
            continue;
        }
        Point p;
        std::stringstream ss(line);
        std::string fieldtext;
        while (std::getline(ss, fieldtext, ',')) {
            try {
                p.push_back(parse_rational(fieldtext));
            } catch (const ConfigError&) {
                throw DataError(name + ": cannot parse number '" + fieldtext + "' on row " +
                                std::to_string(row));
            }
        }
        if (!blocks.back().empty() && blocks.back().back().size() != p.size())
            throw DataError(name + ": inconsistent column count on row " + std::to_string(row));
        blocks.back().push_back(std::move(p));
    }
    if (blocks.back().empty()) blocks.pop_back();
    if (blocks.empty()) throw DataError(name + ": no data rows");
    return blocks;
}

inline ObservationSet read_observations(std::istream& in, const std::string& name) {
    auto blocks = read_blocks(in, name);
    ObservationSet obs;
    obs.dim = static_cast<int>(blocks.front().front().size());
    for (auto& b : blocks) {
        if (static_cast<int>(b.front().size()) != obs.dim)
            throw DataError(name + ": inconsistent column count between runs");
        obs.series.push_back(std::move(b));
    }
    return obs;
}

// 2n columns: x coordinates then y coordinates.
inline SampleSet read_samples(std::istream& in, const std::string& name) {
    auto blocks = read_blocks(in, name);
    SampleSet data;
    for (auto& b : blocks) {
        for (auto& row : b) {
            if (row.size() % 2 != 0)
                throw DataError(name + ": sample rows need an even column count (x then y)");
            int n = static_cast<int>(row.size() / 2);
            if (data.dim == 0) data.dim = n;
            if (n != data.dim) throw DataError(name + ": inconsistent column count");
            Point x(row.begin(), row.begin() + n), y(row.begin() + n, row.end());
            data.pairs.emplace_back(std::move(x), std::move(y));
        }
    }
    return data;
}

}  // namespace csv

}  // namespace morse_persist
