#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "morse_persist/errors.hpp"
#include "morse_persist/interval.hpp"
#include "morse_persist/rational.hpp"

namespace morse_persist {

// Closed axis-aligned box in R^n with rational coordinates.
struct Box {
    std::vector<Rational> lo, hi;

    Box() = default;
    Box(std::vector<Rational> lo_, std::vector<Rational> hi_)
        : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo.size() != hi.size() || lo.empty())
            throw ConfigError("box needs matching lo/hi coordinates in dimension >= 1");
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(lo[i] < hi[i]))
                throw ConfigError("degenerate box: lo[" + std::to_string(i) +
                                  "] >= hi[" + std::to_string(i) + "]");
    }

    int dim() const { return static_cast<int>(lo.size()); }
    Interval axis(int a) const { return Interval(lo[a], hi[a]); }

    bool contains_point(std::span<const Rational> p) const {
        if (static_cast<int>(p.size()) != dim()) return false;
        for (int a = 0; a < dim(); ++a)
            if (p[a] < lo[a] || p[a] > hi[a]) return false;
        return true;
    }
    bool contains(const Box& other) const {
        for (int a = 0; a < dim(); ++a)
            if (other.lo[a] < lo[a] || other.hi[a] > hi[a]) return false;
        return true;
    }
    bool intersects(const Box& other) const {
        for (int a = 0; a < dim(); ++a)
            if (hi[a] < other.lo[a] || other.hi[a] < lo[a]) return false;
        return true;
    }

    friend bool operator==(const Box& a, const Box& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

// A cell of a dyadic grid: closed sub-box at (depth, multi-index).
struct Cell {
    int depth = 0;
    std::vector<std::uint64_t> index;

    friend bool operator==(const Cell& a, const Cell& b) {
        return a.depth == b.depth && a.index == b.index;
    }
};

using CellKey = std::uint64_t;

// Uniform dyadic grid on a box: 2^depth congruent cells per axis.  Cells are
// addressed by a linear key whose numeric order equals the lexicographic
// order of the multi-index (axis 0 most significant).
class Grid {
public:
    Grid() = default;
    Grid(Box box, int depth) : box_(std::move(box)), depth_(depth) {
        if (depth < 0) throw ConfigError("grid depth must be >= 0");
        if (depth * box_.dim() > 62)
            throw ConfigError("grid too large: depth * dimension must be <= 62");
        per_axis_ = std::uint64_t{1} << depth;
        sides_.reserve(box_.dim());
        for (int a = 0; a < box_.dim(); ++a)
            sides_.push_back((box_.hi[a] - box_.lo[a]) / Rational(per_axis_));
    }

    const Box& box() const { return box_; }
    int depth() const { return depth_; }
    int dim() const { return box_.dim(); }
    std::uint64_t cells_per_axis() const { return per_axis_; }
    std::uint64_t cell_count() const {
        std::uint64_t c = 1;
        for (int a = 0; a < dim(); ++a) c *= per_axis_;
        return c;
    }
    const Rational& side(int a) const { return sides_[a]; }

    // Max cell diameter in the sup norm, i.e. the longest cell side.
    Rational diameter() const {
        Rational d = sides_[0];
        for (int a = 1; a < dim(); ++a) d = std::max(d, sides_[a]);
        return d;
    }

    CellKey key(const Cell& cell) const {
        if (cell.depth != depth_ || static_cast<int>(cell.index.size()) != dim())
            throw DataError("cell does not belong to this grid: " + cell_id_of(cell));
        CellKey k = 0;
        for (int a = 0; a < dim(); ++a) {
            if (cell.index[a] >= per_axis_)
                throw DataError("cell index out of range: " + cell_id_of(cell));
            k = k * per_axis_ + cell.index[a];
        }
        return k;
    }

    Cell cell(CellKey key) const {
        check_key(key);
        Cell c;
        c.depth = depth_;
        c.index.assign(dim(), 0);
        for (int a = dim() - 1; a >= 0; --a) {
            c.index[a] = key % per_axis_;
            key /= per_axis_;
        }
        return c;
    }

    Box cell_box(CellKey key) const {
        Cell c = cell(key);
        std::vector<Rational> lo(dim()), hi(dim());
        for (int a = 0; a < dim(); ++a) {
            lo[a] = box_.lo[a] + Rational(c.index[a]) * sides_[a];
            hi[a] = box_.lo[a] + Rational(c.index[a] + 1) * sides_[a];
        }
        return Box(std::move(lo), std::move(hi));
    }

    std::string cell_id(CellKey key) const { return cell_id_of(cell(key)); }

    static std::string cell_id_of(const Cell& c) {
        std::string s = "d:" + std::to_string(c.depth) + " i:";
        for (std::size_t a = 0; a < c.index.size(); ++a) {
            if (a) s.push_back(',');
            s += std::to_string(c.index[a]);
        }
        return s;
    }

    static Cell parse_cell_id(const std::string& id);

    // Index range (inclusive) of the cells whose closed axis interval meets
    // the closed interval [a, b]; boundary touch counts.  Returns false when
    // the interval misses the box entirely.
    bool axis_range(int axis, const Interval& iv, std::uint64_t& first,
                    std::uint64_t& last) const {
        if (iv.hi < box_.lo[axis] || iv.lo > box_.hi[axis]) return false;
        // cell i covers [lo + i*s, lo + (i+1)*s]; touch needs (i+1)*s >= a - lo
        // and i*s <= b - lo.
        Rational qa = (iv.lo - box_.lo[axis]) / sides_[axis];
        Rational qb = (iv.hi - box_.lo[axis]) / sides_[axis];
        Integer imin = rational_ceil(qa - 1);
        Integer imax = rational_floor(qb);
        if (imin < 0) imin = 0;
        Integer top(per_axis_ - 1);
        if (imax > top) imax = top;
        if (imin > imax) return false;
        first = static_cast<std::uint64_t>(imin);
        last = static_cast<std::uint64_t>(imax);
        return true;
    }

    // Deterministic binning: a point on a cell boundary goes to the
    // lexicographically smallest containing cell.
    CellKey bin_point(std::span<const Rational> p) const {
        if (static_cast<int>(p.size()) != dim())
            throw DataError("point dimension does not match grid");
        CellKey k = 0;
        for (int a = 0; a < dim(); ++a) {
            if (p[a] < box_.lo[a] || p[a] > box_.hi[a]) {
                std::string coords;
                for (std::size_t i = 0; i < p.size(); ++i) {
                    if (i) coords += ", ";
                    coords += format_rational(p[i]);
                }
                throw DataError("point outside box: (" + coords + ")");
            }
            Rational q = (p[a] - box_.lo[a]) / sides_[a];
            Integer idx = rational_ceil(q) - 1;
            if (idx < 0) idx = 0;
            k = k * per_axis_ + static_cast<std::uint64_t>(idx);
        }
        return k;
    }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.box_ == b.box_ && a.depth_ == b.depth_;
    }

private:
    void check_key(CellKey key) const {
        if (key >= cell_count())
            throw DataError("cell key out of range for grid");
    }

    Box box_;
    int depth_ = 0;
    std::uint64_t per_axis_ = 1;
    std::vector<Rational> sides_;
};

inline Cell Grid::parse_cell_id(const std::string& id) {
    auto fail = [&]() -> Cell {
        throw DataError("cannot parse cell id: '" + id + "'");
    };
    if (id.rfind("d:", 0) != 0) return fail();
    auto space = id.find(' ');
    if (space == std::string::npos || id.compare(space + 1, 2, "i:") != 0) return fail();
    Cell c;
    try {
        c.depth = std::stoi(id.substr(2, space - 2));
        std::string rest = id.substr(space + 3);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            auto comma = rest.find(',', pos);
            std::string part = rest.substr(pos, comma == std::string::npos
                                                    ? std::string::npos
                                                    : comma - pos);
            c.index.push_back(std::stoull(part));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    } catch (const std::exception&) {
        return fail();
    }
    if (c.index.empty() || c.depth < 0) return fail();
    return c;
}

inline Grid build_grid(const Box& box, int depth) { return Grid(box, depth); }

inline Rational diameter(const Grid& grid) { return grid.diameter(); }

// A subset of the cells of one grid.
struct CellSet {
    Grid grid;
    std::vector<CellKey> cells;  // sorted, unique

    CellSet() = default;
    CellSet(Grid g, std::vector<CellKey> keys) : grid(std::move(g)), cells(std::move(keys)) {
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        for (CellKey k : cells) grid.cell(k);  // validates range
    }

    bool contains(CellKey k) const {
        return std::binary_search(cells.begin(), cells.end(), k);
    }
    std::size_t size() const { return cells.size(); }

    friend bool operator==(const CellSet& a, const CellSet& b) {
        return a.grid == b.grid && a.cells == b.cells;
    }
};

// Cell-level map h induced by inclusion: each fine cell to the coarse cell
// containing it.  Total and single-valued; exists exactly when the grids
// share a box and fine.depth >= coarse.depth.
class RefinementCellMap {
public:
    RefinementCellMap(Grid fine, Grid coarse)
        : fine_(std::move(fine)), coarse_(std::move(coarse)) {
        if (!(fine_.box() == coarse_.box()))
            throw ConfigError("not a refinement: grids live on different boxes");
        if (fine_.depth() < coarse_.depth())
            throw ConfigError("not a refinement: source grid is coarser than target");
        delta_ = fine_.depth() - coarse_.depth();
    }

    const Grid& fine() const { return fine_; }
    const Grid& coarse() const { return coarse_; }
    int delta() const { return delta_; }

    CellKey apply(CellKey fine_key) const {
        Cell c = fine_.cell(fine_key);
        c.depth = coarse_.depth();
        for (auto& i : c.index) i >>= delta_;
        return coarse_.key(c);
    }

    CellSet apply(const CellSet& s) const {
        detail::require(s.grid == fine_, "cell set not on the fine grid");
        std::vector<CellKey> out;
        out.reserve(s.cells.size());
        for (CellKey k : s.cells) out.push_back(apply(k));
        return CellSet(coarse_, std::move(out));
    }

    friend bool operator==(const RefinementCellMap& a, const RefinementCellMap& b) {
        return a.fine_ == b.fine_ && a.coarse_ == b.coarse_;
    }

private:
    Grid fine_, coarse_;
    int delta_ = 0;
};

inline RefinementCellMap refinement_map(const Grid& fine, const Grid& coarse) {
    return RefinementCellMap(fine, coarse);
}

inline RefinementCellMap compose(const RefinementCellMap& first,
                                 const RefinementCellMap& second) {
    detail::require(first.coarse() == second.fine(),
                    "refinement maps do not chain");
    return RefinementCellMap(first.fine(), second.coarse());
}

// Geometric realization |A| as a list of disjoint closed boxes.  Adjacent
// cell boxes are merged into maximal bricks axis by axis until stable, so
// e.g. {[0,1/2],[1/2,1]} comes back as the single interval [0,1].
inline std::vector<Box> realization(const Grid& grid, const std::vector<Cell>& cells) {
    std::vector<CellKey> keys;
    keys.reserve(cells.size());
    for (const Cell& c : cells) keys.push_back(grid.key(c));  // rejects foreign cells
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    std::vector<Box> boxes;
    boxes.reserve(keys.size());
    for (CellKey k : keys) boxes.push_back(grid.cell_box(k));

    int n = grid.dim();
    bool merged = true;
    while (merged) {
        merged = false;
        for (int axis = 0; axis < n && !merged; ++axis) {
            auto key_less = [&](const Box& a, const Box& b) {
                for (int d = 0; d < n; ++d) {
                    if (d == axis) continue;
                    if (a.lo[d] != b.lo[d]) return a.lo[d] < b.lo[d];
                    if (a.hi[d] != b.hi[d]) return a.hi[d] < b.hi[d];
                }
                return a.lo[axis] < b.lo[axis];
            };
            std::sort(boxes.begin(), boxes.end(), key_less);
            std::vector<Box> next;
            for (const Box& b : boxes) {
                bool joined = false;
                if (!next.empty()) {
                    Box& prev = next.back();
                    bool same_profile = true;
                    for (int d = 0; d < n && same_profile; ++d)
                        if (d != axis)
                            same_profile = prev.lo[d] == b.lo[d] && prev.hi[d] == b.hi[d];
                    if (same_profile && prev.hi[axis] == b.lo[axis]) {
                        prev.hi[axis] = b.hi[axis];
                        joined = true;
                    }
                }
                if (!joined)
                    next.push_back(b);
                else
                    merged = true;
            }
            boxes = std::move(next);
        }
    }
    // canonical output order
    std::sort(boxes.begin(), boxes.end(), [](const Box& a, const Box& b) {
        return std::lexicographical_compare(a.lo.begin(), a.lo.end(), b.lo.begin(),
                                            b.lo.end());
    });
    return boxes;
}

inline std::vector<Box> realization(const CellSet& s) {
    std::vector<Cell> cells;
    cells.reserve(s.cells.size());
    for (CellKey k : s.cells) cells.push_back(s.grid.cell(k));
    return realization(s.grid, cells);
}

}  // namespace morse_persist
