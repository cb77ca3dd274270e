#pragma once

#include <optional>
#include <vector>

#include "morse_persist/errors.hpp"
#include "morse_persist/rational.hpp"

namespace morse_persist {

// Dense rational matrix with explicit shape, so zero-dimensional row or
// column spaces still compose correctly.  Everything here is exact.
struct RatMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Rational> data;  // row-major

    RatMatrix() = default;
    RatMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Rational(0)) {}

    Rational& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;
};

inline RatMatrix rat_zero(std::size_t rows, std::size_t cols) {
    return RatMatrix(rows, cols);
}

inline RatMatrix rat_identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

inline RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b) {
    detail::require(a.cols == b.rows, "matrix dimensions do not chain");
    RatMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const Rational& f = a.at(i, k);
            if (f == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += f * b.at(k, j);
        }
    return c;
}

inline long long rat_rank(RatMatrix m) {
    long long rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows) continue;
        for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(pivot, c), m.at(row, c));
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            Rational f = m.at(r, col) / m.at(row, col);
            for (std::size_t c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        ++row;
        ++rank;
    }
    return rank;
}

// Solves basis * c = target exactly (basis columns independent); nullopt
// when the target is outside the span.
inline std::optional<std::vector<Rational>> solve_in_span(const RatMatrix& basis,
                                                          const std::vector<Rational>& target) {
    detail::require(target.size() == basis.rows, "target length does not match basis rows");
    RatMatrix m(basis.rows, basis.cols + 1);
    for (std::size_t i = 0; i < basis.rows; ++i) {
        for (std::size_t j = 0; j < basis.cols; ++j) m.at(i, j) = basis.at(i, j);
        m.at(i, basis.cols) = target[i];
    }
    std::vector<long long> pivot_col(basis.rows, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < basis.cols && row < basis.rows; ++col) {
        std::size_t p = row;
        while (p < basis.rows && m.at(p, col) == 0) ++p;
        if (p == basis.rows) continue;
        for (std::size_t c = 0; c <= basis.cols; ++c) std::swap(m.at(p, c), m.at(row, c));
        for (std::size_t r = 0; r < basis.rows; ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            Rational f = m.at(r, col) / m.at(row, col);
            for (std::size_t c = col; c <= basis.cols; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivot_col[row] = static_cast<long long>(col);
        ++row;
    }
    for (std::size_t r = row; r < basis.rows; ++r)
        if (m.at(r, basis.cols) != 0) return std::nullopt;
    std::vector<Rational> solution(basis.cols, Rational(0));
    for (std::size_t r = 0; r < row; ++r) {
        auto col = static_cast<std::size_t>(pivot_col[r]);
        solution[col] = m.at(r, basis.cols) / m.at(r, col);
    }
    return solution;
}

}  // namespace morse_persist
