#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cyclodesign/errors.hpp"

namespace cyclo {

/// Dense row-major matrix over the prime field F_p. Dimensions here are
/// tiny (at most a few hundred columns), so elimination is plain O(n^3).
struct FpMatrix {
    std::uint32_t p = 0;
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint8_t> a; // rows*cols entries in [0, p)

    FpMatrix() = default;
    FpMatrix(std::uint32_t p_, std::size_t r, std::size_t c)
        : p(p_), rows(r), cols(c), a(r * c, 0) {}

    std::uint8_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

namespace detail {

inline std::uint32_t fp_inv(std::uint32_t x, std::uint32_t p) {
    // Fermat; p is prime and x != 0
    std::uint64_t base = x % p, acc = 1, e = p - 2;
    while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
}

} // namespace detail

/// Row echelon form in place; returns the pivot column of each pivot row.
/// Rows [0, pivots.size()) end up as a reduced (RREF) basis.
inline std::vector<std::size_t> row_reduce(FpMatrix& mat) {
    const std::uint32_t p = mat.p;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < mat.cols && r < mat.rows; ++c) {
        std::size_t sel = r;
        while (sel < mat.rows && mat.at(sel, c) == 0) ++sel;
        if (sel == mat.rows) continue;
        if (sel != r)
            for (std::size_t j = 0; j < mat.cols; ++j)
                std::swap(mat.at(sel, j), mat.at(r, j));
        const std::uint32_t inv = detail::fp_inv(mat.at(r, c), p);
        for (std::size_t j = c; j < mat.cols; ++j)
            mat.at(r, j) = static_cast<std::uint8_t>(mat.at(r, j) * inv % p);
        for (std::size_t i = 0; i < mat.rows; ++i) {
            if (i == r || mat.at(i, c) == 0) continue;
            const std::uint32_t f = mat.at(i, c);
            for (std::size_t j = c; j < mat.cols; ++j)
                mat.at(i, j) = static_cast<std::uint8_t>((mat.at(i, j) + (p - f) * mat.at(r, j)) % p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

struct FpSolution {
    bool solvable = false;
    std::vector<std::uint8_t> particular;           // one solution, size = #unknowns
    std::vector<std::vector<std::uint8_t>> kernel;  // basis of the solution space
    std::size_t rank = 0;
};

/// Solve A x = b over F_p (A: rows x cols, b: rows).
inline FpSolution solve_fp(const FpMatrix& A, const std::vector<std::uint8_t>& b) {
    const std::uint32_t p = A.p;
    FpMatrix aug(p, A.rows, A.cols + 1);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = static_cast<std::uint8_t>(b[i] % p);
    }
    auto pivots = row_reduce(aug);

    FpSolution sol;
    sol.rank = pivots.size();
    if (!pivots.empty() && pivots.back() == A.cols) {
        --sol.rank; // pivot in the constant column: inconsistent
        return sol;
    }
    sol.solvable = true;
    sol.particular.assign(A.cols, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        sol.particular[pivots[r]] = aug.at(r, A.cols);

    std::vector<bool> is_pivot(A.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t free_c = 0; free_c < A.cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<std::uint8_t> v(A.cols, 0);
        v[free_c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            const std::uint32_t coef = aug.at(r, free_c);
            if (coef) v[pivots[r]] = static_cast<std::uint8_t>((p - coef) % p);
        }
        sol.kernel.push_back(std::move(v));
    }
    return sol;
}

} // namespace cyclo
