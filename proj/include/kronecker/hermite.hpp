#pragma once

// Hermite normal form and integer kernels of rational matrices.

#include <cstddef>
#include <utility>
#include <vector>

#include "kronecker/int_vector.hpp"

namespace kronecker {

using IntegerRow = std::vector<Integer>;
using RationalMatrix = std::vector<std::vector<Rational>>;

namespace detail {

/// Row-echelon elimination over columns [0, pivot_cols) by unimodular row
/// operations applied to whole rows. Returns the pivot column of each of the
/// leading rows; the remaining rows are zero on the pivot range.
inline std::vector<std::size_t> echelon(std::vector<IntegerRow>& rows, std::size_t pivot_cols) {
    std::vector<std::size_t> pivots;
    std::size_t top = 0;
    for (std::size_t c = 0; c < pivot_cols && top < rows.size(); ++c) {
        while (true) {
            // smallest nonzero |entry| in column c at or below `top`
            std::size_t best = rows.size();
            for (std::size_t r = top; r < rows.size(); ++r)
                if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))) best = r;
            if (best == rows.size()) break;
            std::swap(rows[top], rows[best]);
            bool done = true;
            for (std::size_t r = top + 1; r < rows.size(); ++r) {
                if (rows[r][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[top][c].get_mpz_t());
                for (std::size_t k = 0; k < rows[r].size(); ++k) rows[r][k] -= q * rows[top][k];
                if (rows[r][c] != 0) done = false;
            }
            if (done) break;
        }
        if (top < rows.size() && rows[top][c] != 0) {
            pivots.push_back(c);
            ++top;
        }
    }
    return pivots;
}

} // namespace detail

/// Hermite normal form of the lattice spanned by `rows`: echelon form with
/// positive pivots, entries above each pivot reduced into [0, pivot), zero rows
/// dropped. Two row lists span the same lattice iff their forms are equal.
inline std::vector<IntegerRow> hermite_normal_form(std::vector<IntegerRow> rows) {
    if (rows.empty()) return rows;
    std::size_t width = rows.front().size();
    auto pivots = detail::echelon(rows, width);
    rows.resize(pivots.size());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        std::size_t c = pivots[i];
        if (rows[i][c] < 0)
            for (auto& x : rows[i]) x = -x;
        for (std::size_t above = 0; above < i; ++above) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), rows[above][c].get_mpz_t(), rows[i][c].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t k = 0; k < width; ++k) rows[above][k] -= q * rows[i][k];
        }
    }
    return rows;
}

/// Clears denominators row by row; the kernel is unchanged.
inline std::vector<IntegerRow> integer_rows(const RationalMatrix& m) {
    std::vector<IntegerRow> out;
    for (const auto& row : m) {
        Integer den = 1;
        for (const auto& x : row) den = lcm(den, x.get_den());
        IntegerRow r;
        r.reserve(row.size());
        for (const auto& x : row) r.push_back(Integer(x * Rational(den)));
        out.push_back(std::move(r));
    }
    return out;
}

/// Basis of {v in Z^n : M v = 0} in Hermite normal form; empty when the kernel
/// is trivial. `n` is the column count (needed when M has no rows).
inline std::vector<IntVecFin> integer_kernel(const RationalMatrix& m, std::size_t n) {
    if (n == 0) throw DomainError("integer_kernel needs at least one column");
    for (const auto& row : m)
        if (row.size() != n) throw DomainError("ragged matrix passed to integer_kernel");
    auto ints = integer_rows(m);
    std::size_t rows = ints.size();
    // augmented [M^T | I]: row j carries column j of M followed by e_j
    std::vector<IntegerRow> aug(n, IntegerRow(rows + n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < rows; ++i) aug[j][i] = ints[i][j];
        aug[j][rows + j] = 1;
    }
    auto pivots = detail::echelon(aug, rows);
    std::vector<IntegerRow> kernel;
    for (std::size_t r = pivots.size(); r < n; ++r)
        kernel.emplace_back(aug[r].begin() + static_cast<std::ptrdiff_t>(rows), aug[r].end());
    std::vector<IntVecFin> out;
    for (const auto& r : hermite_normal_form(std::move(kernel))) out.push_back(IntVecFin::from_dense(r));
    return out;
}

inline std::vector<IntVecFin> integer_kernel(const RationalMatrix& m) {
    if (m.empty()) throw DomainError("integer_kernel needs an explicit column count for an empty matrix");
    return integer_kernel(m, m.front().size());
}

/// Hermite form of a list of finite-support vectors, viewed in Z^n.
inline std::vector<IntVecFin> hermite_normal_form(const std::vector<IntVecFin>& vectors, std::size_t n) {
    std::vector<IntegerRow> rows;
    for (const auto& v : vectors) rows.push_back(v.to_dense(n));
    std::vector<IntVecFin> out;
    for (const auto& r : hermite_normal_form(std::move(rows))) out.push_back(IntVecFin::from_dense(r));
    return out;
}

} // namespace kronecker
