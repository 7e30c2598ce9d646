#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "kronecker/int_vector.hpp"

namespace kronecker {

/// Invertible integer matrix indexed by N x N with finitely supported rows.
///
/// Only an active block of `dimension()` rows is stored; every row beyond the
/// block is the corresponding unit row, so the matrix acts as the identity on
/// coordinates past the block. The inverse is carried along with every
/// operation, never recomputed.
class RowFiniteIntMatrix {
public:
    RowFiniteIntMatrix() = default;

    static RowFiniteIntMatrix identity(std::size_t n) {
        RowFiniteIntMatrix m;
        m.resize(n);
        return m;
    }

    /// Permutation exchanging coordinates i and j.
    static RowFiniteIntMatrix swap(std::size_t i, std::size_t j) {
        auto m = identity(std::max(i, j));
        m.rows_[i - 1] = IntVecFin::unit(j);
        m.rows_[j - 1] = IntVecFin::unit(i);
        m.inverse_ = m.rows_;
        return m;
    }

    /// Diagonal matrix flipping the sign of coordinate i.
    static RowFiniteIntMatrix negate(std::size_t i) {
        auto m = identity(i);
        m.rows_[i - 1] = -IntVecFin::unit(i);
        m.inverse_ = m.rows_;
        return m;
    }

    /// Elementary matrix: row `target` gains `coeff` times coordinate `source`,
    /// i.e. (Mv)_target = v_target + coeff * v_source.
    static RowFiniteIntMatrix add_row(std::size_t target, std::size_t source, const Integer& coeff) {
        if (target == source) throw DomainError("add_row needs distinct indices");
        auto m = identity(std::max(target, source));
        m.rows_[target - 1].set(source, coeff);
        m.inverse_[target - 1].set(source, -coeff);
        return m;
    }

    /// Builds a matrix from explicit rows and inverse rows, verifying the pair.
    static RowFiniteIntMatrix from_rows(std::vector<IntVecFin> rows, std::vector<IntVecFin> inverse_rows) {
        RowFiniteIntMatrix m;
        std::size_t n = std::max(rows.size(), inverse_rows.size());
        for (const auto& r : rows) n = std::max(n, r.max_index());
        for (const auto& r : inverse_rows) n = std::max(n, r.max_index());
        m.resize(n);
        for (std::size_t i = 0; i < rows.size(); ++i) m.rows_[i] = std::move(rows[i]);
        for (std::size_t i = 0; i < inverse_rows.size(); ++i) m.inverse_[i] = std::move(inverse_rows[i]);
        if (!m.verify_inverse()) throw ValidationError("rows and inverse rows are not mutually inverse");
        return m;
    }

    std::size_t dimension() const { return rows_.size(); }

    IntVecFin row(std::size_t i) const { return i <= rows_.size() ? rows_[i - 1] : IntVecFin::unit(i); }
    IntVecFin inverse_row(std::size_t i) const {
        return i <= inverse_.size() ? inverse_[i - 1] : IntVecFin::unit(i);
    }

    Integer at(std::size_t i, std::size_t j) const { return row(i)[j]; }

    const std::vector<IntVecFin>& rows() const { return rows_; }
    const std::vector<IntVecFin>& inverse_rows() const { return inverse_; }

    RowFiniteIntMatrix inverse() const {
        RowFiniteIntMatrix m;
        m.rows_ = inverse_;
        m.inverse_ = rows_;
        return m;
    }

    RowFiniteIntMatrix transpose() const {
        RowFiniteIntMatrix m;
        m.rows_ = transpose_rows(rows_);
        m.inverse_ = transpose_rows(inverse_);
        return m;
    }

    /// Matrix-vector product on integer vectors.
    IntVecFin apply(const IntVecFin& v) const {
        IntVecFin out;
        for (const auto& [j, x] : v.entries())
            if (j > dimension()) out.add(j, x);
        for (std::size_t i = 1; i <= dimension(); ++i) {
            Integer s = 0;
            for (const auto& [j, a] : rows_[i - 1].entries()) s += a * v[j];
            out.set(i, s);
        }
        return out;
    }

    /// Matrix-vector product on a dense vector of any ring type T (values[0] is
    /// coordinate 1). The vector must cover the active block.
    template <class T>
    std::vector<T> apply_dense(const std::vector<T>& values) const {
        if (values.size() < dimension())
            throw DomainError("vector of length " + std::to_string(values.size()) +
                              " does not cover the active block of size " + std::to_string(dimension()));
        std::vector<T> out = values;
        for (std::size_t i = 1; i <= dimension(); ++i) {
            T s{};
            for (const auto& [j, a] : rows_[i - 1].entries()) s += scale(a, values[j - 1]);
            out[i - 1] = s;
        }
        return out;
    }

    /// Exact check that rows and inverse rows multiply to the identity both ways.
    bool verify_inverse() const {
        return is_identity(multiply_rows(rows_, inverse_)) && is_identity(multiply_rows(inverse_, rows_));
    }

    friend bool operator==(const RowFiniteIntMatrix& a, const RowFiniteIntMatrix& b) {
        std::size_t n = std::max(a.dimension(), b.dimension());
        for (std::size_t i = 1; i <= n; ++i)
            if (!(a.row(i) == b.row(i))) return false;
        return true;
    }

    bool is_identity() const { return is_identity(rows_); }

private:
    std::vector<IntVecFin> rows_;
    std::vector<IntVecFin> inverse_;

    void resize(std::size_t n) {
        for (std::size_t i = rows_.size() + 1; i <= n; ++i) {
            rows_.push_back(IntVecFin::unit(i));
            inverse_.push_back(IntVecFin::unit(i));
        }
    }

    template <class T>
    static T scale(const Integer& a, const T& x) {
        if constexpr (std::is_same_v<T, double>)
            return a.get_d() * x;
        else
            return T(a) * x;
    }

    static IntVecFin row_of(const std::vector<IntVecFin>& rows, std::size_t i) {
        return i <= rows.size() ? rows[i - 1] : IntVecFin::unit(i);
    }

    static std::vector<IntVecFin> multiply_rows(const std::vector<IntVecFin>& a, const std::vector<IntVecFin>& b) {
        std::size_t n = std::max(a.size(), b.size());
        std::vector<IntVecFin> out;
        out.reserve(n);
        for (std::size_t i = 1; i <= n; ++i) {
            IntVecFin r;
            const IntVecFin ai = row_of(a, i);
            for (const auto& [k, x] : ai.entries()) r += x * row_of(b, k);
            out.push_back(std::move(r));
        }
        return out;
    }

    static bool is_identity(const std::vector<IntVecFin>& rows) {
        for (std::size_t i = 1; i <= rows.size(); ++i)
            if (!(rows[i - 1] == IntVecFin::unit(i))) return false;
        return true;
    }

    static std::vector<IntVecFin> transpose_rows(const std::vector<IntVecFin>& rows) {
        std::size_t n = rows.size();
        std::vector<IntVecFin> out(n);
        for (std::size_t i = 1; i <= n; ++i)
            for (const auto& [j, x] : rows[i - 1].entries()) {
                if (j > n) throw DomainError("row support exceeds the active block; transpose undefined");
                out[j - 1].set(i, x);
            }
        return out;
    }

    friend RowFiniteIntMatrix unimodular_compose(const RowFiniteIntMatrix& a, const RowFiniteIntMatrix& b);
};

/// Product AB with inverse B^-1 A^-1.
inline RowFiniteIntMatrix unimodular_compose(const RowFiniteIntMatrix& a, const RowFiniteIntMatrix& b) {
    RowFiniteIntMatrix m;
    m.rows_ = RowFiniteIntMatrix::multiply_rows(a.rows_, b.rows_);
    m.inverse_ = RowFiniteIntMatrix::multiply_rows(b.inverse_, a.inverse_);
    m.resize(std::max(a.dimension(), b.dimension()));
    return m;
}

inline RowFiniteIntMatrix operator*(const RowFiniteIntMatrix& a, const RowFiniteIntMatrix& b) {
    return unimodular_compose(a, b);
}

} // namespace kronecker
