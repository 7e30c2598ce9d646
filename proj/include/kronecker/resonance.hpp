#pragma once

// Resonance modules and the reduction of resonant flows by automorphisms of
// the torus.

#include <algorithm>
#include <string>
#include <vector>

#include "kronecker/frequency.hpp"
#include "kronecker/hermite.hpp"
#include "kronecker/row_finite_matrix.hpp"
#include "kronecker/torus_point.hpp"

namespace kronecker {

/// Coordinates of omega_1..omega_n: one row per generator with a nonzero
/// coordinate somewhere, in declaration order.
struct CoordinateMatrix {
    std::vector<std::string> generators;
    RationalMatrix rows;
    std::size_t columns = 0;
};

inline CoordinateMatrix coordinate_matrix(const FrequencyVector& fv, std::size_t depth) {
    auto coords = fv.coordinates_upto(depth);
    CoordinateMatrix m;
    m.columns = coords.size();
    for (const auto& g : fv.generators()) {
        std::vector<Rational> row(m.columns);
        bool any = false;
        for (std::size_t j = 0; j < m.columns; ++j) {
            auto it = coords[j].find(g.name);
            if (it != coords[j].end()) {
                row[j] = it->second;
                any = true;
            }
        }
        if (any) {
            m.generators.push_back(g.name);
            m.rows.push_back(std::move(row));
        }
    }
    return m;
}

struct ResonanceBasis {
    std::vector<IntVecFin> vectors;
    std::size_t depth = 0;

    std::size_t rank() const { return vectors.size(); }
};

/// Basis of the resonances nu in Z^N with nu . (omega_1..omega_N) = 0.
inline ResonanceBasis resonance_basis(const FrequencyVector& fv, std::size_t depth) {
    auto m = coordinate_matrix(fv, depth);
    return {integer_kernel(m.rows, m.columns), m.columns};
}

/// Exact test of nu . omega = 0 in generator coordinates.
inline bool is_resonance(const FrequencyVector& fv, const IntVecFin& nu) {
    if (nu.is_zero()) return true;
    if (auto dim = fv.dimension(); dim && nu.max_index() > *dim)
        throw DomainError("resonance vector " + nu.to_string() + " exceeds the vector length");
    Coordinates sum;
    for (const auto& [j, x] : nu.entries())
        for (const auto& [g, c] : fv.coordinates(j)) sum[g] += Rational(x) * c;
    return std::all_of(sum.begin(), sum.end(), [](const auto& kv) { return kv.second == 0; });
}

/// One elementary operation of the reduction.
struct ReductionStep {
    enum class Kind { Negate, Swap, Subtract };
    Kind kind;
    std::size_t target;
    std::size_t source;  // unused for Negate
    std::size_t pass;

    std::string kind_name() const {
        switch (kind) {
        case Kind::Negate: return "negate";
        case Kind::Swap: return "swap";
        case Kind::Subtract: return "subtract";
        }
        return "";
    }
};

struct ReductionCertificate {
    IntVecFin input;
    RowFiniteIntMatrix transform;
    IntVecFin result;
    std::vector<ReductionStep> steps;
    /// Sum of absolute entries at the start of each pass.
    std::vector<Integer> pass_sums;
};

/// Brings nu to (g, 0, 0, ...) with g = gcd(nu) > 0. Each pass makes the
/// support positive, sorts it ascending in place (stable on ties), subtracts
/// the smallest entry from the others and drops zeros, so the entry sum falls
/// strictly. The surviving entry is finally moved to index 1.
inline ReductionCertificate reduce_vector(const IntVecFin& nu) {
    if (nu.is_zero()) throw DomainError("cannot reduce the zero vector");
    ReductionCertificate cert;
    cert.input = nu;
    std::size_t n = nu.max_index();
    RowFiniteIntMatrix b = RowFiniteIntMatrix::identity(n);
    IntVecFin v = nu;
    auto apply = [&](const RowFiniteIntMatrix& e, ReductionStep step) {
        b = e * b;
        v = e.apply(v);
        cert.steps.push_back(step);
    };
    for (std::size_t pass = 1;; ++pass) {
        Integer sum = 0;
        for (const auto& [j, x] : v.entries()) sum += abs(x);
        cert.pass_sums.push_back(sum);
        std::vector<std::size_t> support;
        for (const auto& [j, x] : v.entries()) support.push_back(j);
        for (auto j : support)
            if (v[j] < 0) apply(RowFiniteIntMatrix::negate(j), {ReductionStep::Kind::Negate, j, 0, pass});
        if (support.size() == 1) break;
        // selection sort by swaps keeps ties in index order
        for (std::size_t a = 0; a < support.size(); ++a) {
            std::size_t best = a;
            for (std::size_t c = a + 1; c < support.size(); ++c)
                if (v[support[c]] < v[support[best]]) best = c;
            if (best != a)
                apply(RowFiniteIntMatrix::swap(support[a], support[best]),
                      {ReductionStep::Kind::Swap, support[a], support[best], pass});
        }
        std::size_t first = support.front();
        for (std::size_t c = 1; c < support.size(); ++c)
            apply(RowFiniteIntMatrix::add_row(support[c], first, -1),
                  {ReductionStep::Kind::Subtract, support[c], first, pass});
    }
    std::size_t last = v.entries().begin()->first;
    if (last != 1) apply(RowFiniteIntMatrix::swap(1, last), {ReductionStep::Kind::Swap, 1, last, cert.pass_sums.size()});
    cert.transform = b;
    cert.result = v;
    return cert;
}

/// M acting on coordinates offset+1, offset+2, ... and as the identity on the
/// first `offset` coordinates.
inline RowFiniteIntMatrix shift_block(const RowFiniteIntMatrix& m, std::size_t offset) {
    auto shift = [&](const std::vector<IntVecFin>& rows) {
        std::vector<IntVecFin> out;
        for (std::size_t i = 1; i <= offset; ++i) out.push_back(IntVecFin::unit(i));
        for (const auto& r : rows) {
            IntVecFin s;
            for (const auto& [j, x] : r.entries()) s.set(j + offset, x);
            out.push_back(std::move(s));
        }
        return out;
    };
    return RowFiniteIntMatrix::from_rows(shift(m.rows()), shift(m.inverse_rows()));
}

struct FlowReduction {
    /// A with A omega = omega_tilde.
    RowFiniteIntMatrix transform;
    FrequencyVector reduced;
    /// Rank of the resonance module at the truncation depth (zero block size).
    std::size_t zero_block = 0;
    std::size_t depth = 0;
    /// Entries past the zero block are rationally independent at this depth.
    bool nonzero_block_independent = false;
    /// The depth certificate is a global statement (finite vector fully covered).
    bool global = false;
    /// Resonance vectors eliminated, in the original coordinates of each step.
    std::vector<IntVecFin> eliminated;
};

/// Conjugates the truncated flow to (0_d, omega_bar) with omega_bar
/// non-resonant. Each step takes the first Hermite basis vector nu of the
/// resonances among the remaining coordinates, reduces it to g e_1 by B, and
/// applies (B^-1)^T, whose first row is nu / g, so the first remaining
/// frequency becomes nu . omega / g = 0.
inline FlowReduction reduce_flow(const FrequencyVector& fv, std::size_t depth) {
    auto cm = coordinate_matrix(fv, depth);
    std::size_t n = cm.columns;
    FlowReduction out{RowFiniteIntMatrix::identity(n), fv, 0, n, false, false, {}};
    RationalMatrix cur = cm.rows;
    for (std::size_t i = 1; i <= n; ++i) {
        RationalMatrix block;
        for (const auto& row : cur) block.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(i - 1), row.end());
        auto kernel = integer_kernel(block, n - i + 1);
        if (kernel.empty()) break;
        out.eliminated.push_back(kernel.front());
        auto cert = reduce_vector(kernel.front());
        auto bt = cert.transform.inverse().transpose();
        auto step = shift_block(bt, i - 1);
        for (auto& row : cur) row = step.apply_dense(row);
        out.transform = step * out.transform;
        ++out.zero_block;
    }
    std::vector<Coordinates> terms(n);
    for (std::size_t g = 0; g < cm.generators.size(); ++g)
        for (std::size_t j = 0; j < n; ++j)
            if (cur[g][j] != 0) terms[j][cm.generators[g]] = cur[g][j];
    out.reduced = FrequencyVector::finite(std::move(terms), fv.generators());
    out.nonzero_block_independent = true;
    if (out.zero_block < n) {
        RationalMatrix block;
        for (const auto& row : cur)
            block.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(out.zero_block), row.end());
        out.nonzero_block_independent = integer_kernel(block, n - out.zero_block).empty();
    }
    auto dim = fv.dimension();
    out.global = dim && *dim == n && out.nonzero_block_independent;
    return out;
}

/// theta -> A theta mod 2 pi, exact on exact points.
inline TorusPoint apply_automorphism(const RowFiniteIntMatrix& a, const TorusPoint& theta) {
    if (theta.depth() < a.dimension())
        throw DomainError("point of depth " + std::to_string(theta.depth()) + " does not cover the active block of size " +
                          std::to_string(a.dimension()));
    for (const auto& r : a.rows())
        if (r.max_index() > theta.depth()) throw DomainError("matrix row reaches past the point depth");
    if (theta.is_exact()) return TorusPoint::exact(a.apply_dense(theta.theta_check()));
    return TorusPoint::floating(a.apply_dense(theta.angles()));
}

} // namespace kronecker
