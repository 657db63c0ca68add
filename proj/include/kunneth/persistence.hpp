#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "kunneth/errors.hpp"
#include "kunneth/filtered_complex.hpp"
#include "kunneth/interval.hpp"

namespace kunneth {

/// Z/p for a prime p < 2^16.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p = 2) : p_(p) {
        if (!isPrime(p) || p >= (1u << 16)) {
            throw DomainError("coefficient field characteristic must be a prime below 65536, got " +
                              std::to_string(p));
        }
    }

    static bool isPrime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint32_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) return false;
        }
        return true;
    }

    std::uint32_t characteristic() const { return p_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }

    std::uint32_t inverse(std::uint32_t a) const {
        if (a % p_ == 0) throw std::domain_error("zero has no inverse");
        // a^(p-2) by Fermat.
        std::uint64_t result = 1, base = a % p_;
        for (std::uint32_t e = p_ - 2; e; e >>= 1) {
            if (e & 1) result = result * base % p_;
            base = base * base % p_;
        }
        return static_cast<std::uint32_t>(result);
    }

    /// Image of (-1)^i.
    std::uint32_t sign(std::size_t i) const { return (i % 2 == 0) ? 1 % p_ : p_ - 1; }

private:
    std::uint32_t p_;
};

struct MatrixEntry {
    std::uint32_t row;
    std::uint32_t coef;

    friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Sparse column, entries sorted by increasing row; the pivot is the last entry.
using SparseColumn = std::vector<MatrixEntry>;

struct SparseBoundaryMatrix {
    PrimeField field;
    std::vector<SparseColumn> columns;
    std::vector<int> dims;

    std::size_t size() const { return columns.size(); }
};

/// Boundary matrix in the complex's current order, which must list every face
/// before its cofacets.
inline SparseBoundaryMatrix boundaryMatrix(const FilteredComplex& k, PrimeField field = PrimeField{2}) {
    SparseBoundaryMatrix m{field, {}, {}};
    m.columns.resize(k.size());
    m.dims.resize(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) {
        const auto& s = k[j].simplex;
        m.dims[j] = s.dimension();
        if (s.dimension() == 0) continue;
        auto& col = m.columns[j];
        col.reserve(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            auto row = k.find(s.facet(i));
            if (!row) throw DomainError("boundary matrix: complex is not closed under faces");
            if (*row >= j) throw DomainError("boundary matrix: face listed after its cofacet");
            col.push_back({static_cast<std::uint32_t>(*row), field.sign(i)});
        }
        std::sort(col.begin(), col.end(), [](const MatrixEntry& a, const MatrixEntry& b) { return a.row < b.row; });
    }
    return m;
}

namespace detail {

/// target += factor * source over Z/p, both sorted by row.
inline void addScaled(SparseColumn& target, const SparseColumn& source, std::uint32_t factor,
                      const PrimeField& f, SparseColumn& scratch) {
    scratch.clear();
    scratch.reserve(target.size() + source.size());
    auto a = target.begin(), ae = target.end();
    auto b = source.begin(), be = source.end();
    while (a != ae || b != be) {
        if (b == be || (a != ae && a->row < b->row)) {
            scratch.push_back(*a++);
        } else if (a == ae || b->row < a->row) {
            scratch.push_back({b->row, f.mul(factor, b->coef)});
            ++b;
        } else {
            std::uint32_t c = f.add(a->coef, f.mul(factor, b->coef));
            if (c != 0) scratch.push_back({a->row, c});
            ++a;
            ++b;
        }
    }
    target.swap(scratch);
}

inline constexpr std::uint32_t kNoColumn = std::numeric_limits<std::uint32_t>::max();

/// Standard column reduction over the given column order (by dimension groups,
/// left to right inside a group). `clearOrder` lists dimensions in processing
/// order; a column whose index was recorded as a pivot row is skipped.
inline void reduceColumns(std::vector<SparseColumn>& columns, const std::vector<int>& dims,
                          const std::vector<int>& dimensionOrder, const PrimeField& field,
                          std::vector<std::uint32_t>& pivotColumnOfRow, std::vector<bool>& cleared) {
    const std::size_t n = columns.size();
    pivotColumnOfRow.assign(n, kNoColumn);
    cleared.assign(n, false);
    std::vector<std::vector<std::uint32_t>> byDim;
    for (std::size_t j = 0; j < n; ++j) {
        if (dims[j] >= static_cast<int>(byDim.size())) byDim.resize(dims[j] + 1);
        byDim[dims[j]].push_back(static_cast<std::uint32_t>(j));
    }
    SparseColumn scratch;
    for (int d : dimensionOrder) {
        if (d < 0 || d >= static_cast<int>(byDim.size())) continue;
        for (auto j : byDim[d]) {
            if (pivotColumnOfRow[j] != kNoColumn) {
                // Column j is a pivot row already: it reduces to zero.
                cleared[j] = true;
                columns[j].clear();
                continue;
            }
            auto& col = columns[j];
            while (!col.empty()) {
                const auto low = col.back();
                const auto k = pivotColumnOfRow[low.row];
                if (k == kNoColumn) {
                    pivotColumnOfRow[low.row] = j;
                    break;
                }
                const auto pivotCoef = columns[k].back().coef;
                const auto factor = field.neg(field.mul(low.coef, field.inverse(pivotCoef)));
                addScaled(col, columns[k], factor, field, scratch);
            }
        }
    }
}

}  // namespace detail

/// Output of the column reduction: reduced columns plus pivot bookkeeping.
struct ReducedMatrix {
    SparseBoundaryMatrix matrix;
    /// pivotColumnOfRow[i] = column whose lowest nonzero is row i, or kNoColumn.
    std::vector<std::uint32_t> pivotColumnOfRow;
    /// Columns skipped by clearing (known to reduce to zero).
    std::vector<bool> cleared;

    std::optional<std::uint32_t> pivotOf(std::size_t column) const {
        const auto& c = matrix.columns[column];
        if (c.empty()) return std::nullopt;
        return c.back().row;
    }
};

inline constexpr std::uint32_t kNoColumn = detail::kNoColumn;

/// Standard column algorithm with clearing: dimensions are processed from the
/// top down, and a column whose index became a pivot row is zeroed unseen.
inline ReducedMatrix reduce(SparseBoundaryMatrix m) {
    ReducedMatrix r{std::move(m), {}, {}};
    int top = 0;
    for (int d : r.matrix.dims) top = std::max(top, d);
    std::vector<int> order;
    for (int d = top; d >= 0; --d) order.push_back(d);
    detail::reduceColumns(r.matrix.columns, r.matrix.dims, order, r.matrix.field, r.pivotColumnOfRow, r.cleared);
    return r;
}

/// Reads bars off a reduced boundary matrix for dimensions 0..maxDim.
/// Zero-length pairs are dropped.
inline GradedBarcode extractBarcode(const ReducedMatrix& r, const FilteredComplex& k, int maxDim) {
    GradedBarcode out;
    const std::size_t n = r.matrix.size();
    for (std::size_t j = 0; j < n; ++j) {
        const int dim = r.matrix.dims[j];
        if (auto low = r.pivotOf(j)) {
            const int birthDim = dim - 1;
            if (birthDim <= maxDim) out.add(birthDim, makeInterval(k[*low].value, k[j].value));
        } else if (r.pivotColumnOfRow[j] == kNoColumn && dim <= maxDim) {
            out.add(dim, Interval(k[j].value, kInfinity));
        }
    }
    return out;
}

enum class ReductionAlgorithm {
    /// Boundary matrix, top-down clearing.
    Homology,
    /// Anti-transposed (coboundary) matrix, bottom-up clearing. Same pairs.
    Cohomology,
};

/// Persistence pairs from the anti-transposed boundary matrix, restricted to
/// simplices of dimension <= maxDim + 1.
inline GradedBarcode cohomologyBarcode(const FilteredComplex& k, PrimeField field, int maxDim) {
    const std::size_t n = k.size();
    // Keys reverse the filtration order so the pivot (largest key) is the
    // earliest cofacet.
    auto key = [n](std::size_t idx) { return static_cast<std::uint32_t>(n - 1 - idx); };
    std::vector<SparseColumn> columns(n);
    std::vector<int> dims(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& s = k[j].simplex;
        dims[key(j)] = s.dimension();
        if (s.dimension() == 0 || s.dimension() > maxDim + 1) continue;
        for (std::size_t i = 0; i < s.size(); ++i) {
            auto face = k.find(s.facet(i));
            if (!face) throw DomainError("coboundary matrix: complex is not closed under faces");
            if (*face >= j) throw DomainError("coboundary matrix: face listed after its cofacet");
            // Coboundary column of `face` gains the cofacet j.
            columns[key(*face)].push_back({key(j), field.sign(i)});
        }
    }
    for (auto& c : columns) {
        std::sort(c.begin(), c.end(), [](const MatrixEntry& a, const MatrixEntry& b) { return a.row < b.row; });
    }
    std::vector<int> order;
    for (int d = 0; d <= maxDim; ++d) order.push_back(d);
    std::vector<std::uint32_t> pivotColumnOfRow;
    std::vector<bool> cleared;
    detail::reduceColumns(columns, dims, order, field, pivotColumnOfRow, cleared);

    GradedBarcode out;
    for (std::size_t c = 0; c < n; ++c) {
        const int dim = dims[c];
        if (dim > maxDim) continue;
        const std::size_t sigma = n - 1 - c;
        if (!columns[c].empty()) {
            const std::size_t tau = n - 1 - columns[c].back().row;
            out.add(dim, makeInterval(k[sigma].value, k[tau].value));
        } else if (!cleared[c]) {
            out.add(dim, Interval(k[sigma].value, kInfinity));
        }
    }
    return out;
}

struct PersistenceOptions {
    PrimeField field{2};
    /// Highest homological dimension reported.
    int maxDim = 2;
    ReductionAlgorithm algorithm = ReductionAlgorithm::Homology;
    /// Sort into (value, dimension, lexicographic) order first.
    bool canonicalize = true;
};

/// Barcode of a filtered complex in dimensions 0..maxDim.
inline GradedBarcode computeBarcode(const FilteredComplex& k, const PersistenceOptions& opts = {}) {
    const FilteredComplex* input = &k;
    FilteredComplex sorted;
    if (opts.canonicalize && !std::is_sorted(k.simplices().begin(), k.simplices().end(), canonicalLess)) {
        sorted = k.canonical();
        input = &sorted;
    }
    if (opts.algorithm == ReductionAlgorithm::Cohomology) {
        return cohomologyBarcode(*input, opts.field, opts.maxDim);
    }
    return extractBarcode(reduce(boundaryMatrix(*input, opts.field)), *input, opts.maxDim);
}

}  // namespace kunneth
