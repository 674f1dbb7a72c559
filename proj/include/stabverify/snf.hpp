// Exact Smith normal form for sparse integer matrices.
//
// The sparse phase eliminates with +-1 pivots chosen by a fill-minimizing
// heuristic (shortest column, then sparsest row); whatever survives is handed
// to a dense routine that escalates to arbitrary precision instead of ever
// wrapping around.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stabverify/ring.hpp"  // guard_error

namespace sv {

struct SparseIntMatrix {
    std::size_t rows = 0, cols = 0;
    // column-major; each column sorted by row, no zero values stored
    std::vector<std::vector<std::pair<std::uint32_t, long long>>> col;

    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), col(c) {}
    void add_entry(std::uint32_t r, std::uint32_t c, long long v);  // accumulates
    std::size_t nnz() const;
    SparseIntMatrix transposed() const;
};

struct DMat {
    std::size_t rows = 0, cols = 0;
    std::vector<long long> a;
    DMat() = default;
    DMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
    long long& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    long long at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    static DMat identity(std::size_t n);
};

DMat dmat_mul(const DMat& x, const DMat& y);

struct SnfResult {
    std::vector<long long> divisors;  // all nonzero diagonal entries, divisibility chain
    std::optional<DMat> U, V;         // U*A*V = diag(divisors), unimodular (dense path only)
    std::optional<DMat> Uinv, Vinv;

    std::size_t rank() const { return divisors.size(); }
    std::vector<long long> torsion() const {
        std::vector<long long> t;
        for (auto d : divisors)
            if (d > 1) t.push_back(d);
        return t;
    }
};

// Sparse-first SNF; transforms require the dense path and a size guard.
SnfResult smith_normal_form(const SparseIntMatrix& m, bool with_transforms = false,
                            std::size_t dense_guard = 4096);

SnfResult dense_snf(const DMat& a, bool with_transforms);

// Rank over F_p by sparse elimination (independent of the integral path).
std::size_t rank_mod_p(const SparseIntMatrix& m, long long p);

}  // namespace sv
