#pragma once

#include <cstdint>
#include <vector>

namespace designlab::f2 {

// Dense matrix over GF(2). Each row is a bitmask; column j is bit j of the
// row word. Sized for the small matrices this library deals in (columns
// <= 64); stabilizer rows use the wide variant in stabsim.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<uint64_t> row;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), row(static_cast<size_t>(r), 0) {}

    static Matrix identity(int n);

    bool get(int r, int c) const { return (row[static_cast<size_t>(r)] >> c) & 1u; }
    void set(int r, int c, bool v) {
        uint64_t m = uint64_t(1) << c;
        if (v) row[static_cast<size_t>(r)] |= m; else row[static_cast<size_t>(r)] &= ~m;
    }

    bool operator==(const Matrix&) const = default;
};

// In-place reduced row echelon form with pivots chosen at the lowest set
// column index. Rows come out sorted by pivot column; zero rows are dropped.
// Returns the rank.
int rref(std::vector<uint64_t>& rows, int cols);

int rank(std::vector<uint64_t> rows, int cols);

// Solves x*M = target over GF(2) treating rows of M as generators.
// Returns false when target is outside the row span; otherwise fills
// `combo` with the combination bitmask (bit i <=> row i used).
bool solve_in_span(const std::vector<uint64_t>& rows, int cols, uint64_t target,
                   uint64_t* combo = nullptr);

// Kernel of the linear map v -> v*M (v is a row vector of dimension rows).
// Each returned word is a combination bitmask over the input rows.
std::vector<uint64_t> left_kernel(const std::vector<uint64_t>& rows, int cols);

// Enumerates every vector in the span of `basis` (2^n of them, n = basis
// size). Intended for the tiny spans of the commutant catalog.
std::vector<uint64_t> span_vectors(const std::vector<uint64_t>& basis);

// Multiplies two matrices given as row bitmasks: out = a * b, where a is
// r x m and b is m x c.
std::vector<uint64_t> matmul(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b, int m);

inline int popcount(uint64_t v) { return __builtin_popcountll(v); }

} // namespace designlab::f2
