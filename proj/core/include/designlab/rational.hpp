#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace designlab {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

inline BigInt pow2_int(int64_t e) {
    BigInt v = 1;
    return v << e;
}

inline BigRat pow2_rat(int64_t e) {
    if (e >= 0) return BigRat(pow2_int(e));
    return BigRat(1, pow2_int(-e));
}

double to_double(const BigRat& r);

// log2 of |v| with ~50-bit accuracy, valid for arbitrarily large magnitudes.
double log2_abs(const BigInt& v);
double log2_abs(const BigRat& r);

struct rank_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense rational matrix, row-major.
struct RatMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<BigRat> a;

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    BigRat& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const BigRat& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static RatMatrix identity(int n);
    RatMatrix operator*(const RatMatrix& o) const;
    bool operator==(const RatMatrix&) const = default;
};

// Exact inverse by Gauss-Jordan elimination. Throws rank_error when singular.
RatMatrix rat_inverse(const RatMatrix& m);

// Exact inverse of an integer matrix via elimination modulo word-size primes,
// CRT lifting, and rational reconstruction. Orders of magnitude faster than
// direct rational elimination for the large power-of-two Grams used here.
// The result is certified against fresh primes before returning; genuinely
// singular input raises rank_error.
RatMatrix int_matrix_inverse(const std::vector<BigInt>& entries, int n);

// Greedy maximal subset of indices whose Gram submatrix is nonsingular,
// together with the exact inverse of that submatrix. Assumes the Gram is
// positive semidefinite so a vanishing Schur complement certifies linear
// dependence on the selected set.
struct GramBasis {
    std::vector<int> indices;
    RatMatrix inv; // inverse of the selected Gram submatrix
};
GramBasis gram_basis(const std::function<BigRat(int, int)>& gram, int count);

} // namespace designlab
