#pragma once

#include <vector>

#include "designlab/commutant.hpp"
#include "designlab/rational.hpp"

namespace designlab {

// Exact inverse of the Gram matrix G_ij = 2^{n dim(T_i cap T_j)} over the
// commutant catalog, indexed in catalog order.
struct WeingartenTable {
    int k = 0;
    int n = 0;
    RatMatrix values;

    const BigRat& operator()(int i, int j) const { return values.at(i, j); }
};

WeingartenTable clifford_weingarten(const CommutantCatalog& cat, int n);

// Exact check of the defining relation sum_T2 Wg(T1,T2) 2^{n dim(T2 cap T3)}
// = delta(T1,T3); used by tests and the acceptance suite.
bool verify_weingarten_identity(const CommutantCatalog& cat, const WeingartenTable& wg);

// Permutations of S_k in lexicographic order; perm[i] is the image of i.
std::vector<std::vector<int>> symmetric_group(int k);
int cycle_count(const std::vector<int>& sigma, const std::vector<int>& tau);

// Exact inverse of the permutation Gram G_{sigma,tau} = d^{#cycles(sigma
// tau^{-1})}. Requires d >= k; for d < k the Gram is singular and callers
// should use haar_twirl_table instead.
struct UnitaryWeingartenTable {
    int k = 0;
    BigInt d;
    std::vector<std::vector<int>> perms;
    RatMatrix values;
};

UnitaryWeingartenTable unitary_weingarten(int k, const BigInt& d);

// Matrix elements m(T1,T2) = <<T1| Phi_H |T2>> of the single-qubit k-fold
// Haar twirl, an orthogonal projector onto span{vec r(sigma)}. Computed from
// exact rationals via a rank-revealing Gram factorization of the (singular
// for k > 2) permutation Gram at d = 2.
struct HaarTwirlTable {
    int k = 0;
    RatMatrix values; // catalog-indexed, |Sigma| x |Sigma|

    const BigRat& operator()(int i, int j) const { return values.at(i, j); }
};

HaarTwirlTable haar_twirl_table(const CommutantCatalog& cat);

// Projection coefficients for a twirl channel over an operator family with
// the given Gram: Phi(X) = sum_{i,j in basis} W_ij O_i Tr[O_j^T X]. Valid
// for singular Grams (uses the maximal independent subset).
struct TwirlCoefficients {
    std::vector<int> basis;
    RatMatrix inv;
};

// Clifford block twirl on n qubits (Gram 2^{n dim cap}).
TwirlCoefficients clifford_twirl_coefficients(const CommutantCatalog& cat, int n);
// Haar twirl over dimension d = 2^m using the permutation operators of S_k.
TwirlCoefficients haar_twirl_coefficients(int k, int m_qubits);

} // namespace designlab
