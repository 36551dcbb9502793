#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "designlab/f2.hpp"

namespace designlab {

struct unsupported_parameter_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct resource_cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct invariant_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One element T of the commutant label set: a dimension-k subspace of
// GF(2)^{2k} containing the all-ones vector whose elements (x,y) satisfy
// wt(x) - wt(y) = 0 mod 4. Basis rows are in reduced row echelon form with
// bit j of a row word holding coordinate j; coordinates 0..k-1 are x,
// k..2k-1 are y.
struct LagrangianSubspace {
    int k = 0;
    std::vector<uint64_t> basis;          // k rows, RREF, sorted by pivot
    int defect_dim = 0;                    // dim{x : (x,0) in T}
    std::optional<std::vector<uint8_t>> perm; // present iff T is a permutation graph

    bool is_permutation() const { return perm.has_value(); }
    bool contains(uint64_t v) const;       // membership of a 2k-bit vector
    std::vector<uint64_t> elements() const; // all 2^k span vectors

    bool operator==(const LagrangianSubspace& o) const { return basis == o.basis; }
    bool operator<(const LagrangianSubspace& o) const { return basis < o.basis; }
};

struct CommutantCatalog {
    int k = 0;
    std::vector<LagrangianSubspace> elements;   // lexicographic on basis rows
    std::vector<uint8_t> intersection_dims;     // |elements|^2, row-major
    std::vector<int> perm_indices;              // indices of the S_k subset
    uint64_t rotation_count = 0;                // |O_k| as measured

    int size() const { return static_cast<int>(elements.size()); }
    int inter(int i, int j) const {
        return intersection_dims[static_cast<size_t>(i) * elements.size() + static_cast<size_t>(j)];
    }
    // Index of the identity permutation element.
    int identity_index() const;
    std::optional<int> find(const LagrangianSubspace& t) const;
};

// Number of commutant labels: prod_{i=0}^{k-2} (2^i + 1).
uint64_t sigma_count_formula(int k);

// Stochastic rotations: k x k GF(2) matrices preserving wt(x) mod 4 and
// fixing the all-ones vector. Rows are bitmasks over columns.
std::vector<std::vector<uint64_t>> enumerate_stochastic_rotations(int k);

// Defect subspaces of GF(2)^k: subspaces whose vectors all have weight
// divisible by four. Returned as RREF bases (the zero subspace first).
std::vector<std::vector<uint64_t>> enumerate_defect_subspaces(int k);

// Full catalog via the double-coset construction O_k T_N O_k, deduplicated
// in canonical form. Supported for 1 <= k <= 6.
CommutantCatalog enumerate_sigma(int k);

// Independent oracle: scans every dimension-k RREF subspace of GF(2)^{2k}
// containing the all-ones vector and filters by the mod-4 condition.
// Combinatorially limited to k <= 4.
CommutantCatalog enumerate_sigma_bruteforce(int k);

int defect_dimension(const LagrangianSubspace& t);
int defect_dimension_right(const LagrangianSubspace& t);

// Dense r(T)^{tensor n} as a 0/1 matrix of dimension 2^{nk}.
// Layout: replica copies are blocked contiguously (copy-major: copy index
// is slowest, site index fastest within a copy, site 0 least significant).
// All moment-space code in this library shares this layout.
Eigen::MatrixXd r_dense(const LagrangianSubspace& t, int n, int max_dim = 4096);

// Closed-form diamond norm of the superoperator |T1)(T2| on one qubit:
// 2^{k + dimN(T2) - dimN(T1)}.
double diamond_norm_formula(const LagrangianSubspace& t1, const LagrangianSubspace& t2);

// Catalog cache file (sigma-k{K}.cat): little-endian, fixed-width, bit-exact
// across platforms. Header: magic "SIGCAT\0\0", u32 version, u32 k,
// u64 count, u64 rotation_count. Then per element: k basis rows as
// ceil(2k/8)-byte LE words, u8 defect_dim, u8 has_perm, k perm bytes (0xFF
// when absent). Then the intersection table as a lower-triangular byte
// matrix (i >= j).
void save_catalog(const CommutantCatalog& cat, const std::string& path);
CommutantCatalog load_catalog(const std::string& path);

// FNV-1a of the serialized catalog bytes; stable across runs and platforms.
uint64_t catalog_checksum(const CommutantCatalog& cat);

} // namespace designlab
