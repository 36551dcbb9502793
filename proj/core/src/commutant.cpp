#include "designlab/commutant.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>

namespace designlab {

using f2::popcount;

namespace {

constexpr int kMaxK = 6;

void require_k(int k, int lo, int hi, const char* what) {
    if (k < lo || k > hi) {
        throw unsupported_parameter_error(std::string(what) + ": k=" + std::to_string(k) +
                                          " outside supported range [" + std::to_string(lo) + "," +
                                          std::to_string(hi) + "]");
    }
}

// Applies a k x k GF(2) matrix (rows as column-bitmasks) to a column vector.
uint64_t apply_mat(const std::vector<uint64_t>& m, uint64_t v) {
    uint64_t out = 0;
    for (size_t r = 0; r < m.size(); r++) {
        out |= uint64_t(popcount(m[r] & v) & 1) << r;
    }
    return out;
}

// Null space of the map v -> (parity(v & row_i))_i over GF(2)^cols.
std::vector<uint64_t> nullspace(std::vector<uint64_t> rows, int cols) {
    f2::rref(rows, cols);
    uint64_t pivot_mask = 0;
    std::vector<int> pivot_of_row(rows.size());
    for (size_t i = 0; i < rows.size(); i++) {
        int p = __builtin_ctzll(rows[i]);
        pivot_of_row[i] = p;
        pivot_mask |= uint64_t(1) << p;
    }
    std::vector<uint64_t> basis;
    for (int c = 0; c < cols; c++) {
        if (pivot_mask & (uint64_t(1) << c)) continue;
        uint64_t v = uint64_t(1) << c;
        for (size_t i = 0; i < rows.size(); i++) {
            if (rows[i] & (uint64_t(1) << c)) v |= uint64_t(1) << pivot_of_row[i];
        }
        basis.push_back(v);
    }
    return basis;
}

// The mod-4 condition on a full span follows from the generators plus the
// pairwise bilinear condition x_i.x_j = y_i.y_j mod 2.
bool mod4_condition_on_basis(const std::vector<uint64_t>& basis, int k) {
    uint64_t xmask = (uint64_t(1) << k) - 1;
    for (size_t i = 0; i < basis.size(); i++) {
        uint64_t xi = basis[i] & xmask;
        uint64_t yi = basis[i] >> k;
        if (((popcount(xi) - popcount(yi)) & 3) != 0) return false;
        for (size_t j = i + 1; j < basis.size(); j++) {
            uint64_t xj = basis[j] & xmask;
            uint64_t yj = basis[j] >> k;
            if (((popcount(xi & xj) ^ popcount(yi & yj)) & 1) != 0) return false;
        }
    }
    return true;
}

LagrangianSubspace finalize_subspace(int k, std::vector<uint64_t> basis) {
    f2::rref(basis, 2 * k);
    LagrangianSubspace t;
    t.k = k;
    t.basis = std::move(basis);
    t.defect_dim = defect_dimension(t);

    if (t.defect_dim == 0) {
        // y-parts form an invertible k x k matrix; T is the graph x = M^T y.
        // It is a permutation graph iff every row of the mapping matrix is a
        // unit vector.
        uint64_t xmask = (uint64_t(1) << k) - 1;
        std::vector<uint64_t> ymat, xmat;
        for (uint64_t row : t.basis) {
            ymat.push_back(row >> k);
            xmat.push_back(row & xmask);
        }
        // Invert ymat by eliminating [ymat | xmat].
        std::vector<uint64_t> aug(ymat.size());
        for (size_t i = 0; i < ymat.size(); i++) aug[i] = ymat[i] | (xmat[i] << k);
        f2::rref(aug, 2 * k);
        bool is_perm = aug.size() == static_cast<size_t>(k);
        std::vector<uint8_t> perm(static_cast<size_t>(k), 0xFF);
        if (is_perm) {
            for (int j = 0; j < k; j++) {
                // After elimination row j has y-part e_j and x-part = row j of
                // the mapping matrix M (x = y * M in row convention).
                if ((aug[static_cast<size_t>(j)] & xmask) != (uint64_t(1) << j)) { is_perm = false; break; }
                uint64_t mrow = aug[static_cast<size_t>(j)] >> k;
                if (popcount(mrow) != 1) { is_perm = false; break; }
                perm[static_cast<size_t>(j)] = static_cast<uint8_t>(__builtin_ctzll(mrow));
            }
        }
        if (is_perm) t.perm = std::move(perm);
    }
    return t;
}

CommutantCatalog build_catalog(int k, std::set<std::vector<uint64_t>> canon_bases, uint64_t rot_count) {
    CommutantCatalog cat;
    cat.k = k;
    cat.rotation_count = rot_count;
    cat.elements.reserve(canon_bases.size());
    for (auto& b : canon_bases) cat.elements.push_back(finalize_subspace(k, b));
    // std::set iteration is already lexicographic on the row vectors.
    for (int i = 0; i < cat.size(); i++) {
        if (cat.elements[static_cast<size_t>(i)].is_permutation()) cat.perm_indices.push_back(i);
    }
    size_t n = cat.elements.size();
    cat.intersection_dims.assign(n * n, 0);
    std::vector<uint64_t> stacked;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i; j < n; j++) {
            stacked.clear();
            stacked.insert(stacked.end(), cat.elements[i].basis.begin(), cat.elements[i].basis.end());
            stacked.insert(stacked.end(), cat.elements[j].basis.begin(), cat.elements[j].basis.end());
            int r = f2::rank(stacked, 2 * k);
            int d = 2 * k - r;
            cat.intersection_dims[i * n + j] = static_cast<uint8_t>(d);
            cat.intersection_dims[j * n + i] = static_cast<uint8_t>(d);
        }
    }
    return cat;
}

} // namespace

bool LagrangianSubspace::contains(uint64_t v) const {
    return f2::solve_in_span(basis, 2 * k, v);
}

std::vector<uint64_t> LagrangianSubspace::elements() const {
    return f2::span_vectors(basis);
}

int CommutantCatalog::identity_index() const {
    for (int i : perm_indices) {
        const auto& p = *elements[static_cast<size_t>(i)].perm;
        bool id = true;
        for (int j = 0; j < k; j++) {
            if (p[static_cast<size_t>(j)] != j) { id = false; break; }
        }
        if (id) return i;
    }
    throw invariant_error("catalog has no identity permutation");
}

std::optional<int> CommutantCatalog::find(const LagrangianSubspace& t) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), t);
    if (it != elements.end() && it->basis == t.basis) {
        return static_cast<int>(it - elements.begin());
    }
    return std::nullopt;
}

uint64_t sigma_count_formula(int k) {
    uint64_t n = 1;
    for (int i = 0; i <= k - 2; i++) n *= (uint64_t(1) << i) + 1;
    return n;
}

std::vector<std::vector<uint64_t>> enumerate_stochastic_rotations(int k) {
    require_k(k, 1, kMaxK, "enumerate_stochastic_rotations");
    // Columns must have weight 1 mod 4 and be pairwise orthogonal; the Gram
    // condition then forces invertibility, and the column sum must be 1_k.
    std::vector<uint64_t> candidates;
    for (uint64_t v = 1; v < (uint64_t(1) << k); v++) {
        if ((popcount(v) & 3) == 1) candidates.push_back(v);
    }
    std::vector<std::vector<uint64_t>> rotations;
    std::vector<uint64_t> cols(static_cast<size_t>(k));
    auto backtrack = [&](auto&& self, int depth, uint64_t sum) -> void {
        if (depth == k) {
            if (sum != (uint64_t(1) << k) - 1) return;
            // Transpose columns into row bitmasks over column index.
            std::vector<uint64_t> rows(static_cast<size_t>(k), 0);
            for (int c = 0; c < k; c++) {
                for (int r = 0; r < k; r++) {
                    if ((cols[static_cast<size_t>(c)] >> r) & 1) rows[static_cast<size_t>(r)] |= uint64_t(1) << c;
                }
            }
            rotations.push_back(std::move(rows));
            return;
        }
        for (uint64_t v : candidates) {
            bool ok = true;
            for (int j = 0; j < depth; j++) {
                if (popcount(v & cols[static_cast<size_t>(j)]) & 1) { ok = false; break; }
            }
            if (!ok) continue;
            cols[static_cast<size_t>(depth)] = v;
            self(self, depth + 1, sum ^ v);
        }
    };
    backtrack(backtrack, 0, 0);
    return rotations;
}

std::vector<std::vector<uint64_t>> enumerate_defect_subspaces(int k) {
    require_k(k, 1, kMaxK, "enumerate_defect_subspaces");
    std::vector<uint64_t> weight4;
    for (uint64_t v = 1; v < (uint64_t(1) << k); v++) {
        if ((popcount(v) & 3) == 0) weight4.push_back(v);
    }
    std::set<std::vector<uint64_t>> found;
    found.insert(std::vector<uint64_t>{});
    std::vector<std::vector<uint64_t>> frontier = {{}};
    while (!frontier.empty()) {
        std::vector<std::vector<uint64_t>> next;
        for (const auto& base : frontier) {
            for (uint64_t v : weight4) {
                if (f2::solve_in_span(base, k, v)) continue;
                bool ok = true;
                for (uint64_t b : base) {
                    if (popcount(v & b) & 1) { ok = false; break; }
                }
                if (!ok) continue;
                std::vector<uint64_t> ext = base;
                ext.push_back(v);
                f2::rref(ext, k);
                if (found.insert(ext).second) next.push_back(ext);
            }
        }
        frontier = std::move(next);
    }
    return {found.begin(), found.end()};
}

CommutantCatalog enumerate_sigma(int k) {
    require_k(k, 1, kMaxK, "enumerate_sigma");
    auto rotations = enumerate_stochastic_rotations(k);
    auto defects = enumerate_defect_subspaces(k);
    uint64_t xmask = (uint64_t(1) << k) - 1;

    std::set<std::vector<uint64_t>> canon;
    std::vector<uint64_t> tn_basis, basis, left;
    for (const auto& defect : defects) {
        // T_N = {(x, x+y) : x in N^perp, y in N}.
        tn_basis.clear();
        for (uint64_t u : nullspace(defect, k)) tn_basis.push_back(u | (u << k));
        for (uint64_t w : defect) tn_basis.push_back(w << k);

        // Dedupe the left action first, then sweep the right action.
        std::set<std::vector<uint64_t>> lefts;
        for (const auto& o1 : rotations) {
            basis.clear();
            for (uint64_t row : tn_basis) {
                basis.push_back(apply_mat(o1, row & xmask) | ((row >> k) << k));
            }
            f2::rref(basis, 2 * k);
            lefts.insert(basis);
        }
        for (const auto& l : lefts) {
            for (const auto& o2 : rotations) {
                basis.clear();
                for (uint64_t row : l) {
                    basis.push_back((row & xmask) | (apply_mat(o2, row >> k) << k));
                }
                f2::rref(basis, 2 * k);
                canon.insert(basis);
            }
        }
    }
    if (canon.size() != sigma_count_formula(k)) {
        throw invariant_error("enumerate_sigma(" + std::to_string(k) + "): found " +
                              std::to_string(canon.size()) + " elements, expected " +
                              std::to_string(sigma_count_formula(k)));
    }
    return build_catalog(k, std::move(canon), rotations.size());
}

CommutantCatalog enumerate_sigma_bruteforce(int k) {
    require_k(k, 1, 4, "enumerate_sigma_bruteforce");
    const int n = 2 * k;
    const uint64_t ones = (uint64_t(1) << n) - 1;

    // Enumerate RREF bases by pivot pattern; free entries sit to the right of
    // each pivot, excluding later pivot columns.
    std::vector<int> pivots(static_cast<size_t>(k));
    std::set<std::vector<uint64_t>> canon;
    std::vector<uint64_t> basis(static_cast<size_t>(k));
    std::vector<std::vector<int>> free_cols(static_cast<size_t>(k));
    auto enumerate_with_pivots = [&]() {
        for (int r = 0; r < k; r++) {
            free_cols[static_cast<size_t>(r)].clear();
            for (int c = pivots[static_cast<size_t>(r)] + 1; c < n; c++) {
                bool is_pivot = false;
                for (int r2 = 0; r2 < k; r2++) {
                    if (pivots[static_cast<size_t>(r2)] == c) { is_pivot = true; break; }
                }
                if (!is_pivot) free_cols[static_cast<size_t>(r)].push_back(c);
            }
        }
        auto rec = [&](auto&& self, int row) -> void {
            if (row == k) {
                if (!f2::solve_in_span(basis, n, ones)) return;
                if (!mod4_condition_on_basis(basis, k)) return;
                canon.insert(basis);
                return;
            }
            const auto& fc = free_cols[static_cast<size_t>(row)];
            uint64_t base_row = uint64_t(1) << pivots[static_cast<size_t>(row)];
            for (uint64_t m = 0; m < (uint64_t(1) << fc.size()); m++) {
                uint64_t v = base_row;
                for (size_t b = 0; b < fc.size(); b++) {
                    if ((m >> b) & 1) v |= uint64_t(1) << fc[b];
                }
                basis[static_cast<size_t>(row)] = v;
                self(self, row + 1);
            }
            basis[static_cast<size_t>(row)] = 0;
        };
        rec(rec, 0);
    };

    // All increasing pivot tuples.
    auto pick = [&](auto&& self, int idx, int start) -> void {
        if (idx == k) { enumerate_with_pivots(); return; }
        for (int c = start; c < n; c++) {
            pivots[static_cast<size_t>(idx)] = c;
            self(self, idx + 1, c + 1);
        }
    };
    pick(pick, 0, 0);

    if (canon.size() != sigma_count_formula(k)) {
        throw invariant_error("enumerate_sigma_bruteforce(" + std::to_string(k) + "): found " +
                              std::to_string(canon.size()) + " elements, expected " +
                              std::to_string(sigma_count_formula(k)));
    }
    // Rotation count is reported by the coset enumerator; recompute here so
    // both paths produce identical catalogs.
    return build_catalog(k, std::move(canon), enumerate_stochastic_rotations(k).size());
}

int defect_dimension(const LagrangianSubspace& t) {
    std::vector<uint64_t> yparts;
    for (uint64_t row : t.basis) yparts.push_back(row >> t.k);
    return t.k - f2::rank(std::move(yparts), t.k);
}

int defect_dimension_right(const LagrangianSubspace& t) {
    uint64_t xmask = (uint64_t(1) << t.k) - 1;
    std::vector<uint64_t> xparts;
    for (uint64_t row : t.basis) xparts.push_back(row & xmask);
    return t.k - f2::rank(std::move(xparts), t.k);
}

Eigen::MatrixXd r_dense(const LagrangianSubspace& t, int n, int max_dim) {
    const int k = t.k;
    if (n < 1) throw unsupported_parameter_error("r_dense: n must be >= 1");
    if (n * k > 30 || (int64_t(1) << (n * k)) > max_dim) {
        throw resource_cap_error("r_dense: replica dimension 2^" + std::to_string(n * k) +
                                 " exceeds cap " + std::to_string(max_dim));
    }
    const int64_t dim = int64_t(1) << (n * k);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);

    auto elems = t.elements();
    const uint64_t xmask = (uint64_t(1) << k) - 1;
    // Walk all element tuples over the n sites. Copy-major layout: the row
    // index collects bit c of the site-s x-vector at position c*n + s.
    auto rec = [&](auto&& self, int site, int64_t r, int64_t c) -> void {
        if (site == n) { m(r, c) += 1.0; return; }
        for (uint64_t e : elems) {
            uint64_t x = e & xmask, y = e >> k;
            int64_t nr = r, nc = c;
            for (int i = 0; i < k; i++) {
                nr |= int64_t((x >> i) & 1) << (i * n + site);
                nc |= int64_t((y >> i) & 1) << (i * n + site);
            }
            self(self, site + 1, nr, nc);
        }
    };
    rec(rec, 0, 0, 0);
    return m;
}

double diamond_norm_formula(const LagrangianSubspace& t1, const LagrangianSubspace& t2) {
    return std::pow(2.0, t1.k + t2.defect_dim - t1.defect_dim);
}

namespace {

void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; i++) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_u64(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; i++) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::string serialize_catalog(const CommutantCatalog& cat) {
    std::string out;
    out.append("SIGCAT\0\0", 8);
    put_u32(out, 1);
    put_u32(out, static_cast<uint32_t>(cat.k));
    put_u64(out, static_cast<uint64_t>(cat.elements.size()));
    put_u64(out, cat.rotation_count);
    const int row_bytes = (2 * cat.k + 7) / 8;
    for (const auto& t : cat.elements) {
        for (uint64_t row : t.basis) {
            for (int b = 0; b < row_bytes; b++) out.push_back(static_cast<char>((row >> (8 * b)) & 0xFF));
        }
        out.push_back(static_cast<char>(t.defect_dim));
        out.push_back(static_cast<char>(t.perm.has_value() ? 1 : 0));
        for (int j = 0; j < cat.k; j++) {
            out.push_back(static_cast<char>(t.perm ? (*t.perm)[static_cast<size_t>(j)] : 0xFF));
        }
    }
    size_t n = cat.elements.size();
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j <= i; j++) out.push_back(static_cast<char>(cat.intersection_dims[i * n + j]));
    }
    return out;
}

} // namespace

void save_catalog(const CommutantCatalog& cat, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open catalog file for writing: " + path);
    std::string bytes = serialize_catalog(cat);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

CommutantCatalog load_catalog(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open catalog file: " + path);
    std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    size_t pos = 0;
    auto need = [&](size_t n) {
        if (pos + n > bytes.size()) throw std::runtime_error("catalog file truncated: " + path);
    };
    need(8);
    if (std::memcmp(bytes.data(), "SIGCAT\0\0", 8) != 0) throw std::runtime_error("bad catalog magic: " + path);
    pos = 8;
    auto get_u32 = [&]() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; i++) v |= uint32_t(static_cast<unsigned char>(bytes[pos++])) << (8 * i);
        return v;
    };
    auto get_u64 = [&]() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; i++) v |= uint64_t(static_cast<unsigned char>(bytes[pos++])) << (8 * i);
        return v;
    };
    uint32_t version = get_u32();
    if (version != 1) throw std::runtime_error("unsupported catalog version " + std::to_string(version));
    int k = static_cast<int>(get_u32());
    uint64_t count = get_u64();
    uint64_t rot = get_u64();

    CommutantCatalog cat;
    cat.k = k;
    cat.rotation_count = rot;
    const int row_bytes = (2 * k + 7) / 8;
    for (uint64_t e = 0; e < count; e++) {
        LagrangianSubspace t;
        t.k = k;
        for (int r = 0; r < k; r++) {
            need(static_cast<size_t>(row_bytes));
            uint64_t row = 0;
            for (int b = 0; b < row_bytes; b++) row |= uint64_t(static_cast<unsigned char>(bytes[pos++])) << (8 * b);
            t.basis.push_back(row);
        }
        need(2 + static_cast<size_t>(k));
        t.defect_dim = static_cast<unsigned char>(bytes[pos++]);
        bool has_perm = bytes[pos++] != 0;
        std::vector<uint8_t> perm(static_cast<size_t>(k));
        for (int j = 0; j < k; j++) perm[static_cast<size_t>(j)] = static_cast<unsigned char>(bytes[pos++]);
        if (has_perm) t.perm = std::move(perm);
        cat.elements.push_back(std::move(t));
    }
    size_t n = cat.elements.size();
    cat.intersection_dims.assign(n * n, 0);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j <= i; j++) {
            need(1);
            uint8_t d = static_cast<unsigned char>(bytes[pos++]);
            cat.intersection_dims[i * n + j] = d;
            cat.intersection_dims[j * n + i] = d;
        }
    }
    for (int i = 0; i < cat.size(); i++) {
        if (cat.elements[static_cast<size_t>(i)].is_permutation()) cat.perm_indices.push_back(i);
    }
    return cat;
}

uint64_t catalog_checksum(const CommutantCatalog& cat) {
    std::string bytes = serialize_catalog(cat);
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace designlab
