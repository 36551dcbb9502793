#include "designlab/weingarten.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace designlab {

double to_double(const BigRat& r) { return r.convert_to<double>(); }

double log2_abs(const BigInt& v) {
    if (v == 0) return -std::numeric_limits<double>::infinity();
    BigInt m = abs(v);
    size_t bits = msb(m) + 1; // index of highest set bit + 1
    if (bits <= 62) return std::log2(m.convert_to<double>());
    BigInt top = m >> (bits - 62);
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 62);
}

double log2_abs(const BigRat& r) {
    if (r == 0) return -std::numeric_limits<double>::infinity();
    return log2_abs(numerator(r)) - log2_abs(denominator(r));
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    RatMatrix out(rows, o.cols);
    for (int i = 0; i < rows; i++) {
        for (int l = 0; l < cols; l++) {
            const BigRat& v = at(i, l);
            if (v == 0) continue;
            for (int j = 0; j < o.cols; j++) {
                out.at(i, j) += v * o.at(l, j);
            }
        }
    }
    return out;
}

RatMatrix rat_inverse(const RatMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("rat_inverse: matrix not square");
    const int n = m.rows;
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (int col = 0; col < n; col++) {
        int pivot = -1;
        for (int r = col; r < n; r++) {
            if (a.at(r, col) != 0) { pivot = r; break; }
        }
        if (pivot < 0) throw rank_error("rat_inverse: singular matrix at column " + std::to_string(col));
        if (pivot != col) {
            for (int c = 0; c < n; c++) {
                std::swap(a.at(pivot, c), a.at(col, c));
                std::swap(inv.at(pivot, c), inv.at(col, c));
            }
        }
        BigRat p = a.at(col, col);
        for (int c = 0; c < n; c++) {
            a.at(col, c) /= p;
            inv.at(col, c) /= p;
        }
        for (int r = 0; r < n; r++) {
            if (r == col) continue;
            BigRat f = a.at(r, col);
            if (f == 0) continue;
            for (int c = col; c < n; c++) a.at(r, c) -= f * a.at(col, c);
            for (int c = 0; c < n; c++) inv.at(r, c) -= f * inv.at(col, c);
        }
    }
    return inv;
}

GramBasis gram_basis(const std::function<BigRat(int, int)>& gram, int count) {
    GramBasis out;
    std::vector<BigRat> cross; // gram between candidate and current basis
    for (int v = 0; v < count; v++) {
        const int b = static_cast<int>(out.indices.size());
        cross.resize(static_cast<size_t>(b));
        for (int i = 0; i < b; i++) cross[static_cast<size_t>(i)] = gram(out.indices[static_cast<size_t>(i)], v);
        // Schur complement s = G(v,v) - g^T inv g.
        std::vector<BigRat> invg(static_cast<size_t>(b));
        for (int i = 0; i < b; i++) {
            BigRat acc = 0;
            for (int j = 0; j < b; j++) acc += out.inv.at(i, j) * cross[static_cast<size_t>(j)];
            invg[static_cast<size_t>(i)] = acc;
        }
        BigRat s = gram(v, v);
        for (int i = 0; i < b; i++) s -= cross[static_cast<size_t>(i)] * invg[static_cast<size_t>(i)];
        if (s == 0) continue;

        RatMatrix next(b + 1, b + 1);
        for (int i = 0; i < b; i++) {
            for (int j = 0; j < b; j++) {
                next.at(i, j) = out.inv.at(i, j) + invg[static_cast<size_t>(i)] * invg[static_cast<size_t>(j)] / s;
            }
            next.at(i, b) = -invg[static_cast<size_t>(i)] / s;
            next.at(b, i) = -invg[static_cast<size_t>(i)] / s;
        }
        next.at(b, b) = BigRat(1) / s;
        out.inv = std::move(next);
        out.indices.push_back(v);
    }
    return out;
}

WeingartenTable clifford_weingarten(const CommutantCatalog& cat, int n) {
    if (n < cat.k - 1) {
        throw rank_error("clifford_weingarten: Gram is singular for n < k-1 (n=" + std::to_string(n) +
                         ", k=" + std::to_string(cat.k) + ")");
    }
    const int m = cat.size();
    std::vector<BigInt> g(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < m; j++) {
            g[static_cast<size_t>(i) * m + j] = pow2_int(int64_t(n) * cat.inter(i, j));
        }
    }
    WeingartenTable t;
    t.k = cat.k;
    t.n = n;
    t.values = int_matrix_inverse(g, m);
    return t;
}

bool verify_weingarten_identity(const CommutantCatalog& cat, const WeingartenTable& wg) {
    const int m = cat.size();
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < m; j++) {
            BigRat acc = 0;
            for (int l = 0; l < m; l++) {
                acc += wg(i, l) * pow2_rat(int64_t(wg.n) * cat.inter(l, j));
            }
            if (acc != (i == j ? 1 : 0)) return false;
        }
    }
    return true;
}

std::vector<std::vector<int>> symmetric_group(int k) {
    std::vector<int> p(static_cast<size_t>(k));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

int cycle_count(const std::vector<int>& sigma, const std::vector<int>& tau) {
    // cycles of sigma composed with tau^{-1}
    const int k = static_cast<int>(sigma.size());
    std::vector<int> tinv(static_cast<size_t>(k));
    for (int i = 0; i < k; i++) tinv[static_cast<size_t>(tau[static_cast<size_t>(i)])] = i;
    std::vector<bool> seen(static_cast<size_t>(k), false);
    int cycles = 0;
    for (int i = 0; i < k; i++) {
        if (seen[static_cast<size_t>(i)]) continue;
        cycles++;
        int j = i;
        while (!seen[static_cast<size_t>(j)]) {
            seen[static_cast<size_t>(j)] = true;
            j = sigma[static_cast<size_t>(tinv[static_cast<size_t>(j)])];
        }
    }
    return cycles;
}

UnitaryWeingartenTable unitary_weingarten(int k, const BigInt& d) {
    if (d < k) {
        throw rank_error("unitary_weingarten: permutation Gram is singular for d < k; "
                         "use haar_twirl_table for the projector form");
    }
    UnitaryWeingartenTable t;
    t.k = k;
    t.d = d;
    t.perms = symmetric_group(k);
    const int m = static_cast<int>(t.perms.size());
    std::vector<BigInt> g(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < m; j++) {
            int c = cycle_count(t.perms[static_cast<size_t>(i)], t.perms[static_cast<size_t>(j)]);
            BigInt e = 1;
            for (int l = 0; l < c; l++) e *= d;
            g[static_cast<size_t>(i) * m + j] = e;
        }
    }
    t.values = int_matrix_inverse(g, m);
    return t;
}

HaarTwirlTable haar_twirl_table(const CommutantCatalog& cat) {
    const auto& perm_idx = cat.perm_indices;
    const int p = static_cast<int>(perm_idx.size());
    auto gram = [&](int i, int j) {
        return pow2_rat(cat.inter(perm_idx[static_cast<size_t>(i)], perm_idx[static_cast<size_t>(j)]));
    };
    GramBasis basis = gram_basis(gram, p);
    const int b = static_cast<int>(basis.indices.size());
    const int m = cat.size();

    // g_T[i] = <<T | sigma_i>> for basis permutations sigma_i.
    RatMatrix gt(m, b);
    for (int t = 0; t < m; t++) {
        for (int i = 0; i < b; i++) {
            gt.at(t, i) = pow2_rat(cat.inter(t, perm_idx[static_cast<size_t>(basis.indices[static_cast<size_t>(i)])]));
        }
    }
    // m(T1,T2) = g_{T1}^T W g_{T2} with W the inverse basis Gram.
    RatMatrix wg = gt * basis.inv; // m x b
    HaarTwirlTable out;
    out.k = cat.k;
    out.values = RatMatrix(m, m);
    for (int t1 = 0; t1 < m; t1++) {
        for (int t2 = 0; t2 < m; t2++) {
            BigRat acc = 0;
            for (int i = 0; i < b; i++) acc += wg.at(t1, i) * gt.at(t2, i);
            out.values.at(t1, t2) = acc;
        }
    }
    return out;
}

TwirlCoefficients clifford_twirl_coefficients(const CommutantCatalog& cat, int n) {
    auto gram = [&](int i, int j) { return pow2_rat(int64_t(n) * cat.inter(i, j)); };
    GramBasis b = gram_basis(gram, cat.size());
    return TwirlCoefficients{std::move(b.indices), std::move(b.inv)};
}

TwirlCoefficients haar_twirl_coefficients(int k, int m_qubits) {
    auto perms = symmetric_group(k);
    BigInt d = pow2_int(m_qubits);
    auto gram = [&](int i, int j) {
        int c = cycle_count(perms[static_cast<size_t>(i)], perms[static_cast<size_t>(j)]);
        BigRat e = 1;
        for (int l = 0; l < c; l++) e *= BigRat(d);
        return e;
    };
    GramBasis b = gram_basis(gram, static_cast<int>(perms.size()));
    return TwirlCoefficients{std::move(b.indices), std::move(b.inv)};
}

} // namespace designlab
