#include "designlab/f2.hpp"

#include <algorithm>

namespace designlab::f2 {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; i++) m.set(i, i, true);
    return m;
}

int rref(std::vector<uint64_t>& rows, int cols) {
    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(rows.size()); c++) {
        uint64_t bit = uint64_t(1) << c;
        int pivot = -1;
        for (int i = r; i < static_cast<int>(rows.size()); i++) {
            if (rows[static_cast<size_t>(i)] & bit) { pivot = i; break; }
        }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<size_t>(r)], rows[static_cast<size_t>(pivot)]);
        for (int i = 0; i < static_cast<int>(rows.size()); i++) {
            if (i != r && (rows[static_cast<size_t>(i)] & bit)) {
                rows[static_cast<size_t>(i)] ^= rows[static_cast<size_t>(r)];
            }
        }
        r++;
    }
    rows.resize(static_cast<size_t>(r));
    return r;
}

int rank(std::vector<uint64_t> rows, int cols) {
    return rref(rows, cols);
}

bool solve_in_span(const std::vector<uint64_t>& rows, int cols, uint64_t target, uint64_t* combo) {
    // Eliminate with an augmented combination word per row.
    struct Aug { uint64_t v; uint64_t c; };
    std::vector<Aug> work;
    work.reserve(rows.size());
    for (size_t i = 0; i < rows.size(); i++) work.push_back({rows[i], uint64_t(1) << i});

    uint64_t acc = target;
    uint64_t acc_combo = 0;
    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(work.size()); c++) {
        uint64_t bit = uint64_t(1) << c;
        int pivot = -1;
        for (int i = r; i < static_cast<int>(work.size()); i++) {
            if (work[static_cast<size_t>(i)].v & bit) { pivot = i; break; }
        }
        if (pivot < 0) continue;
        std::swap(work[static_cast<size_t>(r)], work[static_cast<size_t>(pivot)]);
        for (int i = 0; i < static_cast<int>(work.size()); i++) {
            if (i != r && (work[static_cast<size_t>(i)].v & bit)) {
                work[static_cast<size_t>(i)].v ^= work[static_cast<size_t>(r)].v;
                work[static_cast<size_t>(i)].c ^= work[static_cast<size_t>(r)].c;
            }
        }
        if (acc & bit) {
            acc ^= work[static_cast<size_t>(r)].v;
            acc_combo ^= work[static_cast<size_t>(r)].c;
        }
        r++;
    }
    if (acc != 0) return false;
    if (combo) *combo = acc_combo;
    return true;
}

std::vector<uint64_t> left_kernel(const std::vector<uint64_t>& rows, int cols) {
    struct Aug { uint64_t v; uint64_t c; };
    std::vector<Aug> work;
    work.reserve(rows.size());
    for (size_t i = 0; i < rows.size(); i++) work.push_back({rows[i], uint64_t(1) << i});

    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(work.size()); c++) {
        uint64_t bit = uint64_t(1) << c;
        int pivot = -1;
        for (int i = r; i < static_cast<int>(work.size()); i++) {
            if (work[static_cast<size_t>(i)].v & bit) { pivot = i; break; }
        }
        if (pivot < 0) continue;
        std::swap(work[static_cast<size_t>(r)], work[static_cast<size_t>(pivot)]);
        for (int i = 0; i < static_cast<int>(work.size()); i++) {
            if (i != r && (work[static_cast<size_t>(i)].v & bit)) {
                work[static_cast<size_t>(i)].v ^= work[static_cast<size_t>(r)].v;
                work[static_cast<size_t>(i)].c ^= work[static_cast<size_t>(r)].c;
            }
        }
        r++;
    }
    std::vector<uint64_t> kernel;
    for (int i = r; i < static_cast<int>(work.size()); i++) kernel.push_back(work[static_cast<size_t>(i)].c);
    return kernel;
}

std::vector<uint64_t> span_vectors(const std::vector<uint64_t>& basis) {
    std::vector<uint64_t> out(size_t(1) << basis.size(), 0);
    for (size_t m = 1; m < out.size(); m++) {
        out[m] = out[m & (m - 1)] ^ basis[static_cast<size_t>(__builtin_ctzll(m))];
    }
    return out;
}

std::vector<uint64_t> matmul(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b, int m) {
    std::vector<uint64_t> out(a.size(), 0);
    for (size_t i = 0; i < a.size(); i++) {
        uint64_t acc = 0;
        uint64_t v = a[i];
        while (v) {
            int j = __builtin_ctzll(v);
            v &= v - 1;
            if (j < m) acc ^= b[static_cast<size_t>(j)];
        }
        out[i] = acc;
    }
    return out;
}

} // namespace designlab::f2
