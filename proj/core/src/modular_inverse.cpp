#include <cstdint>
#include <vector>

#include "designlab/rational.hpp"

namespace designlab {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((u128(a) * b) % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; s++; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i < s - 1; i++) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

u64 inv_mod(u64 a, u64 p) { return powmod(a, p - 2, p); }

// Gauss-Jordan over F_p. Returns false when the matrix is singular mod p.
bool invert_mod_p(const std::vector<u64>& m, int n, u64 p, std::vector<u64>& out) {
    std::vector<u64> a = m;
    out.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; i++) out[static_cast<size_t>(i) * n + i] = 1;
    for (int col = 0; col < n; col++) {
        int pivot = -1;
        for (int r = col; r < n; r++) {
            if (a[static_cast<size_t>(r) * n + col] != 0) { pivot = r; break; }
        }
        if (pivot < 0) return false;
        if (pivot != col) {
            for (int c = 0; c < n; c++) {
                std::swap(a[static_cast<size_t>(pivot) * n + c], a[static_cast<size_t>(col) * n + c]);
                std::swap(out[static_cast<size_t>(pivot) * n + c], out[static_cast<size_t>(col) * n + c]);
            }
        }
        u64 pinv = inv_mod(a[static_cast<size_t>(col) * n + col], p);
        for (int c = 0; c < n; c++) {
            a[static_cast<size_t>(col) * n + c] = mulmod(a[static_cast<size_t>(col) * n + c], pinv, p);
            out[static_cast<size_t>(col) * n + c] = mulmod(out[static_cast<size_t>(col) * n + c], pinv, p);
        }
        for (int r = 0; r < n; r++) {
            if (r == col) continue;
            u64 f = a[static_cast<size_t>(r) * n + col];
            if (f == 0) continue;
            for (int c = 0; c < n; c++) {
                a[static_cast<size_t>(r) * n + c] =
                    (a[static_cast<size_t>(r) * n + c] + p - mulmod(f, a[static_cast<size_t>(col) * n + c], p)) % p;
                out[static_cast<size_t>(r) * n + c] =
                    (out[static_cast<size_t>(r) * n + c] + p - mulmod(f, out[static_cast<size_t>(col) * n + c], p)) % p;
            }
        }
    }
    return true;
}

u64 mod_of(const BigInt& v, u64 p) {
    BigInt r = v % BigInt(p);
    if (r < 0) r += p;
    return r.convert_to<u64>();
}

// Rational reconstruction: the unique p/q with |p|, q <= sqrt(M/2) congruent
// to x mod M, via the half-extended Euclid algorithm. Returns false if no
// representative exists within the bound.
bool rational_reconstruct(const BigInt& x, const BigInt& m, BigRat& out) {
    BigInt half = m >> 1;
    BigInt bound = sqrt(half);
    BigInt r0 = m, r1 = x % m;
    if (r1 < 0) r1 += m;
    BigInt t0 = 0, t1 = 1;
    while (r1 > bound) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        BigInt t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (t1 == 0) return false;
    if (t1 < 0) { t1 = -t1; r1 = -r1; }
    if (t1 > bound) return false;
    if (gcd(r1, t1) != 1) return false;
    out = BigRat(r1, t1);
    return true;
}

std::vector<u64> primes_below_63(int count, u64 start = (u64(1) << 62)) {
    std::vector<u64> ps;
    u64 c = start + 1;
    while (static_cast<int>(ps.size()) < count) {
        if (is_prime(c)) ps.push_back(c);
        c += 2;
    }
    return ps;
}

} // namespace

RatMatrix int_matrix_inverse(const std::vector<BigInt>& entries, int n) {
    if (static_cast<int>(entries.size()) != n * n) {
        throw std::invalid_argument("int_matrix_inverse: bad entry count");
    }
    int nprimes = 8;
    int singular_strikes = 0;
    u64 next_start = u64(1) << 62;

    std::vector<std::vector<u64>> residues; // per prime, n*n inverse mod p
    std::vector<u64> used_primes;
    std::vector<u64> mod_entries(static_cast<size_t>(n) * n);
    std::vector<u64> inv_p;

    auto add_primes = [&](int count) {
        auto ps = primes_below_63(count, next_start);
        next_start = ps.back() + 2;
        for (u64 p : ps) {
            for (size_t i = 0; i < mod_entries.size(); i++) mod_entries[i] = mod_of(entries[i], p);
            if (!invert_mod_p(mod_entries, n, p, inv_p)) {
                singular_strikes++;
                if (singular_strikes >= 3) {
                    throw rank_error("int_matrix_inverse: matrix is singular");
                }
                continue;
            }
            used_primes.push_back(p);
            residues.push_back(inv_p);
        }
    };

    add_primes(nprimes);

    while (true) {
        // CRT-combine the residues entrywise, then rationally reconstruct.
        BigInt modulus = 1;
        for (u64 p : used_primes) modulus *= p;

        RatMatrix out(n, n);
        bool ok = true;
        std::vector<BigInt> crt(static_cast<size_t>(n) * n, 0);
        BigInt m_acc = 1;
        for (size_t pi = 0; pi < used_primes.size() && ok; pi++) {
            u64 p = used_primes[pi];
            BigInt minv = m_acc % p;
            if (minv < 0) minv += p;
            u64 inv_macc = inv_mod(minv.convert_to<u64>(), p);
            for (size_t e = 0; e < crt.size(); e++) {
                u64 cur = mod_of(crt[e], p);
                u64 diff = (residues[pi][e] + p - cur) % p;
                crt[e] += m_acc * BigInt(mulmod(diff, inv_macc, p));
            }
            m_acc *= p;
        }
        for (size_t e = 0; e < crt.size() && ok; e++) {
            BigRat v;
            if (!rational_reconstruct(crt[e], modulus, v)) { ok = false; break; }
            out.a[e] = std::move(v);
        }

        if (ok) {
            // Certify against two fresh primes: A * M = I mod p.
            auto fresh = primes_below_63(2, next_start);
            next_start = fresh.back() + 2;
            bool certified = true;
            for (u64 p : fresh) {
                std::vector<u64> am(static_cast<size_t>(n) * n);
                for (size_t i = 0; i < am.size(); i++) am[i] = mod_of(entries[i], p);
                std::vector<u64> xm(static_cast<size_t>(n) * n);
                bool invertible = true;
                for (int i = 0; i < n && invertible; i++) {
                    for (int j = 0; j < n; j++) {
                        const BigRat& v = out.at(i, j);
                        u64 den = mod_of(BigInt(denominator(v)), p);
                        if (den == 0) { invertible = false; break; }
                        u64 num = mod_of(BigInt(numerator(v)), p);
                        xm[static_cast<size_t>(i) * n + j] = mulmod(num, inv_mod(den, p), p);
                    }
                }
                if (!invertible) { certified = false; break; }
                for (int i = 0; i < n && certified; i++) {
                    for (int j = 0; j < n; j++) {
                        u128 acc = 0;
                        for (int l = 0; l < n; l++) {
                            acc += u128(xm[static_cast<size_t>(i) * n + l]) * am[static_cast<size_t>(l) * n + j] % p;
                        }
                        u64 got = static_cast<u64>(acc % p);
                        if (got != (i == j ? 1u : 0u)) { certified = false; break; }
                    }
                }
                if (!certified) break;
            }
            if (certified) return out;
        }
        add_primes(static_cast<int>(used_primes.size()));
    }
}

} // namespace designlab
