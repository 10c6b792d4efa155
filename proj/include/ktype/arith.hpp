#pragma once

// Small integer-arithmetic toolbox: modular ops on int64 (with __int128
// intermediates), deterministic Miller-Rabin, and root finding for low-degree
// polynomials over a prime field. Everything here is exact.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ktype {

// every dual-auxiliary-prime comparison bumps these; a disagreement also
// raises oracle_disagreement, so nonzero disagreements can only be observed
// by a caller that swallowed the exception
inline std::atomic<std::int64_t> g_dual_prime_checks{0};
inline std::atomic<std::int64_t> g_dual_prime_disagreements{0};

using i64 = std::int64_t;
using i128 = __int128;

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}
inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& m) : std::runtime_error(m) {}
};
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& m) : std::runtime_error(m) {}
};
struct oracle_disagreement : std::runtime_error {
    explicit oracle_disagreement(const std::string& m) : std::runtime_error(m) {}
};

inline i64 floor_mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 mul_mod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<i128>(a) * b % m);
}

inline i64 pow_mod(i64 base, i64 exp, i64 m) {
    require(exp >= 0 && m > 0, "pow_mod: bad arguments");
    i64 r = 1 % m;
    base = floor_mod(base, m);
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

inline i64 gcd_i64(i64 a, i64 b) {
    while (b) { i64 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
}

inline i64 lcm_i64(i64 a, i64 b) { return a / gcd_i64(a, b) * b; }

// inverse of a modulo m, requires gcd(a,m) = 1
inline i64 inv_mod(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = floor_mod(a, m);
    while (a1) {
        i64 q = g / a1;
        g -= q * a1; std::swap(g, a1);
        x -= q * x1; std::swap(x, x1);
    }
    require(g == 1, "inv_mod: not invertible");
    return floor_mod(x, m);
}

inline bool is_prime_u64(i64 n) {
    if (n < 2) return false;
    for (i64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) return n == q;
    }
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic for n < 3.3e24
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// smallest prime r >= start with r = 1 mod M
inline i64 next_prime_1_mod(i64 start, i64 M) {
    i64 r = start + floor_mod(1 - start, M);
    if (r < start) r += M;
    while (!is_prime_u64(r)) r += M;
    return r;
}

inline std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> fs;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

// an element of order exactly M in F_r^* (requires M | r-1)
inline i64 element_of_order(i64 M, i64 r) {
    require((r - 1) % M == 0, "element_of_order: M does not divide r-1");
    auto fs = prime_factors(M);
    for (i64 x = 2; ; ++x) {
        i64 xi = pow_mod(x, (r - 1) / M, r);
        bool full = xi != 1;
        for (i64 q : fs) {
            if (pow_mod(xi, M / q, r) == 1) { full = false; break; }
        }
        if (full) return xi;
        require(x < 10000, "element_of_order: search exhausted");
    }
}

// square root of a unit residue mod p^level (p odd), via Tonelli at p and
// Hensel lifting; returns -1 if the residue class is a nonresidue
i64 sqrt_mod(i64 a, i64 r);
inline i64 sqrt_unit_mod_ppow(i64 a, i64 p, i64 level) {
    i64 pl = 1;
    for (i64 k = 0; k < level; ++k) pl *= p;
    a = floor_mod(a, pl);
    require(a % p != 0, "sqrt_unit_mod_ppow: not a unit");
    i64 x = sqrt_mod(a % p, p);
    if (x < 0) return -1;
    i64 e = 1;
    while (e < level) {
        e = std::min(2 * e, level);
        i64 pk = 1;
        for (i64 k = 0; k < e; ++k) pk *= p;
        i64 num = floor_mod(mul_mod(x, x, pk) - a, pk);
        x = floor_mod(x - mul_mod(num, inv_mod(floor_mod(2 * x, pk), pk), pk), pk);
    }
    if (mul_mod(x, x, pl) != floor_mod(a, pl)) return -1;
    return x;
}

// Tonelli-Shanks square root mod odd prime r; returns -1 if nonresidue.
inline i64 sqrt_mod(i64 a, i64 r) {
    a = floor_mod(a, r);
    if (a == 0) return 0;
    if (pow_mod(a, (r - 1) / 2, r) != 1) return -1;
    if (r % 4 == 3) return pow_mod(a, (r + 1) / 4, r);
    i64 q = r - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    i64 z = 2;
    while (pow_mod(z, (r - 1) / 2, r) == 1) ++z;
    i64 m = s, c = pow_mod(z, q, r), t = pow_mod(a, q, r), x = pow_mod(a, (q + 1) / 2, r);
    while (t != 1) {
        i64 tt = t;
        i64 i = 0;
        while (tt != 1) { tt = mul_mod(tt, tt, r); ++i; }
        i64 b = pow_mod(c, i64(1) << (m - i - 1), r);
        x = mul_mod(x, b, r);
        c = mul_mod(b, b, r);
        t = mul_mod(t, c, r);
        m = i;
    }
    return x;
}

namespace detail {

// dense polynomials over F_r, lowest coefficient first
inline int poly_deg(const std::vector<i64>& u) {
    for (int i = static_cast<int>(u.size()) - 1; i >= 0; --i)
        if (u[i]) return i;
    return -1;
}

inline std::vector<i64> poly_rem(std::vector<i64> a, const std::vector<i64>& b, i64 r) {
    int db = poly_deg(b);
    i64 lead_inv = inv_mod(b[db], r);
    for (int da = poly_deg(a); da >= db; da = poly_deg(a)) {
        i64 f = mul_mod(a[da], lead_inv, r);
        for (int i = 0; i <= db; ++i)
            a[da - db + i] = floor_mod(a[da - db + i] - mul_mod(f, b[i], r), r);
    }
    a.resize(std::max(db, 1));
    return a;
}

inline std::vector<i64> poly_gcd(std::vector<i64> a, std::vector<i64> b, i64 r) {
    while (poly_deg(b) >= 0) {
        a = poly_rem(a, b, r);
        std::swap(a, b);
    }
    i64 lead = a[poly_deg(a) < 0 ? 0 : poly_deg(a)];
    if (poly_deg(a) >= 0 && lead != 1) {
        i64 li = inv_mod(lead, r);
        for (auto& x : a) x = mul_mod(x, li, r);
    }
    return a;
}

inline std::vector<i64> poly_mulmod(const std::vector<i64>& u, const std::vector<i64>& v,
                                    const std::vector<i64>& f, i64 r) {
    std::vector<i64> w(u.size() + v.size() - 1, 0);
    for (size_t i = 0; i < u.size(); ++i) {
        if (!u[i]) continue;
        for (size_t j = 0; j < v.size(); ++j)
            w[i + j] = floor_mod(w[i + j] + mul_mod(u[i], v[j], r), r);
    }
    return poly_rem(std::move(w), f, r);
}

// x+delta raised to e, mod f
inline std::vector<i64> poly_powmod_linear(i64 delta, i64 e, const std::vector<i64>& f, i64 r) {
    std::vector<i64> acc{1}, base{floor_mod(delta, r), 1};
    while (e > 0) {
        if (e & 1) acc = poly_mulmod(acc, base, f, r);
        base = poly_mulmod(base, base, f, r);
        e >>= 1;
    }
    return acc;
}

}  // namespace detail

// all distinct roots in F_r of c[0] + c[1] x + ... (small degree; exact)
inline std::vector<i64> poly_roots_mod(std::vector<i64> c, i64 r) {
    using namespace detail;
    for (auto& x : c) x = floor_mod(x, r);
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    std::vector<i64> roots;
    int d = poly_deg(c);
    if (d <= 0) return roots;
    if (d == 1) {
        roots.push_back(mul_mod(floor_mod(-c[0], r), inv_mod(c[1], r), r));
        return roots;
    }
    // keep only the completely-split part: gcd(x^r - x, c)
    std::vector<i64> xr = poly_powmod_linear(0, r, c, r);
    if (xr.size() < 2) xr.resize(2, 0);
    xr[1] = floor_mod(xr[1] - 1, r);
    std::vector<i64> g = poly_gcd(c, xr, r);
    int dg = poly_deg(g);
    if (dg <= 0) return roots;
    // split by gcd with (x+delta)^((r-1)/2) - 1 over a deterministic sweep
    std::vector<std::vector<i64>> stack = {g};
    i64 delta = 0;
    while (!stack.empty()) {
        std::vector<i64> f = stack.back();
        stack.pop_back();
        int df = poly_deg(f);
        if (df <= 0) continue;
        if (df == 1) {
            roots.push_back(mul_mod(floor_mod(-f[0], r), inv_mod(f[1], r), r));
            continue;
        }
        if (f[0] == 0) {  // x | f
            roots.push_back(0);
            std::vector<i64> q(f.begin() + 1, f.end());
            stack.push_back(q);
            continue;
        }
        bool split = false;
        for (; delta < r && !split; ++delta) {
            std::vector<i64> h = poly_powmod_linear(delta, (r - 1) / 2, f, r);
            if (h.empty()) h.resize(1, 0);
            h[0] = floor_mod(h[0] - 1, r);
            std::vector<i64> g1 = poly_gcd(f, h, r);
            int dg1 = poly_deg(g1);
            if (dg1 > 0 && dg1 < df) {
                // f = g1 * (f/g1)
                std::vector<i64> q(static_cast<size_t>(df - dg1 + 1), 0);
                std::vector<i64> rem = f;
                i64 li = inv_mod(g1[dg1], r);
                for (int k = df - dg1; k >= 0; --k) {
                    i64 coef = mul_mod(rem[k + dg1], li, r);
                    q[k] = coef;
                    for (int i = 0; i <= dg1; ++i)
                        rem[k + i] = floor_mod(rem[k + i] - mul_mod(coef, g1[i], r), r);
                }
                stack.push_back(g1);
                stack.push_back(q);
                split = true;
            }
        }
        require(split, "poly_roots_mod: splitting sweep exhausted");
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace ktype
