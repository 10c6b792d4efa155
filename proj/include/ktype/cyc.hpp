#pragma once

// Roots of unity as exact rational exponents: the value e(a/b) = exp(2*pi*i*a/b)
// is stored as the reduced fraction a/b mod 1. Multiplying values adds
// exponents. No floating point anywhere.

#include "ktype/arith.hpp"

namespace ktype {

struct Cyc {
    i64 num = 0;  // 0 <= num < den
    i64 den = 1;  // den >= 1

    static Cyc one() { return {0, 1}; }

    static Cyc frac(i64 a, i64 b) {
        require(b != 0, "Cyc: zero denominator");
        if (b < 0) { a = -a; b = -b; }
        a = floor_mod(a, b);
        i64 g = gcd_i64(a == 0 ? b : a, b);
        return {a / g, b / g};
    }

    Cyc operator*(const Cyc& o) const {  // multiply values = add exponents
        i64 l = lcm_i64(den, o.den);
        return frac(num * (l / den) + o.num * (l / o.den), l);
    }
    Cyc inv() const { return frac(-num, den); }
    Cyc pow(i64 k) const { return frac(num * k, den); }
    bool is_one() const { return num == 0; }
    bool operator==(const Cyc& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Cyc& o) const { return !(*this == o); }
    bool operator<(const Cyc& o) const {  // order by exponent in [0,1)
        return static_cast<i128>(num) * o.den < static_cast<i128>(o.num) * den;
    }

    // exponent of zeta_M; requires den | M
    i64 exp_mod(i64 M) const {
        require(M % den == 0, "Cyc: value not in mu_M");
        return num * (M / den);
    }
};

}  // namespace ktype
