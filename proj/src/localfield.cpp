#include "ktype/localfield.hpp"

namespace ktype {

LocalField::LocalField(i64 p, i64 n, i64 L) : p_(p), n_(n), L_(L) {
    require(p >= 3 && is_prime_u64(p), "LocalField: p must be an odd prime");
    require(n >= 2 && (p - 1) % n == 0, "LocalField: need n >= 2 and n | q-1");
    require(L >= 1, "LocalField: precision must be positive");
    n_under_ = (n % 2 == 0) ? n / 2 : n;

    ppow_.resize(L + 1);
    ppow_[0] = 1;
    for (i64 k = 1; k <= L; ++k) {
        require(ppow_[k - 1] <= (i64(1) << 60) / p, "LocalField: p^L overflows");
        ppow_[k] = ppow_[k - 1] * p;
    }

    // smallest primitive root mod p
    g_ = 0;
    auto qfs = prime_factors(p - 1);
    for (i64 cand = 2; cand < p; ++cand) {
        bool prim = true;
        for (i64 f : qfs)
            if (pow_mod(cand, (p - 1) / f, p) == 1) { prim = false; break; }
        if (prim) { g_ = cand; break; }
    }
    require(g_ != 0, "LocalField: no primitive root found");

    dlog_.assign(p, -1);
    i64 acc = 1;
    for (i64 k = 0; k < p - 1; ++k) {
        dlog_[acc] = static_cast<int>(k);
        acc = acc * g_ % p;
    }

    // Teichmuller lift: g^(p^(L-1)) mod p^L has exact order q-1 and reduces to g
    teich_g_ = g_ % pL();
    for (i64 k = 0; k + 1 < L; ++k) teich_g_ = pow_mod(teich_g_, p, pL());
}

i64 LocalField::pow_p(i64 k) const {
    require(k >= 0 && k <= L_, "pow_p: exponent outside [0, L]");
    return ppow_[k];
}

i64 LocalField::dlog(i64 u) const {
    u = floor_mod(u, p_);
    require(u != 0, "dlog: argument is 0 mod p");
    return dlog_[u];
}

std::pair<i64, i64> LocalField::unit_decompose(i64 u, i64 m) const {
    require(m >= 1 && m <= L_, "unit_decompose: level outside [1, L]");
    i64 pm = pow_p(m);
    u = floor_mod(u, pm);
    require(u % p_ != 0, "unit_decompose: not a unit");
    i64 a = dlog(u % p_);
    // remove the Teichmuller part, leaving an element of 1+p
    i64 t = pow_mod(teich_g_, a, pm);
    i64 rem = mul_mod(u, inv_mod(t, pm), pm);
    // digit-by-digit log base 1+p: (1+p)^(d p^j) = 1 + d p^(j+1) mod p^(j+2)
    i64 b = 0;
    for (i64 j = 0; j + 1 < m; ++j) {
        i64 digit = floor_mod((rem - 1) / pow_p(j + 1), p_);
        b += digit * pow_p(j);
        i64 step = pow_mod(1 + p_, digit * pow_p(j), pm);
        rem = mul_mod(rem, inv_mod(step, pm), pm);
    }
    require(rem == 1, "unit_decompose: internal log failure");
    return {a, b};
}

TruncElt LocalField::from_int(i64 x) const {
    require(x != 0, "from_int: zero is not a field unit");
    i64 val = 0;
    while (x % p_ == 0) { x /= p_; ++val; }
    return {val, floor_mod(x, pL())};
}

TruncElt LocalField::make(i64 val, i64 unit) const {
    unit = floor_mod(unit, pL());
    require(unit % p_ != 0, "make: unit part not invertible");
    return {val, unit};
}

TruncElt LocalField::mul(const TruncElt& a, const TruncElt& b) const {
    return {a.val + b.val, mul_mod(a.unit, b.unit, pL())};
}

TruncElt LocalField::inv(const TruncElt& a) const {
    return {-a.val, inv_mod(a.unit, pL())};
}

TruncElt LocalField::pow(const TruncElt& a, i64 k) const {
    if (k < 0) return inv(pow(a, -k));
    return {a.val * k, pow_mod(a.unit, k, pL())};
}

TruncElt LocalField::neg(const TruncElt& a) const {
    return {a.val, floor_mod(-a.unit, pL())};
}

bool LocalField::is_nth_power(const TruncElt& x, i64 k) const {
    require(k >= 1 && (p_ - 1) % k == 0, "is_nth_power: need k | q-1");
    if (x.val % k != 0) return false;
    // tame: 1 + p is a k-th power, so only the residue-field class matters
    return dlog(x.unit % p_) % k == 0;
}

i64 LocalField::mu_residue(RootOfUnity a) const {
    return pow_mod(g_, (p_ - 1) / n_ * floor_mod(a.exp, n_), p_);
}

}  // namespace ktype
