#pragma once

// Exact arithmetic in a tame non-Archimedean local field, truncated to a fixed
// working precision L: residue field F_p (p an odd prime), valuations, unit
// residues mod p^L, mu_n as exponents, discrete logs and n-th power tests.
//
// Nonzero field elements are pairs (val, unit): the element p^val * unit with
// unit an invertible residue mod p^L. Equality means equal valuation and
// congruent units. The uniformizer is the rational prime p itself.

#include <optional>
#include <vector>

#include "ktype/arith.hpp"
#include "ktype/cyc.hpp"

namespace ktype {

struct TruncElt {
    i64 val = 0;
    i64 unit = 1;  // in [1, p^L), coprime to p
    bool operator==(const TruncElt& o) const { return val == o.val && unit == o.unit; }
    bool operator!=(const TruncElt& o) const { return !(*this == o); }
};

// mu_n element as an exponent with respect to zeta_n = g^((q-1)/n)
struct RootOfUnity {
    i64 exp = 0;
    bool operator==(const RootOfUnity& o) const { return exp == o.exp; }
    bool operator!=(const RootOfUnity& o) const { return !(*this == o); }
};

class LocalField {
public:
    // p odd prime, n >= 2 with n | p-1, L = retained p-adic digits
    LocalField(i64 p, i64 n, i64 L);

    i64 p() const { return p_; }
    i64 q() const { return p_; }
    i64 n() const { return n_; }
    i64 n_under() const { return n_under_; }
    i64 L() const { return L_; }
    i64 g() const { return g_; }
    i64 pL() const { return pow_p(L_); }
    i64 pow_p(i64 k) const;  // p^k for 0 <= k <= L

    // ----- residues and discrete logs -----
    i64 dlog(i64 u) const;          // u a unit mod p; g^dlog = u mod p
    i64 teich_gen() const { return teich_g_; }   // Teichmuller lift of g mod p^L
    i64 principal_gen() const { return 1 + p_; }
    // generators of O^x/(1+p^m) = Z/(q-1) x Z/p^(m-1): the Teichmuller lift
    // of g reduced mod p^m, and 1+p
    std::pair<i64, i64> unit_group_generators(i64 m) const {
        require(m >= 1 && m <= L_, "unit_group_generators: level outside [1, L]");
        return {teich_g_ % pow_p(m), 1 + p_};
    }
    // unit mod p^m as teich_gen^a * (1+p)^b; returns (a mod q-1, b mod p^(m-1))
    std::pair<i64, i64> unit_decompose(i64 u, i64 m) const;

    // ----- truncated element arithmetic -----
    TruncElt from_int(i64 x) const;           // x != 0
    TruncElt make(i64 val, i64 unit) const;   // unit coprime to p, any representative
    TruncElt uniformizer(i64 k = 1) const { return make(k, 1); }
    TruncElt one() const { return make(0, 1); }
    TruncElt mul(const TruncElt& a, const TruncElt& b) const;
    TruncElt inv(const TruncElt& a) const;
    TruncElt div(const TruncElt& a, const TruncElt& b) const { return mul(a, inv(b)); }
    TruncElt pow(const TruncElt& a, i64 k) const;
    TruncElt neg(const TruncElt& a) const;
    i64 unit_mod_p(const TruncElt& a) const { return a.unit % p_; }
    // residue of the unit part mod p^m
    i64 unit_mod(const TruncElt& a, i64 m) const { return a.unit % pow_p(m); }

    bool is_nth_power(const TruncElt& x, i64 k) const;  // k | q-1

    // ----- mu_n -----
    RootOfUnity mu(i64 e) const { return {floor_mod(e, n_)}; }
    RootOfUnity mu_mul(RootOfUnity a, RootOfUnity b) const { return mu(a.exp + b.exp); }
    RootOfUnity mu_inv(RootOfUnity a) const { return mu(-a.exp); }
    RootOfUnity mu_pow(RootOfUnity a, i64 k) const { return mu(a.exp * k); }
    i64 mu_residue(RootOfUnity a) const;  // value of zeta_n^exp in F_p
    Cyc mu_value(RootOfUnity a) const { return Cyc::frac(a.exp, n_); }

private:
    i64 p_, n_, n_under_, L_, g_, teich_g_;
    std::vector<i64> ppow_;  // p^0..p^L
    std::vector<int> dlog_;  // index by residue mod p
};

}  // namespace ktype
