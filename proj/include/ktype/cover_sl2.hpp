#pragma once

// Kubota's n-fold cover of SL2(F): the 2-cocycle
//   beta(g1,g2) = ( X(g1g2)/X(g1), X(g1g2)/X(g2) )_n,  X = c if c != 0 else d,
// the twisted group law on pairs (matrix, zeta), and the splitting section
//   s(k) = (c,d)_n  when 0 < val(c) < infinity, s(k) = 1 otherwise
// over the maximal compact K^1 = SL2(O).
//
// Matrix entries are kept exact (p^val * num with num a signed 128-bit
// integer), so the case split in X on c = 0 is never blurred by truncation.
// An entry is zero only if constructed as zero.

#include <array>
#include <optional>
#include <string>

#include "ktype/hilbert.hpp"

namespace ktype {

struct Ent {
    bool zero = true;
    i64 val = 0;
    i128 num = 0;  // p does not divide num; |num| capped to guard overflow

    static Ent zero_ent() { return {}; }
};

Ent ent_from_int(const LocalField& F, i64 x);
Ent ent_from_trunc(const LocalField& F, const TruncElt& x);
TruncElt ent_to_trunc(const LocalField& F, const Ent& e);  // rejects zero
Ent ent_add(const LocalField& F, const Ent& a, const Ent& b);
Ent ent_mul(const LocalField& F, const Ent& a, const Ent& b);
Ent ent_neg(const Ent& a);
bool ent_eq(const LocalField& F, const Ent& a, const Ent& b);  // mod p^L, relative
// residue of an integral entry mod p^m
i64 ent_residue(const LocalField& F, const Ent& a, i64 m);

struct Sl2Matrix {
    Ent a, b, c, d;
};

Sl2Matrix sl2_from_ints(const LocalField& F, i64 a, i64 b, i64 c, i64 d);
Sl2Matrix sl2_identity(const LocalField& F);
Sl2Matrix sl2_w(const LocalField& F);                          // [[0,1],[-1,0]]
Sl2Matrix sl2_dg(const LocalField& F, const TruncElt& t);      // diag(t, 1/t)
Sl2Matrix sl2_lt(const LocalField& F, const TruncElt& u);      // [[1,0],[u,1]]
Sl2Matrix sl2_upper(const LocalField& F, const TruncElt& t, const Ent& s);
Sl2Matrix sl2_mul(const LocalField& F, const Sl2Matrix& m1, const Sl2Matrix& m2);
Sl2Matrix sl2_inv(const LocalField& F, const Sl2Matrix& m);
bool sl2_eq(const LocalField& F, const Sl2Matrix& m1, const Sl2Matrix& m2);
bool sl2_is_integral(const Sl2Matrix& m);
void sl2_check_det(const LocalField& F, const Sl2Matrix& m);  // det = 1 to precision

TruncElt kubota_X(const LocalField& F, const Sl2Matrix& g);
RootOfUnity beta(const LocalField& F, const Sl2Matrix& g1, const Sl2Matrix& g2);

struct CoverElement {
    Sl2Matrix mat;
    RootOfUnity zeta;
};

CoverElement cover(const LocalField& F, const Sl2Matrix& m, i64 zexp = 0);
CoverElement cover_mul(const LocalField& F, const CoverElement& x, const CoverElement& y);
CoverElement cover_inv(const LocalField& F, const CoverElement& x);
bool cover_eq(const LocalField& F, const CoverElement& x, const CoverElement& y);

// s(k) for integral k; the map (k, zeta) -> (k, s(k) zeta) carries the cover
// law over K^1 to the direct product law
RootOfUnity section_s(const LocalField& F, const Sl2Matrix& k);

enum class SplitSubgroup { K1_j, T1capK1, B1capK1, T1_full };

struct SplitReport {
    bool splits = false;
    std::string detail;
};

// Checks the stated splitting (or, for T1_full, non-splitting) over a finite
// window of the subgroup. j is the congruence level for K1_j.
SplitReport verify_splitting(const LocalField& F, SplitSubgroup sub, i64 j = 1);

// enumeration helpers for the splitting / cocycle suites ------------------

// lift a residue matrix of SL2(Z/p^l) to an integer matrix with det exactly 1
Sl2Matrix sl2_lift_residues(const LocalField& F, i64 a, i64 b, i64 c, i64 d, i64 l);
// all of SL2(Z/p^l) lifted to exact integral matrices, deterministic order
std::vector<Sl2Matrix> sl2_quotient_lifts(const LocalField& F, i64 l);
// deterministic pseudo-random integral lift of an SL2(Z/p^l) element
Sl2Matrix sl2_random_lift(const LocalField& F, i64 l, std::uint64_t seed, i64 index);

// exhaustive 2-cocycle identity over all lift triples at level l (budgeted),
// returns number of violations (0 expected)
i64 verify_cocycle_exhaustive(const LocalField& F, i64 l, int jobs = 1);
// sampled triples at level l
i64 verify_cocycle_sampled(const LocalField& F, i64 l, i64 samples, std::uint64_t seed,
                           int jobs = 1);
// section property s(k1 k2) = beta(k1,k2) s(k1) s(k2) over all pairs at level l
i64 verify_section_exhaustive(const LocalField& F, i64 l, int jobs = 1);

}  // namespace ktype
