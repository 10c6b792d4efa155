#pragma once

// Finite congruence quotients SL2(O/p^l) and GL2(O/p^l), modeled in split
// coordinates (quotient x mu_n with the direct product law; characters carry
// the section-transport corrections, which vanish on upper-triangular
// elements). Provides: constant-time element indexing, conjugacy classes by
// orbit refinement, the B\Q/B double-coset partition, induced characters as
// exact cyclotomic class functions, Hom-space dimensions via dual-prime
// embeddings, and constituent dimensions via commutant eigenspaces.

#include <map>

#include "ktype/torus_characters.hpp"

namespace ktype {

struct QMat {
    i64 a = 1, b = 0, c = 0, d = 1;
};

class Quot {
public:
    // SL2 (gl=false) or GL2 (gl=true) over Z/p^l
    Quot(const LocalField& F, i64 l, bool gl, i64 budget = 5'000'000);

    const LocalField& field() const { return *F_; }
    i64 level() const { return l_; }
    i64 modulus() const { return pl_; }
    bool is_gl() const { return gl_; }
    i64 size() const { return size_; }
    i64 sl_size() const { return sl_size_; }
    i64 budget() const { return budget_; }
    i64 borel_size() const;  // upper-triangular subgroup order

    QMat mul(const QMat& x, const QMat& y) const;
    QMat inv(const QMat& x) const;
    bool eq(const QMat& x, const QMat& y) const;
    bool is_upper(const QMat& x) const { return x.c == 0; }
    bool in_group(const QMat& x) const;

    i64 index_of(const QMat& g) const;   // bijection onto [0, size)
    QMat at(i64 idx) const;

    QMat identity() const { return QMat{1, 0, 0, 1}; }
    QMat w() const { return QMat{0, 1, floor_mod(-1, pl_), 0}; }
    QMat lt(i64 u) const { return QMat{1, 0, floor_mod(u, pl_), 1}; }
    QMat dg(i64 t, i64 s) const { return QMat{floor_mod(t, pl_), 0, 0, floor_mod(s, pl_)}; }

    // square root of a unit mod p^l when it exists (Tonelli + Hensel)
    std::optional<i64> sqrt_unit(i64 a) const;

private:
    const LocalField* F_;
    i64 l_, pl_, size_, sl_size_, budget_;
    bool gl_;
    std::vector<int> row_rank_;   // (c*pl+d) -> rank of unimodular bottom row
    std::vector<int> rank_row_;
    std::vector<int> unit_rank_;  // GL dets
    std::vector<int> rank_unit_;
    i64 sl_index(const QMat& g) const;
    QMat sl_at(i64 idx) const;
};

// ----- conjugacy classes -----------------------------------------------

struct Classes {
    std::vector<int> class_of;     // element index -> class id
    std::vector<i64> rep;          // class id -> element index
    std::vector<i64> size;         // class id -> cardinality
};

Classes conjugacy_classes(const Quot& Q);

// ----- characters of the Borel image ------------------------------------

// one-dimensional character of the upper-triangular subgroup mod p^l,
// tabulated on the diagonal as exponents of zeta_M (the off-diagonal part
// acts trivially, and the splitting section is 1 on upper matrices)
struct BChar {
    i64 M = 1;
    bool gl = false;
    i64 pl = 0;
    std::vector<i64> diag_exp;  // SL: index t; GL: index t1*pl + t2 (units only)

    i64 eval_upper(const QMat& u) const {
        return gl ? diag_exp[static_cast<size_t>(u.a * pl + u.d)]
                  : diag_exp[static_cast<size_t>(u.a)];
    }
};

// chi_i of an SL2 extension family transported to the level-l quotient;
// requires primitive level <= l
BChar bchar_sl(const LocalField& F, const Quot& Q, const CharacterSpec& chi_i);

// ----- class functions and the oracle ------------------------------------

struct ClassFunction {
    i64 M = 1;
    std::vector<std::map<i64, i64>> vals;  // per class: zeta_M exponent -> coeff
};

ClassFunction cf_sub(const ClassFunction& x, const ClassFunction& y);
bool cf_eq(const ClassFunction& x, const ClassFunction& y);

// character of Ind_{H}^{Q} chi where H = (upper mod p^sub_level) seen at
// level l; sub_level = l gives the Borel of the quotient, sub_level < l the
// coarser group B K_{sub_level}. chi must be trivial where required.
ClassFunction induced_char(const Quot& Q, const Classes& cls, const BChar& chi, i64 sub_level);
// degree of the class function (value at the identity, must be integral)
i64 cf_degree(const Quot& Q, const Classes& cls, const ClassFunction& f);

struct OraclePrimes {
    i64 r1 = 0, r2 = 0;
    i64 M = 1;   // character values live in mu_M
    i64 E = 1;   // r = 1 mod E with exp(G) | E, so commutant eigenvalues split
};

OraclePrimes choose_oracle_primes(const Quot& Q, i64 M);

// exact <V,W> over the quotient cover; both prime embeddings must agree
i64 hom_dim_oracle(const Quot& Q, const Classes& cls, const ClassFunction& V,
                   const ClassFunction& W, const OraclePrimes& pr);

// ----- double cosets -------------------------------------------------------

// canonical label of the double coset B g B:
//   0 -> identity coset, 1 -> coset of w,
//   SL: 2 + 2(r-1) + s for lt(u p^r) with s = 0 iff unit(c)*a is a square
//   GL: 2 + (r-1) for lt(p^r)
i64 coset_label(const Quot& Q, const QMat& g);
i64 coset_label_count(const Quot& Q);          // 2 + 2(l-1) or 2 + (l-1)
QMat coset_rep(const Quot& Q, i64 label);

struct DoubleCosetReport {
    i64 count = 0;
    std::vector<i64> sizes;          // by label
    bool partition_ok = false;       // BFS orbits match the labeled partition
    bool covers = false;
    bool disjoint = false;
};

// BFS the double cosets of the listed representatives and verify they cover
// the quotient disjointly and agree with coset_label
DoubleCosetReport verify_double_cosets(const Quot& Q);

// ----- Hecke support and commutant eigenspaces ---------------------------

// does the double coset of `label` support a function in H(chi_i, chi_j)?
bool coset_supports(const Quot& Q, const BChar& chi_i, const BChar& chi_j, i64 label);

// dimensions of the irreducible constituents of Ind_B^Q chi (commutant
// eigenspace dimensions, cross-checked over both primes)
std::vector<i64> constituent_dims(const Quot& Q, const BChar& chi, const OraclePrimes& pr);

}  // namespace ktype
