#pragma once

// The metaplectic torus of the SL2 cover: its center Z = {(dg(t),z) | t an
// n_under-th power}, the maximal abelian subgroup A = {n_under | val(t)},
// commutators, index counting over finite windows, and the calculus of
// genuine characters: a CharacterSpec pins the value of chi_0 on the
// generators of A, twists chi_i multiply the unit part by eta^(2i), and all
// evaluation is exact (values are rational exponents of roots of unity).

#include "ktype/cover_sl2.hpp"
#include "ktype/cyc.hpp"

namespace ktype {

struct TorusElement {
    TruncElt t;
    RootOfUnity zeta;
};

TorusElement torus_elt(const LocalField& F, const TruncElt& t, i64 zexp = 0);
TorusElement torus_mul(const LocalField& F, const TorusElement& x, const TorusElement& y);
TorusElement torus_inv(const LocalField& F, const TorusElement& x);
// x y x^-1 y^-1, which always lies over the identity matrix
RootOfUnity torus_commutator(const LocalField& F, const TorusElement& x, const TorusElement& y);

bool in_center(const LocalField& F, const TorusElement& x);
bool in_A(const LocalField& F, const TorusElement& x);

// Finite data determining a genuine character of A (and by restriction of Z):
//  - value at (dg(teich_gen),1)   = e(teich_exp / (q-1))
//  - value at (dg(1+p),1)         = e(principal_exp / p^(L-1))
//  - value at (dg(pi^n_under),1)  = e(pi_exp / pi_order)
//  - mu_n acts faithfully by epsilon = identity exponent
struct CharacterSpec {
    i64 teich_exp = 0;
    i64 principal_exp = 0;
    i64 pi_order = 1;
    i64 pi_exp = 0;
    i64 epsilon_exp = 1;  // fixed in v1

    bool operator==(const CharacterSpec& o) const {
        return teich_exp == o.teich_exp && principal_exp == o.principal_exp &&
               pi_order == o.pi_order && pi_exp == o.pi_exp && epsilon_exp == o.epsilon_exp;
    }
};

// evaluation of the character on an element of A
Cyc chi_eval(const LocalField& F, const CharacterSpec& spec, const TorusElement& x);
// value of chi on (dg(u),1) for a unit u (mod p^min(L,level) suffices)
Cyc chi_unit_eval(const LocalField& F, const CharacterSpec& spec, i64 unit);

struct ExtensionFamily {
    CharacterSpec base;
    std::vector<CharacterSpec> twists;  // twists[0] == base, size n_under
};

struct ValidationResult {
    bool ok = true;
    std::string detail;
};

// multiplicativity of the evaluation rule on generator pairs and on `pairs`
// deterministic pseudo-random pairs of the target subgroup (A or Z)
ValidationResult validate_character(const LocalField& F, const CharacterSpec& spec,
                                    bool on_A = true, i64 pairs = 1000,
                                    std::uint64_t seed = 0);

// smallest m >= 1 with the character trivial on {(dg(t),1) | t in 1+p^m}
i64 primitive_level(const LocalField& F, const CharacterSpec& spec);

// the n_under pairwise-distinct extensions chi_i of chi = chi_0|_Z to A
ExtensionFamily extend_character(const LocalField& F, const CharacterSpec& base);

// chi_0 conjugated by (dg(pi^i), 1); equals extend_character(base).twists[i]
CharacterSpec conjugate_character(const LocalField& F, const CharacterSpec& base, i64 i);

// chi_i trivial on {(dg(t^2),1) | t unit}; forces primitive level 1 when true
bool quad_condition(const LocalField& F, const ExtensionFamily& fam, i64 i);

// rebuild a spec from its values on the three generators of A; pi_order = 0
// selects the default block order lcm(n, q-1)
CharacterSpec spec_from_values(const LocalField& F, const Cyc& v_teich, const Cyc& v_principal,
                               const Cyc& v_pi, i64 pi_order = 0);

struct TorusIndexReport {
    i64 index_center = 0;  // [T~1 : Z], expected n_under^2
    i64 index_A = 0;       // [T~1 : A], expected n_under
};

// coset counting over the window (val mod n_under) x (units mod p^2)
TorusIndexReport torus_indices(const LocalField& F);

struct SvnReport {
    i64 degree = 0;       // dimension of the induced window representation
    i64 norm = 0;         // <chi,chi> over the window group
    i64 window_size = 0;
    i64 aux_prime_1 = 0, aux_prime_2 = 0;
};

// Stone-von-Neumann at finite scale: induce chi_0 from A-part to the full
// torus window and measure degree and character norm
SvnReport svn_window_check(const LocalField& F, const CharacterSpec& chi0);

}  // namespace ktype
