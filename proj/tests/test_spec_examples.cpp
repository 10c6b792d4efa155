// Frozen cross-module example values and identities that do not belong to a
// single module's suite.

#include "doctest.h"
#include "ktype/hecke_branching.hpp"
#include "ktype/cover_gl2.hpp"

using namespace ktype;

TEST_CASE("unit group generators") {
    LocalField F(5, 2, 6);
    auto [t1, u1] = F.unit_group_generators(1);
    CHECK(t1 == 2);  // level-1 quotient is F_q^x itself
    auto [t2, u2] = F.unit_group_generators(2);
    CHECK(t2 == 7);  // Teichmuller lift of 2 mod 25
    CHECK(u2 == 6);
    CHECK(pow_mod(t2, 4, 25) == 1);
    (void)u1;
}

TEST_CASE("degree additivity over the extension family") {
    // sum of induced degrees = n_under (p+1) p^(l-1)
    LocalField F(13, 4, 6);
    Quot Q(F, 2, false);
    Classes cls = conjugacy_classes(Q);
    CharacterSpec s;
    s.teich_exp = 1;
    s.pi_order = lcm_i64(F.n(), F.q() - 1);
    ExtensionFamily fam = extend_character(F, s);
    i64 total = 0;
    for (const auto& tw : fam.twists) {
        BChar ch = bchar_sl(F, Q, tw);
        total += cf_degree(Q, cls, induced_char(Q, cls, ch, 2));
    }
    CHECK(total == F.n_under() * (F.p() + 1) * F.p());
}

TEST_CASE("hom between distinct characters of an abelian group is zero") {
    // abelian orthogonality through the dual-prime embedding: two distinct
    // characters of the unit group summed against each other give 0
    LocalField F(5, 4, 6);
    Quot Q(F, 2, false);
    CharacterSpec s;
    s.teich_exp = 1;
    s.pi_order = lcm_i64(F.n(), F.q() - 1);
    ExtensionFamily fam = extend_character(F, s);
    BChar a = bchar_sl(F, Q, fam.twists[0]);
    BChar b = bchar_sl(F, Q, fam.twists[1]);
    OraclePrimes pr = choose_oracle_primes(Q, a.M);
    for (i64 r : {pr.r1, pr.r2}) {
        i64 xi = element_of_order(pr.M, r);
        i64 sum_ab = 0, sum_aa = 0, units = 0;
        for (i64 t = 1; t < Q.modulus(); ++t) {
            if (t % F.p() == 0) continue;
            ++units;
            i64 e = floor_mod(a.diag_exp[static_cast<size_t>(t)] -
                              b.diag_exp[static_cast<size_t>(t)], pr.M);
            sum_ab = floor_mod(sum_ab + pow_mod(xi, e, r), r);
            sum_aa = floor_mod(sum_aa + 1, r);
        }
        CHECK(sum_ab == 0);
        CHECK(sum_aa == floor_mod(units, r));
    }
}

TEST_CASE("cross Hom vanishes when the eps-eta condition fails") {
    // (5,4), teich = 2: chi_0 kills unit squares, so the off-diagonal
    // condition needs i+j = 0 mod 2; at (0,1) it fails and dim H = 2(l-m) = 0
    LocalField F(5, 4, 6);
    Quot Q(F, 1, false);
    Classes cls = conjugacy_classes(Q);
    CharacterSpec s;
    s.teich_exp = 2;
    s.pi_order = lcm_i64(F.n(), F.q() - 1);
    ExtensionFamily fam = extend_character(F, s);
    CHECK_FALSE(eps_eta_condition(F, fam, 1));
    BChar a = bchar_sl(F, Q, fam.twists[0]);
    BChar b = bchar_sl(F, Q, fam.twists[1]);
    OraclePrimes pr = choose_oracle_primes(Q, a.M);
    CHECK(hom_dim_oracle(Q, cls, induced_char(Q, cls, a, 1), induced_char(Q, cls, b, 1),
                         pr) == 0);
    // and with teich = 1 the condition holds at (0,1), giving 2l-1 = 1
    CharacterSpec s1;
    s1.teich_exp = 1;
    s1.pi_order = lcm_i64(F.n(), F.q() - 1);
    ExtensionFamily fam1 = extend_character(F, s1);
    CHECK(eps_eta_condition(F, fam1, 1));
    BChar a1 = bchar_sl(F, Q, fam1.twists[0]);
    BChar b1 = bchar_sl(F, Q, fam1.twists[1]);
    CHECK(hom_dim_oracle(Q, cls, induced_char(Q, cls, a1, 1), induced_char(Q, cls, b1, 1),
                         pr) == 1);
}

TEST_CASE("GL double coset collapse: dg(e^-1,1) lt(pi^r) dg(e,1) = lt(e pi^r)") {
    // the conjugation that collapses lt(e pi^r) into the coset of lt(pi^r);
    // the mu_n corrections (pi^r, e)(e, pi^r) cancel exactly
    for (auto [p, n] : std::vector<std::pair<i64, i64>>{{5, 2}, {7, 3}, {13, 4}}) {
        LocalField F(p, n, 6);
        Gl2Cover C(F);
        TruncElt eps = F.make(0, F.g());  // fixed non-square
        for (i64 r : {i64(1), i64(2)}) {
            auto lhs = C.mul(C.mul(C.elt(gl_dg(F, F.inv(eps), F.one())),
                                   C.elt(gl_from_sl(sl2_lt(F, F.uniformizer(r))))),
                             C.elt(gl_dg(F, eps, F.one())));
            auto rhs = C.elt(gl_from_sl(sl2_lt(F, F.mul(eps, F.uniformizer(r)))));
            CHECK(C.eq(lhs, rhs));
        }
    }
}

TEST_CASE("conjugate character value formula at (7,3)") {
    // the i = 1 conjugate evaluated at (dg(tg),1) equals the base at
    // (dg(tg), eta(tg)^2)
    LocalField F(7, 3, 6);
    CharacterSpec base;
    base.teich_exp = 1;
    base.pi_order = lcm_i64(F.n(), F.q() - 1);
    base.pi_exp = 1;
    CharacterSpec conj = conjugate_character(F, base, 1);
    TorusElement tg = torus_elt(F, F.make(0, F.teich_gen()));
    RootOfUnity tw = F.mu_pow(eta(F, tg.t), 2);
    TorusElement tg_tw = torus_elt(F, tg.t, tw.exp);
    CHECK(chi_eval(F, conj, tg) == chi_eval(F, base, tg_tw));
}

TEST_CASE("(13,6): even n with odd n_under") {
    LocalField F(13, 6, 6);
    CHECK(F.n_under() == 3);
    TorusIndexReport idx = torus_indices(F);
    CHECK(idx.index_center == 9);
    CHECK(idx.index_A == 3);
    // hecke grid at level 1, generic and quadratic families
    for (i64 teich : {i64(1), i64(6)}) {
        CharacterSpec s;
        s.teich_exp = teich;
        s.pi_order = lcm_i64(F.n(), F.q() - 1);
        ExtensionFamily fam = extend_character(F, s);
        int quad_hits = 0;
        for (i64 i = 0; i < 3; ++i) quad_hits += quad_condition(F, fam, i) ? 1 : 0;
        CHECK(quad_hits == (teich == 6 ? 1 : 0));  // 4 does not divide n: one index
        for (i64 i = 0; i < 3; ++i)
            for (i64 j = 0; j < 3; ++j) {
                HeckeReport r = hecke_dim_report(F, fam, i, j, 1, true);
                CHECK(r.dim_bruteforce == r.dim_closed_form);
                REQUIRE(r.dim_oracle.has_value());
                CHECK(*r.dim_oracle == r.dim_bruteforce);
            }
    }
    // Stone-von-Neumann window at n = 6
    CharacterSpec s;
    s.teich_exp = 1;
    s.pi_order = lcm_i64(F.n(), F.q() - 1);
    SvnReport svn = svn_window_check(F, s);
    CHECK(svn.degree == 3);
    CHECK(svn.norm == 1);
}

TEST_CASE("beta of anything with the identity is trivial") {
    LocalField F(13, 4, 6);
    for (i64 i = 0; i < 25; ++i) {
        Sl2Matrix g = sl2_random_lift(F, 2, 99, i);
        CHECK(beta(F, g, sl2_identity(F)).exp == 0);
        CHECK(beta(F, sl2_identity(F), g).exp == 0);
    }
}
