#include "doctest.h"
#include "ktype/hecke_branching.hpp"

using namespace ktype;

static ExtensionFamily make_family(const LocalField& F, i64 teich, i64 depth) {
    CharacterSpec s;
    s.teich_exp = teich;
    if (depth == 2) s.principal_exp = F.pow_p(F.L() - 2);
    s.pi_order = lcm_i64(F.n(), F.q() - 1);
    s.pi_exp = 1;
    return extend_character(F, s);
}

TEST_CASE("closed forms") {
    CHECK(hecke_dim_closed(0, 0, 3, 2, false, false) == 3);   // 1+2(l-m)
    CHECK(hecke_dim_closed(0, 0, 2, 1, true, true) == 4);     // 2l
    CHECK(hecke_dim_closed(0, 1, 1, 1, false, false) == 0);   // 2(l-m)
    CHECK(hecke_dim_closed(0, 1, 1, 1, false, true) == 1);    // 2l-1
    CHECK(hecke_dim_closed(0, 1, 1, 2, false, true) == 0);    // l < m
}

TEST_CASE("p=5 n=2 grid values") {
    LocalField F(5, 2, 6);
    // generic chi, m=1, l=2: 3
    ExtensionFamily gen = make_family(F, 1, 1);
    HeckeReport r = hecke_dim_report(F, gen, 0, 0, 2);
    CHECK(r.dim_bruteforce == 3);
    CHECK(r.dim_closed_form == 3);
    REQUIRE(r.dim_oracle.has_value());
    CHECK(*r.dim_oracle == 3);
    // chi trivial on square units, m=1, l=2: 4
    ExtensionFamily quad = make_family(F, 2, 1);
    HeckeReport rq = hecke_dim_report(F, quad, 0, 0, 2);
    CHECK(rq.dim_bruteforce == 4);
    CHECK(rq.dim_closed_form == 4);
    CHECK(*rq.dim_oracle == 4);
}

TEST_CASE("p=13 n=4 cross-index value 2l-1") {
    LocalField F(13, 4, 6);
    // condition chi_0|sq = eps o eta^-(i+j) at i=0, j=1: need teich with
    // chi_0(tg^2) = e(2*1/4) = e(1/2): teich*2/12 = 1/2 -> teich = 3
    ExtensionFamily fam = make_family(F, 3, 1);
    CHECK(eps_eta_condition(F, fam, 1));
    HeckeReport r = hecke_dim_report(F, fam, 0, 1, 2);
    CHECK(r.condition);
    CHECK(r.dim_closed_form == 3);  // 2l-1
    CHECK(r.dim_bruteforce == 3);
    REQUIRE(r.dim_oracle.has_value());
    CHECK(*r.dim_oracle == 3);
}

TEST_CASE("zero level law") {
    LocalField F(5, 2, 6);
    ExtensionFamily fam = make_family(F, 1, 2);  // m = 2
    HeckeReport r = hecke_dim_report(F, fam, 0, 0, 1);
    CHECK(r.zero_level);
    CHECK(r.dim_bruteforce == 0);
    CHECK(r.dim_closed_form == 0);
    CHECK(!r.zero_witness.empty());
}

TEST_CASE("hom dimension symmetry on a small grid") {
    LocalField F(7, 3, 6);
    ExtensionFamily fam = make_family(F, 1, 1);
    for (i64 l : {i64(1), i64(2)})
        for (i64 i = 0; i < F.n_under(); ++i)
            for (i64 j = 0; j < F.n_under(); ++j) {
                HeckeReport rij = hecke_dim_report(F, fam, i, j, l, false);
                HeckeReport rji = hecke_dim_report(F, fam, j, i, l, false);
                CHECK(rij.dim_bruteforce == rji.dim_bruteforce);
                CHECK(rij.dim_bruteforce == rij.dim_closed_form);
            }
}

TEST_CASE("branch report (5,2): level-1 constituent of dimension 6") {
    LocalField F(5, 2, 6);
    ExtensionFamily fam = make_family(F, 1, 1);
    BranchReport rep = branch_report(F, fam, 2);
    CHECK(rep.level_m.size() == 1);
    CHECK(rep.level_m[0].dim == 6);
    CHECK_FALSE(rep.level_m[0].reducible);
    CHECK(rep.level_m[0].norm == 1);
    CHECK(rep.layers[0].size() == 1);
    CHECK(rep.layers[0][0].dim == 24);
    CHECK(rep.layers[0][0].norm == 2);
    CHECK(rep.layers[0][0].half_dims == std::vector<i64>{12, 12});
    CHECK(rep.layers[0][0].hom_across_i == 2);
    CHECK(rep.pattern_ok);
}

TEST_CASE("branch report (13,4) quadratic family: the 4|n anomaly") {
    LocalField F(13, 4, 6);
    ExtensionFamily fam = make_family(F, 6, 1);  // quad at i=0 and i=1
    BranchReport rep = branch_report(F, fam, 2);
    CHECK(rep.quad_indices == std::vector<i64>{0, 1});
    CHECK(rep.level_m.size() == 2);
    for (const auto& c : rep.level_m) {
        CHECK(c.dim == 14);
        CHECK(c.reducible);
        CHECK(c.norm == 2);
        CHECK(c.split_dims.size() == 2);
        CHECK(c.split_dims[0] + c.split_dims[1] == 14);
    }
    // V_0 and V_1 inequivalent: hom matrix off-diagonal zero
    CHECK(rep.hom_level_m[0][1] == 0);
    CHECK(rep.hom_level_m[1][0] == 0);
    CHECK(rep.pattern_ok);
    for (const auto& lay : rep.layers) {
        CHECK(lay[0].dim == 14 * 12);
        CHECK(lay[0].norm == 2);
        CHECK(lay[0].half_dims == std::vector<i64>{84, 84});
        CHECK(lay[0].hom_across_i == 2);
    }
}

TEST_CASE("branch report (7,3) depth 2: inequivalent irreducibles") {
    LocalField F(7, 3, 6);
    ExtensionFamily fam = make_family(F, 1, 2);  // m = 2
    BranchReport rep = branch_report(F, fam, 2);
    CHECK(rep.m == 2);
    CHECK(rep.quad_indices.empty());
    CHECK(rep.level_m.size() == 3);
    for (const auto& c : rep.level_m) {
        CHECK(c.dim == 8 * 7);
        CHECK_FALSE(c.reducible);
        CHECK(c.norm == 1);
    }
    for (i64 i = 0; i < 3; ++i)
        for (i64 k = 0; k < 3; ++k)
            CHECK(rep.hom_level_m[static_cast<size_t>(i)][static_cast<size_t>(k)] ==
                  (i == k ? 1 : 0));
    CHECK(rep.pattern_ok);
}

TEST_CASE("branch report (7,3) m=1 quadratic: cross equivalences i+k = j") {
    LocalField F(7, 3, 6);
    // teich = 3: chi_0 quadratic; quad condition at exactly one index
    ExtensionFamily fam = make_family(F, 3, 1);
    BranchReport rep = branch_report(F, fam, 1);
    CHECK(rep.quad_indices.size() == 1);
    CHECK(rep.pattern_ok);
    // relabeled: V_1 = V_2 (1+2 = 3 = 0 mod 3), V_0 reducible
    CHECK(rep.level_m[0].reducible);
    CHECK(rep.hom_level_m[1][2] == 1);
    CHECK(rep.hom_level_m[0][1] == 0);
}
