#include "doctest.h"
#include "ktype/cover_sl2.hpp"

using namespace ktype;

TEST_CASE("kubota X branch selection") {
    LocalField F(5, 2, 4);
    CHECK(kubota_X(F, sl2_w(F)) == F.from_int(-1));
    CHECK(kubota_X(F, sl2_identity(F)) == F.one());
    CHECK(kubota_X(F, sl2_lt(F, F.from_int(5))) == F.from_int(5));
}

TEST_CASE("beta frozen values") {
    LocalField F(5, 2, 4);
    Sl2Matrix w = sl2_w(F);
    CHECK(beta(F, w, sl2_identity(F)).exp == 0);
    CHECK(beta(F, sl2_identity(F), w).exp == 0);
    CHECK(beta(F, w, w).exp == 0);
    // beta(dg(2), dg(5)) = (5,2)_2 = -1
    CHECK(beta(F, sl2_dg(F, F.from_int(2)), sl2_dg(F, F.from_int(5))).exp == 1);
}

TEST_CASE("cover multiplication matches the beta examples") {
    LocalField F(5, 2, 6);
    CoverElement w1 = cover(F, sl2_w(F));
    CoverElement sq = cover_mul(F, w1, w1);
    CHECK(sq.zeta.exp == 0);
    CHECK(sl2_eq(F, sq.mat, sl2_from_ints(F, -1, 0, 0, -1)));
    CoverElement d2 = cover(F, sl2_dg(F, F.from_int(2)));
    CoverElement d5 = cover(F, sl2_dg(F, F.from_int(5)));
    CoverElement prod = cover_mul(F, d2, d5);
    CHECK(prod.zeta.exp == 1);
    CHECK(sl2_eq(F, prod.mat, sl2_dg(F, F.from_int(10))));
    // identity acts trivially, inverses invert
    CoverElement e = cover(F, sl2_identity(F));
    CHECK(cover_eq(F, cover_mul(F, e, d2), d2));
    CHECK(cover_eq(F, cover_mul(F, d2, cover_inv(F, d2)), e));
    CHECK(cover_eq(F, cover_mul(F, w1, cover_inv(F, w1)), e));
}

TEST_CASE("mu_n central in the cover") {
    LocalField F(13, 4, 4);
    CoverElement z = cover(F, sl2_identity(F), 3);
    for (i64 i = 0; i < 30; ++i) {
        CoverElement g = cover(F, sl2_random_lift(F, 2, 42, i), static_cast<i64>(i));
        CHECK(cover_eq(F, cover_mul(F, z, g), cover_mul(F, g, z)));
    }
}

TEST_CASE("cover multiplication is associative on random lifts") {
    LocalField F(13, 4, 6);
    for (i64 i = 0; i < 60; ++i) {
        CoverElement x = cover(F, sl2_random_lift(F, 2, 7, 3 * i), 1);
        CoverElement y = cover(F, sl2_random_lift(F, 2, 7, 3 * i + 1), 2);
        CoverElement z = cover(F, sl2_random_lift(F, 2, 7, 3 * i + 2), 3);
        CHECK(cover_eq(F, cover_mul(F, cover_mul(F, x, y), z),
                       cover_mul(F, x, cover_mul(F, y, z))));
    }
}

TEST_CASE("beta trivial on upper unipotents") {
    LocalField F(5, 4, 4);
    for (i64 u = -6; u <= 6; ++u)
        for (i64 v = -6; v <= 6; ++v) {
            Sl2Matrix n1 = sl2_from_ints(F, 1, u, 0, 1);
            Sl2Matrix n2 = sl2_from_ints(F, 1, v, 0, 1);
            CHECK(beta(F, n1, n2).exp == 0);
        }
}

TEST_CASE("section values") {
    LocalField F(5, 2, 4);
    CHECK(section_s(F, sl2_identity(F)).exp == 0);
    CHECK(section_s(F, sl2_lt(F, F.from_int(5))).exp == 0);   // (5,1) = 1
    CHECK(section_s(F, sl2_from_ints(F, 2, 1, 5, 3)).exp == 1);  // (5,3): 3 nonresidue
    CHECK_THROWS(section_s(F, sl2_dg(F, F.from_int(5))));  // not integral
}

TEST_CASE("section property over SL2(Z/25)") {
    LocalField F(5, 2, 6);
    CHECK(verify_section_exhaustive(F, 1, 2) == 0);
}

TEST_CASE("diagonal law beta(dg(s),dg(t)) = (t,s)") {
    LocalField F(13, 4, 5);
    std::vector<TruncElt> ts;
    for (i64 v = -2; v <= 2; ++v)
        for (i64 u : {1, 2, 6, 7, 12}) ts.push_back(F.make(v, u));
    for (const auto& s : ts)
        for (const auto& t : ts)
            CHECK(beta(F, sl2_dg(F, s), sl2_dg(F, t)) == hilbert_symbol(F, t, s));
}

TEST_CASE("cocycle identity exhaustive at level 1, p=5") {
    LocalField F(5, 2, 6);
    auto lifts = sl2_quotient_lifts(F, 1);
    CHECK(lifts.size() == 120);
    CHECK(verify_cocycle_exhaustive(F, 1, 2) == 0);
}

TEST_CASE("cocycle identity sampled at level 2") {
    LocalField F(13, 4, 6);
    CHECK(verify_cocycle_sampled(F, 2, 2000, 0, 2) == 0);
}

TEST_CASE("quotient lift enumeration sizes") {
    LocalField F(5, 2, 6);
    CHECK(sl2_quotient_lifts(F, 1).size() == 120);     // q(q^2-1)
    CHECK(sl2_quotient_lifts(F, 2).size() == 15000);   // p^3 * 120
}

TEST_CASE("splitting suite") {
    LocalField F(5, 4, 6);
    CHECK(verify_splitting(F, SplitSubgroup::K1_j, 1).splits);
    CHECK(verify_splitting(F, SplitSubgroup::K1_j, 2).splits);
    CHECK(verify_splitting(F, SplitSubgroup::T1capK1).splits);
    CHECK(verify_splitting(F, SplitSubgroup::B1capK1).splits);
    // n = 4: the torus cover is nonabelian, witnessed by a pair
    CHECK_FALSE(verify_splitting(F, SplitSubgroup::T1_full).splits);
    LocalField F13(13, 4, 6);
    CHECK_FALSE(verify_splitting(F13, SplitSubgroup::T1_full).splits);
}

TEST_CASE("exact zero is preserved through cancellation") {
    LocalField F(5, 2, 4);
    Sl2Matrix u = sl2_from_ints(F, 1, 1, 0, 1);
    Sl2Matrix v = sl2_from_ints(F, 1, -1, 0, 1);
    Sl2Matrix prod = sl2_mul(F, u, v);
    CHECK(prod.b.zero);
    CHECK(sl2_eq(F, prod, sl2_identity(F)));
}
