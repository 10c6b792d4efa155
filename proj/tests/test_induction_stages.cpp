#include "doctest.h"
#include "ktype/quotient_oracle.hpp"

using namespace ktype;

// The level-(l-1) fixed part of an induction from the Borel, computed as the
// averaged projection character, must equal the induction from the coarser
// subgroup (upper mod p^(l-1)) K_(l-1) -- exact equality of class functions.
TEST_CASE("induction in stages: exact character equality at p=5, l=2") {
    LocalField F(5, 2, 6);
    Quot Q(F, 2, false);
    Classes cls = conjugacy_classes(Q);
    CharacterSpec chi;
    chi.teich_exp = 1;
    chi.pi_order = lcm_i64(F.n(), F.q() - 1);
    BChar ch = bchar_sl(F, Q, chi);

    // K_1 image inside SL2(Z/25): I + 5*M with det = 1
    std::vector<QMat> k1;
    for (i64 x = 0; x < 5; ++x)
        for (i64 y = 0; y < 5; ++y)
            for (i64 z = 0; z < 5; ++z) {
                QMat m{floor_mod(1 + 5 * x, 25), floor_mod(5 * y, 25), floor_mod(5 * z, 25),
                       0};
                // solve the last entry so det = 1 mod 25
                i64 ainv = inv_mod(m.a, 25);
                m.d = mul_mod(floor_mod(1 + m.b * m.c, 25), ainv, 25);
                REQUIRE(Q.in_group(m));
                k1.push_back(m);
            }
    REQUIRE(k1.size() == 125);

    // per-element value of Ind_{B}^{Q} chi at level 2
    std::vector<QMat> reps;
    for (i64 x = 0; x < 25; ++x) reps.push_back(QMat{x, 24, 1, 0});
    for (i64 c = 0; c < 25; c += 5) reps.push_back(Q.lt(c));
    auto ind_value = [&](const QMat& y) {
        std::map<i64, i64> val;
        for (const auto& k : reps) {
            QMat z = Q.mul(Q.mul(Q.inv(k), y), k);
            if (z.c != 0) continue;
            ++val[ch.diag_exp[static_cast<size_t>(z.a)]];
        }
        return val;
    };

    // averaged projection onto the K_1-fixed subspace: 125 * proj(y) =
    // sum over kappa of Ind(y kappa); the result must be 125 * Ind_H(y)
    ClassFunction lhs, rhs;
    lhs.M = rhs.M = ch.M;
    lhs.vals.resize(cls.rep.size());
    rhs.vals.resize(cls.rep.size());
    for (size_t ci = 0; ci < cls.rep.size(); ++ci) {
        QMat y = Q.at(cls.rep[ci]);
        for (const auto& kappa : k1) {
            for (const auto& [e, c] : ind_value(Q.mul(y, kappa))) lhs.vals[ci][e] += c;
        }
    }
    ClassFunction sub = induced_char(Q, cls, ch, 1);
    for (size_t ci = 0; ci < cls.rep.size(); ++ci)
        for (const auto& [e, c] : sub.vals[ci]) rhs.vals[ci][e] += 125 * c;
    CHECK(cf_eq(lhs, rhs));
}
