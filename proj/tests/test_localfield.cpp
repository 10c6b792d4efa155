#include "doctest.h"
#include "ktype/localfield.hpp"

using namespace ktype;

TEST_CASE("dlog table, p=5") {
    LocalField F(5, 2, 4);
    CHECK(F.g() == 2);
    CHECK(F.dlog(1) == 0);
    CHECK(F.dlog(2) == 1);
    CHECK(F.dlog(4) == 2);  // frozen from exhaustive powers of 2 mod 5
    CHECK(F.dlog(3) == 3);
    CHECK_THROWS(F.dlog(0));
}

TEST_CASE("truncated element arithmetic") {
    LocalField F(5, 2, 4);
    TruncElt x = F.from_int(50);  // 2 * 5^2
    CHECK(x.val == 2);
    CHECK(x.unit == 2);
    TruncElt y = F.from_int(-3);
    TruncElt xy = F.mul(x, y);
    CHECK(xy.val == 2);
    CHECK(xy.unit == F.from_int(-6).unit);
    // x * x^-1 = 1
    CHECK(F.mul(x, F.inv(x)) == F.one());
    CHECK(F.mul(y, F.inv(y)) == F.one());
    // val adds, units multiply mod p^L
    TruncElt a = F.make(-1, 7), b = F.make(3, 11);
    TruncElt ab = F.mul(a, b);
    CHECK(ab.val == 2);
    CHECK(ab.unit == 77 % F.pL());
}

TEST_CASE("is_nth_power matches the stated examples") {
    LocalField F(5, 2, 4);
    CHECK(F.is_nth_power(F.from_int(4), 2));       // 4 = 2^2
    CHECK_FALSE(F.is_nth_power(F.from_int(5), 2)); // odd valuation
    CHECK(F.is_nth_power(F.from_int(6), 2));       // 6 = 1+p, Hensel lift of sqrt(1)
    CHECK_THROWS(F.is_nth_power(F.from_int(2), 3)); // 3 does not divide q-1
}

TEST_CASE("is_nth_power agrees with exhaustive root search at precision 2") {
    for (i64 p : {5, 13}) {
        LocalField F(p, 2, 4);
        for (i64 n : {i64(2), i64(4)}) {
            if ((p - 1) % n != 0) continue;
            i64 p2 = p * p;
            for (i64 val = -2; val <= 2; ++val) {
                for (i64 u = 1; u < p2; ++u) {
                    if (u % p == 0) continue;
                    TruncElt x = F.make(val, u);
                    // oracle: brute-force search for an n-th root at precision 2
                    bool found = false;
                    if (val % n == 0) {
                        for (i64 w = 1; w < p2 && !found; ++w) {
                            if (w % p == 0) continue;
                            if (pow_mod(w, n, p2) == u % p2) found = true;
                        }
                    }
                    CHECK(F.is_nth_power(x, n) == found);
                }
            }
        }
    }
}

TEST_CASE("Teichmuller generator lift") {
    LocalField F(5, 2, 2);
    CHECK(F.teich_gen() == 7);  // lift of 2 mod 25, satisfies t^4 = 1 mod 25
    CHECK(pow_mod(F.teich_gen(), 4, 25) == 1);
    LocalField F6(5, 2, 6);
    CHECK(pow_mod(F6.teich_gen(), 4, F6.pL()) == 1);
    CHECK(F6.teich_gen() % 5 == 2);
}

TEST_CASE("unit decomposition is a bijection on O^x/(1+p^m)") {
    for (i64 p : {5, 7, 13}) {
        LocalField F(p, 2, 5);
        for (i64 m = 1; m <= 3; ++m) {
            i64 pm = F.pow_p(m);
            std::vector<char> seen(pm, 0);
            i64 count = 0;
            for (i64 a = 0; a < p - 1; ++a) {
                for (i64 b = 0; b < F.pow_p(m - 1); ++b) {
                    i64 u = mul_mod(pow_mod(F.teich_gen(), a, pm),
                                    pow_mod(1 + p, b, pm), pm);
                    CHECK_FALSE(seen[u]);
                    seen[u] = 1;
                    ++count;
                    auto [aa, bb] = F.unit_decompose(u, m);
                    CHECK(aa == a % (p - 1));
                    CHECK(bb == b);
                }
            }
            CHECK(count == (p - 1) * F.pow_p(m - 1));
        }
    }
}

TEST_CASE("mu_n exponent arithmetic") {
    LocalField F(13, 4, 4);
    RootOfUnity z = F.mu(3);
    CHECK(F.mu_mul(z, z).exp == 2);
    CHECK(F.mu_inv(z).exp == 1);
    CHECK(F.mu_residue(F.mu(0)) == 1);
    // zeta_4 = g^3 = 8 mod 13
    CHECK(F.mu_residue(F.mu(1)) == 8);
    CHECK(F.mu_value(F.mu(1)) == Cyc::frac(1, 4));
}

TEST_CASE("config rejects bad parameters") {
    CHECK_THROWS(LocalField(4, 2, 4));   // not prime
    CHECK_THROWS(LocalField(5, 3, 4));   // 3 does not divide 4
    CHECK_THROWS(LocalField(5, 2, 0));   // precision must be positive
}
