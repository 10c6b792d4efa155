#include "doctest.h"
#include "ktype/hilbert.hpp"

using namespace ktype;

TEST_CASE("hilbert symbol frozen values, p=5 n=2") {
    LocalField F(5, 2, 4);
    // (2,5) = -1: c = 1/2 = 3 mod 5, 3^2 = 4 = -1
    CHECK(hilbert_symbol(F, F.from_int(2), F.from_int(5)).exp == 1);
    // both units -> trivial
    CHECK(hilbert_symbol(F, F.from_int(3), F.from_int(7)).exp == 0);
    // (5,5): c = -1, (-1)^2 = 1
    CHECK(hilbert_symbol(F, F.from_int(5), F.from_int(5)).exp == 0);
}

TEST_CASE("eta frozen values, p=5 n=2") {
    LocalField F(5, 2, 4);
    CHECK(eta(F, F.from_int(2)).exp == 1);
    CHECK(eta(F, F.from_int(6)).exp == 0);   // 1+p
    CHECK(eta(F, F.from_int(5)).exp == 0);
}

static std::vector<TruncElt> symbol_window(const LocalField& F) {
    std::vector<TruncElt> xs;
    i64 p2 = F.pow_p(2);
    for (i64 v = -1; v <= 2; ++v)
        for (i64 u = 1; u < p2; ++u)
            if (u % F.p() != 0) xs.push_back(F.make(v, u));
    return xs;
}

TEST_CASE("bimultiplicativity, antisymmetry, (a,-a)=1") {
    for (auto [p, n] : std::vector<std::pair<i64, i64>>{{5, 2}, {5, 4}}) {
        LocalField F(p, n, 4);
        auto xs = symbol_window(F);
        for (const auto& a : xs) {
            for (const auto& b : xs) {
                RootOfUnity ab = hilbert_symbol(F, a, b);
                RootOfUnity ba = hilbert_symbol(F, b, a);
                CHECK(F.mu_mul(ab, ba).exp == 0);
                // (a,-a) = 1
            }
            CHECK(hilbert_symbol(F, a, F.neg(a)).exp == 0);
        }
        // bimultiplicativity on a smaller triple window
        std::vector<TruncElt> small;
        for (size_t i = 0; i < xs.size(); i += 7) small.push_back(xs[i]);
        for (const auto& a : small)
            for (const auto& b : small)
                for (const auto& c : small) {
                    CHECK(hilbert_symbol(F, F.mul(a, b), c) ==
                          F.mu_mul(hilbert_symbol(F, a, c), hilbert_symbol(F, b, c)));
                    CHECK(hilbert_symbol(F, a, F.mul(b, c)) ==
                          F.mu_mul(hilbert_symbol(F, a, b), hilbert_symbol(F, a, c)));
                }
    }
}

TEST_CASE("kernel law: (a,b)=1 for all a iff b is an n-th power") {
    for (auto [p, n] : std::vector<std::pair<i64, i64>>{{5, 2}, {5, 4}, {7, 3}, {13, 4}}) {
        LocalField F(p, n, 4);
        std::vector<TruncElt> gens = {F.uniformizer(), F.make(0, F.teich_gen()),
                                      F.make(0, 1 + F.p())};
        auto xs = symbol_window(F);
        for (const auto& b : xs) {
            bool all_trivial = true;
            for (const auto& a : gens)
                all_trivial = all_trivial && hilbert_symbol(F, a, b).exp == 0;
            CHECK(all_trivial == F.is_nth_power(b, F.n()));
        }
    }
}

TEST_CASE("eta has conductor exactly p") {
    for (auto [p, n] : std::vector<std::pair<i64, i64>>{{5, 2}, {5, 4}, {7, 3}, {13, 6}}) {
        LocalField F(p, n, 4);
        // trivial on 1+p
        for (i64 k = 1; k < F.p(); ++k)
            CHECK(eta(F, F.make(0, 1 + k * F.p())).exp == 0);
        // nontrivial on units
        CHECK(eta(F, F.make(0, F.teich_gen())).exp != 0);
    }
}

TEST_CASE("symbol output depends only on n-th power classes") {
    LocalField F(13, 4, 5);
    TruncElt a = F.from_int(2), b = F.from_int(13 * 7);
    TruncElt a4 = F.mul(a, F.pow(F.from_int(3), 4));
    CHECK(hilbert_symbol(F, a, b) == hilbert_symbol(F, a4, b));
    TruncElt b4 = F.mul(b, F.pow(F.from_int(13 * 2), 4));
    CHECK(hilbert_symbol(F, a, b) == hilbert_symbol(F, a, b4));
}
