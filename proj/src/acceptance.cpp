#include "ktype/acceptance.hpp"

#include <chrono>
#include <functional>
#include <thread>

namespace ktype {

namespace {

using clock_t_ = std::chrono::steady_clock;

struct Checker {
    bool pass = true;
    std::string detail;
    i64 assertions = 0;

    void expect(bool cond, const std::string& what) {
        ++assertions;
        if (!cond && pass) {
            pass = false;
            detail = "FAILED: " + what;
        }
    }
};

std::vector<std::pair<i64, i64>> sl_configs() {
    return {{5, 2}, {5, 4}, {7, 3}, {13, 4}, {13, 6}};
}

ExtensionFamily family_of(const LocalField& F, i64 teich, i64 depth) {
    CharacterSpec s;
    s.teich_exp = teich;
    if (depth == 2) s.principal_exp = F.pow_p(F.L() - 2);
    s.pi_order = lcm_i64(F.n(), F.q() - 1);
    s.pi_exp = 1;
    return extend_character(F, s);
}

// ---- criterion 1: Hilbert symbol laws ------------------------------------

CriterionResult crit1(const AcceptanceOptions& opt) {
    CriterionResult res{1, "hilbert-symbol-laws"};
    Checker ck;
    for (i64 p : {5, 7, 13}) {
        // representatives: val in {-1,0,1,2} x units mod p^2
        LocalField Fm(p, p - 1, 4);  // the master level n = q-1 dominates all n
        std::vector<TruncElt> S;
        for (i64 v = -1; v <= 2; ++v)
            for (i64 u = 1; u < p * p; ++u)
                if (u % p != 0) S.push_back(Fm.make(v, u));
        const i64 NS = static_cast<i64>(S.size());
        // bimultiplicativity at the master level: both slots, all triples.
        // The symbol reads only the valuation and one residue digit, so the
        // triple loop runs on (val, unit mod p) data; a strided slice is
        // cross-checked against full-precision elements.
        std::vector<i64> sym(static_cast<size_t>(NS * NS));
        for (i64 a = 0; a < NS; ++a)
            for (i64 b = 0; b < NS; ++b)
                sym[static_cast<size_t>(a * NS + b)] =
                    hilbert_symbol(Fm, S[static_cast<size_t>(a)], S[static_cast<size_t>(b)])
                        .exp;
        std::atomic<i64> bad{0};
        auto chunk = [&](i64 lo, i64 hi) {
            for (i64 a = lo; a < hi; ++a)
                for (i64 b = 0; b < NS; ++b) {
                    const TruncElt& xa = S[static_cast<size_t>(a)];
                    const TruncElt& xb = S[static_cast<size_t>(b)];
                    TruncElt ab{xa.val + xb.val, xa.unit * xb.unit % (p * p)};
                    for (i64 c = 0; c < NS; ++c) {
                        i64 lhs = hilbert_symbol(Fm, ab, S[static_cast<size_t>(c)]).exp;
                        i64 rhs = floor_mod(sym[static_cast<size_t>(a * NS + c)] +
                                            sym[static_cast<size_t>(b * NS + c)], Fm.n());
                        if (lhs != rhs) ++bad;
                        i64 lhs2 = hilbert_symbol(Fm, S[static_cast<size_t>(c)], ab).exp;
                        i64 rhs2 = floor_mod(sym[static_cast<size_t>(c * NS + a)] +
                                             sym[static_cast<size_t>(c * NS + b)], Fm.n());
                        if (lhs2 != rhs2) ++bad;
                        if (((a + b + c) & 0x7ff) == 0) {
                            TruncElt full = Fm.mul(xa, xb);
                            if (hilbert_symbol(Fm, full, S[static_cast<size_t>(c)]).exp != lhs)
                                ++bad;
                        }
                    }
                }
        };
        std::vector<std::thread> threads;
        i64 per = (NS + opt.jobs - 1) / opt.jobs;
        for (int t = 0; t < opt.jobs; ++t) {
            i64 lo = t * per, hi = std::min<i64>(NS, lo + per);
            if (lo < hi) threads.emplace_back(chunk, lo, hi);
        }
        for (auto& th : threads) th.join();
        ck.expect(bad == 0, "bimultiplicativity at master level, p=" + std::to_string(p));
        // per-n laws: antisymmetry, (a,-a)=1, kernel law, compatibility
        for (i64 n = 2; n <= p - 1; ++n) {
            if ((p - 1) % n != 0) continue;
            LocalField F(p, n, 4);
            std::vector<TruncElt> gens = {F.uniformizer(), F.make(0, F.teich_gen()),
                                          F.make(0, 1 + F.p())};
            for (i64 a = 0; a < NS; ++a) {
                const TruncElt& xa = S[static_cast<size_t>(a)];
                ck.expect(hilbert_symbol(F, xa, F.neg(xa)).exp == 0, "(a,-a)=1");
                bool all_trivial = true;
                for (const auto& g : gens)
                    all_trivial = all_trivial && hilbert_symbol(F, g, xa).exp == 0;
                ck.expect(all_trivial == F.is_nth_power(xa, n), "kernel law");
                for (i64 b = 0; b < NS; ++b) {
                    const TruncElt& xb = S[static_cast<size_t>(b)];
                    RootOfUnity ab = hilbert_symbol(F, xa, xb);
                    ck.expect(F.mu_mul(ab, hilbert_symbol(F, xb, xa)).exp == 0, "antisymmetry");
                    ck.expect(ab.exp == floor_mod(sym[static_cast<size_t>(a * NS + b)], n),
                              "power compatibility with the master symbol");
                }
            }
            // eta conductor: trivial on 1+p, nontrivial on units
            ck.expect(eta(F, F.make(0, 1 + F.p())).exp == 0, "eta trivial on 1+p");
            ck.expect(eta(F, F.make(0, F.teich_gen())).exp != 0, "eta nontrivial on units");
        }
    }
    res.pass = ck.pass;
    res.detail = ck.pass ? std::to_string(ck.assertions) + " assertions" : ck.detail;
    return res;
}

// ---- criterion 2: cocycle identity ----------------------------------------

CriterionResult crit2(const AcceptanceOptions& opt) {
    CriterionResult res{2, "kubota-cocycle-identity"};
    Checker ck;
    LocalField F52(5, 2, 6), F54(5, 4, 6), F134(13, 4, 6);
    ck.expect(verify_cocycle_exhaustive(F52, 1, opt.jobs) == 0, "exhaustive triples (5,2)");
    ck.expect(verify_cocycle_exhaustive(F54, 1, opt.jobs) == 0, "exhaustive triples (5,4)");
    ck.expect(verify_cocycle_sampled(F52, 2, 100000, opt.seed, opt.jobs) == 0,
              "sampled level-2 triples (5,2)");
    ck.expect(verify_cocycle_sampled(F134, 2, 100000, opt.seed, opt.jobs) == 0,
              "sampled level-2 triples (13,4)");
    res.pass = ck.pass;
    res.detail = ck.pass ? "1.7e6 exhaustive + 2e5 sampled triples" : ck.detail;
    return res;
}

// ---- criterion 3: splitting suite ------------------------------------------

CriterionResult crit3(const AcceptanceOptions& opt) {
    CriterionResult res{3, "splitting-suite"};
    Checker ck;
    LocalField F52(5, 2, 6), F54(5, 4, 6), F134(13, 4, 6);
    ck.expect(verify_section_exhaustive(F52, 2, opt.jobs) == 0,
              "section property over SL2(Z/25), n=2");
    ck.expect(verify_section_exhaustive(F54, 1, opt.jobs) == 0,
              "section property over SL2(F_5), n=4");
    for (const LocalField* F : {&F52, &F54}) {
        ck.expect(verify_splitting(*F, SplitSubgroup::K1_j, 1).splits, "K1_1 window");
        ck.expect(verify_splitting(*F, SplitSubgroup::K1_j, 2).splits, "K1_2 window");
        ck.expect(verify_splitting(*F, SplitSubgroup::T1capK1).splits, "T1 cap K1");
        ck.expect(verify_splitting(*F, SplitSubgroup::B1capK1).splits, "B1 cap K1");
    }
    SplitReport t54 = verify_splitting(F54, SplitSubgroup::T1_full);
    ck.expect(!t54.splits, "noncommuting pair over T1 at (5,4)");
    SplitReport t134 = verify_splitting(F134, SplitSubgroup::T1_full);
    ck.expect(!t134.splits, "noncommuting pair over T1 at (13,4)");
    res.pass = ck.pass;
    res.detail = ck.pass ? "witness: " + t54.detail : ck.detail;
    return res;
}

// ---- criterion 4: structure constants ---------------------------------------

CriterionResult crit4(const AcceptanceOptions&) {
    CriterionResult res{4, "torus-structure-constants"};
    Checker ck;
    for (auto [p, n] : sl_configs()) {
        LocalField F(p, n, 5);
        TorusIndexReport rep = torus_indices(F);
        ck.expect(rep.index_center == F.n_under() * F.n_under(),
                  "[T:Z] at (" + std::to_string(p) + "," + std::to_string(n) + ")");
        ck.expect(rep.index_A == F.n_under(), "[T:A]");
    }
    for (auto [p, n] : std::vector<std::pair<i64, i64>>{{5, 2}, {7, 3}}) {
        LocalField F(p, n, 5);
        GlTorusIndexReport rep = gl_torus_indices(F);
        ck.expect(rep.index_center == n * n * n * n, "GL [T:Z]");
        ck.expect(rep.index_A == n * n, "GL [T:A]");
    }
    res.pass = ck.pass;
    res.detail = ck.pass ? std::to_string(ck.assertions) + " index checks" : ck.detail;
    return res;
}

// ---- criterion 5: SL2 Hecke dimension grid ---------------------------------

struct GridStats {
    i64 points = 0;
    i64 oracle_points = 0;
};

GridStats run_sl_grid(const LocalField& F, const ExtensionFamily& fam, Checker& ck,
                      const AcceptanceOptions& opt, njson& rows) {
    GridStats st;
    const i64 m = primitive_level(F, fam.base);
    const i64 nu = F.n_under();
    for (i64 l = m; l <= m + 1; ++l) {
        Quot Q(F, l, false, opt.budget);
        std::vector<BChar> chars;
        for (i64 i = 0; i < nu; ++i)
            chars.push_back(bchar_sl(F, Q, fam.twists[static_cast<size_t>(i)]));
        bool with_oracle = Q.size() <= opt.budget;
        std::optional<Classes> cls;
        std::optional<OraclePrimes> pr;
        std::vector<ClassFunction> inds;
        if (with_oracle) {
            cls = conjugacy_classes(Q);
            pr = choose_oracle_primes(Q, chars[0].M);
            for (i64 i = 0; i < nu; ++i)
                inds.push_back(induced_char(Q, *cls, chars[static_cast<size_t>(i)], l));
        }
        std::vector<std::vector<i64>> brute(static_cast<size_t>(nu),
                                            std::vector<i64>(static_cast<size_t>(nu)));
        for (i64 i = 0; i < nu; ++i)
            for (i64 j = 0; j < nu; ++j) {
                i64 cnt = 0;
                for (i64 lab = 0; lab < coset_label_count(Q); ++lab)
                    if (coset_supports(Q, chars[static_cast<size_t>(i)],
                                       chars[static_cast<size_t>(j)], lab))
                        ++cnt;
                brute[static_cast<size_t>(i)][static_cast<size_t>(j)] = cnt;
                bool quad_i = quad_condition(F, fam, i);
                bool cond = i == j ? quad_i : eps_eta_condition(F, fam, i + j);
                i64 closed = hecke_dim_closed(i, j, l, m, quad_i, cond);
                ck.expect(cnt == closed, "brute = closed at (p=" + std::to_string(F.p()) +
                                             ",n=" + std::to_string(F.n()) +
                                             ",m=" + std::to_string(m) +
                                             ",l=" + std::to_string(l) +
                                             ",i=" + std::to_string(i) +
                                             ",j=" + std::to_string(j) + ")");
                ++st.points;
                njson row{{"p", F.p()}, {"n", F.n()}, {"m", m},       {"l", l},
                          {"i", i},     {"j", j},     {"brute", cnt}, {"closed", closed}};
                if (with_oracle) {
                    i64 orc = hom_dim_oracle(Q, *cls, inds[static_cast<size_t>(i)],
                                             inds[static_cast<size_t>(j)], *pr);
                    ck.expect(orc == cnt, "oracle = brute at the same point");
                    ++st.oracle_points;
                    row["oracle"] = orc;
                    row["aux_primes"] = {pr->r1, pr->r2};
                }
                rows.push_back(row);
            }
        // Hom-dimension symmetry across the grid
        for (i64 i = 0; i < nu; ++i)
            for (i64 j = 0; j < nu; ++j)
                ck.expect(brute[static_cast<size_t>(i)][static_cast<size_t>(j)] ==
                              brute[static_cast<size_t>(j)][static_cast<size_t>(i)],
                          "hom-dimension symmetry");
    }
    return st;
}

CriterionResult crit5(const AcceptanceOptions& opt) {
    CriterionResult res{5, "hecke-grid-sl2"};
    Checker ck;
    njson rows = njson::array();
    i64 points = 0, oracle_points = 0;
    struct Fam { i64 p, n, teich, depth; };
    std::vector<Fam> fams = {{5, 2, 1, 1},  {5, 2, 2, 1},  {5, 2, 1, 2},
                             {7, 3, 1, 1},  {7, 3, 3, 1},  {7, 3, 1, 2},
                             {13, 4, 1, 1}, {13, 4, 6, 1}, {13, 4, 1, 2}};
    for (const auto& fm : fams) {
        LocalField F(fm.p, fm.n, 6);
        ExtensionFamily fam = family_of(F, fm.teich, fm.depth);
        GridStats st = run_sl_grid(F, fam, ck, opt, rows);
        points += st.points;
        oracle_points += st.oracle_points;
    }
    res.pass = ck.pass;
    res.data["grid"] = rows;
    res.detail = ck.pass ? std::to_string(points) + " grid points, " +
                               std::to_string(oracle_points) + " with oracle"
                         : ck.detail;
    return res;
}

// ---- criterion 6: GL2 Hecke dimension grid ---------------------------------

CriterionResult crit6(const AcceptanceOptions& opt) {
    CriterionResult res{6, "hecke-grid-gl2"};
    Checker ck;
    i64 points = 0;
    // the adopted cocycle, exhaustively at level 1 and sampled at level 2
    {
        LocalField F52(5, 2, 6), F54(5, 4, 6), F73(7, 3, 6);
        ck.expect(verify_beta_prime_cocycle_exhaustive(F52, opt.jobs) == 0,
                  "beta' cocycle exhaustive over GL2(F_5) lift triples, n=2");
        ck.expect(verify_beta_prime_cocycle_exhaustive(F54, opt.jobs) == 0,
                  "beta' cocycle exhaustive over GL2(F_5) lift triples, n=4");
        ck.expect(verify_beta_prime_cocycle_sampled(F73, 2, 100000, opt.seed, opt.jobs) == 0,
                  "beta' cocycle sampled at level 2, (7,3)");
        ck.expect(verify_beta_prime_cocycle_sampled(F52, 2, 100000, opt.seed, opt.jobs) == 0,
                  "beta' cocycle sampled at level 2, (5,2)");
    }
    for (auto [p, n] : std::vector<std::pair<i64, i64>>{{5, 2}, {7, 3}}) {
        LocalField F(p, n, 6);
        Gl2Cover C(F);
        for (i64 variant = 0; variant < 2; ++variant) {
            GlCharacterSpec base;
            base.teich1 = 1;
            base.teich2 = variant == 0 ? 0 : 1;  // variant 1 makes chi'_(0,0) special
            base.pi1_order = lcm_i64(F.n(), F.q() - 1);
            base.pi2_order = lcm_i64(F.n(), F.q() - 1);
            GlExtensionFamily fam = gl_char_extensions(C, base);
            for (i64 l : {i64(1), i64(2)})
                for (i64 i = 0; i < n; ++i)
                    for (i64 j = 0; j < n; ++j) {
                        HeckeReport r = gl_hecke_dim_report(C, fam, i, j, l, false, opt.budget);
                        ck.expect(r.dim_bruteforce == r.dim_closed_form,
                                  "GL brute = closed at (p=" + std::to_string(p) +
                                      ",l=" + std::to_string(l) + ",i=" + std::to_string(i) +
                                      ",j=" + std::to_string(j) + ")");
                        ++points;
                    }
            // reducibility count at level m: exactly n special pairs or none
            i64 special = 0;
            for (i64 i = 0; i < n; ++i)
                for (i64 j = 0; j < n; ++j)
                    special += gl_unit_condition(F, fam, i, j) ? 1 : 0;
            ck.expect(special == (variant == 0 ? 0 : n),
                      "number of special pairs equals n when the condition is solvable");
        }
    }
    res.pass = ck.pass;
    res.detail = ck.pass ? std::to_string(points) + " GL grid points" : ck.detail;
    return res;
}

// ---- criterion 7: branching reports -----------------------------------------

CriterionResult crit7(const AcceptanceOptions& opt, std::vector<std::pair<bool, i64>>* norms) {
    CriterionResult res{7, "branching-reports"};
    Checker ck;
    // (13,4), depth-zero chi_0 with the quadratic condition: the 4|n anomaly
    {
        LocalField F(13, 4, 6);
        ExtensionFamily fam = family_of(F, 6, 1);
        BranchReport rep = branch_report(F, fam, 2, opt.budget);
        ck.expect(rep.quad_indices == std::vector<i64>{0, 1},
                  "reducible constituents exactly at relabeled i=0 and i=n/4=1");
        for (const auto& c : rep.level_m) {
            ck.expect(c.dim == (F.p() + 1), "level-1 dim (p+1)");
            ck.expect(c.reducible && c.norm == 2, "two-piece level-1 space");
            if (norms && c.norm) norms->emplace_back(c.reducible, *c.norm);
        }
        ck.expect(rep.pattern_ok, "cross-i equivalence pattern i+k = j mod n_under");
        for (const auto& per_i : rep.layers)
            for (const auto& w : per_i) {
                ck.expect(w.dim == (F.p() + 1) * (F.p() - 1), "W dim (p+1)(p-1)p^(l-2)");
                ck.expect(w.norm == 2, "W splits into two inequivalent halves");
                ck.expect(w.half_dims == std::vector<i64>{84, 84},
                          "halves of equal dimension (p+1)(p-1)/2");
                ck.expect(w.hom_across_i == 2, "W-layer equivalences across i");
                if (norms && w.norm) norms->emplace_back(true, *w.norm);
            }
        res.data["branch_13_4"] = branch_report_json(rep);
    }
    // (7,3), depth two: everything irreducible and mutually inequivalent
    {
        LocalField F(7, 3, 6);
        ExtensionFamily fam = family_of(F, 1, 2);
        BranchReport rep = branch_report(F, fam, 3, opt.budget);
        ck.expect(rep.m == 2, "depth-two family");
        ck.expect(rep.quad_indices.empty(), "no quadratic condition at depth two");
        for (const auto& c : rep.level_m) {
            ck.expect(c.dim == (F.p() + 1) * F.p(), "level-2 dim (p+1)p");
            ck.expect(!c.reducible && c.norm == 1, "irreducible level-m piece");
            if (norms && c.norm) norms->emplace_back(c.reducible, *c.norm);
        }
        for (i64 i = 0; i < 3; ++i)
            for (i64 k = 0; k < 3; ++k)
                ck.expect(rep.hom_level_m[static_cast<size_t>(i)][static_cast<size_t>(k)] ==
                              (i == k ? 1 : 0),
                          "mutually inequivalent at level m");
        // W-layer multiplicity across i is n_under = 3: every cross pair shares
        // both halves (brute Hom = 2), l = 3
        for (const auto& per_i : rep.layers)
            for (const auto& w : per_i) {
                ck.expect(w.dim == (F.p() + 1) * (F.p() - 1) * F.p(), "W dim at l=3");
                ck.expect(w.hom_across_i == 2, "W-layers shared across all i");
            }
        ck.expect(rep.oracle_degraded, "oracle degraded above the budget is flagged");
        res.data["branch_7_3"] = branch_report_json(rep);
    }
    // oracle-verified fixed-space dimensions at l <= 2 for (13,4)
    {
        LocalField F(13, 4, 6);
        ExtensionFamily fam = family_of(F, 6, 1);
        for (i64 l : {i64(1), i64(2)}) {
            Quot Q(F, l, false, opt.budget);
            Classes cls = conjugacy_classes(Q);
            BChar ch = bchar_sl(F, Q, fam.twists[0]);
            ClassFunction v = induced_char(Q, cls, ch, l);
            ck.expect(cf_degree(Q, cls, v) == (F.p() + 1) * F.pow_p(l - 1),
                      "dim V^(K_l) = (p+1)p^(l-1)");
        }
    }
    res.pass = ck.pass;
    res.detail = ck.pass ? "4|n anomaly, multiplicities, and layer dimensions verified"
                         : ck.detail;
    return res;
}

// ---- criterion 8: double-coset systems ---------------------------------------

CriterionResult crit8(const AcceptanceOptions& opt) {
    CriterionResult res{8, "double-coset-systems"};
    Checker ck;
    for (i64 p : {5, 7}) {
        LocalField F(p, 2, 6);
        for (i64 l : {i64(1), i64(2)}) {
            Quot Qs(F, l, false, opt.budget);
            DoubleCosetReport r = verify_double_cosets(Qs);
            ck.expect(r.count == 2 + 2 * (l - 1), "SL2 coset count 2+2(l-1)");
            ck.expect(r.covers && r.disjoint && r.partition_ok,
                      "SL2 cosets cover disjointly at p=" + std::to_string(p) +
                          ", l=" + std::to_string(l));
            Quot Qg(F, l, true, opt.budget);
            DoubleCosetReport g = verify_double_cosets(Qg);
            ck.expect(g.count == 2 + (l - 1), "GL2 coset count 2+(l-1)");
            ck.expect(g.covers && g.disjoint && g.partition_ok, "GL2 cosets cover disjointly");
        }
    }
    res.pass = ck.pass;
    res.detail = ck.pass ? "SL2 and GL2 partitions verified at p in {5,7}, l in {1,2}"
                         : ck.detail;
    return res;
}

// ---- criterion 9: restriction analysis ---------------------------------------

CriterionResult crit9(const AcceptanceOptions& opt) {
    CriterionResult res{9, "restriction-analysis"};
    Checker ck;
    // n odd (7,3)
    {
        LocalField F(7, 3, 6);
        Gl2Cover C(F);
        CharacterSpec chi0;
        chi0.teich_exp = 1;
        chi0.pi_order = lcm_i64(F.n(), F.q() - 1);
        chi0.pi_exp = 1;
        GlCharacterSpec glbase = gl_spec_from_sl(F, chi0);
        ExtensionFamily sl_fam = extend_character(F, chi0);
        GlExtensionFamily gl_fam = gl_char_extensions(C, glbase);
        std::vector<i64> fiber(3, 0);
        i64 inv2 = inv_mod(2, 3);
        for (i64 i = 0; i < 3; ++i)
            for (i64 j = 0; j < 3; ++j) {
                i64 k = restrict_char_to_sl_odd(F, gl_fam, sl_fam, i, j);
                ck.expect(k == floor_mod((i - j) * inv2, 3), "k = (i-j)/2 mod n");
                ++fiber[static_cast<size_t>(k)];
            }
        for (i64 k = 0; k < 3; ++k)
            ck.expect(fiber[static_cast<size_t>(k)] == 3, "fiber size n");
        // Res of each GL level-l space equals the matched SL space
        for (i64 l : {i64(1), i64(2)})
            for (i64 i = 0; i < 3; ++i)
                for (i64 j = 0; j < 3; ++j) {
                    i64 k = floor_mod((i - j) * inv2, 3);
                    ck.expect(res_induced_equal(C, gl_fam.at(i, j),
                                                sl_fam.twists[static_cast<size_t>(k)], l,
                                                opt.budget),
                              "Res Ind(chi'_{i,j})^{K_l} = Ind(chi_k)^{K1_l}");
                }
        // W-layer lifts at l = 2
        for (i64 k = 0; k < 3; ++k) {
            WLayerLiftReport w = w_layer_lift_check(C, gl_fam, sl_fam, k, 2, opt.budget);
            ck.expect(w.char_equal && w.matched_i == 0 &&
                          w.matched_j == floor_mod(-2 * k, 3),
                      "GL layer matches W_k at (0, -2k)");
            ck.expect(w.halves_equal, "halves of W_k equal in dimension");
        }
    }
    // n even: (5,2) and (13,4)
    for (auto [p, n] : std::vector<std::pair<i64, i64>>{{5, 2}, {13, 4}}) {
        LocalField F(p, n, 6);
        Gl2Cover C(F);
        GlCharacterSpec base;
        base.teich1 = 1;
        base.pi1_order = lcm_i64(F.n(), F.q() - 1);
        base.pi2_order = lcm_i64(F.n(), F.q() - 1);
        ResRhoPrimeReport rep = res_rho_prime_analysis(C, base);
        ck.expect(rep.num_central == 4, "exactly 4 distinct central characters");
        ck.expect(rep.multiplicity == n / 2, "each with multiplicity n/2");
        ck.expect(rep.sets_equal, "the e/o and l-chi character sets coincide");
        ck.expect(rep.each_res_twice, "each Res chi'_{i,j} appears exactly twice");
        ck.expect(rep.index_z == 4 && rep.index_a == 2, "index checks 4 and 2");
        // a W-layer lift for each family at l = 2
        auto fams = sl_families_from_gl(C, base);
        GlExtensionFamily gl_fam = gl_char_extensions(C, base);
        for (const auto& sl_fam : fams)
            for (i64 k = 0; k < F.n_under(); ++k) {
                WLayerLiftReport w = w_layer_lift_check(C, gl_fam, sl_fam, k, 2, opt.budget);
                ck.expect(w.char_equal, "even-n GL layer match among (0,j)");
                ck.expect(w.halves_equal, "halves equal");
            }
    }
    res.pass = ck.pass;
    res.detail = ck.pass ? "odd and even restriction patterns verified" : ck.detail;
    return res;
}

// ---- criterion 10: zero-space law --------------------------------------------

CriterionResult crit10(const AcceptanceOptions& opt) {
    CriterionResult res{10, "zero-space-law"};
    Checker ck;
    for (auto [p, n] : std::vector<std::pair<i64, i64>>{{5, 2}, {7, 3}, {13, 4}}) {
        LocalField F(p, n, 6);
        ExtensionFamily fam = family_of(F, 1, 2);  // m = 2
        for (i64 i = 0; i < F.n_under(); ++i)
            for (i64 j = 0; j < F.n_under(); ++j) {
                HeckeReport r = hecke_dim_report(F, fam, i, j, 1, false, opt.budget);
                ck.expect(r.zero_level && r.dim_bruteforce == 0 && r.dim_closed_form == 0,
                          "zero space at l=1 < m=2");
                ck.expect(!r.zero_witness.empty(), "explicit witness recorded");
            }
    }
    res.pass = ck.pass;
    res.detail = ck.pass ? "l < m fixed spaces vanish with witnesses" : ck.detail;
    return res;
}

// ---- criterion 11: oracle integrity -------------------------------------------

CriterionResult crit11(const AcceptanceOptions& opt,
                       const std::vector<std::pair<bool, i64>>& collected_norms,
                       i64 checks_before) {
    CriterionResult res{11, "oracle-integrity"};
    Checker ck;
    std::vector<std::pair<bool, i64>> norms = collected_norms;
    if (norms.empty()) {
        // standalone run: regenerate the norm evidence from the branch reports
        CriterionResult tmp = crit7(opt, &norms);
        ck.expect(tmp.pass, "branch reports behind the norm records");
    }
    for (const auto& [reducible, norm] : norms)
        ck.expect(norm == (reducible ? 2 : 1),
                  "norm 1 for irreducible, 2 for two-piece spaces");
    i64 checks = g_dual_prime_checks.load() - checks_before;
    ck.expect(checks > 0, "dual-prime comparisons were exercised");
    ck.expect(g_dual_prime_disagreements.load() == 0, "zero dual-prime disagreements");
    res.pass = ck.pass;
    res.detail = ck.pass ? std::to_string(checks) + " dual-prime checks, " +
                               std::to_string(norms.size()) + " norm records, 0 disagreements"
                         : ck.detail;
    return res;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
    auto t0 = clock_t_::now();
    CriterionResult res;
    std::vector<std::pair<bool, i64>> norms;
    switch (id) {
        case 1: res = crit1(opt); break;
        case 2: res = crit2(opt); break;
        case 3: res = crit3(opt); break;
        case 4: res = crit4(opt); break;
        case 5: res = crit5(opt); break;
        case 6: res = crit6(opt); break;
        case 7: res = crit7(opt, nullptr); break;
        case 8: res = crit8(opt); break;
        case 9: res = crit9(opt); break;
        case 10: res = crit10(opt); break;
        case 11: res = crit11(opt, {}, 0); break;
        default: require(false, "run_criterion: id must be 1..11");
    }
    res.wall_ms = std::chrono::duration<double, std::milli>(clock_t_::now() - t0).count();
    return res;
}

std::vector<CriterionResult> run_all_criteria(const AcceptanceOptions& opt) {
    std::vector<CriterionResult> out;
    i64 checks_at_start = g_dual_prime_checks.load();
    std::vector<std::pair<bool, i64>> norms;
    for (int id = 1; id <= kCriterionCount; ++id) {
        auto t0 = clock_t_::now();
        CriterionResult res;
        try {
            if (id == 7)
                res = crit7(opt, &norms);
            else if (id == 11)
                res = crit11(opt, norms, checks_at_start);
            else
                res = run_criterion(id, opt);
        } catch (const std::exception& e) {
            res.id = id;
            res.name = "criterion-" + std::to_string(id);
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
        }
        if (res.wall_ms == 0.0)
            res.wall_ms =
                std::chrono::duration<double, std::milli>(clock_t_::now() - t0).count();
        out.push_back(res);
    }
    return out;
}

}  // namespace ktype
