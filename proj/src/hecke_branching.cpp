#include "ktype/hecke_branching.hpp"

#include <algorithm>

namespace ktype {

bool eps_eta_condition(const LocalField& F, const ExtensionFamily& fam, i64 ksum) {
    // on squares of principal units: eta is trivial there, so chi_0 must be too
    if (primitive_level(F, fam.base) != 1) return false;
    // on teich^2: chi_0(dg(tg^2),1) must equal e(2 ksum / n)
    i64 tg2 = mul_mod(F.teich_gen(), F.teich_gen(), F.pL());
    return chi_unit_eval(F, fam.base, tg2) == Cyc::frac(2 * ksum, F.n());
}

i64 hecke_dim_closed(i64 i, i64 j, i64 l, i64 m, bool quad_i, bool cond_ij) {
    require(l >= 1 && m >= 1, "hecke_dim_closed: bad levels");
    if (l < m) return 0;
    if (i == j) return quad_i ? 2 * l : 1 + 2 * (l - m);
    return cond_ij ? 2 * l - 1 : 2 * (l - m);
}

HeckeReport hecke_dim_report(const LocalField& F, const ExtensionFamily& fam, i64 i, i64 j,
                             i64 l, bool with_oracle, i64 budget) {
    require(l >= 1, "hecke_dim_report: level must be >= 1");
    require(i >= 0 && i < F.n_under() && j >= 0 && j < F.n_under(),
            "hecke_dim_report: extension index out of range");
    HeckeReport rep;
    rep.p = F.p();
    rep.n = F.n();
    rep.l = l;
    rep.i = i;
    rep.j = j;
    rep.m = primitive_level(F, fam.base);
    const CharacterSpec& chi_i = fam.twists.at(static_cast<size_t>(i));
    const CharacterSpec& chi_j = fam.twists.at(static_cast<size_t>(j));

    bool quad_i_flag = quad_condition(F, fam, i);
    rep.condition = (i == j) ? quad_i_flag : eps_eta_condition(F, fam, i + j);
    rep.dim_closed_form = hecke_dim_closed(i, j, l, rep.m, quad_i_flag, rep.condition);

    if (l < rep.m) {
        // the l-fixed space is zero: chi_i is nontrivial on B cap K_l, so no
        // double coset (the identity one included) supports a function;
        // exhibit a witness in 1 + p^l
        rep.zero_level = true;
        i64 pm = F.pow_p(rep.m);
        for (i64 k = 1; k < pm / F.pow_p(l); ++k) {
            i64 t = 1 + k * F.pow_p(l);
            if (t % F.p() == 0) continue;
            if (!chi_unit_eval(F, chi_i, t).is_one()) {
                rep.zero_witness = "chi_i nontrivial at unit " + std::to_string(t);
                break;
            }
        }
        require(!rep.zero_witness.empty(), "hecke_dim_report: zero-level witness not found");
        rep.dim_bruteforce = 0;
        return rep;
    }

    Quot Q(F, l, false, budget);
    BChar ci = bchar_sl(F, Q, chi_i);
    BChar cj = bchar_sl(F, Q, chi_j);
    for (i64 lab = 0; lab < coset_label_count(Q); ++lab)
        if (coset_supports(Q, ci, cj, lab)) rep.supported_labels.push_back(lab);
    rep.dim_bruteforce = static_cast<i64>(rep.supported_labels.size());

    if (with_oracle) {
        if (Q.size() <= budget) {
            Classes cls = conjugacy_classes(Q);
            OraclePrimes pr = choose_oracle_primes(Q, ci.M);
            rep.aux_prime_1 = pr.r1;
            rep.aux_prime_2 = pr.r2;
            ClassFunction vi = induced_char(Q, cls, ci, l);
            ClassFunction vj = induced_char(Q, cls, cj, l);
            rep.dim_oracle = hom_dim_oracle(Q, cls, vi, vj, pr);
        } else {
            rep.budget_exceeded = true;
        }
    }
    return rep;
}

BranchReport branch_report(const LocalField& F, const ExtensionFamily& fam, i64 l_max,
                           i64 budget) {
    const i64 nu = F.n_under();
    BranchReport rep;
    rep.p = F.p();
    rep.n = F.n();
    rep.m = primitive_level(F, fam.base);
    rep.l_max = l_max;
    require(l_max >= rep.m, "branch_report: l_max below the character depth");

    for (i64 i = 0; i < nu; ++i)
        if (quad_condition(F, fam, i)) rep.quad_indices.push_back(i);
    rep.relabel_shift = rep.quad_indices.empty() ? 0 : rep.quad_indices.front();

    auto orig = [&](i64 i) { return floor_mod(i + rep.relabel_shift, nu); };

    // level-m pieces
    Quot Qm(F, rep.m, false, budget);
    bool small_m = Qm.size() <= budget;
    std::optional<Classes> cls_m;
    std::optional<OraclePrimes> pr_m;
    std::vector<BChar> bchars_m;
    for (i64 i = 0; i < nu; ++i)
        bchars_m.push_back(bchar_sl(F, Qm, fam.twists[static_cast<size_t>(orig(i))]));
    if (small_m) {
        cls_m = conjugacy_classes(Qm);
        pr_m = choose_oracle_primes(Qm, bchars_m[0].M);
        rep.aux_prime_1 = pr_m->r1;
        rep.aux_prime_2 = pr_m->r2;
    } else {
        rep.oracle_degraded = true;
    }
    for (i64 i = 0; i < nu; ++i) {
        ConstituentInfo info;
        info.i = i;
        info.i_original = orig(i);
        info.dim = (F.p() + 1) * F.pow_p(rep.m - 1);
        info.reducible = quad_condition(F, fam, info.i_original);
        if (small_m) {
            auto dims = constituent_dims(Qm, bchars_m[static_cast<size_t>(i)], *pr_m);
            if (dims.size() > 1) info.split_dims = dims;
            ClassFunction v = induced_char(Qm, *cls_m, bchars_m[static_cast<size_t>(i)], rep.m);
            info.norm = hom_dim_oracle(Qm, *cls_m, v, v, *pr_m);
            require((info.norm == 2) == info.reducible,
                    "branch_report: oracle norm disagrees with the condition flag");
            require((dims.size() == 2) == info.reducible,
                    "branch_report: eigensplit disagrees with the condition flag");
        }
        rep.level_m.push_back(info);
    }

    // hom matrix at level m, three columns
    rep.hom_level_m.assign(static_cast<size_t>(nu), std::vector<i64>(nu, 0));
    rep.hom_level_m_closed.assign(static_cast<size_t>(nu), std::vector<i64>(nu, 0));
    rep.hom_level_m_oracle.assign(static_cast<size_t>(nu),
                                  std::vector<std::optional<i64>>(static_cast<size_t>(nu)));
    for (i64 i = 0; i < nu; ++i)
        for (i64 k = 0; k < nu; ++k) {
            i64 io = orig(i), ko = orig(k);
            i64 brute = 0;
            for (i64 lab = 0; lab < coset_label_count(Qm); ++lab)
                if (coset_supports(Qm, bchars_m[static_cast<size_t>(i)],
                                   bchars_m[static_cast<size_t>(k)], lab))
                    ++brute;
            rep.hom_level_m[static_cast<size_t>(i)][static_cast<size_t>(k)] = brute;
            bool quad_i_flag = quad_condition(F, fam, io);
            bool cond = (io == ko) ? quad_i_flag : eps_eta_condition(F, fam, io + ko);
            rep.hom_level_m_closed[static_cast<size_t>(i)][static_cast<size_t>(k)] =
                hecke_dim_closed(io, ko, rep.m, rep.m, quad_i_flag, cond);
            if (small_m) {
                ClassFunction vi =
                    induced_char(Qm, *cls_m, bchars_m[static_cast<size_t>(i)], rep.m);
                ClassFunction vk =
                    induced_char(Qm, *cls_m, bchars_m[static_cast<size_t>(k)], rep.m);
                rep.hom_level_m_oracle[static_cast<size_t>(i)][static_cast<size_t>(k)] =
                    hom_dim_oracle(Qm, *cls_m, vi, vk, *pr_m);
            }
        }

    // the equivalence pattern: at m = 1 with the condition present,
    // V_i = V_k exactly when i + k = j mod n_under (original indices)
    rep.pattern_ok = true;
    for (i64 i = 0; i < nu; ++i)
        for (i64 k = 0; k < nu; ++k) {
            i64 io = orig(i), ko = orig(k);
            bool expect_nonzero;
            if (io == ko)
                expect_nonzero = true;
            else if (!rep.quad_indices.empty() && rep.m == 1)
                expect_nonzero = floor_mod(io + ko - 2 * rep.quad_indices.front(), nu) == 0;
            else
                expect_nonzero = false;
            if ((rep.hom_level_m[static_cast<size_t>(i)][static_cast<size_t>(k)] > 0) !=
                expect_nonzero)
                rep.pattern_ok = false;
        }

    // W-layers for m < l <= l_max
    rep.layers.assign(static_cast<size_t>(nu), {});
    for (i64 l = rep.m + 1; l <= l_max; ++l) {
        Quot Ql(F, l, false, budget);
        bool small_l = Ql.size() <= budget;
        std::optional<Classes> cls_l;
        std::optional<OraclePrimes> pr_l;
        std::vector<BChar> bchars_l;
        for (i64 i = 0; i < nu; ++i)
            bchars_l.push_back(bchar_sl(F, Ql, fam.twists[static_cast<size_t>(orig(i))]));
        if (small_l) {
            cls_l = conjugacy_classes(Ql);
            pr_l = choose_oracle_primes(Ql, bchars_l[0].M);
        } else {
            rep.oracle_degraded = true;
        }
        for (i64 i = 0; i < nu; ++i) {
            WLayer lay;
            lay.l = l;
            lay.dim = (F.p() + 1) * (F.p() - 1) * F.pow_p(l - 2);
            // brute Hom(W_i, W_k): dim H(l) - dim H(l-1) for any k != i (or i=k)
            i64 k = (i + 1) % nu;
            auto hom_at = [&](i64 lev, i64 a, i64 b) {
                Quot Qx(F, lev, false, budget);
                BChar ca = bchar_sl(F, Qx, fam.twists[static_cast<size_t>(orig(a))]);
                BChar cb = bchar_sl(F, Qx, fam.twists[static_cast<size_t>(orig(b))]);
                i64 cnt = 0;
                for (i64 lab = 0; lab < coset_label_count(Qx); ++lab)
                    if (coset_supports(Qx, ca, cb, lab)) ++cnt;
                return cnt;
            };
            i64 low = l - 1 >= rep.m ? hom_at(l - 1, i, k) : 0;
            lay.hom_across_i = hom_at(l, i, k) - low;
            if (small_l) {
                ClassFunction full =
                    induced_char(Ql, *cls_l, bchars_l[static_cast<size_t>(i)], l);
                ClassFunction lower =
                    induced_char(Ql, *cls_l, bchars_l[static_cast<size_t>(i)], l - 1);
                ClassFunction W = cf_sub(full, lower);
                lay.norm = hom_dim_oracle(Ql, *cls_l, W, W, *pr_l);
                // halves: constituents new at level l
                auto dims_l = constituent_dims(Ql, bchars_l[static_cast<size_t>(i)], *pr_l);
                Quot Qlow(F, l - 1, false, budget);
                BChar clow = bchar_sl(F, Qlow, fam.twists[static_cast<size_t>(orig(i))]);
                OraclePrimes prlow = choose_oracle_primes(Qlow, clow.M);
                auto dims_low = constituent_dims(Qlow, clow, prlow);
                std::vector<i64> halves = dims_l;
                for (i64 d : dims_low) {
                    auto it = std::find(halves.begin(), halves.end(), d);
                    require(it != halves.end(),
                            "branch_report: lower-level constituent missing at level l");
                    halves.erase(it);
                }
                lay.half_dims = halves;
            }
            rep.layers[static_cast<size_t>(i)].push_back(lay);
        }
    }
    return rep;
}

}  // namespace ktype
