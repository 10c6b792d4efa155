#pragma once

// Hecke algebra dimensions H(chi_i, chi_j) on B_l \ K~1 / B_l three ways:
// brute-force support counts over the level-l quotient, the closed forms
//   i = j:  1 + 2(l-m)  generically,  2l    when chi_i kills unit squares
//   i != j: 2(l-m)      generically,  2l-1  when chi_0|sq = eps o eta^-(i+j)
// and (budget permitting) the independent character-theoretic oracle.
// branch_report assembles the K-type decomposition table.

#include "ktype/quotient_oracle.hpp"

namespace ktype {

// chi_0|_{(T cap K)^2} = eps o eta^(-ksum) on unit squares; forces depth 1
bool eps_eta_condition(const LocalField& F, const ExtensionFamily& fam, i64 ksum);

i64 hecke_dim_closed(i64 i, i64 j, i64 l, i64 m, bool quad_i, bool cond_ij);

struct HeckeReport {
    i64 p = 0, n = 0, m = 0, l = 0, i = 0, j = 0;
    bool zero_level = false;           // 0 < l < m: the l-fixed space vanishes
    std::string zero_witness;
    std::vector<i64> supported_labels;
    i64 dim_bruteforce = 0;
    i64 dim_closed_form = 0;
    bool condition = false;            // the relevant quad / eps-eta flag
    std::optional<i64> dim_oracle;
    i64 aux_prime_1 = 0, aux_prime_2 = 0;
    bool budget_exceeded = false;      // oracle skipped
};

// brute-force support count at level l; oracle column filled when the
// quotient order fits the budget and with_oracle is set
HeckeReport hecke_dim_report(const LocalField& F, const ExtensionFamily& fam, i64 i, i64 j,
                             i64 l, bool with_oracle = true, i64 budget = 5'000'000);

struct ConstituentInfo {
    i64 i = 0;                  // relabeled index
    i64 i_original = 0;
    i64 dim = 0;
    bool reducible = false;
    std::vector<i64> split_dims;   // from the oracle eigenspaces, when run
    std::optional<i64> norm;       // <V,V>
};

struct WLayer {
    i64 l = 0;
    i64 dim = 0;                    // (p+1)(p-1)p^(l-2)
    std::vector<i64> half_dims;     // oracle eigensplit, when run
    std::optional<i64> norm;        // <W,W> = 2
    i64 hom_across_i = 0;           // dim Hom(W_i, W_k), brute, any i != k
};

struct BranchReport {
    i64 p = 0, n = 0, m = 0, l_max = 0;
    i64 relabel_shift = 0;               // original index of the quadratic twist
    std::vector<i64> quad_indices;       // original indices with the condition
    std::vector<ConstituentInfo> level_m;
    std::vector<std::vector<WLayer>> layers;              // per relabeled i
    std::vector<std::vector<i64>> hom_level_m;            // brute dim H_{i,k}(m)
    std::vector<std::vector<i64>> hom_level_m_closed;
    std::vector<std::vector<std::optional<i64>>> hom_level_m_oracle;
    bool pattern_ok = false;     // equivalences match i+k = j mod n_under
    bool oracle_degraded = false;
    i64 aux_prime_1 = 0, aux_prime_2 = 0;
};

BranchReport branch_report(const LocalField& F, const ExtensionFamily& fam, i64 l_max,
                           i64 budget = 5'000'000);

}  // namespace ktype
