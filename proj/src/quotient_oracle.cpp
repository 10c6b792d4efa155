#include "ktype/quotient_oracle.hpp"

#include <algorithm>

namespace ktype {

Quot::Quot(const LocalField& F, i64 l, bool gl, i64 budget)
    : F_(&F), l_(l), budget_(budget), gl_(gl) {
    require(l >= 1 && l <= F.L() - 2, "Quot: level outside [1, L-2]");
    pl_ = F.pow_p(l);
    require(pl_ < (i64(1) << 20), "Quot: modulus too large for row tables");
    row_rank_.assign(static_cast<size_t>(pl_ * pl_), -1);
    int rank = 0;
    for (i64 c = 0; c < pl_; ++c)
        for (i64 d = 0; d < pl_; ++d) {
            if (c % F.p() == 0 && d % F.p() == 0) continue;
            row_rank_[static_cast<size_t>(c * pl_ + d)] = rank++;
            rank_row_.push_back(static_cast<int>(c * pl_ + d));
        }
    sl_size_ = static_cast<i64>(rank) * pl_;
    if (gl_) {
        unit_rank_.assign(static_cast<size_t>(pl_), -1);
        int ur = 0;
        for (i64 u = 0; u < pl_; ++u)
            if (u % F.p() != 0) {
                unit_rank_[static_cast<size_t>(u)] = ur++;
                rank_unit_.push_back(static_cast<int>(u));
            }
        size_ = sl_size_ * ur;
    } else {
        size_ = sl_size_;
    }
}

i64 Quot::borel_size() const {
    i64 units = pl_ / F_->p() * (F_->p() - 1);
    return gl_ ? units * units * pl_ : units * pl_;
}

QMat Quot::mul(const QMat& x, const QMat& y) const {
    return {floor_mod(x.a * y.a + x.b * y.c, pl_), floor_mod(x.a * y.b + x.b * y.d, pl_),
            floor_mod(x.c * y.a + x.d * y.c, pl_), floor_mod(x.c * y.b + x.d * y.d, pl_)};
}

QMat Quot::inv(const QMat& x) const {
    i64 det = floor_mod(x.a * x.d - x.b * x.c, pl_);
    i64 di = inv_mod(det, pl_);
    return {mul_mod(x.d, di, pl_), floor_mod(-mul_mod(x.b, di, pl_), pl_),
            floor_mod(-mul_mod(x.c, di, pl_), pl_), mul_mod(x.a, di, pl_)};
}

bool Quot::eq(const QMat& x, const QMat& y) const {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

bool Quot::in_group(const QMat& x) const {
    i64 det = floor_mod(x.a * x.d - x.b * x.c, pl_);
    return gl_ ? det % F_->p() != 0 : det == 1;
}

i64 Quot::sl_index(const QMat& g) const {
    int rr = row_rank_[static_cast<size_t>(g.c * pl_ + g.d)];
    require(rr >= 0, "Quot: bottom row not unimodular");
    i64 a0, b0, t;
    if (g.d % F_->p() != 0) {
        a0 = inv_mod(g.d, pl_);
        b0 = 0;
        t = mul_mod(floor_mod(g.b - b0, pl_), inv_mod(g.d, pl_), pl_);
    } else {
        a0 = 0;
        b0 = floor_mod(-inv_mod(g.c, pl_), pl_);
        t = mul_mod(floor_mod(g.a - a0, pl_), inv_mod(g.c, pl_), pl_);
    }
    return static_cast<i64>(rr) * pl_ + t;
}

QMat Quot::sl_at(i64 idx) const {
    i64 rr = idx / pl_, t = idx % pl_;
    i64 row = rank_row_[static_cast<size_t>(rr)];
    i64 c = row / pl_, d = row % pl_;
    i64 a0, b0;
    if (d % F_->p() != 0) { a0 = inv_mod(d, pl_); b0 = 0; }
    else { a0 = 0; b0 = floor_mod(-inv_mod(c, pl_), pl_); }
    return {floor_mod(a0 + t * c, pl_), floor_mod(b0 + t * d, pl_), c, d};
}

i64 Quot::index_of(const QMat& g) const {
    if (!gl_) return sl_index(g);
    i64 det = floor_mod(g.a * g.d - g.b * g.c, pl_);
    i64 di = inv_mod(det, pl_);
    QMat slp{g.a, g.b, mul_mod(di, g.c, pl_), mul_mod(di, g.d, pl_)};
    return static_cast<i64>(unit_rank_[static_cast<size_t>(det)]) * sl_size_ + sl_index(slp);
}

QMat Quot::at(i64 idx) const {
    if (!gl_) return sl_at(idx);
    i64 ur = idx / sl_size_;
    QMat slp = sl_at(idx % sl_size_);
    i64 y = rank_unit_[static_cast<size_t>(ur)];
    return {slp.a, slp.b, mul_mod(y, slp.c, pl_), mul_mod(y, slp.d, pl_)};
}

std::optional<i64> Quot::sqrt_unit(i64 a) const {
    i64 x = sqrt_unit_mod_ppow(a, F_->p(), l_);
    if (x < 0) return std::nullopt;
    return x;
}

Classes conjugacy_classes(const Quot& Q) {
    const i64 N = Q.size();
    if (N > Q.budget())
        throw budget_error("conjugacy_classes: quotient order " + std::to_string(N) +
                           " exceeds the enumeration budget");
    Classes cls;
    cls.class_of.assign(static_cast<size_t>(N), -1);
    std::vector<QMat> gens = {QMat{1, 1, 0, 1}, QMat{1, 0, 1, 1}};
    if (Q.is_gl()) {
        i64 gamma = 0;
        for (i64 u = 2; u < Q.modulus(); ++u) {
            // any unit whose residue generates F_p^x works together with 1+p
            if (u % Q.field().p() != 0 && Q.field().dlog(u % Q.field().p()) == 1) {
                gamma = u;
                break;
            }
        }
        gens.push_back(Q.dg(1, gamma));
        gens.push_back(Q.dg(1, 1 + Q.field().p()));
    }
    std::vector<QMat> geninv;
    geninv.reserve(gens.size());
    for (const auto& g : gens) geninv.push_back(Q.inv(g));
    std::vector<i64> stack;
    for (i64 seed = 0; seed < N; ++seed) {
        if (cls.class_of[static_cast<size_t>(seed)] != -1) continue;
        int id = static_cast<int>(cls.rep.size());
        cls.rep.push_back(seed);
        cls.size.push_back(0);
        cls.class_of[static_cast<size_t>(seed)] = id;
        stack.push_back(seed);
        while (!stack.empty()) {
            i64 cur = stack.back();
            stack.pop_back();
            ++cls.size[static_cast<size_t>(id)];
            QMat m = Q.at(cur);
            for (size_t gi = 0; gi < gens.size(); ++gi) {
                QMat conj = Q.mul(Q.mul(gens[gi], m), geninv[gi]);
                i64 idx = Q.index_of(conj);
                if (cls.class_of[static_cast<size_t>(idx)] == -1) {
                    cls.class_of[static_cast<size_t>(idx)] = id;
                    stack.push_back(idx);
                }
            }
        }
    }
    return cls;
}

BChar bchar_sl(const LocalField& F, const Quot& Q, const CharacterSpec& chi_i) {
    require(!Q.is_gl(), "bchar_sl: SL quotient expected");
    require(primitive_level(F, chi_i) <= Q.level(),
            "bchar_sl: character depth exceeds quotient level");
    BChar ch;
    ch.gl = false;
    ch.pl = Q.modulus();
    ch.M = lcm_i64(lcm_i64(F.n(), F.q() - 1), F.pow_p(Q.level() - 1));
    ch.diag_exp.assign(static_cast<size_t>(ch.pl), 0);
    for (i64 t = 1; t < ch.pl; ++t) {
        if (t % F.p() == 0) continue;
        ch.diag_exp[static_cast<size_t>(t)] = chi_unit_eval(F, chi_i, t).exp_mod(ch.M);
    }
    // multiplicativity spot-check of the tabulated character
    for (i64 k = 0; k < 50; ++k) {
        i64 t1 = 1 + (k * 37) % (ch.pl - 1), t2 = 1 + (k * 53) % (ch.pl - 1);
        if (t1 % F.p() == 0 || t2 % F.p() == 0) continue;
        i64 lhs = ch.diag_exp[static_cast<size_t>(mul_mod(t1, t2, ch.pl))];
        i64 rhs = floor_mod(ch.diag_exp[static_cast<size_t>(t1)] +
                            ch.diag_exp[static_cast<size_t>(t2)], ch.M);
        require(lhs == rhs, "bchar_sl: table is not multiplicative");
    }
    return ch;
}

// coset representatives of Q / (upper mod p^sub): projective classes (a:c)
static std::vector<QMat> borel_coset_reps(const Quot& Q, i64 sub_level) {
    const i64 ps = Q.field().pow_p(sub_level);
    std::vector<QMat> reps;
    for (i64 x = 0; x < ps; ++x)
        reps.push_back(QMat{x, floor_mod(-1, Q.modulus()), 1, 0});  // column (x : 1)
    for (i64 c = 0; c < ps; c += Q.field().p())
        reps.push_back(Q.lt(c));                                    // column (1 : c), p | c
    return reps;
}

ClassFunction induced_char(const Quot& Q, const Classes& cls, const BChar& chi, i64 sub_level) {
    require(sub_level >= 1 && sub_level <= Q.level(), "induced_char: bad sublevel");
    const i64 ps = Q.field().pow_p(sub_level);
    auto reps = borel_coset_reps(Q, sub_level);
    std::vector<QMat> repinv;
    repinv.reserve(reps.size());
    for (const auto& k : reps) repinv.push_back(Q.inv(k));
    ClassFunction f;
    f.M = chi.M;
    f.vals.resize(cls.rep.size());
    for (size_t ci = 0; ci < cls.rep.size(); ++ci) {
        QMat y = Q.at(cls.rep[ci]);
        for (size_t kix = 0; kix < reps.size(); ++kix) {
            QMat z = Q.mul(Q.mul(repinv[kix], y), reps[kix]);
            if (z.c % ps != 0) continue;
            i64 e;
            if (chi.gl)
                e = chi.diag_exp[static_cast<size_t>((z.a % ps) * chi.pl + (z.d % ps))];
            else
                e = chi.diag_exp[static_cast<size_t>(z.a % ps)];
            ++f.vals[ci][e];
        }
    }
    return f;
}

i64 cf_degree(const Quot& Q, const Classes& cls, const ClassFunction& f) {
    i64 ci = cls.class_of[static_cast<size_t>(Q.index_of(Q.identity()))];
    i64 deg = 0;
    for (const auto& [e, coef] : f.vals[static_cast<size_t>(ci)]) {
        require(e == 0 || coef == 0, "cf_degree: identity value is not rational");
        deg += coef;
    }
    return deg;
}

ClassFunction cf_sub(const ClassFunction& x, const ClassFunction& y) {
    require(x.M == y.M && x.vals.size() == y.vals.size(), "cf_sub: incompatible");
    ClassFunction z = x;
    for (size_t i = 0; i < z.vals.size(); ++i)
        for (const auto& [e, c] : y.vals[i]) {
            z.vals[i][e] -= c;
            if (z.vals[i][e] == 0) z.vals[i].erase(e);
        }
    return z;
}

bool cf_eq(const ClassFunction& x, const ClassFunction& y) {
    if (x.M != y.M || x.vals.size() != y.vals.size()) return false;
    for (size_t i = 0; i < x.vals.size(); ++i) {
        auto a = x.vals[i], b = y.vals[i];
        for (auto it = a.begin(); it != a.end();) {
            if (it->second == 0) it = a.erase(it);
            else ++it;
        }
        for (auto it = b.begin(); it != b.end();) {
            if (it->second == 0) it = b.erase(it);
            else ++it;
        }
        if (a != b) return false;
    }
    return true;
}

OraclePrimes choose_oracle_primes(const Quot& Q, i64 M) {
    const LocalField& F = Q.field();
    OraclePrimes pr;
    pr.M = M;
    // exp(G) divides lcm(2 p^l, p-1, p+1); eigenvalues of commutant operators
    // lie in Q(zeta_lcm(M, exp G)) by Brauer, so force r to split it
    pr.E = lcm_i64(lcm_i64(M, 2 * Q.modulus()), lcm_i64(F.p() - 1, F.p() + 1));
    i64 start = std::max<i64>(Q.size() * F.n() * F.n(), 1'000'000);
    pr.r1 = next_prime_1_mod(start, pr.E);
    pr.r2 = next_prime_1_mod(pr.r1 + 1, pr.E);
    return pr;
}

i64 hom_dim_oracle(const Quot& Q, const Classes& cls, const ClassFunction& V,
                   const ClassFunction& W, const OraclePrimes& pr) {
    require(V.M == pr.M && W.M == pr.M, "hom_dim_oracle: mismatched cyclotomic order");
    i64 out[2] = {-1, -1};
    for (int which = 0; which < 2; ++which) {
        i64 r = which == 0 ? pr.r1 : pr.r2;
        i64 xi = element_of_order(pr.M, r);
        std::vector<i64> pw(static_cast<size_t>(pr.M));
        pw[0] = 1;
        for (i64 e = 1; e < pr.M; ++e) pw[static_cast<size_t>(e)] = mul_mod(pw[e - 1], xi, r);
        i64 total = 0;
        for (size_t ci = 0; ci < cls.rep.size(); ++ci) {
            i64 v = 0, wv = 0;
            for (const auto& [e, c] : V.vals[ci])
                v = floor_mod(v + mul_mod(floor_mod(c, r), pw[static_cast<size_t>(e)], r), r);
            for (const auto& [e, c] : W.vals[ci])
                wv = floor_mod(
                    wv + mul_mod(floor_mod(c, r), pw[static_cast<size_t>(floor_mod(-e, pr.M))], r),
                    r);
            total = floor_mod(total + mul_mod(floor_mod(cls.size[ci], r), mul_mod(v, wv, r), r),
                              r);
        }
        out[which] = mul_mod(total, inv_mod(floor_mod(Q.size(), r), r), r);
    }
    ++g_dual_prime_checks;
    if (out[0] != out[1]) {
        ++g_dual_prime_disagreements;
        throw oracle_disagreement("hom_dim_oracle: auxiliary primes disagree");
    }
    return out[0];
}

// ----- double cosets -------------------------------------------------------

i64 coset_label_count(const Quot& Q) {
    return Q.is_gl() ? 2 + (Q.level() - 1) : 2 + 2 * (Q.level() - 1);
}

i64 coset_label(const Quot& Q, const QMat& g) {
    const LocalField& F = Q.field();
    if (g.c == 0) return 0;
    i64 r = 0, u = g.c;
    while (u % F.p() == 0) { u /= F.p(); ++r; }
    if (r == 0) return 1;
    if (Q.is_gl()) return 2 + (r - 1);
    // SL: the square class of unit(c) * a separates the two cosets at each r
    require(g.a % F.p() != 0, "coset_label: unexpected non-unit corner");
    i64 s = F.dlog(mul_mod(u % F.p(), g.a % F.p(), F.p())) % 2;
    return 2 + 2 * (r - 1) + s;
}

QMat coset_rep(const Quot& Q, i64 label) {
    const LocalField& F = Q.field();
    if (label == 0) return Q.identity();
    if (label == 1) return Q.w();
    if (Q.is_gl()) return Q.lt(F.pow_p(label - 2 + 1));
    i64 r = (label - 2) / 2 + 1, s = (label - 2) % 2;
    i64 u = s == 0 ? 1 : F.g();  // g is a non-square mod p
    return Q.lt(u * F.pow_p(r));
}

DoubleCosetReport verify_double_cosets(const Quot& Q) {
    const i64 N = Q.size();
    if (N > Q.budget())
        throw budget_error("verify_double_cosets: quotient order " + std::to_string(N) +
                           " exceeds the enumeration budget");
    DoubleCosetReport rep;
    rep.count = coset_label_count(Q);
    rep.sizes.assign(static_cast<size_t>(rep.count), 0);

    // Borel generators
    i64 gamma = 0;
    for (i64 u = 2; u < Q.modulus(); ++u)
        if (u % Q.field().p() != 0 && Q.field().dlog(u % Q.field().p()) == 1) { gamma = u; break; }
    std::vector<QMat> bgens;
    if (Q.is_gl()) {
        bgens = {Q.dg(gamma, 1), Q.dg(1, gamma), Q.dg(1 + Q.field().p(), 1),
                 Q.dg(1, 1 + Q.field().p()), QMat{1, 1, 0, 1}};
    } else {
        bgens = {Q.dg(gamma, inv_mod(gamma, Q.modulus())),
                 Q.dg(1 + Q.field().p(), inv_mod(1 + Q.field().p(), Q.modulus())),
                 QMat{1, 1, 0, 1}};
    }

    std::vector<char> visited(static_cast<size_t>(N), 0);
    i64 covered = 0;
    rep.disjoint = true;
    rep.partition_ok = true;
    for (i64 label = 0; label < rep.count; ++label) {
        QMat x = coset_rep(Q, label);
        std::vector<i64> stack;
        i64 x_idx = Q.index_of(x);
        if (visited[static_cast<size_t>(x_idx)]) { rep.disjoint = false; continue; }
        visited[static_cast<size_t>(x_idx)] = 1;
        stack.push_back(x_idx);
        i64 sz = 0;
        while (!stack.empty()) {
            i64 cur = stack.back();
            stack.pop_back();
            ++sz;
            QMat m = Q.at(cur);
            if (coset_label(Q, m) != label) rep.partition_ok = false;
            for (const auto& g : bgens) {
                for (QMat nb : {Q.mul(g, m), Q.mul(m, g)}) {
                    i64 idx = Q.index_of(nb);
                    if (!visited[static_cast<size_t>(idx)]) {
                        visited[static_cast<size_t>(idx)] = 1;
                        stack.push_back(idx);
                    }
                }
            }
        }
        rep.sizes[static_cast<size_t>(label)] = sz;
        covered += sz;
    }
    rep.covers = covered == N;
    return rep;
}

// ----- Hecke support -------------------------------------------------------

bool coset_supports(const Quot& Q, const BChar& chi_i, const BChar& chi_j, i64 label) {
    const i64 pl = Q.modulus();
    const LocalField& F = Q.field();
    QMat x = coset_rep(Q, label);
    QMat xinv = Q.inv(x);
    if (!Q.is_gl()) {
        for (i64 t = 1; t < pl; ++t) {
            if (t % F.p() == 0) continue;
            i64 ti = inv_mod(t, pl);
            for (i64 s = 0; s < pl; ++s) {
                QMat binv{ti, floor_mod(-s, pl), 0, t};  // inverse of [[t,s],[0,t^-1]]
                QMat y = Q.mul(Q.mul(xinv, binv), x);
                if (y.c != 0) continue;
                i64 e = floor_mod(chi_i.diag_exp[static_cast<size_t>(t)] +
                                  chi_j.diag_exp[static_cast<size_t>(y.a)], chi_i.M);
                if (e != 0) return false;
            }
        }
        return true;
    }
    for (i64 t1 = 1; t1 < pl; ++t1) {
        if (t1 % F.p() == 0) continue;
        for (i64 t2 = 1; t2 < pl; ++t2) {
            if (t2 % F.p() == 0) continue;
            i64 t1i = inv_mod(t1, pl), t2i = inv_mod(t2, pl);
            for (i64 s = 0; s < pl; ++s) {
                QMat binv{t1i, floor_mod(-mul_mod(mul_mod(s, t1i, pl), t2i, pl), pl), 0, t2i};
                QMat y = Q.mul(Q.mul(xinv, binv), x);
                if (y.c != 0) continue;
                i64 e = floor_mod(chi_i.diag_exp[static_cast<size_t>(t1 * pl + t2)] +
                                  chi_j.diag_exp[static_cast<size_t>(y.a * pl + y.d)], chi_i.M);
                if (e != 0) return false;
            }
        }
    }
    return true;
}

// ----- commutant eigenspaces ----------------------------------------------

namespace {

// phi_x(y) for y in the double coset of x: decompose y = b1 x b2 and return
// chi(b1) + chi(b2) as a zeta_M exponent; nullopt if y is not in the coset
std::optional<i64> hecke_phi(const Quot& Q, const BChar& chi, i64 label, const QMat& y) {
    if (coset_label(Q, y) != label) return std::nullopt;
    const i64 pl = Q.modulus();
    const LocalField& F = Q.field();
    auto chi_sl = [&](i64 t) { return chi.diag_exp[static_cast<size_t>(t)]; };
    auto chi_gl = [&](i64 t1, i64 t2) {
        return chi.diag_exp[static_cast<size_t>(t1 * pl + t2)];
    };
    if (label == 0) {
        return Q.is_gl() ? chi_gl(y.a, y.d) : chi_sl(y.a);
    }
    if (label == 1) {
        // y = b1 w b2 with b1 unipotent-normalized; b2 diagonal part (-c, -det/c)
        i64 t2 = floor_mod(-y.c, pl);
        if (!Q.is_gl()) return floor_mod(chi_sl(t2), chi.M);
        i64 det = floor_mod(y.a * y.d - y.b * y.c, pl);
        i64 u2 = floor_mod(-mul_mod(det, inv_mod(y.c, pl), pl), pl);
        return floor_mod(chi_gl(1, 1) + chi_gl(t2, u2), chi.M);
    }
    // lt(ce) with ce = ue * p^r
    QMat x = coset_rep(Q, label);
    i64 r = 0, uc = y.c, ue = x.c;
    while (uc % F.p() == 0) { uc /= F.p(); ++r; }
    for (i64 k = 0; k < r; ++k) ue /= F.p();
    i64 plr = F.pow_p(Q.level() - r);
    if (!Q.is_gl()) {
        // t1^2 = ue * a / uc mod p^(l-r), t2 = a / t1
        i64 tgt = mul_mod(mul_mod(floor_mod(ue, plr), floor_mod(y.a, plr), plr),
                          inv_mod(floor_mod(uc, plr), plr), plr);
        i64 t1 = sqrt_unit_mod_ppow(tgt, F.p(), Q.level() - r);
        require(t1 >= 0, "hecke_phi: square class mismatch inside coset");
        i64 t2 = mul_mod(y.a, inv_mod(t1, pl), pl);
        return floor_mod(chi_sl(t1) + chi_sl(t2), chi.M);
    }
    // GL: b1 = dg(1, u1), b2 = [[t2,s2],[0,u2]]
    i64 u1 = mul_mod(floor_mod(uc, plr), inv_mod(mul_mod(floor_mod(ue, plr),
                                                         floor_mod(y.a, plr), plr), plr), plr);
    i64 t2 = y.a;
    i64 ce = x.c;
    i64 u2 = floor_mod(mul_mod(y.d, inv_mod(u1, pl), pl) - mul_mod(ce, y.b, pl), pl);
    return floor_mod(chi_gl(1, u1) + chi_gl(t2, u2), chi.M);
}

// dim ker(T - lambda I) over F_r by Gaussian elimination
i64 kernel_dim(std::vector<std::vector<i64>> m, i64 lambda, i64 r) {
    const size_t D = m.size();
    for (size_t i = 0; i < D; ++i) m[i][i] = floor_mod(m[i][i] - lambda, r);
    size_t rank = 0;
    for (size_t col = 0; col < D && rank < D; ++col) {
        size_t piv = rank;
        while (piv < D && m[piv][col] == 0) ++piv;
        if (piv == D) continue;
        std::swap(m[piv], m[rank]);
        i64 inv = inv_mod(m[rank][col], r);
        for (size_t j = col; j < D; ++j) m[rank][j] = mul_mod(m[rank][j], inv, r);
        for (size_t i = 0; i < D; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            i64 f = m[i][col];
            for (size_t j = col; j < D; ++j)
                m[i][j] = floor_mod(m[i][j] - mul_mod(f, m[rank][j], r), r);
        }
        ++rank;
    }
    return static_cast<i64>(D - rank);
}

}  // namespace

std::vector<i64> constituent_dims(const Quot& Q, const BChar& chi, const OraclePrimes& pr) {
    auto reps = borel_coset_reps(Q, Q.level());
    const size_t D = reps.size();
    std::vector<QMat> repinv;
    for (const auto& k : reps) repinv.push_back(Q.inv(k));

    std::vector<i64> supported;
    for (i64 lab = 0; lab < coset_label_count(Q); ++lab)
        if (coset_supports(Q, chi, chi, lab)) supported.push_back(lab);
    const i64 commutant_dim = static_cast<i64>(supported.size());
    if (commutant_dim == 1) return {static_cast<i64>(D)};  // irreducible

    // phi-exponent matrix per supported non-identity label:
    // entry(i,j) = phi_x(g_i^-1 g_j) or -1
    std::vector<std::vector<std::vector<i64>>> phi_exp;
    for (i64 lab : supported) {
        if (lab == 0) continue;
        std::vector<std::vector<i64>> mat(D, std::vector<i64>(D, -1));
        for (size_t i = 0; i < D; ++i)
            for (size_t j = 0; j < D; ++j) {
                QMat y = Q.mul(repinv[i], reps[j]);
                auto e = hecke_phi(Q, chi, lab, y);
                if (e) mat[i][j] = *e;
            }
        phi_exp.push_back(std::move(mat));
    }

    std::vector<i64> dims_by_prime[2];
    for (int which = 0; which < 2; ++which) {
        i64 r = which == 0 ? pr.r1 : pr.r2;
        i64 xi = element_of_order(pr.M, r);
        std::vector<i64> pw(static_cast<size_t>(pr.M));
        pw[0] = 1;
        for (i64 e = 1; e < pr.M; ++e) pw[static_cast<size_t>(e)] = mul_mod(pw[e - 1], xi, r);
        bool done = false;
        for (i64 attempt = 1; attempt <= 24 && !done; ++attempt) {
            // deterministic combination of the generators
            std::vector<std::vector<i64>> T(D, std::vector<i64>(D, 0));
            i64 coef = 1;
            for (const auto& mat : phi_exp) {
                coef = floor_mod(coef * (attempt + 2) + attempt, r);
                for (size_t i = 0; i < D; ++i)
                    for (size_t j = 0; j < D; ++j)
                        if (mat[i][j] >= 0)
                            T[i][j] = floor_mod(
                                T[i][j] + mul_mod(coef, pw[static_cast<size_t>(mat[i][j])], r),
                                r);
            }
            // Krylov minimal polynomial from a deterministic vector
            std::vector<std::vector<i64>> krylov;
            std::vector<i64> v(D);
            for (size_t i = 0; i < D; ++i)
                v[i] = floor_mod(static_cast<i64>(i) * 1103515245 + attempt * 12345 + 1, r);
            krylov.push_back(v);
            std::vector<i64> minpoly;
            for (i64 deg = 1; deg <= commutant_dim + 1; ++deg) {
                std::vector<i64> nv(D, 0);
                const auto& pv = krylov.back();
                for (size_t i = 0; i < D; ++i) {
                    if (pv[i] == 0) continue;
                    for (size_t j = 0; j < D; ++j)
                        nv[j] = floor_mod(nv[j] + mul_mod(T[j][i], pv[i], r), r);
                }
                krylov.push_back(nv);
                // test linear dependence of krylov vectors
                size_t k = krylov.size();
                std::vector<std::vector<i64>> m(D, std::vector<i64>(k));
                for (size_t i = 0; i < D; ++i)
                    for (size_t j = 0; j < k; ++j) m[i][j] = krylov[j][i];
                // solve m * coeffs = 0 with last coefficient 1
                std::vector<std::vector<i64>> aug = m;
                std::vector<int> pivot_col(k, -1);
                size_t rank = 0;
                for (size_t col = 0; col < k && rank < D; ++col) {
                    size_t piv = rank;
                    while (piv < D && aug[piv][col] == 0) ++piv;
                    if (piv == D) continue;
                    std::swap(aug[piv], aug[rank]);
                    i64 inv = inv_mod(aug[rank][col], r);
                    for (size_t j = 0; j < k; ++j) aug[rank][j] = mul_mod(aug[rank][j], inv, r);
                    for (size_t i = 0; i < D; ++i) {
                        if (i == rank || aug[i][col] == 0) continue;
                        i64 f = aug[i][col];
                        for (size_t j = 0; j < k; ++j)
                            aug[i][j] = floor_mod(aug[i][j] - mul_mod(f, aug[rank][j], r), r);
                    }
                    pivot_col[col] = static_cast<int>(rank);
                    ++rank;
                }
                if (pivot_col[k - 1] == -1) {
                    // last vector dependent: back-substitute the relation
                    minpoly.assign(k, 0);
                    minpoly[k - 1] = 1;
                    for (size_t col = 0; col < k - 1; ++col)
                        if (pivot_col[col] >= 0)
                            minpoly[col] =
                                floor_mod(-aug[static_cast<size_t>(pivot_col[col])][k - 1], r);
                    break;
                }
            }
            if (minpoly.empty()) continue;
            if (static_cast<i64>(minpoly.size()) - 1 != commutant_dim) continue;  // retry
            auto roots = poly_roots_mod(minpoly, r);
            if (static_cast<i64>(roots.size()) != commutant_dim) continue;
            std::vector<i64> dims;
            i64 total = 0;
            for (i64 lam : roots) {
                i64 kd = kernel_dim(T, lam, r);
                dims.push_back(kd);
                total += kd;
            }
            if (total != static_cast<i64>(D)) continue;
            std::sort(dims.begin(), dims.end());
            dims_by_prime[which] = dims;
            done = true;
        }
        require(done, "constituent_dims: commutant splitting failed");
    }
    ++g_dual_prime_checks;
    if (dims_by_prime[0] != dims_by_prime[1]) {
        ++g_dual_prime_disagreements;
        throw oracle_disagreement("constituent_dims: auxiliary primes disagree");
    }
    return dims_by_prime[0];
}

}  // namespace ktype
