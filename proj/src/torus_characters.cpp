#include "ktype/torus_characters.hpp"

#include <algorithm>
#include <map>

#include "ktype/hilbert.hpp"

namespace ktype {

TorusElement torus_elt(const LocalField& F, const TruncElt& t, i64 zexp) {
    return {t, F.mu(zexp)};
}

TorusElement torus_mul(const LocalField& F, const TorusElement& x, const TorusElement& y) {
    RootOfUnity b = beta(F, sl2_dg(F, x.t), sl2_dg(F, y.t));
    return {F.mul(x.t, y.t), F.mu_mul(b, F.mu_mul(x.zeta, y.zeta))};
}

TorusElement torus_inv(const LocalField& F, const TorusElement& x) {
    TruncElt ti = F.inv(x.t);
    RootOfUnity b = beta(F, sl2_dg(F, x.t), sl2_dg(F, ti));
    return {ti, F.mu_inv(F.mu_mul(x.zeta, b))};
}

RootOfUnity torus_commutator(const LocalField& F, const TorusElement& x, const TorusElement& y) {
    TorusElement c = torus_mul(F, torus_mul(F, x, y),
                               torus_mul(F, torus_inv(F, x), torus_inv(F, y)));
    require(c.t == F.one(), "torus_commutator: matrix part did not cancel");
    return c.zeta;
}

bool in_center(const LocalField& F, const TorusElement& x) {
    return F.is_nth_power(x.t, F.n_under());
}

bool in_A(const LocalField& F, const TorusElement& x) {
    return floor_mod(x.t.val, F.n_under()) == 0;
}

Cyc chi_unit_eval(const LocalField& F, const CharacterSpec& spec, i64 unit) {
    auto [a, b] = F.unit_decompose(floor_mod(unit, F.pL()), F.L());
    Cyc theta = Cyc::frac(a * spec.teich_exp, F.q() - 1) *
                Cyc::frac(b % F.pow_p(F.L() - 1) * spec.principal_exp, F.pow_p(F.L() - 1));
    return theta;
}

Cyc chi_eval(const LocalField& F, const CharacterSpec& spec, const TorusElement& x) {
    require(in_A(F, x), "chi_eval: element not in A");
    const i64 n = F.n(), nu = F.n_under();
    i64 r = x.t.val / nu;
    i64 u = x.t.unit;
    Cyc v = Cyc::frac(x.zeta.exp * spec.epsilon_exp, n);       // epsilon(zeta)
    v = v * chi_unit_eval(F, spec, u);                         // theta(u)
    v = v * Cyc::frac(r * spec.pi_exp, spec.pi_order);         // omega^r
    // epsilon((pi^(nu r), u))^-1 = e(+ nu r dlog(u) / n)
    v = v * Cyc::frac(nu * r * F.dlog(u % F.p()), n);
    // kappa_r = epsilon((pi,pi))^(nu^2 r(r-1)/2), (pi,pi) = zeta_n^((q-1)/2)
    i64 tri = r * (r - 1) / 2;
    v = v * Cyc::frac((F.q() - 1) / 2 * floor_mod(nu * nu * tri, n), n);
    return v;
}

ValidationResult validate_character(const LocalField& F, const CharacterSpec& spec, bool on_A,
                                    i64 pairs, std::uint64_t seed) {
    ValidationResult res;
    const i64 nu = F.n_under();
    // deterministic element source
    std::uint64_t s = seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL;
    auto next = [&s]() {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    auto random_elt = [&]() -> TorusElement {
        i64 a = static_cast<i64>(next() % static_cast<std::uint64_t>(F.q() - 1));
        i64 bcap = F.pow_p(std::min<i64>(F.L() - 1, 3));
        i64 b = static_cast<i64>(next() % static_cast<std::uint64_t>(bcap));
        i64 r = static_cast<i64>(next() % 9) - 4;
        i64 z = static_cast<i64>(next() % static_cast<std::uint64_t>(F.n()));
        TruncElt t = F.make(0, mul_mod(pow_mod(F.teich_gen(), a, F.pL()),
                                       pow_mod(1 + F.p(), b, F.pL()), F.pL()));
        t = F.mul(t, F.uniformizer(nu * r));
        TorusElement e = torus_elt(F, t, z);
        if (!on_A) {  // force into Z by taking an n_under-th power of the torus part
            TruncElt tz = F.pow(e.t, nu);
            e = torus_elt(F, tz, z);
        }
        return e;
    };
    // generator pairs first
    std::vector<TorusElement> gens = {
        torus_elt(F, F.make(0, F.teich_gen())), torus_elt(F, F.make(0, 1 + F.p())),
        torus_elt(F, F.uniformizer(nu)), torus_elt(F, F.uniformizer(-nu)),
        torus_elt(F, F.one(), 1)};
    if (!on_A)
        for (auto& g : gens) g.t = F.pow(g.t, nu);
    std::vector<std::pair<TorusElement, TorusElement>> tests;
    for (const auto& x : gens)
        for (const auto& y : gens) tests.emplace_back(x, y);
    for (i64 k = 0; k < pairs; ++k) tests.emplace_back(random_elt(), random_elt());
    for (const auto& [x, y] : tests) {
        Cyc lhs = chi_eval(F, spec, torus_mul(F, x, y));
        Cyc rhs = chi_eval(F, spec, x) * chi_eval(F, spec, y);
        if (lhs != rhs) {
            res.ok = false;
            res.detail = "multiplicativity fails at pair (val " + std::to_string(x.t.val) +
                         ", unit " + std::to_string(x.t.unit) + ", z " +
                         std::to_string(x.zeta.exp) + ") * (val " + std::to_string(y.t.val) +
                         ", unit " + std::to_string(y.t.unit) + ", z " +
                         std::to_string(y.zeta.exp) + ")";
            return res;
        }
    }
    res.detail = "multiplicative on " + std::to_string(tests.size()) + " pairs";
    return res;
}

i64 primitive_level(const LocalField& F, const CharacterSpec& spec) {
    // trivial on 1+p^m iff p^(L-1) | principal_exp * p^(m-1)
    i64 e = floor_mod(spec.principal_exp, F.pow_p(F.L() - 1));
    if (e == 0) return 1;
    i64 v = 0;
    while (e % F.p() == 0) { e /= F.p(); ++v; }
    return F.L() - v;
}

ExtensionFamily extend_character(const LocalField& F, const CharacterSpec& base) {
    ValidationResult v = validate_character(F, base, true);
    require(v.ok, "extend_character: base fails validation: " + v.detail);
    ExtensionFamily fam;
    fam.base = base;
    const i64 q1 = F.q() - 1, n = F.n();
    for (i64 i = 0; i < F.n_under(); ++i) {
        CharacterSpec tw = base;
        tw.teich_exp = floor_mod(base.teich_exp - 2 * i * (q1 / n), q1);
        fam.twists.push_back(tw);
    }
    // pairwise distinct on the unit torus
    for (size_t i = 0; i < fam.twists.size(); ++i)
        for (size_t j = i + 1; j < fam.twists.size(); ++j)
            require(chi_unit_eval(F, fam.twists[i], F.teich_gen()) !=
                        chi_unit_eval(F, fam.twists[j], F.teich_gen()),
                    "extend_character: twists not distinct");
    return fam;
}

CharacterSpec conjugate_character(const LocalField& F, const CharacterSpec& base, i64 i) {
    require(i >= 0 && i < F.n_under(), "conjugate_character: index out of range");
    CoverElement s = cover(F, sl2_dg(F, F.uniformizer(i)));
    CoverElement sinv = cover_inv(F, s);
    auto conj_eval = [&](const TorusElement& x) {
        CoverElement cx = cover(F, sl2_dg(F, x.t), x.zeta.exp);
        CoverElement y = cover_mul(F, cover_mul(F, sinv, cx), s);
        TruncElt t = ent_to_trunc(F, y.mat.a);
        return chi_eval(F, base, torus_elt(F, t, y.zeta.exp));
    };
    Cyc v_teich = conj_eval(torus_elt(F, F.make(0, F.teich_gen())));
    Cyc v_principal = conj_eval(torus_elt(F, F.make(0, 1 + F.p())));
    Cyc v_pi = conj_eval(torus_elt(F, F.uniformizer(F.n_under())));
    CharacterSpec out = spec_from_values(F, v_teich, v_principal, v_pi);
    out.pi_order = base.pi_order;
    out.pi_exp = floor_mod(v_pi.exp_mod(base.pi_order), base.pi_order);
    return out;
}

bool quad_condition(const LocalField& F, const ExtensionFamily& fam, i64 i) {
    const CharacterSpec& spec = fam.twists.at(static_cast<size_t>(i));
    // trivial on squares of units: check on generators teich^2 and (1+p)^2
    Cyc a = chi_unit_eval(F, spec, mul_mod(F.teich_gen(), F.teich_gen(), F.pL()));
    Cyc b = chi_unit_eval(F, spec, pow_mod(1 + F.p(), 2, F.pL()));
    return a.is_one() && b.is_one();
}

CharacterSpec spec_from_values(const LocalField& F, const Cyc& v_teich, const Cyc& v_principal,
                               const Cyc& v_pi, i64 pi_order) {
    CharacterSpec spec;
    require((F.q() - 1) % v_teich.den == 0, "spec_from_values: teich value not in mu_(q-1)");
    spec.teich_exp = v_teich.exp_mod(F.q() - 1);
    require(F.pow_p(F.L() - 1) % v_principal.den == 0,
            "spec_from_values: principal value has wrong order");
    spec.principal_exp = v_principal.exp_mod(F.pow_p(F.L() - 1));
    spec.pi_order = pi_order > 0 ? pi_order : lcm_i64(F.n(), F.q() - 1);
    require(spec.pi_order % v_pi.den == 0, "spec_from_values: pi value outside the block");
    spec.pi_exp = v_pi.exp_mod(spec.pi_order);
    return spec;
}

TorusIndexReport torus_indices(const LocalField& F) {
    TorusIndexReport rep;
    const i64 nu = F.n_under(), p2 = F.pow_p(2);
    // window: (val mod nu) x (units mod p^2)
    std::vector<std::pair<i64, i64>> window;
    for (i64 v = 0; v < nu; ++v)
        for (i64 u = 1; u < p2; ++u)
            if (u % F.p() != 0) window.emplace_back(v, u);
    auto count_cosets = [&](const std::vector<std::pair<i64, i64>>& sub) {
        std::map<std::pair<i64, i64>, int> id;
        for (const auto& w : window) id[w] = -1;
        int next_id = 0;
        for (const auto& w : window) {
            if (id[w] != -1) continue;
            for (const auto& s : sub) {
                std::pair<i64, i64> t{floor_mod(w.first + s.first, nu),
                                      mul_mod(w.second, s.second, p2)};
                auto it = id.find(t);
                require(it != id.end(), "torus_indices: window not closed");
                require(it->second == -1, "torus_indices: cosets overlap");
                it->second = next_id;
            }
            ++next_id;
        }
        return next_id;
    };
    // center: image of the n_under-th power map (valuations land on 0 mod nu)
    std::vector<std::pair<i64, i64>> zsub;
    {
        std::map<std::pair<i64, i64>, bool> seen;
        for (i64 u = 1; u < p2; ++u) {
            if (u % F.p() == 0) continue;
            std::pair<i64, i64> s{0, pow_mod(u, nu, p2)};
            if (!seen[s]) { seen[s] = true; zsub.push_back(s); }
        }
    }
    rep.index_center = count_cosets(zsub);
    // A: val = 0 mod n_under, all units
    std::vector<std::pair<i64, i64>> asub;
    for (i64 u = 1; u < p2; ++u)
        if (u % F.p() != 0) asub.emplace_back(0, u);
    rep.index_A = count_cosets(asub);
    return rep;
}

// ---------------------------------------------------------------------------
// Stone-von-Neumann window

namespace {

struct TorusWindow {
    const LocalField& F;
    i64 V;       // valuations mod V (n | V)
    i64 mw;      // units mod p^mw
    i64 pmw;
    std::vector<i64> units;           // unit representatives
    std::vector<i64> unit_index;      // residue -> index
    i64 n;

    i64 size() const { return V * static_cast<i64>(units.size()) * n; }

    // element = ((v * U + uidx) * n + z)
    i64 pack(i64 v, i64 uidx, i64 z) const {
        return (v * static_cast<i64>(units.size()) + uidx) * n + z;
    }
    void unpack(i64 e, i64& v, i64& uidx, i64& z) const {
        z = e % n; e /= n;
        uidx = e % static_cast<i64>(units.size());
        v = e / static_cast<i64>(units.size());
    }
    TorusElement rep(i64 e) const {
        i64 v, uidx, z;
        unpack(e, v, uidx, z);
        return {F.make(v, units[static_cast<size_t>(uidx)]), F.mu(z)};
    }
    i64 mul(i64 e1, i64 e2) const {
        i64 v1, u1, z1, v2, u2, z2;
        unpack(e1, v1, u1, z1);
        unpack(e2, v2, u2, z2);
        TorusElement x = rep(e1), y = rep(e2);
        RootOfUnity b = beta(F, sl2_dg(F, x.t), sl2_dg(F, y.t));
        i64 uu = mul_mod(units[static_cast<size_t>(u1)], units[static_cast<size_t>(u2)], pmw);
        return pack(floor_mod(v1 + v2, V), unit_index[static_cast<size_t>(uu)],
                    floor_mod(z1 + z2 + b.exp, n));
    }
    i64 invert(i64 e) const {
        TorusElement x = rep(e);
        TorusElement xi = torus_inv(F, x);
        return pack(floor_mod(xi.t.val, V),
                    unit_index[static_cast<size_t>(xi.t.unit % pmw)],
                    xi.zeta.exp);
    }
};

}  // namespace

SvnReport svn_window_check(const LocalField& F, const CharacterSpec& chi0) {
    SvnReport rep;
    const i64 nu = F.n_under(), n = F.n();
    const i64 m = primitive_level(F, chi0);
    require(m <= F.L() - 2, "svn_window_check: precision too small for character depth");

    // wrap length for the valuation direction: smallest multiple V of
    // lcm(n, 2 n_under) with chi_0((dg(pi^nu),1)^(V/nu)) = 1
    i64 base_step = lcm_i64(n, 2 * nu);
    TorusElement pw = torus_elt(F, F.uniformizer(nu));
    i64 V = 0;
    {
        TorusElement acc = torus_elt(F, F.one());
        i64 k = 0;
        while (true) {
            ++k;
            acc = torus_mul(F, acc, pw);
            if ((nu * k) % base_step == 0 && chi_eval(F, chi0, acc).is_one()) {
                V = nu * k;
                break;
            }
            require(k < 10000, "svn_window_check: no valuation wrap found");
        }
    }

    TorusWindow W{F, V, m, F.pow_p(m), {}, {}, n};
    W.unit_index.assign(static_cast<size_t>(W.pmw), -1);
    for (i64 u = 1; u < W.pmw; ++u)
        if (u % F.p() != 0) {
            W.unit_index[static_cast<size_t>(u)] = static_cast<i64>(W.units.size());
            W.units.push_back(u);
        }
    rep.window_size = W.size();

    // chi_0 on the A-part of the window, with well-definedness checks
    auto in_A_w = [&](i64 e) {
        i64 v, u, z;
        W.unpack(e, v, u, z);
        return v % nu == 0;
    };
    auto chi_w = [&](i64 e) {
        TorusElement x = W.rep(e);
        return chi_eval(F, chi0, x);
    };
    // wrap consistency: the valuation wrap and unit wrap act trivially
    require(chi_eval(F, chi0, torus_elt(F, F.make(0, 1 + F.pow_p(m)))).is_one(),
            "svn_window_check: unit wrap not in the kernel");

    // coset reps of A-part: valuation shifts 0..nu-1
    std::vector<i64> reps;
    for (i64 i = 0; i < nu; ++i)
        reps.push_back(W.pack(i, W.unit_index[1], 0));

    // induced character values; accumulate sum of |chi(g)|^2 as a cyclotomic
    // combination evaluated in two prime fields
    std::vector<Cyc> values;          // flattened per-element value terms
    std::vector<std::pair<i64, std::vector<Cyc>>> ind;  // element -> value terms
    i64 Mden = lcm_i64(n, F.q() - 1);
    Mden = lcm_i64(Mden, chi0.pi_order);
    Mden = lcm_i64(Mden, F.pow_p(std::max<i64>(m - 1, 0)));
    ind.reserve(static_cast<size_t>(W.size()));
    for (i64 e = 0; e < W.size(); ++e) {
        std::vector<Cyc> terms;
        for (i64 rix = 0; rix < nu; ++rix) {
            i64 conj = W.mul(W.mul(W.invert(reps[static_cast<size_t>(rix)]), e),
                             reps[static_cast<size_t>(rix)]);
            if (in_A_w(conj)) {
                Cyc c = chi_w(conj);
                Mden = lcm_i64(Mden, c.den);
                terms.push_back(c);
            }
        }
        ind.emplace_back(e, std::move(terms));
    }
    // degree = value at identity
    rep.degree = static_cast<i64>(ind[static_cast<size_t>(W.pack(0, W.unit_index[1], 0))]
                                      .second.size());

    // two auxiliary primes
    i64 G = W.size();
    i64 start = std::max<i64>(G * n * n, 1000000);
    i64 r1 = next_prime_1_mod(start, Mden);
    i64 r2 = next_prime_1_mod(r1 + 1, Mden);
    rep.aux_prime_1 = r1;
    rep.aux_prime_2 = r2;
    i64 norm1 = -1, norm2 = -1;
    for (int which = 0; which < 2; ++which) {
        i64 r = which == 0 ? r1 : r2;
        i64 xi = element_of_order(Mden, r);
        i64 total = 0;
        for (const auto& [e, terms] : ind) {
            (void)e;
            i64 v = 0, vb = 0;
            for (const Cyc& c : terms) {
                i64 k = c.exp_mod(Mden);
                v = floor_mod(v + pow_mod(xi, k, r), r);
                vb = floor_mod(vb + pow_mod(xi, floor_mod(-k, Mden), r), r);
            }
            total = floor_mod(total + mul_mod(v, vb, r), r);
        }
        i64 norm = mul_mod(total, inv_mod(floor_mod(G, r), r), r);
        (which == 0 ? norm1 : norm2) = norm;
    }
    ++g_dual_prime_checks;
    if (norm1 != norm2) {
        ++g_dual_prime_disagreements;
        throw oracle_disagreement("svn_window_check: auxiliary primes disagree");
    }
    rep.norm = norm1;
    return rep;
}

}  // namespace ktype
