// ktype: exact-arithmetic toolkit for n-fold metaplectic covers of SL2 and
// GL2 over tame local fields. Subcommands expose every verification and
// report with machine-readable output.
//
// Exit codes: 0 all asserted equalities hold; 2 usage error; 3 enumeration
// budget exhausted; 4 assertion mismatch; 5 oracle internal disagreement.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ktype/acceptance.hpp"

using namespace ktype;

namespace {

struct CommonOpts {
    i64 p = 5, n = 2, precision = 6;
    std::string char_file, char2_file;
    i64 l = 1, lmax = 2;
    std::string mode = "exhaustive";
    i64 samples = 100000;
    std::uint64_t seed = 0;
    int jobs = 1;
    i64 budget = 5'000'000;
    std::string format = "json";
};

void add_field_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--p", o.p, "residue characteristic (odd prime)");
    cmd->add_option("--n", o.n, "cover degree, n | p-1");
    cmd->add_option("--precision", o.precision, "retained p-adic digits");
    cmd->add_option("--seed", o.seed, "sampling seed");
    cmd->add_option("--jobs", o.jobs, "worker threads");
    cmd->add_option("--budget", o.budget, "enumeration budget (elements)");
    cmd->add_option("--format", o.format, "json or md");
}

njson load_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open " + path);
    njson j;
    in >> j;
    return j;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a_hex(bytes);
}

RunManifest make_manifest(const CommonOpts& o) {
    RunManifest m;
    m.p = o.p;
    m.n = o.n;
    m.precision = o.precision;
    m.budget = o.budget;
    m.seed = o.seed;
    m.jobs = o.jobs;
    if (!o.char_file.empty()) m.char_digests.push_back(file_digest(o.char_file));
    if (!o.char2_file.empty()) m.char_digests.push_back(file_digest(o.char2_file));
    return m;
}

void emit(const njson& body, const CommonOpts& o, RunManifest m, double wall_ms,
          const std::string& md = "") {
    m.wall_ms = wall_ms;
    njson out;
    out["schema"] = kSchema;
    out["manifest"] = manifest_json(m);
    out["report"] = body;
    if (o.format == "md" && !md.empty())
        std::cout << md << std::endl;
    else
        std::cout << out.dump(2) << std::endl;
}

bool parse_elt(const std::string& s, i64& val, i64& unit) {
    auto comma = s.find(',');
    if (comma == std::string::npos) return false;
    val = std::stoll(s.substr(0, comma));
    unit = std::stoll(s.substr(comma + 1));
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact K-type verification for metaplectic covers of SL2/GL2"};
    app.require_subcommand(1);
    CommonOpts o;

    std::string a_str, b_str, subgroup = "K1_j", level_str, char_op = "validate";
    i64 ci = 0, cj = 0, wlevel = 1;
    bool emit_candidates = false;
    std::string suite = "all";
    int criterion = 0;

    auto* hil = app.add_subcommand("hilbert", "tame Hilbert symbol of two elements");
    add_field_flags(hil, o);
    hil->add_option("--a", a_str, "first element VAL,UNIT")->required();
    hil->add_option("--b", b_str, "second element VAL,UNIT")->required();

    auto* vc = app.add_subcommand("verify-cocycle", "2-cocycle identity for beta");
    add_field_flags(vc, o);
    vc->add_option("--level", wlevel, "congruence level (1 or 2)");
    vc->add_option("--mode", o.mode, "exhaustive or sample");
    vc->add_option("--samples", o.samples, "sample count");

    auto* vs = app.add_subcommand("verify-splitting", "splitting over a subgroup window");
    add_field_flags(vs, o);
    vs->add_option("--subgroup", subgroup, "K1_j | T1capK1 | B1capK1 | T1_full");
    vs->add_option("--j", wlevel, "congruence level for K1_j");

    auto* ch = app.add_subcommand("char", "character operations: validate|extend|level");
    add_field_flags(ch, o);
    ch->add_option("op", char_op, "validate, extend, or level")->required();
    ch->add_option("--char", o.char_file, "CharacterSpec JSON file")->required();

    auto* orc = app.add_subcommand("oracle", "Hom-space dimension via the dual-prime oracle");
    add_field_flags(orc, o);
    orc->add_option("--l", o.l, "congruence level");
    orc->add_option("--char", o.char_file, "CharacterSpec JSON file")->required();
    orc->add_option("--char-i", ci, "first extension index");
    orc->add_option("--char-j", cj, "second extension index");

    auto* hk = app.add_subcommand("hecke", "Hecke dimensions: brute force vs closed form");
    add_field_flags(hk, o);
    hk->add_option("--l", o.l, "congruence level");
    hk->add_option("--i", ci, "first extension index");
    hk->add_option("--j", cj, "second extension index");
    hk->add_option("--char", o.char_file, "CharacterSpec JSON file")->required();

    auto* br = app.add_subcommand("branch", "K-type branching report");
    add_field_flags(br, o);
    br->add_option("--lmax", o.lmax, "largest congruence level");
    br->add_option("--char", o.char_file, "CharacterSpec JSON file")->required();

    auto* ghk = app.add_subcommand("gl-hecke", "GL2 Hecke dimensions");
    add_field_flags(ghk, o);
    ghk->add_option("--l", o.l, "congruence level");
    ghk->add_option("--i", ci, "first index");
    ghk->add_option("--j", cj, "second index");
    ghk->add_option("--char2", o.char2_file, "GlCharacterSpec JSON file")->required();

    auto* gbr = app.add_subcommand("gl-branch", "GL2 reducibility counts at level m");
    add_field_flags(gbr, o);
    gbr->add_option("--l", o.l, "congruence level");
    gbr->add_option("--char2", o.char2_file, "GlCharacterSpec JSON file")->required();

    auto* grs = app.add_subcommand("gl-restrict", "restriction analysis to the SL2 cover");
    add_field_flags(grs, o);
    grs->add_option("--char2", o.char2_file, "GlCharacterSpec JSON file")->required();

    auto* vbp = app.add_subcommand("validate-beta-prime", "cocycle candidate validation");
    add_field_flags(vbp, o);
    vbp->add_flag("--emit-candidates", emit_candidates, "list every candidate verdict");
    vbp->add_option("--samples", o.samples, "sampled triples per candidate");

    auto* acc = app.add_subcommand("acceptance", "run acceptance criteria");
    add_field_flags(acc, o);
    acc->add_option("--suite", suite, "all (default) or sl2/gl2 subsets");
    acc->add_option("--criterion", criterion, "run a single criterion 1..11");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    auto wall = [&]() {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    try {
        RunManifest man = make_manifest(o);
        if (hil->parsed()) {
            LocalField F(o.p, o.n, o.precision);
            i64 av, au, bv, bu;
            require(parse_elt(a_str, av, au) && parse_elt(b_str, bv, bu),
                    "elements must be VAL,UNIT");
            RootOfUnity s = hilbert_symbol(F, F.make(av, au), F.make(bv, bu));
            njson body{{"exponent", s.exp}, {"residue_value", F.mu_residue(s)}};
            emit(body, o, man, wall());
            return 0;
        }
        if (vc->parsed()) {
            LocalField F(o.p, o.n, o.precision);
            i64 bad;
            i64 count;
            if (o.mode == "exhaustive") {
                require(wlevel == 1, "exhaustive mode runs at level 1");
                auto lifts_count = F.q() * (F.q() * F.q() - 1);
                count = lifts_count * lifts_count * lifts_count;
                bad = verify_cocycle_exhaustive(F, 1, o.jobs);
            } else {
                count = o.samples;
                bad = verify_cocycle_sampled(F, wlevel, o.samples, o.seed, o.jobs);
            }
            njson body{{"level", wlevel}, {"mode", o.mode}, {"triples", count},
                       {"violations", bad}};
            emit(body, o, man, wall());
            return bad == 0 ? 0 : 4;
        }
        if (vs->parsed()) {
            LocalField F(o.p, o.n, o.precision);
            SplitSubgroup sg;
            if (subgroup == "K1_j") sg = SplitSubgroup::K1_j;
            else if (subgroup == "T1capK1") sg = SplitSubgroup::T1capK1;
            else if (subgroup == "B1capK1") sg = SplitSubgroup::B1capK1;
            else if (subgroup == "T1_full") sg = SplitSubgroup::T1_full;
            else { std::cerr << "unknown subgroup " << subgroup << "\n"; return 2; }
            SplitReport rep = verify_splitting(F, sg, wlevel);
            njson body{{"subgroup", subgroup}, {"splits", rep.splits}, {"detail", rep.detail}};
            emit(body, o, man, wall());
            // the torus must not split (for n_under > 1); windows must split
            bool expected = sg == SplitSubgroup::T1_full ? !rep.splits || F.n_under() == 1
                                                         : rep.splits;
            return expected ? 0 : 4;
        }
        if (ch->parsed()) {
            LocalField F(o.p, o.n, o.precision);
            CharacterSpec spec = spec_from_json(load_json_file(o.char_file));
            if (char_op == "validate") {
                ValidationResult va = validate_character(F, spec, true, 1000, o.seed);
                ValidationResult vz = validate_character(F, spec, false, 1000, o.seed);
                njson body{{"valid_on_A", va.ok}, {"valid_on_Z", vz.ok},
                           {"detail", va.ok ? vz.detail : va.detail}};
                emit(body, o, man, wall());
                return va.ok && vz.ok ? 0 : 4;
            }
            if (char_op == "extend") {
                ExtensionFamily fam = extend_character(F, spec);
                njson tw = njson::array();
                for (const auto& t : fam.twists) tw.push_back(spec_json(t));
                emit(njson{{"twists", tw}}, o, man, wall());
                return 0;
            }
            if (char_op == "level") {
                emit(njson{{"primitive_level", primitive_level(F, spec)}}, o, man, wall());
                return 0;
            }
            std::cerr << "unknown char op " << char_op << "\n";
            return 2;
        }
        if (orc->parsed()) {
            LocalField F(o.p, o.n, o.precision);
            require(o.l >= 1, "oracle: l must be >= 1");
            CharacterSpec spec = spec_from_json(load_json_file(o.char_file));
            ExtensionFamily fam = extend_character(F, spec);
            Quot Q(F, o.l, false, o.budget);
            if (Q.size() > o.budget) {
                std::cerr << "quotient order " << Q.size() << " exceeds budget " << o.budget
                          << "\n";
                return 3;
            }
            Classes cls = conjugacy_classes(Q);
            BChar a = bchar_sl(F, Q, fam.twists.at(static_cast<size_t>(ci)));
            BChar b = bchar_sl(F, Q, fam.twists.at(static_cast<size_t>(cj)));
            OraclePrimes pr = choose_oracle_primes(Q, a.M);
            man.aux_primes = {pr.r1, pr.r2};
            i64 dim = hom_dim_oracle(Q, cls, induced_char(Q, cls, a, o.l),
                                     induced_char(Q, cls, b, o.l), pr);
            emit(njson{{"hom_dim", dim}, {"aux_primes", {pr.r1, pr.r2}}}, o, man, wall());
            return 0;
        }
        if (hk->parsed()) {
            require(o.l >= 1, "hecke: l must be >= 1");
            LocalField F(o.p, o.n, o.precision);
            CharacterSpec spec = spec_from_json(load_json_file(o.char_file));
            ExtensionFamily fam = extend_character(F, spec);
            HeckeReport r = hecke_dim_report(F, fam, ci, cj, o.l, true, o.budget);
            if (r.aux_prime_1) man.aux_primes = {r.aux_prime_1, r.aux_prime_2};
            emit(hecke_report_json(r), o, man, wall());
            if (r.dim_bruteforce != r.dim_closed_form) return 4;
            if (r.dim_oracle && *r.dim_oracle != r.dim_bruteforce) return 4;
            return 0;
        }
        if (br->parsed()) {
            LocalField F(o.p, o.n, o.precision);
            CharacterSpec spec = spec_from_json(load_json_file(o.char_file));
            ExtensionFamily fam = extend_character(F, spec);
            BranchReport rep = branch_report(F, fam, o.lmax, o.budget);
            if (rep.aux_prime_1) man.aux_primes = {rep.aux_prime_1, rep.aux_prime_2};
            njson body = branch_report_json(rep);
            emit(body, o, man, wall(), branch_report_markdown(body));
            for (size_t i = 0; i < rep.hom_level_m.size(); ++i)
                for (size_t k = 0; k < rep.hom_level_m.size(); ++k)
                    if (rep.hom_level_m[i][k] != rep.hom_level_m_closed[i][k]) return 4;
            return rep.pattern_ok ? 0 : 4;
        }
        if (ghk->parsed()) {
            require(o.l >= 1, "gl-hecke: l must be >= 1");
            LocalField F(o.p, o.n, o.precision);
            Gl2Cover C(F);
            GlCharacterSpec spec = gl_spec_from_json(load_json_file(o.char2_file));
            GlExtensionFamily fam = gl_char_extensions(C, spec);
            HeckeReport r = gl_hecke_dim_report(C, fam, ci, cj, o.l, true, o.budget);
            emit(hecke_report_json(r), o, man, wall());
            return r.dim_bruteforce == r.dim_closed_form ? 0 : 4;
        }
        if (gbr->parsed()) {
            LocalField F(o.p, o.n, o.precision);
            Gl2Cover C(F);
            GlCharacterSpec spec = gl_spec_from_json(load_json_file(o.char2_file));
            GlExtensionFamily fam = gl_char_extensions(C, spec);
            i64 m = gl_primitive_level(F, spec);
            njson pieces = njson::array();
            i64 special = 0;
            for (i64 i = 0; i < F.n(); ++i)
                for (i64 j = 0; j < F.n(); ++j) {
                    bool cond = gl_unit_condition(F, fam, i, j);
                    special += cond ? 1 : 0;
                    pieces.push_back(njson{{"i", i},
                                           {"j", j},
                                           {"reducible_at_level_m", cond},
                                           {"dim_H", gl_hecke_dim_closed(o.l, m, cond)}});
                }
            njson body{{"m", m}, {"special_pairs", special}, {"pieces", pieces}};
            emit(body, o, man, wall());
            return special == 0 || special == F.n() ? 0 : 4;
        }
        if (grs->parsed()) {
            LocalField F(o.p, o.n, o.precision);
            Gl2Cover C(F);
            GlCharacterSpec spec = gl_spec_from_json(load_json_file(o.char2_file));
            ResRhoPrimeReport rep = res_rho_prime_analysis(C, spec);
            njson body{{"n_even", rep.n_even},
                       {"central_characters", rep.num_central},
                       {"multiplicity", rep.multiplicity}};
            if (rep.n_even) {
                body["sets_equal"] = rep.sets_equal;
                body["each_res_twice"] = rep.each_res_twice;
                body["index_z"] = rep.index_z;
                body["index_a"] = rep.index_a;
            }
            emit(body, o, man, wall());
            bool ok = rep.n_even
                          ? rep.num_central == 4 && rep.multiplicity == F.n() / 2 &&
                                rep.sets_equal && rep.each_res_twice
                          : rep.num_central == 1 && rep.multiplicity == F.n();
            return ok ? 0 : 4;
        }
        if (vbp->parsed()) {
            LocalField F(o.p, o.n, o.precision);
            BetaPrimeSearchReport rep = validate_beta_prime(F, std::min<i64>(o.samples, 5000),
                                                            o.seed);
            njson cands = njson::array();
            for (const auto& c : rep.checks) {
                njson e{{"candidate", beta_prime_candidate_name(c.candidate)},
                        {"pass", c.pass}};
                if (!c.pass) e["first_failure"] = c.first_failure;
                if (emit_candidates) {
                    e["cocycle_ok"] = c.cocycle_ok;
                    e["sl_restriction_ok"] = c.sl_restriction_ok;
                    e["n_trivial_ok"] = c.n_trivial_ok;
                    e["k_split_ok"] = c.k_split_ok;
                    e["torus_index_ok"] = c.torus_index_ok;
                }
                cands.push_back(e);
            }
            njson body{{"adopted", beta_prime_candidate_name(rep.adopted)},
                       {"candidates", cands}};
            emit(body, o, man, wall());
            return 0;
        }
        if (acc->parsed()) {
            AcceptanceOptions aopt;
            aopt.jobs = o.jobs;
            aopt.budget = o.budget;
            aopt.seed = o.seed;
            std::vector<CriterionResult> results;
            if (criterion > 0) {
                results.push_back(run_criterion(criterion, aopt));
            } else if (suite == "sl2") {
                for (int id : {1, 2, 3, 4, 5, 7, 10}) results.push_back(run_criterion(id, aopt));
            } else if (suite == "gl2") {
                for (int id : {6, 8, 9}) results.push_back(run_criterion(id, aopt));
            } else {
                results = run_all_criteria(aopt);
            }
            njson body = njson::array();
            bool all = true;
            for (const auto& r : results) {
                body.push_back(njson{{"criterion", r.id},
                                     {"name", r.name},
                                     {"pass", r.pass},
                                     {"wall_ms", r.wall_ms},
                                     {"detail", r.detail}});
                std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": "
                          << r.detail << "\n";
                all = all && r.pass;
            }
            emit(njson{{"criteria", body}}, o, man, wall());
            return all ? 0 : 4;
        }
    } catch (const oracle_disagreement& e) {
        std::cerr << "oracle disagreement: " << e.what() << "\n";
        return 5;
    } catch (const budget_error& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
