#include "ktype/report.hpp"

#include <sstream>

namespace ktype {

njson manifest_json(const RunManifest& m) {
    njson j;
    j["tool_version"] = kToolVersion;
    j["p"] = m.p;
    j["n"] = m.n;
    j["precision"] = m.precision;
    j["char_digests"] = m.char_digests;
    j["aux_primes"] = m.aux_primes;
    j["budget"] = m.budget;
    j["seed"] = m.seed;
    j["jobs"] = m.jobs;
    j["wall_ms"] = m.wall_ms;
    return j;
}

LocalField field_from_json(const njson& j) {
    i64 p = j.at("p").get<i64>();
    i64 n = j.at("n").get<i64>();
    i64 L = j.value("precision", i64(6));
    return LocalField(p, n, L);
}

njson field_json(const LocalField& F) {
    return njson{{"p", F.p()}, {"n", F.n()}, {"precision", F.L()}};
}

njson trunc_json(const TruncElt& x) { return njson{{"val", x.val}, {"unit", x.unit}}; }

TruncElt trunc_from_json(const LocalField& F, const njson& j) {
    return F.make(j.at("val").get<i64>(), j.at("unit").get<i64>());
}

njson spec_json(const CharacterSpec& s) {
    return njson{{"teich_exp", s.teich_exp},
                 {"principal_exp", s.principal_exp},
                 {"pi_order", s.pi_order},
                 {"pi_exp", s.pi_exp}};
}

CharacterSpec spec_from_json(const njson& j) {
    CharacterSpec s;
    s.teich_exp = j.at("teich_exp").get<i64>();
    s.principal_exp = j.at("principal_exp").get<i64>();
    s.pi_order = j.value("pi_order", i64(1));
    s.pi_exp = j.value("pi_exp", i64(0));
    return s;
}

njson gl_spec_json(const GlCharacterSpec& s) {
    return njson{{"teich1", s.teich1},     {"principal1", s.principal1},
                 {"teich2", s.teich2},     {"principal2", s.principal2},
                 {"pi1_order", s.pi1_order}, {"pi1_exp", s.pi1_exp},
                 {"pi2_order", s.pi2_order}, {"pi2_exp", s.pi2_exp}};
}

GlCharacterSpec gl_spec_from_json(const njson& j) {
    GlCharacterSpec s;
    s.teich1 = j.at("teich1").get<i64>();
    s.principal1 = j.value("principal1", i64(0));
    s.teich2 = j.value("teich2", i64(0));
    s.principal2 = j.value("principal2", i64(0));
    s.pi1_order = j.value("pi1_order", i64(1));
    s.pi1_exp = j.value("pi1_exp", i64(0));
    s.pi2_order = j.value("pi2_order", i64(1));
    s.pi2_exp = j.value("pi2_exp", i64(0));
    return s;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

njson hecke_report_json(const HeckeReport& r) {
    njson j;
    j["p"] = r.p;
    j["n"] = r.n;
    j["m"] = r.m;
    j["l"] = r.l;
    j["i"] = r.i;
    j["j"] = r.j;
    j["zero_level"] = r.zero_level;
    if (!r.zero_witness.empty()) j["zero_witness"] = r.zero_witness;
    j["supported_cosets"] = r.supported_labels;
    j["dim_bruteforce"] = r.dim_bruteforce;
    j["dim_closed_form"] = r.dim_closed_form;
    j["condition"] = r.condition;
    if (r.dim_oracle) {
        j["dim_oracle"] = *r.dim_oracle;
        j["aux_primes"] = {r.aux_prime_1, r.aux_prime_2};
    }
    if (r.budget_exceeded) j["oracle_skipped"] = "budget";
    return j;
}

njson branch_report_json(const BranchReport& r) {
    njson j;
    j["p"] = r.p;
    j["n"] = r.n;
    j["m"] = r.m;
    j["l_max"] = r.l_max;
    j["relabel_shift"] = r.relabel_shift;
    j["quad_indices"] = r.quad_indices;
    njson lv = njson::array();
    for (const auto& c : r.level_m) {
        njson e;
        e["i"] = c.i;
        e["i_original"] = c.i_original;
        e["dim"] = c.dim;
        e["reducible"] = c.reducible;
        if (!c.split_dims.empty()) e["split_dims"] = c.split_dims;
        if (c.norm) e["norm"] = *c.norm;
        lv.push_back(e);
    }
    j["level_m"] = lv;
    njson lay = njson::array();
    for (size_t i = 0; i < r.layers.size(); ++i) {
        njson per = njson::array();
        for (const auto& w : r.layers[i]) {
            njson e;
            e["l"] = w.l;
            e["dim"] = w.dim;
            if (!w.half_dims.empty()) e["half_dims"] = w.half_dims;
            if (w.norm) e["norm"] = *w.norm;
            e["hom_across_i"] = w.hom_across_i;
            per.push_back(e);
        }
        lay.push_back(per);
    }
    j["layers"] = lay;
    j["hom_level_m"] = r.hom_level_m;
    j["hom_level_m_closed"] = r.hom_level_m_closed;
    njson orc = njson::array();
    for (const auto& row : r.hom_level_m_oracle) {
        njson rr = njson::array();
        for (const auto& v : row) {
            if (v) rr.push_back(*v);
            else rr.push_back(nullptr);
        }
        orc.push_back(rr);
    }
    j["hom_level_m_oracle"] = orc;
    j["pattern_ok"] = r.pattern_ok;
    j["oracle_degraded"] = r.oracle_degraded;
    if (r.aux_prime_1) j["aux_primes"] = {r.aux_prime_1, r.aux_prime_2};
    return j;
}

std::string branch_report_markdown(const njson& j) {
    std::ostringstream os;
    os << "# K-type branching report (p=" << j["p"] << ", n=" << j["n"] << ", m=" << j["m"]
       << ")\n\n";
    os << "quadratic indices: " << j["quad_indices"].dump()
       << "  relabel shift: " << j["relabel_shift"] << "\n\n";
    os << "## Level-m constituents\n\n| i | i_orig | dim | reducible | split | norm |\n";
    os << "|---|--------|-----|-----------|-------|------|\n";
    for (const auto& e : j["level_m"]) {
        os << "| " << e["i"] << " | " << e["i_original"] << " | " << e["dim"] << " | "
           << (e["reducible"].get<bool>() ? "yes" : "no") << " | "
           << (e.contains("split_dims") ? e["split_dims"].dump() : std::string("-")) << " | "
           << (e.contains("norm") ? e["norm"].dump() : std::string("-")) << " |\n";
    }
    os << "\n## W-layers\n\n| i | l | dim | halves | norm | Hom across i |\n";
    os << "|---|---|-----|--------|------|---------------|\n";
    const auto& layers = j["layers"];
    for (size_t i = 0; i < layers.size(); ++i)
        for (const auto& w : layers[i]) {
            os << "| " << i << " | " << w["l"] << " | " << w["dim"] << " | "
               << (w.contains("half_dims") ? w["half_dims"].dump() : std::string("-")) << " | "
               << (w.contains("norm") ? w["norm"].dump() : std::string("-")) << " | "
               << w["hom_across_i"] << " |\n";
        }
    os << "\n## Hom matrix at level m (brute force)\n\n";
    os << j["hom_level_m"].dump() << "\n\nclosed form: " << j["hom_level_m_closed"].dump()
       << "\noracle: " << j["hom_level_m_oracle"].dump() << "\n";
    os << "\npattern (V_i = V_k iff i+k = j mod n_under): "
       << (j["pattern_ok"].get<bool>() ? "ok" : "MISMATCH") << "\n";
    return os.str();
}

}  // namespace ktype
