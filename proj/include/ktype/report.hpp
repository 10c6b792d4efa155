#pragma once

// Run manifests and JSON (de)serialization for configs, characters, and
// reports. All reports embed their manifest; identical manifests produce
// byte-identical reports (fixed iteration orders, alphabetical JSON keys).

#include <string>

#include "json.hpp"
#include "ktype/cover_gl2.hpp"

namespace ktype {

using njson = nlohmann::json;

inline constexpr const char* kSchema = "ktype-report/1";
inline constexpr const char* kToolVersion = "ktype 1.0.0";

struct RunManifest {
    i64 p = 0, n = 0, precision = 0;
    std::vector<std::string> char_digests;
    std::vector<i64> aux_primes;
    i64 budget = 5'000'000;
    std::uint64_t seed = 0;
    int jobs = 1;
    double wall_ms = 0.0;
};

njson manifest_json(const RunManifest& m);

// FieldConfig: {"p":5,"n":2,"precision":4}
LocalField field_from_json(const njson& j);
njson field_json(const LocalField& F);

// TruncElt: {"val":v,"unit":u}
njson trunc_json(const TruncElt& x);
TruncElt trunc_from_json(const LocalField& F, const njson& j);

// CharacterSpec: {"teich_exp":a,"principal_exp":b,"pi_order":N,"pi_exp":e}
njson spec_json(const CharacterSpec& s);
CharacterSpec spec_from_json(const njson& j);

njson gl_spec_json(const GlCharacterSpec& s);
GlCharacterSpec gl_spec_from_json(const njson& j);

// FNV-1a digest of a byte string, for the manifest
std::string fnv1a_hex(const std::string& bytes);

njson hecke_report_json(const HeckeReport& r);
njson branch_report_json(const BranchReport& r);
std::string branch_report_markdown(const njson& j);

}  // namespace ktype
