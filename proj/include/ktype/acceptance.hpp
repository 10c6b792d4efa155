#pragma once

// The acceptance suite: eleven verification criteria covering the Hilbert
// symbol laws, the Kubota cocycle and its splittings, torus structure
// constants, the SL2 and GL2 Hecke dimension grids, the branching reports,
// double-coset systems, the restriction analysis, the zero-space law, and
// dual-prime oracle integrity. Every assertion is exact integer equality.

#include "ktype/report.hpp"

namespace ktype {

struct AcceptanceOptions {
    int jobs = 1;
    i64 budget = 5'000'000;
    std::uint64_t seed = 0;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double wall_ms = 0.0;
    std::string detail;
    njson data;
};

constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
std::vector<CriterionResult> run_all_criteria(const AcceptanceOptions& opt);

}  // namespace ktype
