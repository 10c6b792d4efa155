// Acceptance gate: runs all eleven criteria and prints one PASS/FAIL line
// each. Exit code 0 only when everything holds at exact equality.

#include <cstdio>
#include <thread>

#include "ktype/acceptance.hpp"

int main(int argc, char** argv) {
    ktype::AcceptanceOptions opt;
    unsigned hw = std::thread::hardware_concurrency();
    opt.jobs = static_cast<int>(hw == 0 ? 2 : (hw > 8 ? 8 : hw));
    for (int a = 1; a < argc; ++a) {
        std::string arg = argv[a];
        if (arg == "--jobs" && a + 1 < argc) opt.jobs = std::atoi(argv[++a]);
        if (arg == "--budget" && a + 1 < argc) opt.budget = std::atoll(argv[++a]);
        if (arg == "--seed" && a + 1 < argc)
            opt.seed = static_cast<std::uint64_t>(std::atoll(argv[++a]));
    }
    std::printf("acceptance suite: %d criteria, jobs=%d, budget=%lld, seed=%llu\n",
                ktype::kCriterionCount, opt.jobs, static_cast<long long>(opt.budget),
                static_cast<unsigned long long>(opt.seed));
    auto results = ktype::run_all_criteria(opt);
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] criterion %2d %-28s %9.1f ms  %s\n", r.pass ? "PASS" : "FAIL",
                    r.id, r.name.c_str(), r.wall_ms, r.detail.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("%d/%d criteria passed\n", ktype::kCriterionCount - failures,
                ktype::kCriterionCount);
    return failures == 0 ? 0 : 1;
}
