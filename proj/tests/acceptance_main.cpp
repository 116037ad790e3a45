// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
#include <cstdio>
#include <cstdlib>

#include "amu/verify.hpp"

int main(int argc, char** argv) {
    unsigned long long seed = 312528;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    auto results = amu::run_acceptance({}, seed);
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s criterion %d: %s -- %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES");
    return all ? 0 : 1;
}
